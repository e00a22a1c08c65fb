#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "spacenet/connectivity/topology.hpp"
#include "spacenet/core/ltp_segment.hpp"
#include "spacenet/core/message.hpp"
#include "spacenet/engine/simulation.hpp"
#include "spacenet/transport/transport.hpp"

namespace spacenet {

struct LtpConfig {
    std::uint64_t max_segment_size_bits = 1'000'000;
    std::uint64_t green_prefix_bits = 0;
    double checkpoint_timeout_s = 0.0;  // 0: derived from the link round trip
    double report_timeout_s = 0.0;      // 0: derived from the link round trip
    double turnaround_s = 1.0;
    std::uint32_t max_retransmissions = 10;
    std::uint64_t report_header_bits = 64;
    std::uint64_t report_bits_per_uid = 32;
    std::uint64_t ack_bits = 64;

    void validate() const;
};

// Splits a message into green then red data segments with consecutive uids starting at first_uid. The last red
// segment is the checkpoint and carries the manifest of every red uid.
std::vector<LtpSegment> segment_message(const Message& msg, const LtpConfig& cfg, Uid first_uid, Uid session,
                                        Uid checkpoint_serial, NodeId sender, NodeId receiver);

std::size_t segment_count(const Message& msg, const LtpConfig& cfg);

// Re-routes a message held at a node; implemented by the routing actor.
class MessageForwarder {
public:
    virtual ~MessageForwarder() = default;
    virtual void forward(const Message& msg, NodeId at, Simulation& sim) = 0;
};

struct LtpCounters {
    std::uint64_t sessions_opened = 0;
    std::uint64_t sessions_completed = 0;
    std::uint64_t sessions_canceled = 0;
    std::uint64_t sessions_rerouted = 0;
    std::uint64_t data_segments_sent = 0;
    std::uint64_t data_retransmissions = 0;
    std::uint64_t checkpoint_retransmissions = 0;
    std::uint64_t reports_sent = 0;
    std::uint64_t report_retransmissions = 0;
    std::uint64_t acks_sent = 0;
    std::uint64_t deliveries = 0;
};

// Per-hop reliable transfer. Every session is bound to one link traversal; sender and receiver state of a session
// are kept together so that late segments of finished sessions are recognized and ignored.
class LtpActor final : public Actor, public TransmissionObserver {
public:
    LtpActor(LtpConfig config, TransportActor& transport);

    void set_forwarder(MessageForwarder& forwarder) { forwarder_ = &forwarder; }
    const LtpConfig& config() const { return config_; }
    const LtpCounters& counters() const { return counters_; }
    std::size_t active_sessions() const { return sessions_.size(); }

    // Opens a session carrying msg from `from` to `to` over `link`.
    Uid send(const Message& msg, NodeId from, NodeId to, LinkId link, Simulation& sim);

    void handle(const Event& event, Simulation& sim) override;
    void on_transmission_start(const TransportItem& item, const TransmissionInfo& info, Simulation& sim) override;

private:
    struct Session {
        Uid id = 0;
        std::shared_ptr<const Message> msg;
        NodeId sender = 0;
        NodeId receiver = 0;
        LinkId link;
        std::vector<LtpSegment> segments;
        std::shared_ptr<const UidList> manifest;
        Uid first_uid = 0;
        std::uint32_t green_count = 0;
        std::uint32_t red_count = 0;

        Uid cp_serial = 0;
        std::uint32_t cp_attempts = 0;
        bool cp_acked = false;
        LtpSegment checkpoint;
        bool sender_done = false;
        bool green_loss = false;

        std::vector<char> received;
        std::uint32_t red_received = 0;
        std::uint32_t green_received = 0;
        bool delivered = false;
        bool receiver_canceled = false;
        LtpSegment report;
        std::uint32_t report_attempts = 0;
        bool report_acked = false;
        bool receiver_done = false;
    };

    void on_data(Session& s, const LtpSegment& seg, Simulation& sim);
    void on_report(const LtpSegmentReceived& ev, Simulation& sim);
    void on_ack(Session& s, const LtpSegment& seg);
    void on_checkpoint_timer(const TimerExpired& timer, Simulation& sim);
    void on_report_timer(const TimerExpired& timer, Simulation& sim);
    void on_link_down(LinkId link, Simulation& sim);

    void deliver(Session& s, Simulation& sim);
    void send_report(Session& s, Uid checkpoint_serial, Simulation& sim);
    void send_ack(LinkId link, NodeId from, Uid session, Uid report_serial, Simulation& sim);
    void cancel(Session& s, Simulation& sim);
    void close_if_done(Uid id);
    void erase(Uid id);
    double timeout(double configured, const TransmissionInfo& info) const;

    LtpConfig config_;
    TransportActor& transport_;
    MessageForwarder* forwarder_ = nullptr;
    std::map<Uid, Session> sessions_;
    LtpCounters counters_;
};

}  // namespace spacenet
