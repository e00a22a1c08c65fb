#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "spacenet/connectivity/topology.hpp"
#include "spacenet/core/ltp_segment.hpp"
#include "spacenet/core/message.hpp"
#include "spacenet/core/rng.hpp"
#include "spacenet/engine/simulation.hpp"
#include "spacenet/metrics/log_sink.hpp"

namespace spacenet {

struct LossConfig {
    std::uint64_t seed = 0;
    double default_loss_probability = 0.05;
    std::unordered_map<LinkId, double> per_link;

    double probability(LinkId link) const;
    void validate() const;
};

using TransportPayload = std::variant<Message, LtpSegment>;

// Queue classes: a higher class is sent before any lower one, FIFO within a class.
enum class Priority : std::uint8_t { Normal = 0, Retransmission = 1, Control = 2 };

struct TransportItem {
    TransportPayload payload;
    std::uint64_t bits = 0;
    Priority priority = Priority::Normal;
    SimTime enqueued_at = 0.0;

    static TransportItem of(Message msg);
    static TransportItem of(LtpSegment segment, Priority priority = Priority::Normal);

    const Message* message() const { return std::get_if<Message>(&payload); }
    const LtpSegment* segment() const { return std::get_if<LtpSegment>(&payload); }
    Uid uid() const;
};

struct TransmissionInfo {
    LinkId link;
    NodeId from = 0;
    NodeId to = 0;
    SimTime start = 0.0;
    double duration = 0.0;
    double propagation = 0.0;
    bool lost = false;
};

class TransmissionObserver {
public:
    virtual ~TransmissionObserver() = default;
    virtual void on_transmission_start(const TransportItem& item, const TransmissionInfo& info, Simulation& sim) = 0;
};

// Link transmission: one FIFO channel per link direction, serialized by bandwidth, with seeded per-traversal loss.
class TransportActor final : public Actor {
public:
    TransportActor(std::shared_ptr<const TopologyModel> topology, LossConfig loss, LogSink* log = nullptr);

    void add_observer(TransmissionObserver& observer) { observers_.push_back(&observer); }
    // Bandwidth used for every link instead of the rule value; infinity means zero transmission time.
    void set_bandwidth_override(std::optional<double> bps) { bandwidth_override_ = bps; }

    void send(LinkId link, NodeId from, TransportItem item, Simulation& sim);
    std::vector<TransportItem> take_pending(LinkId link, NodeId from);
    std::size_t purge(LinkId link, const std::function<bool(const TransportItem&)>& predicate);

    void handle(const Event& event, Simulation& sim) override;

    bool is_up(LinkId link) const { return up_.contains(link); }
    std::size_t queued(LinkId link, NodeId from) const;
    bool in_flight(LinkId link, NodeId from) const;
    SimTime busy_until(LinkId link, NodeId from) const;
    std::uint64_t transmissions() const { return transmissions_; }
    std::uint64_t losses() const { return losses_; }

private:
    struct InFlight {
        TransportItem item;
        SimTime start;
        double duration;
        double propagation;
        bool lost;
    };
    struct Channel {
        LinkId link;
        NodeId from;
        NodeId to;
        double bandwidth_bps;
        std::deque<TransportItem> pending;
        std::optional<InFlight> flight;
        std::uint64_t generation = 0;
        SimTime busy_until = 0.0;
    };

    Channel& channel(LinkId link, NodeId from);
    const Channel* find(LinkId link, NodeId from) const;
    void start_next(std::uint32_t index, Simulation& sim);
    void complete(std::uint32_t index, Simulation& sim);
    void abort(Channel& ch, SimTime t);

    std::shared_ptr<const TopologyModel> topology_;
    LossConfig loss_;
    LogSink* log_;
    Rng rng_;
    std::optional<double> bandwidth_override_;
    std::vector<TransmissionObserver*> observers_;
    std::deque<Channel> channels_;
    std::map<std::pair<LinkId, NodeId>, std::uint32_t> index_;
    std::unordered_map<LinkId, LinkParams> up_;
    std::uint64_t transmissions_ = 0;
    std::uint64_t losses_ = 0;
};

}  // namespace spacenet
