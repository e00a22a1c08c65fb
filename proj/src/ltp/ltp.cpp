#include "spacenet/ltp/ltp.hpp"

#include <algorithm>

#include "spacenet/core/errors.hpp"

namespace spacenet {

void LtpConfig::validate() const {
    if (max_segment_size_bits == 0) throw ConfigError("LTP max segment size must be positive");
    if (checkpoint_timeout_s < 0.0 || report_timeout_s < 0.0) throw ConfigError("LTP timeouts must be positive");
    if (max_retransmissions == 0) throw ConfigError("LTP max_retransmissions must be positive");
    if (ack_bits == 0 || report_header_bits == 0) throw ConfigError("LTP control segment sizes must be positive");
}

std::size_t segment_count(const Message& msg, const LtpConfig& cfg) {
    const std::uint64_t green = std::min(cfg.green_prefix_bits, msg.size_bits);
    const std::uint64_t red = msg.size_bits - green;
    const auto ceil_div = [&](std::uint64_t v) { return (v + cfg.max_segment_size_bits - 1) / cfg.max_segment_size_bits; };
    return static_cast<std::size_t>(ceil_div(green) + ceil_div(red));
}

std::vector<LtpSegment> segment_message(const Message& msg, const LtpConfig& cfg, Uid first_uid, Uid session,
                                        Uid checkpoint_serial, NodeId sender, NodeId receiver) {
    if (msg.size_bits == 0) throw ConfigError("message size must be positive");
    const std::uint64_t green = std::min(cfg.green_prefix_bits, msg.size_bits);
    const std::uint64_t red = msg.size_bits - green;
    auto shared = std::make_shared<const Message>(msg);

    std::vector<LtpSegment> out;
    auto emit = [&](std::uint64_t total, SegmentColor color) {
        for (std::uint64_t offset = 0; offset < total; offset += cfg.max_segment_size_bits) {
            LtpSegment seg;
            seg.type = SegmentType::Data;
            seg.uid = first_uid + out.size();
            seg.session = session;
            seg.sender = sender;
            seg.receiver = receiver;
            seg.bits = std::min(cfg.max_segment_size_bits, total - offset);
            seg.color = color;
            seg.message = shared;
            out.push_back(std::move(seg));
        }
    };
    emit(green, SegmentColor::Green);
    const auto green_count = static_cast<std::uint32_t>(out.size());
    emit(red, SegmentColor::Red);
    for (auto& seg : out) seg.green_count = green_count;
    if (green_count > 0) out[green_count - 1].end_of_green_block = true;
    if (out.size() > green_count) {
        auto manifest = std::make_shared<UidList>();
        for (std::size_t i = green_count; i < out.size(); ++i) manifest->push_back(out[i].uid);
        out.back().checkpoint_serial = checkpoint_serial;
        out.back().manifest = std::move(manifest);
    }
    return out;
}

LtpActor::LtpActor(LtpConfig config, TransportActor& transport) : config_(config), transport_(transport) {
    config_.validate();
    transport_.add_observer(*this);
}

Uid LtpActor::send(const Message& msg, NodeId from, NodeId to, LinkId link, Simulation& sim) {
    const std::size_t n = segment_count(msg, config_);
    const Uid session_id = sim.next_uid();
    const Uid first = sim.allocate_uids(n);
    Session s;
    s.id = session_id;
    s.sender = from;
    s.receiver = to;
    s.link = link;
    s.first_uid = first;
    s.cp_serial = sim.next_uid();
    s.segments = segment_message(msg, config_, first, session_id, s.cp_serial, from, to);
    s.msg = s.segments.front().message;
    s.green_count = s.segments.front().green_count;
    s.red_count = static_cast<std::uint32_t>(n) - s.green_count;
    s.received.assign(n, 0);
    if (s.red_count > 0) {
        s.manifest = s.segments.back().manifest;
        s.checkpoint = s.segments.back();
    }
    ++counters_.sessions_opened;
    const std::vector<LtpSegment> outgoing = s.segments;
    sessions_.emplace(session_id, std::move(s));
    for (const auto& seg : outgoing) {
        ++counters_.data_segments_sent;
        transport_.send(link, from, TransportItem::of(seg), sim);
    }
    return session_id;
}

double LtpActor::timeout(double configured, const TransmissionInfo& info) const {
    if (configured > 0.0) return configured;
    return 2.0 * (info.propagation + info.duration) + config_.turnaround_s;
}

void LtpActor::on_transmission_start(const TransportItem& item, const TransmissionInfo& info, Simulation& sim) {
    const LtpSegment* seg = item.segment();
    if (!seg) return;
    const auto it = sessions_.find(seg->session);
    if (it == sessions_.end()) return;
    Session& s = it->second;
    if (seg->type == SegmentType::Data) {
        if (seg->is_checkpoint() && seg->checkpoint_serial == s.cp_serial && !s.cp_acked) {
            sim.schedule(info.start + timeout(config_.checkpoint_timeout_s, info),
                         TimerExpired{TimerOwner::LtpCheckpoint, s.id, s.cp_serial, s.cp_attempts});
        }
        if (s.red_count == 0 && seg->color == SegmentColor::Green) {
            if (info.lost && !s.green_loss) {
                s.green_loss = true;
                sim.schedule(info.start + info.duration, MessageDropped{*s.msg, s.sender, DropReason::Loss});
            }
            if (seg->end_of_green_block) {
                s.sender_done = true;
                if (s.green_loss) erase(s.id);
            }
        }
    } else if (seg->type == SegmentType::Report && seg->uid == s.report.uid && !s.report_acked) {
        sim.schedule(info.start + timeout(config_.report_timeout_s, info),
                     TimerExpired{TimerOwner::LtpReport, s.id, seg->uid, s.report_attempts});
    }
}

void LtpActor::handle(const Event& event, Simulation& sim) {
    if (const auto* rx = std::get_if<LtpSegmentReceived>(&event.payload)) {
        const LtpSegment& seg = rx->segment;
        if (seg.type == SegmentType::Report) {
            on_report(*rx, sim);
            return;
        }
        const auto it = sessions_.find(seg.session);
        if (it == sessions_.end()) return;
        if (seg.type == SegmentType::Data) {
            on_data(it->second, seg, sim);
        } else {
            on_ack(it->second, seg);
        }
    } else if (const auto* timer = std::get_if<TimerExpired>(&event.payload)) {
        if (timer->owner == TimerOwner::LtpCheckpoint) on_checkpoint_timer(*timer, sim);
        if (timer->owner == TimerOwner::LtpReport) on_report_timer(*timer, sim);
    } else if (const auto* down = std::get_if<LinkDown>(&event.payload)) {
        on_link_down(down->link, sim);
    }
}

void LtpActor::on_data(Session& s, const LtpSegment& seg, Simulation& sim) {
    if (s.receiver_canceled) return;
    const auto index = static_cast<std::size_t>(seg.uid - s.first_uid);
    if (index < s.received.size() && !s.received[index]) {
        s.received[index] = 1;
        if (seg.color == SegmentColor::Red) {
            ++s.red_received;
        } else {
            ++s.green_received;
        }
    }
    if (!s.delivered) {
        const bool red_complete = s.red_count > 0 && s.red_received == s.red_count;
        const bool green_complete = s.red_count == 0 && seg.end_of_green_block && s.green_received == s.green_count;
        if (red_complete || green_complete) deliver(s, sim);
    }
    if (s.red_count == 0 && s.delivered) {
        s.receiver_done = true;
        if (s.sender_done) erase(s.id);
        return;
    }
    if (seg.is_checkpoint()) send_report(s, seg.checkpoint_serial, sim);
}

void LtpActor::deliver(Session& s, Simulation& sim) {
    s.delivered = true;
    ++counters_.deliveries;
    Message msg = *s.msg;
    ++msg.hop_count;
    sim.schedule(sim.now(), MessageSent{std::move(msg), s.sender, s.receiver, s.link});
}

void LtpActor::send_report(Session& s, Uid checkpoint_serial, Simulation& sim) {
    LtpSegment report;
    report.type = SegmentType::Report;
    report.uid = sim.next_uid();
    report.session = s.id;
    report.sender = s.sender;
    report.receiver = s.receiver;
    report.checkpoint_serial = checkpoint_serial;
    for (std::size_t i = s.green_count; i < s.received.size(); ++i) {
        if (s.received[i]) report.received.push_back(s.first_uid + i);
    }
    report.bits = config_.report_header_bits + config_.report_bits_per_uid * report.received.size();
    s.report = report;
    s.report_attempts = 0;
    s.report_acked = false;
    ++counters_.reports_sent;
    transport_.send(s.link, s.receiver, TransportItem::of(std::move(report), Priority::Control), sim);
}

void LtpActor::send_ack(LinkId link, NodeId from, Uid session, Uid report_serial, Simulation& sim) {
    LtpSegment ack;
    ack.type = SegmentType::ReportAck;
    ack.uid = sim.next_uid();
    ack.session = session;
    ack.report_serial = report_serial;
    ack.bits = config_.ack_bits;
    ++counters_.acks_sent;
    transport_.send(link, from, TransportItem::of(std::move(ack), Priority::Control), sim);
}

void LtpActor::on_report(const LtpSegmentReceived& ev, Simulation& sim) {
    const LtpSegment& report = ev.segment;
    send_ack(ev.link, ev.to, report.session, report.uid, sim);
    const auto it = sessions_.find(report.session);
    if (it == sessions_.end()) return;
    Session& s = it->second;
    if (s.sender_done) return;

    std::vector<std::size_t> missing;
    for (std::size_t i = s.green_count; i < s.segments.size(); ++i) {
        if (!std::binary_search(report.received.begin(), report.received.end(), s.first_uid + i)) missing.push_back(i);
    }
    if (missing.empty()) {
        s.cp_acked = true;
        s.sender_done = true;
        ++counters_.sessions_completed;
        close_if_done(s.id);
        return;
    }
    if (report.checkpoint_serial != s.cp_serial || s.cp_acked) return;

    s.cp_acked = false;
    s.cp_serial = sim.next_uid();
    s.cp_attempts = 0;
    for (std::size_t k = 0; k < missing.size(); ++k) {
        LtpSegment seg = s.segments[missing[k]];
        seg.checkpoint_serial = 0;
        seg.manifest.reset();
        if (k + 1 == missing.size()) {
            seg.checkpoint_serial = s.cp_serial;
            seg.manifest = s.manifest;
            s.checkpoint = seg;
        }
        ++counters_.data_retransmissions;
        transport_.send(s.link, s.sender, TransportItem::of(std::move(seg), Priority::Retransmission), sim);
    }
}

void LtpActor::on_ack(Session& s, const LtpSegment& seg) {
    if (seg.report_serial != s.report.uid) return;
    s.report_acked = true;
    if (s.delivered) {
        s.receiver_done = true;
        close_if_done(s.id);
    }
}

void LtpActor::on_checkpoint_timer(const TimerExpired& timer, Simulation& sim) {
    const auto it = sessions_.find(timer.key);
    if (it == sessions_.end()) return;
    Session& s = it->second;
    if (s.sender_done || s.cp_acked || timer.serial != s.cp_serial || timer.attempt != s.cp_attempts) return;
    if (s.cp_attempts < config_.max_retransmissions) {
        ++s.cp_attempts;
        ++counters_.checkpoint_retransmissions;
        transport_.send(s.link, s.sender, TransportItem::of(s.checkpoint, Priority::Retransmission), sim);
        return;
    }
    cancel(s, sim);
}

void LtpActor::on_report_timer(const TimerExpired& timer, Simulation& sim) {
    const auto it = sessions_.find(timer.key);
    if (it == sessions_.end()) return;
    Session& s = it->second;
    if (s.receiver_done || s.receiver_canceled || s.report_acked || timer.serial != s.report.uid ||
        timer.attempt != s.report_attempts) {
        return;
    }
    if (s.report_attempts < config_.max_retransmissions) {
        ++s.report_attempts;
        ++counters_.report_retransmissions;
        transport_.send(s.link, s.receiver, TransportItem::of(s.report, Priority::Control), sim);
        return;
    }
    if (s.delivered) {
        s.receiver_done = true;
        close_if_done(s.id);
        return;
    }
    s.receiver_canceled = true;
    ++counters_.sessions_canceled;
    sim.schedule(sim.now(), MessageReceptionCanceled{s.msg->uid, s.id, s.receiver});
}

void LtpActor::cancel(Session& s, Simulation& sim) {
    if (!s.delivered) {
        ++counters_.sessions_canceled;
        sim.schedule(sim.now(), MessageDropped{*s.msg, s.sender, DropReason::LtpCancel});
        const bool receiver_active = !s.receiver_canceled && (s.red_received + s.green_received) > 0;
        if (receiver_active) sim.schedule(sim.now(), MessageReceptionCanceled{s.msg->uid, s.id, s.receiver});
    }
    erase(s.id);
}

void LtpActor::close_if_done(Uid id) {
    const auto it = sessions_.find(id);
    if (it != sessions_.end() && it->second.sender_done && it->second.receiver_done) erase(id);
}

void LtpActor::erase(Uid id) {
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) return;
    transport_.purge(it->second.link, [id](const TransportItem& item) {
        const auto* seg = item.segment();
        return seg && seg->session == id;
    });
    sessions_.erase(it);
}

void LtpActor::on_link_down(LinkId link, Simulation& sim) {
    std::vector<Uid> affected;
    for (const auto& [id, s] : sessions_) {
        if (s.link == link) affected.push_back(id);
    }
    for (const Uid id : affected) {
        Session& s = sessions_.at(id);
        const bool reroute = !s.delivered && !(s.red_count == 0 && s.green_loss);
        const Message msg = *s.msg;
        const NodeId holder = s.sender;
        erase(id);
        if (reroute) {
            ++counters_.sessions_rerouted;
            if (!forwarder_) throw SpacenetError("LTP session interrupted without a forwarder");
            forwarder_->forward(msg, holder, sim);
        }
    }
}

}  // namespace spacenet
