#include "spacenet/transport/transport.hpp"

#include <cmath>
#include <limits>

#include "spacenet/connectivity/geometry.hpp"
#include "spacenet/core/errors.hpp"

namespace spacenet {

double LossConfig::probability(LinkId link) const {
    const auto it = per_link.find(link);
    return it != per_link.end() ? it->second : default_loss_probability;
}

void LossConfig::validate() const {
    auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!ok(default_loss_probability)) throw ConfigError("loss probability must be in [0, 1]");
    for (const auto& [link, p] : per_link) {
        if (!ok(p)) throw ConfigError("loss probability for " + link.str() + " must be in [0, 1]");
    }
}

TransportItem TransportItem::of(Message msg) {
    const auto bits = msg.size_bits;
    if (bits == 0) throw ConfigError("message size must be positive");
    return TransportItem{std::move(msg), bits, Priority::Normal, 0.0};
}

TransportItem TransportItem::of(LtpSegment segment, Priority priority) {
    const auto bits = segment.bits;
    if (bits == 0) throw ConfigError("segment size must be positive");
    return TransportItem{std::move(segment), bits, priority, 0.0};
}

Uid TransportItem::uid() const {
    if (const auto* m = message()) return m->uid;
    return segment()->uid;
}

TransportActor::TransportActor(std::shared_ptr<const TopologyModel> topology, LossConfig loss, LogSink* log)
    : topology_(std::move(topology)),
      loss_(std::move(loss)),
      log_(log),
      rng_(derive_seed(loss_.seed, RngStream::Loss)) {
    loss_.validate();
}

TransportActor::Channel& TransportActor::channel(LinkId link, NodeId from) {
    const auto key = std::make_pair(link, from);
    if (const auto it = index_.find(key); it != index_.end()) return channels_[it->second];
    if (!link.touches(from)) throw UnknownLink("node " + std::to_string(from) + " is not an endpoint of " + link.str());
    const auto up = up_.find(link);
    const double bw = up != up_.end() ? up->second.bandwidth_bps : topology_->params(link).bandwidth_bps;
    index_.emplace(key, static_cast<std::uint32_t>(channels_.size()));
    channels_.push_back(Channel{link, from, link.other(from), bw, {}, std::nullopt, 0, 0.0});
    return channels_.back();
}

const TransportActor::Channel* TransportActor::find(LinkId link, NodeId from) const {
    const auto it = index_.find({link, from});
    return it == index_.end() ? nullptr : &channels_[it->second];
}

void TransportActor::send(LinkId link, NodeId from, TransportItem item, Simulation& sim) {
    if (!topology_->is_candidate(link)) throw UnknownLink("link " + link.str() + " does not exist");
    Channel& ch = channel(link, from);
    item.enqueued_at = sim.now();
    if (item.priority == Priority::Normal) {
        ch.pending.push_back(std::move(item));
    } else {
        auto it = ch.pending.begin();
        while (it != ch.pending.end() && it->priority >= item.priority) ++it;
        ch.pending.insert(it, std::move(item));
    }
    start_next(index_.at({link, from}), sim);
}

void TransportActor::start_next(std::uint32_t index, Simulation& sim) {
    Channel& ch = channels_[index];
    if (ch.flight || ch.pending.empty() || !up_.contains(ch.link)) return;
    const SimTime t = sim.now();
    TransportItem item = std::move(ch.pending.front());
    ch.pending.pop_front();

    const double bw = bandwidth_override_.value_or(ch.bandwidth_bps);
    const double duration = std::isinf(bw) ? 0.0 : static_cast<double>(item.bits) / bw;
    const bool lost = rng_.bernoulli(loss_.probability(ch.link));
    const auto& mob = topology_->mobility();
    const double propagation = propagation_delay_s(mob.node_position(ch.from, t), mob.node_position(ch.to, t));

    ch.busy_until = t + duration;
    ++transmissions_;
    if (log_) {
        LogRecord r;
        r.t = t;
        r.kind = RecordKind::Transmission;
        r.uid = item.uid();
        r.from = ch.from;
        r.to = ch.to;
        r.link = ch.link;
        r.size = item.bits;
        r.dur = duration;
        r.label = item.message() ? "message" : "segment";
        log_->write(r);
    }
    const TransmissionInfo info{ch.link, ch.from, ch.to, t, duration, propagation, lost};
    ch.flight = InFlight{std::move(item), t, duration, propagation, lost};
    sim.schedule(t + duration, TimerExpired{TimerOwner::Transport, index, ch.generation, 0});
    for (auto* obs : observers_) obs->on_transmission_start(ch.flight->item, info, sim);
}

void TransportActor::complete(std::uint32_t index, Simulation& sim) {
    Channel& ch = channels_[index];
    InFlight flight = std::move(*ch.flight);
    ch.flight.reset();
    ++ch.generation;
    const SimTime t = sim.now();
    if (flight.lost) {
        ++losses_;
        if (const auto* m = flight.item.message()) sim.schedule(t, MessageDropped{*m, ch.from, DropReason::Loss});
    } else if (auto* m = std::get_if<Message>(&flight.item.payload)) {
        ++m->hop_count;
        sim.schedule(t + flight.propagation, MessageSent{std::move(*m), ch.from, ch.to, ch.link});
    } else {
        sim.schedule(t + flight.propagation,
                     LtpSegmentReceived{std::move(std::get<LtpSegment>(flight.item.payload)), ch.from, ch.to, ch.link});
    }
    start_next(index, sim);
}

void TransportActor::abort(Channel& ch, SimTime t) {
    if (!ch.flight) return;
    if (log_) {
        LogRecord r;
        r.t = t;
        r.kind = RecordKind::TransmissionAborted;
        r.uid = ch.flight->item.uid();
        r.from = ch.from;
        r.to = ch.to;
        r.link = ch.link;
        log_->write(r);
    }
    ch.pending.push_front(std::move(ch.flight->item));
    ch.flight.reset();
    ++ch.generation;
    ch.busy_until = t;
}

void TransportActor::handle(const Event& event, Simulation& sim) {
    if (const auto* up = std::get_if<LinkUp>(&event.payload)) {
        up_[up->link] = up->params;
        for (const NodeId from : {up->link.a(), up->link.b()}) {
            if (const auto it = index_.find({up->link, from}); it != index_.end()) {
                channels_[it->second].bandwidth_bps = up->params.bandwidth_bps;
                start_next(it->second, sim);
            }
        }
    } else if (const auto* down = std::get_if<LinkDown>(&event.payload)) {
        up_.erase(down->link);
        for (const NodeId from : {down->link.a(), down->link.b()}) {
            if (const auto it = index_.find({down->link, from}); it != index_.end()) abort(channels_[it->second], sim.now());
        }
    } else if (const auto* timer = std::get_if<TimerExpired>(&event.payload)) {
        if (timer->owner != TimerOwner::Transport || timer->key >= channels_.size()) return;
        const auto index = static_cast<std::uint32_t>(timer->key);
        if (channels_[index].flight && channels_[index].generation == timer->serial) complete(index, sim);
    }
}

std::vector<TransportItem> TransportActor::take_pending(LinkId link, NodeId from) {
    const auto it = index_.find({link, from});
    if (it == index_.end()) return {};
    Channel& ch = channels_[it->second];
    std::vector<TransportItem> out(std::make_move_iterator(ch.pending.begin()), std::make_move_iterator(ch.pending.end()));
    ch.pending.clear();
    return out;
}

std::size_t TransportActor::purge(LinkId link, const std::function<bool(const TransportItem&)>& predicate) {
    std::size_t removed = 0;
    for (const NodeId from : {link.a(), link.b()}) {
        const auto it = index_.find({link, from});
        if (it == index_.end()) continue;
        auto& pending = channels_[it->second].pending;
        const auto before = pending.size();
        std::erase_if(pending, predicate);
        removed += before - pending.size();
    }
    return removed;
}

std::size_t TransportActor::queued(LinkId link, NodeId from) const {
    const Channel* ch = find(link, from);
    return ch ? ch->pending.size() + (ch->flight ? 1 : 0) : 0;
}

bool TransportActor::in_flight(LinkId link, NodeId from) const {
    const Channel* ch = find(link, from);
    return ch && ch->flight.has_value();
}

SimTime TransportActor::busy_until(LinkId link, NodeId from) const {
    const Channel* ch = find(link, from);
    return ch ? ch->busy_until : 0.0;
}

}  // namespace spacenet
