#include "spacenet/engine/simulation.hpp"

#include <algorithm>
#include <string>

#include "spacenet/core/errors.hpp"

namespace spacenet {

namespace {

// Heap comparator: the earliest (time, sequence) ends up at the front.
bool later(const Event& lhs, const Event& rhs) {
    if (lhs.time != rhs.time) return lhs.time > rhs.time;
    return lhs.sequence > rhs.sequence;
}

}  // namespace

Simulation::Simulation(SimulationConfig config) : config_(config) {
    if (!(config_.min_time_delta >= 0.0)) throw ConfigError("min_time_delta must be >= 0");
}

void Simulation::add_actor(Actor& actor) { actors_.push_back(&actor); }
void Simulation::add_refresher(ModelRefresher& refresher) { refreshers_.push_back(&refresher); }
void Simulation::add_observer(EventObserver& observer) { observers_.push_back(&observer); }

void Simulation::initialize(SimTime start) {
    if (!(start >= 0.0)) throw SchedulingInPast("simulation start must be >= 0");
    now_ = start;
}

std::uint64_t Simulation::schedule(SimTime time, EventPayload payload) {
    if (time < now_) {
        throw SchedulingInPast("event at t=" + std::to_string(time) + " is before now=" + std::to_string(now_));
    }
    const std::uint64_t seq = sequence_++;
    queue_.push_back(Event{time, seq, std::move(payload)});
    std::push_heap(queue_.begin(), queue_.end(), later);
    return seq;
}

std::optional<SimTime> Simulation::next_time() const {
    if (queue_.empty()) return std::nullopt;
    return queue_.front().time;
}

Uid Simulation::allocate_uids(std::uint64_t n) {
    const Uid first = next_uid_;
    next_uid_ += n;
    return first;
}

void Simulation::maybe_refresh(SimTime t) {
    bool due = !last_refresh_.has_value();
    if (!due) {
        const double gap = t - *last_refresh_;
        due = config_.min_time_delta > 0.0 ? gap >= config_.min_time_delta : gap > 0.0;
    }
    if (!due) return;
    last_refresh_ = t;
    ++refresh_count_;
    for (auto* refresher : refreshers_) refresher->refresh(t, *this);
}

std::optional<Event> Simulation::step() {
    if (queue_.empty()) return std::nullopt;
    std::pop_heap(queue_.begin(), queue_.end(), later);
    Event event = std::move(queue_.back());
    queue_.pop_back();
    now_ = event.time;
    maybe_refresh(now_);
    for (auto* observer : observers_) observer->on_dispatch(event);
    for (auto* actor : actors_) actor->handle(event, *this);
    ++processed_;
    return event;
}

RunSummary Simulation::run(SimTime end_time) {
    RunSummary summary;
    while (!queue_.empty() && queue_.front().time <= end_time) {
        step();
        ++summary.events_processed;
    }
    summary.final_time = now_;
    return summary;
}

}  // namespace spacenet
