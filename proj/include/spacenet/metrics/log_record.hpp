#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "spacenet/core/types.hpp"
#include "spacenet/engine/events.hpp"

namespace spacenet {

enum class RecordKind : std::uint8_t {
    MessageCreated,
    MessageSent,
    MessageReceived,
    MessageDropped,
    MessageReceptionCanceled,
    LtpSegmentReceived,
    LinkUp,
    LinkDown,
    RoutingTableUpdate,
    TimerExpired,
    TrafficTick,
    ScenarioCustom,
    Transmission,
    TransmissionAborted,
    RunStart,
    RunEnd,
};

std::string_view to_string(RecordKind kind);
RecordKind record_kind_from_string(std::string_view text);

// One line of the event log. Field use per kind:
//   MessageCreated     uid node(source) to(destination) size created label
//   MessageSent        uid from to link size hops
//   MessageReceived    uid node size hops created
//   MessageDropped     uid node size hops created reason
//   Transmission       t=start uid from to link size dur label(message|segment)
//   TransmissionAborted uid from to link
//   RunStart           label(scenario) detail(mode) count(seed) dur(loss probability)
struct LogRecord {
    SimTime t = 0.0;
    RecordKind kind = RecordKind::ScenarioCustom;
    std::optional<Uid> uid;
    std::optional<NodeId> node;
    std::optional<NodeId> from;
    std::optional<NodeId> to;
    std::optional<LinkId> link;
    std::optional<DropReason> reason;
    std::optional<std::uint64_t> size;
    std::optional<double> dur;
    std::optional<std::uint32_t> hops;
    std::optional<double> created;
    std::optional<std::int64_t> count;
    std::string label;
    std::string detail;

    friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

LogRecord record_from_event(const Event& event);

std::string to_json_line(const LogRecord& record);
LogRecord parse_json_line(std::string_view line);

}  // namespace spacenet
