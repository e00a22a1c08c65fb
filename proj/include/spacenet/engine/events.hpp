#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "spacenet/core/ltp_segment.hpp"
#include "spacenet/core/message.hpp"
#include "spacenet/core/types.hpp"

namespace spacenet {

enum class DropReason : std::uint8_t { Loss, NoRoute, NoRouteHorizon, LtpCancel };

std::string_view to_string(DropReason reason);
DropReason drop_reason_from_string(std::string_view text);

struct MessageCreated {
    Message msg;
};

// Arrival of a message at `to` after crossing one hop.
struct MessageSent {
    Message msg;
    NodeId from = 0;
    NodeId to = 0;
    LinkId link;
};

// Final delivery at the destination.
struct MessageReceived {
    Message msg;
    NodeId node = 0;
};

struct MessageDropped {
    Message msg;
    NodeId node = 0;
    DropReason reason = DropReason::Loss;
};

struct MessageReceptionCanceled {
    Uid message_uid = 0;
    Uid session = 0;
    NodeId node = 0;
};

struct LtpSegmentReceived {
    LtpSegment segment;
    NodeId from = 0;
    NodeId to = 0;
    LinkId link;
};

struct LinkUp {
    LinkId link;
    LinkParams params;
};

struct LinkDown {
    LinkId link;
};

struct RoutingTableUpdate {
    std::uint64_t epoch = 0;
};

enum class TimerOwner : std::uint8_t { Transport, LtpCheckpoint, LtpReport, User };

struct TimerExpired {
    TimerOwner owner = TimerOwner::User;
    std::uint64_t key = 0;
    std::uint64_t serial = 0;
    std::uint32_t attempt = 0;
};

struct TrafficTick {};

struct ScenarioCustom {
    std::string label;
    std::int64_t value = 0;
};

using EventPayload =
    std::variant<MessageCreated, MessageSent, MessageReceived, MessageDropped, MessageReceptionCanceled,
                 LtpSegmentReceived, LinkUp, LinkDown, RoutingTableUpdate, TimerExpired, TrafficTick,
                 ScenarioCustom>;

enum class EventKind : std::uint8_t {
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
};

std::string_view to_string(EventKind kind);

struct Event {
    SimTime time = 0.0;
    std::uint64_t sequence = 0;
    EventPayload payload;

    EventKind kind() const { return static_cast<EventKind>(payload.index()); }
};

}  // namespace spacenet
