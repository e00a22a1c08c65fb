#include "spacenet/engine/events.hpp"

#include <array>

#include "spacenet/core/errors.hpp"

namespace spacenet {

namespace {

constexpr std::array<std::string_view, 4> kReasonNames = {"loss", "no-route", "no-route-horizon", "ltp-cancel"};

constexpr std::array<std::string_view, 12> kKindNames = {
    "MessageCreated", "MessageSent",        "MessageReceived", "MessageDropped",
    "MessageReceptionCanceled", "LTPSegmentReceived", "LinkUp", "LinkDown",
    "RoutingTableUpdate", "TimerExpired", "TrafficTick", "ScenarioCustom",
};

}  // namespace

std::string_view to_string(DropReason reason) { return kReasonNames[static_cast<std::size_t>(reason)]; }

DropReason drop_reason_from_string(std::string_view text) {
    for (std::size_t i = 0; i < kReasonNames.size(); ++i) {
        if (kReasonNames[i] == text) return static_cast<DropReason>(i);
    }
    throw MalformedLog("unknown drop reason: " + std::string(text));
}

std::string_view to_string(EventKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

}  // namespace spacenet
