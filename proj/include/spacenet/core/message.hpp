#pragma once

#include <cstdint>
#include <string>

#include "spacenet/core/types.hpp"

namespace spacenet {

inline constexpr std::uint64_t kBitsPerMegabyte = 8'000'000;

struct Message {
    Uid uid = 0;
    NodeId source = 0;
    NodeId destination = 0;
    std::uint64_t size_bits = 0;
    SimTime created_at = 0.0;
    std::uint32_t hop_count = 0;
    std::string label;
    bool broadcast = false;
};

}  // namespace spacenet
