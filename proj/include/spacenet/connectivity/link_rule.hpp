#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spacenet/core/types.hpp"
#include "spacenet/mobility/constellation.hpp"
#include "spacenet/mobility/orbital_center.hpp"

namespace spacenet {

// Candidate pairs of a rule.
struct AllPairs {};
struct FixedEdges {
    std::vector<std::pair<NodeId, NodeId>> edges;
};
// Fore/aft in-plane neighbors plus same-slot neighbors in adjacent planes of a Walker constellation.
struct PlusGrid {};

using Candidates = std::variant<AllPairs, FixedEdges, PlusGrid>;

struct MaxRange {
    double km = 0.0;
};

struct LineOfSight {
    std::vector<CenterId> occluders;
    double margin_km = 0.0;
};

enum class EndpointSide : std::uint8_t { First, Second };

// The ground station is the endpoint on `side`; its body is its constellation's center.
struct MinElevation {
    double degrees = 10.0;
    EndpointSide side = EndpointSide::First;
};

using Predicate = std::variant<MaxRange, LineOfSight, MinElevation>;

// Links between `first` and `second` (equal for intra-constellation links) that satisfy every predicate.
struct LinkRule {
    std::string name;
    LinkKind kind = LinkKind::Isl;
    ConstellationId first = 0;
    ConstellationId second = 0;
    Candidates candidates = AllPairs{};
    std::vector<Predicate> predicates;
    double bandwidth_bps = 25e6;

    bool is_dynamic() const { return !predicates.empty(); }
};

}  // namespace spacenet
