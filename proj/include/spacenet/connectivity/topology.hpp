#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_set>
#include <vector>

#include "spacenet/connectivity/link_rule.hpp"
#include "spacenet/core/types.hpp"
#include "spacenet/mobility/mobility_model.hpp"

namespace spacenet {

struct ActiveLink {
    LinkId id;
    std::uint32_t rule = 0;

    friend bool operator==(const ActiveLink&, const ActiveLink&) = default;
};

struct TopologySnapshot {
    SimTime time = 0.0;
    std::vector<ActiveLink> links;  // sorted by id
    std::shared_ptr<const std::vector<Vec3>> positions;

    bool contains(LinkId id) const;
    double delay_s(LinkId id) const;
};

struct LinkChange {
    LinkId link;
    bool up = false;
    std::uint32_t rule = 0;

    friend bool operator==(const LinkChange&, const LinkChange&) = default;
};

// Downs first, then ups, each sorted by link id.
std::vector<LinkChange> diff_topology(const TopologySnapshot& prev, const TopologySnapshot& next);

// Evaluates link rules against the mobility model.
class TopologyModel {
public:
    TopologyModel(std::shared_ptr<const MobilityModel> mobility, std::vector<LinkRule> rules);

    const MobilityModel& mobility() const { return *mobility_; }
    const std::vector<LinkRule>& rules() const { return rules_; }
    std::size_t node_count() const { return mobility_->node_count(); }

    TopologySnapshot compute(SimTime t) const;
    TopologySnapshot compute(SimTime t, std::shared_ptr<const std::vector<Vec3>> positions) const;

    // Reference implementation that evaluates every node pair against every rule.
    std::vector<ActiveLink> brute_force(SimTime t) const;

    bool satisfies(const LinkRule& rule, NodeId a, NodeId b, const std::vector<Vec3>& pos, SimTime t) const;

    bool is_candidate(LinkId id) const;
    std::optional<std::uint32_t> rule_for(LinkId id) const;
    LinkParams params(LinkId id) const;

private:
    struct Frame {
        const std::vector<Vec3>& pos;
        std::vector<Vec3> centers;
    };

    Frame frame(const std::vector<Vec3>& pos, SimTime t) const;
    bool check(const LinkRule& rule, NodeId a, NodeId b, const Frame& f) const;
    bool in_scope(std::uint32_t rule, NodeId a, NodeId b) const;

    std::shared_ptr<const MobilityModel> mobility_;
    std::vector<LinkRule> rules_;
    std::vector<std::vector<LinkId>> static_pairs_;  // per rule, empty for AllPairs
    std::vector<std::unordered_set<LinkId>> static_sets_;
};

}  // namespace spacenet
