#include "spacenet/connectivity/topology.hpp"

#include <algorithm>
#include <string>

#include "spacenet/connectivity/geometry.hpp"
#include "spacenet/core/errors.hpp"

namespace spacenet {

namespace {

std::vector<LinkId> plus_grid_pairs(const Constellation& c) {
    const auto* w = std::get_if<WalkerParams>(&c.kind);
    if (!w) throw ConfigError("plus-grid rule requires a Walker constellation: " + c.name);
    const int planes = w->planes;
    const int per_plane = w->sats_per_plane();
    std::vector<LinkId> out;
    auto node = [&](int plane, int slot) { return c.nodes[static_cast<std::size_t>(plane * per_plane + slot)]; };
    for (int k = 0; k < planes; ++k) {
        for (int j = 0; j < per_plane; ++j) {
            if (per_plane > 1) out.emplace_back(node(k, j), node(k, (j + 1) % per_plane));
            if (planes > 1) out.emplace_back(node(k, j), node((k + 1) % planes, j));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

bool TopologySnapshot::contains(LinkId id) const {
    const auto it = std::lower_bound(links.begin(), links.end(), id,
                                     [](const ActiveLink& l, const LinkId& v) { return l.id < v; });
    return it != links.end() && it->id == id;
}

double TopologySnapshot::delay_s(LinkId id) const {
    return propagation_delay_s((*positions)[id.a()], (*positions)[id.b()]);
}

std::vector<LinkChange> diff_topology(const TopologySnapshot& prev, const TopologySnapshot& next) {
    std::vector<LinkChange> downs;
    std::vector<LinkChange> ups;
    auto p = prev.links.begin();
    auto n = next.links.begin();
    while (p != prev.links.end() || n != next.links.end()) {
        if (n == next.links.end() || (p != prev.links.end() && p->id < n->id)) {
            downs.push_back({p->id, false, p->rule});
            ++p;
        } else if (p == prev.links.end() || n->id < p->id) {
            ups.push_back({n->id, true, n->rule});
            ++n;
        } else {
            ++p;
            ++n;
        }
    }
    downs.insert(downs.end(), ups.begin(), ups.end());
    return downs;
}

TopologyModel::TopologyModel(std::shared_ptr<const MobilityModel> mobility, std::vector<LinkRule> rules)
    : mobility_(std::move(mobility)), rules_(std::move(rules)) {
    for (const auto& rule : rules_) {
        mobility_->constellation(rule.first);
        mobility_->constellation(rule.second);
        if (!(rule.bandwidth_bps > 0.0)) throw ConfigError("rule " + rule.name + ": bandwidth must be positive");
        if (std::holds_alternative<AllPairs>(rule.candidates) && rule.predicates.empty()) {
            throw ConfigError("rule " + rule.name + ": dynamic rules need at least one predicate");
        }
        std::vector<LinkId> pairs;
        if (const auto* fixed = std::get_if<FixedEdges>(&rule.candidates)) {
            for (const auto& [x, y] : fixed->edges) {
                if (x >= mobility_->node_count() || y >= mobility_->node_count()) {
                    throw UnknownNode("rule " + rule.name + " references an unknown node");
                }
                pairs.emplace_back(x, y);
            }
            std::sort(pairs.begin(), pairs.end());
            pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        } else if (std::holds_alternative<PlusGrid>(rule.candidates)) {
            pairs = plus_grid_pairs(mobility_->constellation(rule.first));
        }
        static_sets_.emplace_back(pairs.begin(), pairs.end());
        static_pairs_.push_back(std::move(pairs));
    }
}

TopologyModel::Frame TopologyModel::frame(const std::vector<Vec3>& pos, SimTime t) const {
    Frame f{pos, {}};
    f.centers.resize(mobility_->center_count());
    for (CenterId c = 0; c < f.centers.size(); ++c) f.centers[c] = mobility_->center_position(c, t);
    return f;
}

bool TopologyModel::check(const LinkRule& rule, NodeId a, NodeId b, const Frame& f) const {
    const Vec3& pa = f.pos[a];
    const Vec3& pb = f.pos[b];
    for (const auto& pred : rule.predicates) {
        const bool ok = std::visit(
            [&](const auto& p) -> bool {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, MaxRange>) {
                    return distance(pa, pb) <= p.km;
                } else if constexpr (std::is_same_v<P, LineOfSight>) {
                    for (CenterId oc : p.occluders) {
                        const double r = mobility_->center(oc).body_radius_km + p.margin_km;
                        if (!los_clear(pa, pb, f.centers[oc], r)) return false;
                    }
                    return true;
                } else {
                    const ConstellationId side =
                        p.side == EndpointSide::First ? rule.first : rule.second;
                    const NodeId gs = mobility_->constellation_of(a) == side ? a : b;
                    const NodeId other = gs == a ? b : a;
                    const Vec3& body = f.centers[mobility_->center_of(gs)];
                    return elevation_angle(f.pos[gs], f.pos[other], body) >= p.degrees;
                }
            },
            pred);
        if (!ok) return false;
    }
    return true;
}

bool TopologyModel::in_scope(std::uint32_t rule, NodeId a, NodeId b) const {
    const auto& r = rules_[rule];
    if (!std::holds_alternative<AllPairs>(r.candidates)) return static_sets_[rule].contains(LinkId(a, b));
    const auto ca = mobility_->constellation_of(a);
    const auto cb = mobility_->constellation_of(b);
    return (ca == r.first && cb == r.second) || (ca == r.second && cb == r.first);
}

bool TopologyModel::satisfies(const LinkRule& rule, NodeId a, NodeId b, const std::vector<Vec3>& pos,
                              SimTime t) const {
    return check(rule, a, b, frame(pos, t));
}

TopologySnapshot TopologyModel::compute(SimTime t) const {
    return compute(t, std::make_shared<const std::vector<Vec3>>(mobility_->positions(t)));
}

TopologySnapshot TopologyModel::compute(SimTime t, std::shared_ptr<const std::vector<Vec3>> positions) const {
    const Frame f = frame(*positions, t);
    std::vector<ActiveLink> links;
    for (std::uint32_t ri = 0; ri < rules_.size(); ++ri) {
        const auto& rule = rules_[ri];
        if (!std::holds_alternative<AllPairs>(rule.candidates)) {
            for (const LinkId id : static_pairs_[ri]) {
                if (check(rule, id.a(), id.b(), f)) links.push_back({id, ri});
            }
            continue;
        }
        const auto& first = mobility_->constellation(rule.first).nodes;
        const auto& second = mobility_->constellation(rule.second).nodes;
        if (rule.first == rule.second) {
            for (std::size_t i = 0; i < first.size(); ++i) {
                for (std::size_t j = i + 1; j < first.size(); ++j) {
                    if (check(rule, first[i], first[j], f)) links.push_back({LinkId(first[i], first[j]), ri});
                }
            }
        } else {
            for (const NodeId a : first) {
                for (const NodeId b : second) {
                    if (check(rule, a, b, f)) links.push_back({LinkId(a, b), ri});
                }
            }
        }
    }
    std::stable_sort(links.begin(), links.end(), [](const ActiveLink& x, const ActiveLink& y) {
        return x.id != y.id ? x.id < y.id : x.rule < y.rule;
    });
    links.erase(std::unique(links.begin(), links.end(),
                            [](const ActiveLink& x, const ActiveLink& y) { return x.id == y.id; }),
                links.end());
    return TopologySnapshot{t, std::move(links), std::move(positions)};
}

std::vector<ActiveLink> TopologyModel::brute_force(SimTime t) const {
    const auto pos = mobility_->positions(t);
    const Frame f = frame(pos, t);
    std::vector<ActiveLink> links;
    const auto n = static_cast<NodeId>(mobility_->node_count());
    for (NodeId a = 0; a < n; ++a) {
        for (NodeId b = a + 1; b < n; ++b) {
            for (std::uint32_t ri = 0; ri < rules_.size(); ++ri) {
                if (in_scope(ri, a, b) && check(rules_[ri], a, b, f)) {
                    links.push_back({LinkId(a, b), ri});
                    break;
                }
            }
        }
    }
    return links;
}

bool TopologyModel::is_candidate(LinkId id) const { return rule_for(id).has_value(); }

std::optional<std::uint32_t> TopologyModel::rule_for(LinkId id) const {
    if (id.b() >= mobility_->node_count()) return std::nullopt;
    for (std::uint32_t ri = 0; ri < rules_.size(); ++ri) {
        if (in_scope(ri, id.a(), id.b())) return ri;
    }
    return std::nullopt;
}

LinkParams TopologyModel::params(LinkId id) const {
    const auto rule = rule_for(id);
    if (!rule) throw UnknownLink("link " + id.str() + " is not covered by any link rule");
    return {rules_[*rule].kind, rules_[*rule].bandwidth_bps};
}

}  // namespace spacenet
