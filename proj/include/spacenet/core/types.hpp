#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace spacenet {

using NodeId = std::uint32_t;
using SimTime = double;
using Uid = std::uint64_t;

enum class LinkKind : std::uint8_t { Isl, Ill, GroundSpace, Terrestrial };

std::string_view to_string(LinkKind kind);
LinkKind link_kind_from_string(std::string_view text);

// Undirected node pair, stored with the smaller id first.
class LinkId {
public:
    LinkId() = default;
    LinkId(NodeId x, NodeId y);

    NodeId a() const { return a_; }
    NodeId b() const { return b_; }
    bool touches(NodeId n) const { return a_ == n || b_ == n; }
    NodeId other(NodeId n) const { return n == a_ ? b_ : a_; }

    std::string str() const;
    static LinkId parse(std::string_view text);

    auto operator<=>(const LinkId&) const = default;

private:
    NodeId a_ = 0;
    NodeId b_ = 1;
};

struct LinkParams {
    LinkKind kind = LinkKind::Isl;
    double bandwidth_bps = 25e6;
};

}  // namespace spacenet

template <>
struct std::hash<spacenet::LinkId> {
    std::size_t operator()(const spacenet::LinkId& id) const noexcept {
        return std::hash<std::uint64_t>{}((std::uint64_t{id.a()} << 32) | id.b());
    }
};
