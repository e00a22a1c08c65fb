#include "spacenet/core/types.hpp"

#include <charconv>

#include "spacenet/core/errors.hpp"

namespace spacenet {

std::string_view to_string(LinkKind kind) {
    switch (kind) {
        case LinkKind::Isl: return "isl";
        case LinkKind::Ill: return "ill";
        case LinkKind::GroundSpace: return "ground-space";
        case LinkKind::Terrestrial: return "terrestrial";
    }
    return "isl";
}

LinkKind link_kind_from_string(std::string_view text) {
    if (text == "isl") return LinkKind::Isl;
    if (text == "ill") return LinkKind::Ill;
    if (text == "ground-space") return LinkKind::GroundSpace;
    if (text == "terrestrial") return LinkKind::Terrestrial;
    throw ConfigError("unknown link kind: " + std::string(text));
}

LinkId::LinkId(NodeId x, NodeId y) : a_(x < y ? x : y), b_(x < y ? y : x) {
    if (x == y) throw std::invalid_argument("link endpoints must differ");
}

std::string LinkId::str() const { return std::to_string(a_) + "-" + std::to_string(b_); }

LinkId LinkId::parse(std::string_view text) {
    const auto dash = text.find('-');
    if (dash == std::string_view::npos) throw MalformedLog("bad link id: " + std::string(text));
    NodeId x = 0;
    NodeId y = 0;
    const auto first = std::from_chars(text.data(), text.data() + dash, x);
    const auto second = std::from_chars(text.data() + dash + 1, text.data() + text.size(), y);
    if (first.ec != std::errc{} || second.ec != std::errc{} || first.ptr != text.data() + dash ||
        second.ptr != text.data() + text.size() || x == y) {
        throw MalformedLog("bad link id: " + std::string(text));
    }
    return LinkId(x, y);
}

}  // namespace spacenet
