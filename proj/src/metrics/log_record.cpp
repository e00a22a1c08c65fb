#include "spacenet/metrics/log_record.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <nlohmann/json.hpp>

#include "spacenet/core/errors.hpp"

namespace spacenet {

namespace {

constexpr std::array<std::string_view, 16> kRecordNames = {
    "MessageCreated",     "MessageSent",        "MessageReceived",     "MessageDropped",
    "MessageReceptionCanceled", "LTPSegmentReceived", "LinkUp",     "LinkDown",
    "RoutingTableUpdate", "TimerExpired",       "TrafficTick",         "ScenarioCustom",
    "Transmission",       "TransmissionAborted", "RunStart",           "RunEnd",
};

std::string_view timer_owner_name(TimerOwner owner) {
    switch (owner) {
        case TimerOwner::Transport: return "transport";
        case TimerOwner::LtpCheckpoint: return "ltp-checkpoint";
        case TimerOwner::LtpReport: return "ltp-report";
        case TimerOwner::User: return "user";
    }
    return "user";
}

std::string_view segment_type_name(SegmentType type) {
    switch (type) {
        case SegmentType::Data: return "data";
        case SegmentType::Report: return "report";
        case SegmentType::ReportAck: return "ack";
    }
    return "data";
}

void append_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

template <typename T>
void append_int(std::string& out, T v) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

void append_string(std::string& out, std::string_view s) {
    out.push_back('"');
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

void fill_message(LogRecord& r, const Message& m) {
    r.uid = m.uid;
    r.size = m.size_bits;
    r.hops = m.hop_count;
    r.created = m.created_at;
}

}  // namespace

std::string_view to_string(RecordKind kind) { return kRecordNames[static_cast<std::size_t>(kind)]; }

RecordKind record_kind_from_string(std::string_view text) {
    for (std::size_t i = 0; i < kRecordNames.size(); ++i) {
        if (kRecordNames[i] == text) return static_cast<RecordKind>(i);
    }
    throw MalformedLog("unknown record kind: " + std::string(text));
}

LogRecord record_from_event(const Event& event) {
    LogRecord r;
    r.t = event.time;
    r.kind = static_cast<RecordKind>(event.kind());
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, MessageCreated>) {
                r.uid = p.msg.uid;
                r.node = p.msg.source;
                r.to = p.msg.destination;
                r.size = p.msg.size_bits;
                r.created = p.msg.created_at;
                r.label = p.msg.label;
            } else if constexpr (std::is_same_v<P, MessageSent>) {
                r.uid = p.msg.uid;
                r.from = p.from;
                r.to = p.to;
                r.link = p.link;
                r.size = p.msg.size_bits;
                r.hops = p.msg.hop_count;
            } else if constexpr (std::is_same_v<P, MessageReceived>) {
                fill_message(r, p.msg);
                r.node = p.node;
            } else if constexpr (std::is_same_v<P, MessageDropped>) {
                fill_message(r, p.msg);
                r.node = p.node;
                r.reason = p.reason;
            } else if constexpr (std::is_same_v<P, MessageReceptionCanceled>) {
                r.uid = p.message_uid;
                r.node = p.node;
                r.count = static_cast<std::int64_t>(p.session);
            } else if constexpr (std::is_same_v<P, LtpSegmentReceived>) {
                r.uid = p.segment.uid;
                r.from = p.from;
                r.to = p.to;
                r.link = p.link;
                r.size = p.segment.bits;
                r.count = static_cast<std::int64_t>(p.segment.session);
                r.label = std::string(segment_type_name(p.segment.type));
            } else if constexpr (std::is_same_v<P, LinkUp>) {
                r.link = p.link;
                r.label = std::string(to_string(p.params.kind));
            } else if constexpr (std::is_same_v<P, LinkDown>) {
                r.link = p.link;
            } else if constexpr (std::is_same_v<P, RoutingTableUpdate>) {
                r.count = static_cast<std::int64_t>(p.epoch);
            } else if constexpr (std::is_same_v<P, TimerExpired>) {
                r.label = std::string(timer_owner_name(p.owner));
                r.count = static_cast<std::int64_t>(p.key);
                r.uid = p.serial;
                r.hops = p.attempt;
            } else if constexpr (std::is_same_v<P, ScenarioCustom>) {
                r.label = p.label;
                r.count = p.value;
            }
        },
        event.payload);
    return r;
}

std::string to_json_line(const LogRecord& r) {
    std::string out;
    out.reserve(128);
    out += "{\"t\":";
    append_double(out, r.t);
    out += ",\"kind\":";
    append_string(out, to_string(r.kind));
    auto key = [&](const char* name) {
        out += ",\"";
        out += name;
        out += "\":";
    };
    if (r.uid) key("uid"), append_int(out, *r.uid);
    if (r.node) key("node"), append_int(out, *r.node);
    if (r.from) key("from"), append_int(out, *r.from);
    if (r.to) key("to"), append_int(out, *r.to);
    if (r.link) key("link"), append_string(out, r.link->str());
    if (r.reason) key("reason"), append_string(out, to_string(*r.reason));
    if (r.size) key("size"), append_int(out, *r.size);
    if (r.dur) key("dur"), append_double(out, *r.dur);
    if (r.hops) key("hops"), append_int(out, *r.hops);
    if (r.created) key("created"), append_double(out, *r.created);
    if (r.count) key("count"), append_int(out, *r.count);
    if (!r.label.empty()) key("label"), append_string(out, r.label);
    if (!r.detail.empty()) key("detail"), append_string(out, r.detail);
    out += "}";
    return out;
}

LogRecord parse_json_line(std::string_view line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedLog(std::string("invalid JSON log line: ") + e.what());
    }
    if (!j.is_object() || !j.contains("t") || !j.contains("kind")) throw MalformedLog("log line lacks t/kind");
    LogRecord r;
    try {
        r.t = j.at("t").get<double>();
        r.kind = record_kind_from_string(j.at("kind").get<std::string>());
        if (j.contains("uid")) r.uid = j["uid"].get<Uid>();
        if (j.contains("node")) r.node = j["node"].get<NodeId>();
        if (j.contains("from")) r.from = j["from"].get<NodeId>();
        if (j.contains("to")) r.to = j["to"].get<NodeId>();
        if (j.contains("link")) r.link = LinkId::parse(j["link"].get<std::string>());
        if (j.contains("reason")) r.reason = drop_reason_from_string(j["reason"].get<std::string>());
        if (j.contains("size")) r.size = j["size"].get<std::uint64_t>();
        if (j.contains("dur")) r.dur = j["dur"].get<double>();
        if (j.contains("hops")) r.hops = j["hops"].get<std::uint32_t>();
        if (j.contains("created")) r.created = j["created"].get<double>();
        if (j.contains("count")) r.count = j["count"].get<std::int64_t>();
        if (j.contains("label")) r.label = j["label"].get<std::string>();
        if (j.contains("detail")) r.detail = j["detail"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedLog(std::string("bad field in log line: ") + e.what());
    }
    return r;
}

}  // namespace spacenet
