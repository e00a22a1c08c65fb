#include "spacenet/metrics/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "spacenet/core/errors.hpp"

namespace spacenet {

namespace {

double pct(std::uint64_t part, std::uint64_t whole) {
    return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::string fixed(double v, int digits) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

}  // namespace

void StatsAccumulator::write(const LogRecord& r) {
    switch (r.kind) {
        case RecordKind::RunStart:
            start_ = r.t;
            stats_.scenario = r.label;
            stats_.mode = r.detail;
            stats_.loss_probability = r.dur.value_or(0.0);
            break;
        case RecordKind::RunEnd:
            end_ = r.t;
            break;
        case RecordKind::MessageCreated:
            ++stats_.created;
            break;
        case RecordKind::MessageReceived:
            ++stats_.delivered;
            latency_sum_ += r.t - r.created.value_or(r.t);
            hops_sum_ += r.hops.value_or(0);
            break;
        case RecordKind::MessageDropped:
            if (r.reason.value_or(DropReason::Loss) == DropReason::Loss) {
                ++stats_.lost;
            } else {
                ++stats_.dropped;
                ++stats_.dropped_by_reason[*r.reason];
            }
            break;
        case RecordKind::Transmission: {
            if (!r.link || !r.from || !r.dur) throw MalformedLog("transmission record lacks link/from/dur");
            auto& ch = channels_[{*r.link, *r.from}];
            ch.busy_s += *r.dur;
            ch.last_start = r.t;
            ch.last_dur = *r.dur;
            ++ch.transmissions;
            break;
        }
        case RecordKind::TransmissionAborted: {
            if (!r.link || !r.from) throw MalformedLog("abort record lacks link/from");
            const auto it = channels_.find({*r.link, *r.from});
            if (it == channels_.end()) throw MalformedLog("abort without a transmission on " + r.link->str());
            auto& ch = it->second;
            const double unfinished = ch.last_start + ch.last_dur - r.t;
            if (unfinished > 0.0) {
                ch.busy_s -= unfinished;
                ch.last_dur -= unfinished;
            }
            break;
        }
        default:
            break;
    }
}

std::vector<double> StatsAccumulator::channel_utilization_pct() const {
    std::vector<double> out;
    if (!start_ || !end_) return out;
    const double length = *end_ - *start_;
    for (const auto& [key, ch] : channels_) {
        if (ch.transmissions == 0) continue;
        double busy = ch.busy_s - std::max(0.0, ch.last_start + ch.last_dur - *end_);
        double u = length > 0.0 ? 100.0 * busy / length : 0.0;
        out.push_back(std::clamp(u, 0.0, 100.0));
    }
    return out;
}

AggregateStats StatsAccumulator::result() const {
    if (!start_ || !end_) throw MalformedLog("log lacks RunStart/RunEnd records");
    AggregateStats s = stats_;
    s.run_length_s = *end_ - *start_;
    const std::uint64_t terminal = s.delivered + s.dropped + s.lost;
    if (terminal > s.created) throw MalformedLog("more terminal records than created messages");
    s.residual = s.created - terminal;
    s.delivered_pct = pct(s.delivered, s.created);
    s.dropped_pct = pct(s.dropped, s.created);
    s.lost_pct = pct(s.lost, s.created);
    s.residual_pct = pct(s.residual, s.created);
    if (s.delivered > 0) {
        s.mean_latency_s = latency_sum_ / static_cast<double>(s.delivered);
        s.mean_hops = hops_sum_ / static_cast<double>(s.delivered);
    }
    const auto util = channel_utilization_pct();
    s.active_channels = util.size();
    if (!util.empty()) {
        double sum = 0.0;
        for (const double u : util) sum += u;
        s.mean_link_utilization_pct = sum / static_cast<double>(util.size());
        s.max_link_utilization_pct = *std::max_element(util.begin(), util.end());
    }
    return s;
}

AggregateStats summarize(const std::vector<LogRecord>& log) {
    StatsAccumulator acc;
    for (const auto& r : log) acc.write(r);
    return acc.result();
}

std::vector<SaturationBin> saturation_timeseries(const std::vector<LogRecord>& log, LinkId link, double bin_s,
                                                 std::optional<NodeId> from) {
    if (!(bin_s > 0.0)) throw ConfigError("saturation bin width must be positive");
    std::optional<double> start;
    std::optional<double> end;
    // busy intervals per direction (0: from a, 1: from b)
    std::vector<std::pair<double, double>> busy[2];
    for (const auto& r : log) {
        if (r.kind == RecordKind::RunStart) start = r.t;
        if (r.kind == RecordKind::RunEnd) end = r.t;
        if ((r.kind != RecordKind::Transmission && r.kind != RecordKind::TransmissionAborted) || r.link != link) {
            continue;
        }
        auto& list = busy[*r.from == link.a() ? 0 : 1];
        if (r.kind == RecordKind::Transmission) {
            list.emplace_back(r.t, r.t + r.dur.value_or(0.0));
        } else if (!list.empty()) {
            list.back().second = std::min(list.back().second, r.t);
        }
    }
    if (!end) {
        end = 0.0;
        for (const auto& l : busy) {
            for (const auto& [s, e] : l) end = std::max(*end, e);
        }
    }
    const double t0 = start.value_or(0.0);
    const auto nbins = static_cast<std::size_t>(std::ceil((*end - t0) / bin_s - 1e-12));
    std::vector<double> frac[2];
    for (int d = 0; d < 2; ++d) {
        frac[d].assign(nbins, 0.0);
        for (const auto& [s, e] : busy[d]) {
            if (e <= s) continue;
            auto i = static_cast<std::size_t>(std::max(0.0, std::floor((s - t0) / bin_s)));
            for (; i < nbins; ++i) {
                const double lo = t0 + static_cast<double>(i) * bin_s;
                const double hi = lo + bin_s;
                if (lo >= e) break;
                const double overlap = std::min(hi, e) - std::max(lo, s);
                if (overlap > 0.0) frac[d][i] += overlap / bin_s;
            }
        }
    }
    std::vector<SaturationBin> out(nbins);
    for (std::size_t i = 0; i < nbins; ++i) {
        double u = 0.0;
        if (!from || *from == link.a()) u = std::max(u, frac[0][i]);
        if (!from || *from == link.b()) u = std::max(u, frac[1][i]);
        out[i] = {t0 + static_cast<double>(i) * bin_s, std::clamp(100.0 * u, 0.0, 100.0)};
    }
    return out;
}

Histogram latency_histogram(const std::vector<LogRecord>& log, std::size_t bins) {
    if (bins == 0) throw ConfigError("histogram needs at least one bin");
    std::vector<double> latencies;
    for (const auto& r : log) {
        if (r.kind == RecordKind::MessageReceived) latencies.push_back(r.t - r.created.value_or(r.t));
    }
    if (latencies.empty()) throw EmptySelection("no delivered messages in log");
    const auto [lo_it, hi_it] = std::minmax_element(latencies.begin(), latencies.end());
    Histogram h;
    h.lo = *lo_it;
    h.width = (*hi_it - *lo_it) / static_cast<double>(bins);
    h.counts.assign(bins, 0);
    for (const double v : latencies) {
        std::size_t i = h.width > 0.0 ? static_cast<std::size_t>((v - h.lo) / h.width) : 0;
        ++h.counts[std::min(i, bins - 1)];
    }
    return h;
}

std::string summary_csv_header() {
    return "scenario,mode,loss_pct,delivered_pct,dropped_pct,mean_latency_s,mean_hops,mean_link_utilization_pct,"
           "max_link_utilization_pct,lost_pct,residual_pct,created,delivered,dropped,lost,residual";
}

std::string summary_csv_row(const AggregateStats& s) {
    std::string row = s.scenario + "," + s.mode + "," + fixed(100.0 * s.loss_probability, 1) + ",";
    row += fixed(s.delivered_pct, 2) + "," + fixed(s.dropped_pct, 2) + "," + fixed(s.mean_latency_s, 2) + ",";
    row += fixed(s.mean_hops, 2) + "," + fixed(s.mean_link_utilization_pct, 2) + ",";
    row += fixed(s.max_link_utilization_pct, 2) + "," + fixed(s.lost_pct, 2) + "," + fixed(s.residual_pct, 2) + ",";
    row += std::to_string(s.created) + "," + std::to_string(s.delivered) + "," + std::to_string(s.dropped) + ",";
    row += std::to_string(s.lost) + "," + std::to_string(s.residual);
    return row;
}

void write_summary_csv(std::ostream& out, const std::vector<AggregateStats>& rows) {
    out << summary_csv_header() << '\n';
    for (const auto& r : rows) out << summary_csv_row(r) << '\n';
}

}  // namespace spacenet
