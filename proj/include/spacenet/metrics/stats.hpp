#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spacenet/metrics/log_record.hpp"
#include "spacenet/metrics/log_sink.hpp"

namespace spacenet {

struct AggregateStats {
    std::string scenario;
    std::string mode;
    double loss_probability = 0.0;
    double run_length_s = 0.0;

    std::uint64_t created = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped = 0;
    std::uint64_t lost = 0;
    std::uint64_t residual = 0;
    std::map<DropReason, std::uint64_t> dropped_by_reason;

    double delivered_pct = 0.0;
    double dropped_pct = 0.0;
    double lost_pct = 0.0;
    double residual_pct = 0.0;
    double mean_latency_s = 0.0;
    double mean_hops = 0.0;
    double mean_link_utilization_pct = 0.0;
    double max_link_utilization_pct = 0.0;
    std::uint64_t active_channels = 0;

    friend bool operator==(const AggregateStats&, const AggregateStats&) = default;
};

// Online summary of a record stream; feeding a stored log gives the same result as the live run.
class StatsAccumulator final : public LogSink {
public:
    void write(const LogRecord& record) override;
    AggregateStats result() const;

    struct ChannelUsage {
        double busy_s = 0.0;
        double last_start = 0.0;
        double last_dur = 0.0;
        std::uint64_t transmissions = 0;
    };
    // Directed channel (link, sender) usage.
    const std::map<std::pair<LinkId, NodeId>, ChannelUsage>& channels() const { return channels_; }
    std::vector<double> channel_utilization_pct() const;

private:
    AggregateStats stats_;
    std::optional<double> start_;
    std::optional<double> end_;
    double latency_sum_ = 0.0;
    double hops_sum_ = 0.0;
    std::map<std::pair<LinkId, NodeId>, ChannelUsage> channels_;
};

AggregateStats summarize(const std::vector<LogRecord>& log);

struct SaturationBin {
    double t = 0.0;
    double utilization_pct = 0.0;
};

// Busy fraction of the channel link/from per bin over [0, run end); with no `from` the busier direction wins.
std::vector<SaturationBin> saturation_timeseries(const std::vector<LogRecord>& log, LinkId link, double bin_s,
                                                 std::optional<NodeId> from = std::nullopt);

struct Histogram {
    double lo = 0.0;
    double width = 0.0;
    std::vector<std::uint64_t> counts;
};

Histogram latency_histogram(const std::vector<LogRecord>& log, std::size_t bins);

void write_summary_csv(std::ostream& out, const std::vector<AggregateStats>& rows);
std::string summary_csv_header();
std::string summary_csv_row(const AggregateStats& s);

}  // namespace spacenet
