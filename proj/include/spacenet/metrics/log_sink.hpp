#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "spacenet/engine/simulation.hpp"
#include "spacenet/metrics/log_record.hpp"

namespace spacenet {

class LogSink {
public:
    virtual ~LogSink() = default;
    virtual void write(const LogRecord& record) = 0;
    virtual void flush() {}
};

class NullSink final : public LogSink {
public:
    void write(const LogRecord&) override {}
};

class MemorySink final : public LogSink {
public:
    void write(const LogRecord& record) override { records_.push_back(record); }
    const std::vector<LogRecord>& records() const { return records_; }

private:
    std::vector<LogRecord> records_;
};

// FNV-1a over the serialized lines; equal digests mean byte-identical logs.
class HashingSink final : public LogSink {
public:
    void write(const LogRecord& record) override;
    std::uint64_t digest() const { return hash_; }
    std::uint64_t lines() const { return lines_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
    std::uint64_t lines_ = 0;
};

class TeeSink final : public LogSink {
public:
    void add(LogSink& sink) { sinks_.push_back(&sink); }
    void write(const LogRecord& record) override;
    void flush() override;

private:
    std::vector<LogSink*> sinks_;
};

// JSON-lines file; paths ending in ".gz" are gzip-compressed.
class JsonlFileSink final : public LogSink {
public:
    explicit JsonlFileSink(const std::filesystem::path& path);
    ~JsonlFileSink() override;
    JsonlFileSink(const JsonlFileSink&) = delete;
    JsonlFileSink& operator=(const JsonlFileSink&) = delete;

    void write(const LogRecord& record) override;
    void flush() override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::vector<LogRecord> read_log(const std::filesystem::path& path);
std::vector<LogRecord> parse_log_text(const std::string& text);

// Turns dispatched events into log records.
class EventLogger final : public EventObserver {
public:
    explicit EventLogger(LogSink& sink) : sink_(sink) {}
    void on_dispatch(const Event& event) override { sink_.write(record_from_event(event)); }

private:
    LogSink& sink_;
};

}  // namespace spacenet
