#include "spacenet/metrics/log_sink.hpp"

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "spacenet/core/errors.hpp"

namespace spacenet {

namespace {

bool is_gzip_path(const std::filesystem::path& path) { return path.extension() == ".gz"; }

}  // namespace

void HashingSink::write(const LogRecord& record) {
    const std::string line = to_json_line(record);
    for (const char c : line) {
        hash_ ^= static_cast<unsigned char>(c);
        hash_ *= 0x100000001b3ULL;
    }
    hash_ ^= static_cast<unsigned char>('\n');
    hash_ *= 0x100000001b3ULL;
    ++lines_;
}

void TeeSink::write(const LogRecord& record) {
    for (auto* s : sinks_) s->write(record);
}

void TeeSink::flush() {
    for (auto* s : sinks_) s->flush();
}

struct JsonlFileSink::Impl {
    std::ofstream plain;
    gzFile gz = nullptr;
    std::string buffer;

    void drain() {
        if (buffer.empty()) return;
        if (gz) {
            if (gzwrite(gz, buffer.data(), static_cast<unsigned>(buffer.size())) == 0) {
                throw SpacenetError("failed writing compressed log");
            }
        } else {
            plain.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
            if (!plain) throw SpacenetError("failed writing log");
        }
        buffer.clear();
    }
};

JsonlFileSink::JsonlFileSink(const std::filesystem::path& path) : impl_(std::make_unique<Impl>()) {
    if (is_gzip_path(path)) {
        impl_->gz = gzopen(path.string().c_str(), "wb");
        if (!impl_->gz) throw SpacenetError("cannot open log file " + path.string());
    } else {
        impl_->plain.open(path, std::ios::binary | std::ios::trunc);
        if (!impl_->plain) throw SpacenetError("cannot open log file " + path.string());
    }
}

JsonlFileSink::~JsonlFileSink() {
    try {
        impl_->drain();
    } catch (...) {
    }
    if (impl_->gz) gzclose(impl_->gz);
}

void JsonlFileSink::write(const LogRecord& record) {
    impl_->buffer += to_json_line(record);
    impl_->buffer.push_back('\n');
    if (impl_->buffer.size() > (1u << 20)) impl_->drain();
}

void JsonlFileSink::flush() {
    impl_->drain();
    if (impl_->gz) {
        gzflush(impl_->gz, Z_SYNC_FLUSH);
    } else {
        impl_->plain.flush();
    }
}

std::vector<LogRecord> parse_log_text(const std::string& text) {
    std::vector<LogRecord> out;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        ++line_no;
        std::string_view line(text.data() + pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) {
            try {
                out.push_back(parse_json_line(line));
            } catch (const MalformedLog& e) {
                throw MalformedLog("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        pos = end + 1;
    }
    return out;
}

std::vector<LogRecord> read_log(const std::filesystem::path& path) {
    std::string text;
    if (is_gzip_path(path)) {
        gzFile gz = gzopen(path.string().c_str(), "rb");
        if (!gz) throw MalformedLog("cannot open log file " + path.string());
        char buf[1 << 16];
        int n = 0;
        while ((n = gzread(gz, buf, sizeof buf)) > 0) text.append(buf, static_cast<std::size_t>(n));
        const bool failed = n < 0;
        gzclose(gz);
        if (failed) throw MalformedLog("corrupt compressed log " + path.string());
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw MalformedLog("cannot open log file " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return parse_log_text(text);
}

}  // namespace spacenet
