#include "redkit/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "redkit/errors.hpp"

namespace redkit {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
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
                    out += c;
                }
        }
    }
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string fnv1a64_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char chunk[4096];
    while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(chunk[i]);
            hash *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::add_input(const std::string& name, const std::string& path) {
    inputs_.emplace_back(name, std::make_pair(path, fnv1a64_hex(path)));
}

void Report::add_result(const std::string& key, double value) {
    if (!std::isfinite(value))
        throw numeric_error("report: non-finite value for '" + key + "'");
    results_.emplace_back(key, Value{value});
}

void Report::add_result(const std::string& key, bool value) {
    results_.emplace_back(key, Value{value});
}

void Report::add_result(const std::string& key, long value) {
    results_.emplace_back(key, Value{value});
}

void Report::add_result(const std::string& key, const std::string& value) {
    results_.emplace_back(key, Value{value});
}

void Report::add_result(const std::string& key, std::span<const double> values) {
    for (double v : values)
        if (!std::isfinite(v))
            throw numeric_error("report: non-finite value in '" + key + "'");
    results_.emplace_back(key, Value{std::vector<double>(values.begin(), values.end())});
}

std::string Report::to_json() const {
    std::string out = "{\"schema_version\":\"1\",\"command\":\"" + escape(command_) +
                      "\",\"inputs\":{";
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
        if (i) out += ',';
        out += '"' + escape(inputs_[i].first) + "\":{\"path\":\"" +
               escape(inputs_[i].second.first) + "\",\"fnv1a64\":\"" +
               inputs_[i].second.second + "\"}";
    }
    out += "},\"results\":{";
    for (std::size_t i = 0; i < results_.size(); ++i) {
        if (i) out += ',';
        out += '"' + escape(results_[i].first) + "\":";
        const auto& v = results_[i].second.v;
        if (std::holds_alternative<double>(v)) {
            out += format_double(std::get<double>(v));
        } else if (std::holds_alternative<bool>(v)) {
            out += std::get<bool>(v) ? "true" : "false";
        } else if (std::holds_alternative<long>(v)) {
            out += std::to_string(std::get<long>(v));
        } else if (std::holds_alternative<std::string>(v)) {
            out += '"' + escape(std::get<std::string>(v)) + '"';
        } else {
            out += '[';
            const auto& arr = std::get<std::vector<double>>(v);
            for (std::size_t j = 0; j < arr.size(); ++j) {
                if (j) out += ',';
                out += format_double(arr[j]);
            }
            out += ']';
        }
    }
    out += "}}";
    return out;
}

}  // namespace redkit
