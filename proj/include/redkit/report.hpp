#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace redkit {

// Machine-readable result record emitted by the CLI as JSON. Key order is
// insertion order and floats are printed with 9 significant digits, so
// identical inputs always produce byte-identical output.
class Report {
public:
    explicit Report(std::string command);

    // Records the file path together with a 64-bit FNV-1a digest of its bytes.
    void add_input(const std::string& name, const std::string& path);

    void add_result(const std::string& key, double value);  // must be finite
    void add_result(const std::string& key, bool value);
    void add_result(const std::string& key, long value);
    void add_result(const std::string& key, const std::string& value);
    void add_result(const std::string& key, std::span<const double> values);

    std::string to_json() const;

private:
    struct Value {
        std::variant<double, bool, long, std::string, std::vector<double>> v;
    };

    std::string command_;
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>> inputs_;
    std::vector<std::pair<std::string, Value>> results_;
};

// 9-significant-digit float formatting shared by the report writer and tests.
std::string format_double(double value);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string fnv1a64_hex(const std::string& path);

}  // namespace redkit
