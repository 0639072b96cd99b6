#include "redkit/csv.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "redkit/errors.hpp"

namespace redkit::csv {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line,
                       const std::string& what) {
    throw validation_error(path + ":" + std::to_string(line) + ": " + what);
}

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool skippable(const std::string& line) {
    const std::string t = strip(line);
    return t.empty() || t[0] == '#';
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(strip(field));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_double(const std::string& tok, const std::string& path,
                    std::size_t line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) fail(path, line, "trailing characters in '" + tok + "'");
        return v;
    } catch (const validation_error&) {
        throw;
    } catch (const std::exception&) {
        fail(path, line, "cannot parse number '" + tok + "'");
    }
}

long parse_long(const std::string& tok, const std::string& path, std::size_t line) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(tok, &pos);
        if (pos != tok.size()) fail(path, line, "trailing characters in '" + tok + "'");
        return v;
    } catch (const validation_error&) {
        throw;
    } catch (const std::exception&) {
        fail(path, line, "cannot parse integer '" + tok + "'");
    }
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    return in;
}

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows,
                      const std::string& path) {
    if (rows.empty()) throw validation_error(path + ": no numeric rows");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols)
            throw validation_error(path + ": ragged rows (row " + std::to_string(i) +
                                   " has " + std::to_string(rows[i].size()) +
                                   " fields, expected " + std::to_string(m.cols) + ")");
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

}  // namespace

std::vector<std::vector<double>> read_numeric_rows(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        std::vector<double> row;
        for (const auto& tok : split_fields(line))
            row.push_back(parse_double(tok, path, lineno));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix read_matrix(const std::string& path) {
    return rows_to_matrix(read_numeric_rows(path), path);
}

std::vector<Matrix> read_matrices(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<Matrix> out;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    auto flush = [&] {
        if (!rows.empty()) {
            out.push_back(rows_to_matrix(rows, path));
            rows.clear();
        }
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (strip(line) == "---") {
            flush();
            continue;
        }
        if (skippable(line)) continue;
        std::vector<double> row;
        for (const auto& tok : split_fields(line))
            row.push_back(parse_double(tok, path, lineno));
        rows.push_back(std::move(row));
    }
    flush();
    if (out.empty()) throw validation_error(path + ": no matrices found");
    return out;
}

std::vector<double> read_values(const std::string& path) {
    std::vector<double> out;
    for (const auto& row : read_numeric_rows(path))
        out.insert(out.end(), row.begin(), row.end());
    if (out.empty()) throw validation_error(path + ": no numeric values");
    return out;
}

std::vector<std::vector<long>> read_int_rows(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<std::vector<long>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        std::vector<long> row;
        for (const auto& tok : split_fields(line))
            row.push_back(parse_long(tok, path, lineno));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw validation_error(path + ": no sample rows");
    return rows;
}

std::vector<std::pair<double, double>> read_pairs(const std::string& path) {
    std::vector<std::pair<double, double>> out;
    std::size_t rowno = 0;
    for (const auto& row : read_numeric_rows(path)) {
        ++rowno;
        if (row.size() != 2)
            throw validation_error(path + ": row " + std::to_string(rowno) +
                                   " must have exactly 2 fields");
        out.emplace_back(row[0], row[1]);
    }
    if (out.empty()) throw validation_error(path + ": no data rows");
    return out;
}

JointTable read_joint_table(const std::string& path) {
    auto in = open_or_throw(path);
    std::string line;
    std::size_t lineno = 0;

    std::vector<std::size_t> sizes;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        const auto fields = split_fields(line);
        if (fields.empty() || fields[0] != "sizes")
            fail(path, lineno, "expected header 'sizes,k1,k2,...'");
        for (std::size_t i = 1; i < fields.size(); ++i) {
            const long k = parse_long(fields[i], path, lineno);
            if (k <= 0) fail(path, lineno, "alphabet sizes must be positive");
            sizes.push_back(static_cast<std::size_t>(k));
        }
        break;
    }
    if (sizes.size() < 2)
        throw validation_error(path + ": header must list at least 2 alphabet sizes");

    std::size_t cells = 1;
    for (std::size_t k : sizes) cells *= k;
    std::vector<double> probs(cells, 0.0);

    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        const auto fields = split_fields(line);
        if (fields.size() != sizes.size() + 1)
            fail(path, lineno,
                 "expected " + std::to_string(sizes.size()) + " indices and a probability");
        std::size_t flat = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            const long idx = parse_long(fields[i], path, lineno);
            if (idx < 0 || static_cast<std::size_t>(idx) >= sizes[i])
                fail(path, lineno, "index " + std::to_string(idx) +
                                       " outside alphabet of coordinate " +
                                       std::to_string(i));
            flat = flat * sizes[i] + static_cast<std::size_t>(idx);
        }
        probs[flat] = parse_double(fields.back(), path, lineno);
    }
    return JointTable(std::move(sizes), std::move(probs));
}

std::vector<CoordinateChannel> read_channels(const std::string& path) {
    const auto matrices = read_matrices(path);
    std::vector<CoordinateChannel> channels;
    channels.reserve(matrices.size());
    for (std::size_t i = 0; i < matrices.size(); ++i)
        channels.emplace_back(i, matrices[i]);
    return channels;
}

void write_trajectory(const std::string& path, const Trajectory& trajectory) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write file: " + path);
    out << "step,R\n";
    char buf[64];
    for (std::size_t t = 0; t < trajectory.values.size(); ++t) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", t, trajectory.values[t]);
        out << buf;
    }
    if (!out) throw validation_error("write failed: " + path);
}

}  // namespace redkit::csv
