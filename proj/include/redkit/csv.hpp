#pragma once

#include <string>
#include <utility>
#include <vector>

#include "redkit/discrete.hpp"
#include "redkit/equilibrium.hpp"
#include "redkit/linalg.hpp"

namespace redkit::csv {

// Dialect: comma-separated, '.' decimal point, '#' comment lines, UTF-8,
// no locale dependence. Parse errors name the offending line.

// Numeric rows (blank and comment lines skipped).
std::vector<std::vector<double>> read_numeric_rows(const std::string& path);

// Rows of equal length as a dense matrix.
Matrix read_matrix(const std::string& path);

// Several matrices in one file, separated by '---' lines.
std::vector<Matrix> read_matrices(const std::string& path);

// Every numeric token in the file, flattened (eigenvalue lists).
std::vector<double> read_values(const std::string& path);

// Integer sample rows (symbol indices).
std::vector<std::vector<long>> read_int_rows(const std::string& path);

// Two-column (x, y) rows.
std::vector<std::pair<double, double>> read_pairs(const std::string& path);

// Sparse joint-table format: header 'sizes,k1,k2,...', then one line per
// cell 'i1,i2,...,prob'; omitted cells are 0.
JointTable read_joint_table(const std::string& path);

// Row-stochastic matrices separated by '---', one per coordinate in order.
std::vector<CoordinateChannel> read_channels(const std::string& path);

// Trajectory as 'step,R' rows with a header line.
void write_trajectory(const std::string& path, const Trajectory& trajectory);

}  // namespace redkit::csv
