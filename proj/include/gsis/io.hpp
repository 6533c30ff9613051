#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "gsis/graph.hpp"

namespace gsis {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Reads a matrix in either supported text format:
///  - coordinate: header `matrix R C NNZ`, then NNZ lines `i j value` with
///    1-based indices. For square matrices an off-diagonal entry given only
///    once is mirrored; giving (i,j) twice is a ParseError.
///  - dense: no header, R lines of C whitespace-separated numbers.
/// Blank lines and lines starting with '#' are skipped in both formats.
Matrix read_matrix(std::istream& in, const std::string& name);
Matrix read_matrix_file(const std::string& path);

/// Dense writer with round-trip precision.
void write_matrix(std::ostream& out, const Matrix& m);

/// Signal file: one number per line.
Vector read_signal(std::istream& in, const std::string& name);
Vector read_signal_file(const std::string& path);
void write_signal(std::ostream& out, const Vector& x);

/// Graph file: header `graph N`, then one `u v [w]` line per edge with
/// 0-based endpoints; the weight defaults to 1.
Graph read_graph(std::istream& in, const std::string& name);
Graph read_graph_file(const std::string& path);

std::string format_double(double v);

} // namespace gsis
