#include "gsis/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "gsis/errors.hpp"

namespace gsis {

namespace {

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        size_t start = line.find_first_not_of(" \t\r\n");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        return true;
    }
    return false;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, const std::string& name) {
    try {
        size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(name + ": expected a number, got '" + tok + "'");
    }
}

long parse_integer(const std::string& tok, const std::string& name) {
    try {
        size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(name + ": expected an integer, got '" + tok + "'");
    }
}

Matrix read_coordinate_matrix(std::istream& in, const std::vector<std::string>& header,
                              const std::string& name) {
    if (header.size() != 4)
        throw ParseError(name + ": coordinate header must be 'matrix R C NNZ'");
    const long rows = parse_integer(header[1], name);
    const long cols = parse_integer(header[2], name);
    const long nnz = parse_integer(header[3], name);
    if (rows < 1 || cols < 1 || nnz < 0)
        throw ParseError(name + ": bad coordinate header dimensions");

    std::map<std::pair<long, long>, double> entries;
    std::string line;
    for (long k = 0; k < nnz; ++k) {
        if (!next_content_line(in, line))
            throw ParseError(name + ": expected " + std::to_string(nnz) +
                             " entries, file ended after " + std::to_string(k));
        auto toks = tokenize(line);
        if (toks.size() != 3)
            throw ParseError(name + ": entry line must be 'i j value', got '" + line + "'");
        const long i = parse_integer(toks[0], name);
        const long j = parse_integer(toks[1], name);
        const double v = parse_number(toks[2], name);
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw ParseError(name + ": entry index (" + std::to_string(i) + ", " +
                             std::to_string(j) + ") out of range");
        if (!entries.emplace(std::make_pair(i, j), v).second)
            throw ParseError(name + ": duplicate entry (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
    }
    if (next_content_line(in, line))
        throw ParseError(name + ": trailing content after " + std::to_string(nnz) + " entries");

    Matrix m = Matrix::Zero(rows, cols);
    for (const auto& [key, v] : entries) m(key.first - 1, key.second - 1) = v;
    if (rows == cols) {
        for (const auto& [key, v] : entries) {
            if (key.first == key.second) continue;
            if (!entries.count({key.second, key.first})) m(key.second - 1, key.first - 1) = v;
        }
    }
    return m;
}

Matrix read_dense_matrix(std::istream& in, const std::vector<std::string>& first,
                         const std::string& name) {
    std::vector<std::vector<double>> rows;
    std::vector<double> row;
    for (const auto& t : first) row.push_back(parse_number(t, name));
    rows.push_back(row);
    std::string line;
    while (next_content_line(in, line)) {
        auto toks = tokenize(line);
        row.clear();
        for (const auto& t : toks) row.push_back(parse_number(t, name));
        if (row.size() != rows[0].size())
            throw ParseError(name + ": row " + std::to_string(rows.size() + 1) + " has " +
                             std::to_string(row.size()) + " entries, expected " +
                             std::to_string(rows[0].size()));
        rows.push_back(row);
    }
    Matrix m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

} // namespace

Matrix read_matrix(std::istream& in, const std::string& name) {
    std::string line;
    if (!next_content_line(in, line)) throw ParseError(name + ": empty matrix file");
    auto toks = tokenize(line);
    if (!toks.empty() && toks[0] == "matrix") return read_coordinate_matrix(in, toks, name);
    if (!toks.empty() && toks[0] == "graph")
        throw ParseError(name + ": found a graph file where a matrix was expected");
    return read_dense_matrix(in, toks, name);
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file '" + path + "'");
    return read_matrix(in, path);
}

std::string format_double(double v) {
    char buf[32];
    snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_matrix(std::ostream& out, const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Vector read_signal(std::istream& in, const std::string& name) {
    std::vector<double> vals;
    std::string line;
    while (next_content_line(in, line)) {
        auto toks = tokenize(line);
        if (toks.size() != 1)
            throw ParseError(name + ": signal files carry one value per line, got '" + line + "'");
        vals.push_back(parse_number(toks[0], name));
    }
    if (vals.empty()) throw ParseError(name + ": empty signal file");
    Vector x(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) x(i) = vals[i];
    return x;
}

Vector read_signal_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open signal file '" + path + "'");
    return read_signal(in, path);
}

void write_signal(std::ostream& out, const Vector& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) out << format_double(x(i)) << '\n';
}

Graph read_graph(std::istream& in, const std::string& name) {
    std::string line;
    if (!next_content_line(in, line)) throw ParseError(name + ": empty graph file");
    auto toks = tokenize(line);
    if (toks.size() != 2 || toks[0] != "graph")
        throw ParseError(name + ": graph files start with a 'graph N' header");
    const long n = parse_integer(toks[1], name);
    if (n < 2) throw ParseError(name + ": graph needs at least 2 vertices");
    std::vector<Graph::Edge> edges;
    while (next_content_line(in, line)) {
        toks = tokenize(line);
        if (toks.size() != 2 && toks.size() != 3)
            throw ParseError(name + ": edge lines are 'u v [w]', got '" + line + "'");
        Graph::Edge e;
        e.u = static_cast<int>(parse_integer(toks[0], name));
        e.v = static_cast<int>(parse_integer(toks[1], name));
        e.w = toks.size() == 3 ? parse_number(toks[2], name) : 1.0;
        edges.push_back(e);
    }
    try {
        return Graph(static_cast<int>(n), std::move(edges));
    } catch (const InvalidSpec& e) {
        throw ParseError(name + ": " + e.what());
    }
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    return read_graph(in, path);
}

} // namespace gsis
