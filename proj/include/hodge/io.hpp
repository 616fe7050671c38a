#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "hodge/complex.hpp"
#include "hodge/sparse.hpp"

namespace hodge {

// An edge list as read from disk: "u v" or "u v w" per line, blank lines
// and '#' comments skipped. Column count must be consistent across the
// file. Vertex count is max id + 1.
struct edge_list {
    graph g;
    std::vector<double> weights;  // aligned with g.edges when has_weights
    bool has_weights = false;
};

inline edge_list parse_edge_list(std::istream& in, const std::string& name = "<stream>") {
    edge_list out;
    std::string line;
    index_t max_vertex = -1;
    std::size_t lineno = 0;
    int columns = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u)) continue;  // blank or comment-only
        double w = 0.0;
        if (!(ls >> v)) throw invalid_input(name + ":" + std::to_string(lineno) +
                                            ": expected 'u v' or 'u v w'");
        int cols = 2;
        if (ls >> w) cols = 3;
        std::string rest;
        if (ls >> rest)
            throw invalid_input(name + ":" + std::to_string(lineno) + ": trailing tokens");
        if (columns == 0) columns = cols;
        else if (columns != cols)
            throw invalid_input(name + ":" + std::to_string(lineno) +
                                ": inconsistent column count");
        if (u < 0 || v < 0)
            throw invalid_input(name + ":" + std::to_string(lineno) + ": negative vertex id");
        out.g.edges.emplace_back(u, v);
        if (cols == 3) out.weights.push_back(w);
        max_vertex = std::max<index_t>(max_vertex, std::max<long long>(u, v));
    }
    out.g.n_vertices = max_vertex + 1;
    out.has_weights = columns == 3;
    out.g.validate();
    return out;
}

inline edge_list read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    return parse_edge_list(in, path);
}

inline void write_edge_list(const std::string& path, const graph& g,
                            const std::vector<double>* weights = nullptr) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << "# " << g.n_vertices << " vertices, " << g.edges.size() << " edges\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        out << g.edges[i].first << ' ' << g.edges[i].second;
        if (weights) out << ' ' << (*weights)[i];
        out << '\n';
    }
}

// Map input edge weights to a flow on the canonical oriented edges: an
// input line "u v w" means w units along u -> v, so the canonical edge
// (min, max) receives +w when u < v and -w otherwise.
inline std::vector<double> omega_from_edge_list(const complex2& c, const edge_list& el) {
    std::vector<double> omega(static_cast<std::size_t>(c.n1()), 0.0);
    for (std::size_t i = 0; i < el.g.edges.size(); ++i) {
        const auto [u, v] = el.g.edges[i];
        const index_t e = c.edge_index(u, v);
        if (e < 0) throw invalid_input("omega_from_edge_list: edge not in complex");
        const double w = el.has_weights ? el.weights[i] : 1.0;
        omega[e] = u < v ? w : -w;
    }
    return omega;
}

// Matrix Market coordinate format, real general, 1-based indices.
inline void write_matrix_market(const std::string& path, const sparse_matrix& a,
                                const std::string& comment = "") {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << "%%MatrixMarket matrix coordinate real general\n";
    if (!comment.empty()) out << "% " << comment << '\n';
    out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
    out << std::setprecision(17);
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
            out << i + 1 << ' ' << a.col_idx()[k] + 1 << ' ' << a.values()[k] << '\n';
}

inline sparse_matrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header) || header.rfind("%%MatrixMarket", 0) != 0)
        throw invalid_input(path + ": missing MatrixMarket header");
    std::istringstream hs(header);
    std::string tag, object, format, field, symmetry;
    hs >> tag >> object >> format >> field >> symmetry;
    if (object != "matrix" || format != "coordinate")
        throw invalid_input(path + ": only coordinate matrices are supported");
    if (field != "real" && field != "integer")
        throw invalid_input(path + ": only real/integer fields are supported");
    if (symmetry != "general" && symmetry != "symmetric")
        throw invalid_input(path + ": only general/symmetric are supported");

    std::string line;
    index_t rows = -1, cols = -1;
    long long declared = -1;
    std::vector<triplet> t;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ls(line);
        if (rows < 0) {
            if (!(ls >> rows >> cols >> declared))
                throw invalid_input(path + ":" + std::to_string(lineno) + ": bad size line");
            t.reserve(static_cast<std::size_t>(declared));
            continue;
        }
        long long i, j;
        double v;
        if (!(ls >> i >> j >> v))
            throw invalid_input(path + ":" + std::to_string(lineno) + ": bad entry");
        if (i < 1 || j < 1 || i > rows || j > cols)
            throw invalid_input(path + ":" + std::to_string(lineno) + ": index out of range");
        t.push_back({i - 1, j - 1, v});
        if (symmetry == "symmetric" && i != j) t.push_back({j - 1, i - 1, v});
    }
    if (rows < 0) throw invalid_input(path + ": missing size line");
    if (symmetry == "general" && declared >= 0 &&
        declared != static_cast<long long>(t.size()))
        throw invalid_input(path + ": entry count does not match the size line");
    return sparse_matrix::from_triplets(rows, cols, std::move(t));
}

}  // namespace hodge
