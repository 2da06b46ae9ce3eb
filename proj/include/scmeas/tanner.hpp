// Tanner graph view of a binary matrix in CSR-like layout. Rows of the
// matrix become check nodes, columns variable nodes. Every edge gets a
// stable id equal to its position in row-major nonzero order, so cycle and
// shift bookkeeping can key off edge ids.

#ifndef SCMEAS_TANNER_HPP
#define SCMEAS_TANNER_HPP

#include <cstddef>
#include <vector>

#include "scmeas/binary_matrix.hpp"

namespace scmeas {

struct TannerGraph {
    int num_checks = 0;
    int num_vars = 0;

    // check side: edges of check c are check_edges[check_offset[c] .. check_offset[c+1])
    std::vector<int> check_offset;
    std::vector<int> check_var;   // per edge slot: the variable endpoint
    std::vector<int> check_edge;  // per edge slot: global edge id

    // variable side, same layout
    std::vector<int> var_offset;
    std::vector<int> var_check;  // per edge slot: the check endpoint
    std::vector<int> var_edge;   // per edge slot: global edge id

    // edge id -> endpoints
    std::vector<int> edge_check;
    std::vector<int> edge_var;

    int num_edges() const { return static_cast<int>(edge_check.size()); }

    int check_degree(int c) const { return check_offset[static_cast<std::size_t>(c) + 1] - check_offset[static_cast<std::size_t>(c)]; }
    int var_degree(int v) const { return var_offset[static_cast<std::size_t>(v) + 1] - var_offset[static_cast<std::size_t>(v)]; }
};

inline TannerGraph to_tanner(const BinarySparseMatrix& a) {
    TannerGraph g;
    g.num_checks = a.rows();
    g.num_vars = a.cols();

    g.check_offset.assign(static_cast<std::size_t>(g.num_checks) + 1, 0);
    g.var_offset.assign(static_cast<std::size_t>(g.num_vars) + 1, 0);

    // Edge ids follow row-major nonzero order: all edges of check 0 in
    // ascending column order, then check 1, and so on.
    int edge_id = 0;
    for (int c = 0; c < g.num_checks; ++c) {
        for (int v : a.row(c)) {
            g.check_var.push_back(v);
            g.check_edge.push_back(edge_id);
            g.edge_check.push_back(c);
            g.edge_var.push_back(v);
            ++edge_id;
        }
        g.check_offset[static_cast<std::size_t>(c) + 1] = edge_id;
    }

    // variable side: count, prefix-sum, fill (stable in check order)
    for (int v : g.edge_var) ++g.var_offset[static_cast<std::size_t>(v) + 1];
    for (int v = 0; v < g.num_vars; ++v) g.var_offset[static_cast<std::size_t>(v) + 1] += g.var_offset[static_cast<std::size_t>(v)];

    g.var_check.assign(static_cast<std::size_t>(edge_id), 0);
    g.var_edge.assign(static_cast<std::size_t>(edge_id), 0);
    std::vector<int> cursor(g.var_offset.begin(), g.var_offset.end() - 1);
    for (int e = 0; e < edge_id; ++e) {
        const int v = g.edge_var[static_cast<std::size_t>(e)];
        const int slot = cursor[static_cast<std::size_t>(v)]++;
        g.var_check[static_cast<std::size_t>(slot)] = g.edge_check[static_cast<std::size_t>(e)];
        g.var_edge[static_cast<std::size_t>(slot)] = e;
    }
    return g;
}

}  // namespace scmeas

#endif
