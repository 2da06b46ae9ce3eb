// Sparse binary {0,1} matrices with adjacency kept on both axes, plus the
// array-based (AB) base matrix construction H(gamma,p) built from circulant
// permutation blocks.

#ifndef SCMEAS_BINARY_MATRIX_HPP
#define SCMEAS_BINARY_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scmeas {

/// Binary sparse matrix. Row r holds the sorted column indices of its ones,
/// column c the sorted row indices; the two views always describe the same
/// edge set. Immutable once finalized.
class BinarySparseMatrix {
  public:
    BinarySparseMatrix() = default;

    BinarySparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_adj_(rows), col_adj_(cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("BinarySparseMatrix: negative dimension");
    }

    static BinarySparseMatrix from_entries(int rows, int cols, const std::vector<std::pair<int, int>>& entries) {
        BinarySparseMatrix a(rows, cols);
        for (auto [r, c] : entries) a.add_entry(r, c);
        a.finalize();
        return a;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const std::vector<int>& row(int r) const { return row_adj_[static_cast<std::size_t>(r)]; }
    const std::vector<int>& col(int c) const { return col_adj_[static_cast<std::size_t>(c)]; }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : row_adj_) n += r.size();
        return n;
    }

    bool has_entry(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) return false;
        const auto& adj = row_adj_[static_cast<std::size_t>(r)];
        return std::binary_search(adj.begin(), adj.end(), c);
    }

    /// Stage one entry; call finalize() when done. Duplicates are rejected at
    /// finalize time.
    void add_entry(int r, int c) {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::invalid_argument("BinarySparseMatrix: entry (" + std::to_string(r) + "," +
                                        std::to_string(c) + ") out of range");
        row_adj_[static_cast<std::size_t>(r)].push_back(c);
    }

    /// Sorts every row list, rejects duplicate entries and rebuilds the
    /// column view from the rows.
    void finalize() {
        for (auto& adj : row_adj_) {
            std::sort(adj.begin(), adj.end());
            if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
                throw std::invalid_argument("BinarySparseMatrix: duplicate entry in row");
        }
        for (auto& adj : col_adj_) adj.clear();
        for (int r = 0; r < rows_; ++r)
            for (int c : row_adj_[static_cast<std::size_t>(r)]) col_adj_[static_cast<std::size_t>(c)].push_back(r);
        // rows were scanned in ascending order, so each column list is sorted
    }

    /// True when the column view matches a fresh rebuild from the row view.
    bool transpose_consistent() const {
        std::vector<std::vector<int>> rebuilt(static_cast<std::size_t>(cols_));
        for (int r = 0; r < rows_; ++r)
            for (int c : row_adj_[static_cast<std::size_t>(r)]) rebuilt[static_cast<std::size_t>(c)].push_back(r);
        return rebuilt == col_adj_;
    }

    bool operator==(const BinarySparseMatrix& other) const = default;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::vector<int>> row_adj_;
    std::vector<std::vector<int>> col_adj_;
};

/// p x p circulant permutation matrix with a one at (i, (i+shift) mod p):
/// shift 0 is the identity, shift 1 the single left shift sigma.
inline BinarySparseMatrix circulant(int p, long shift) {
    if (p < 1) throw std::invalid_argument("circulant: p must be positive");
    const int z = static_cast<int>(((shift % p) + p) % p);
    BinarySparseMatrix a(p, p);
    for (int i = 0; i < p; ++i) a.add_entry(i, (i + z) % p);
    a.finalize();
    return a;
}

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Shape of an AB base matrix: gamma row groups of circulant size p.
struct AbParams {
    int gamma = 0;
    int p = 0;
};

/// p prime and p >= gamma >= 2. Primality is required by the structural
/// results the rest of the toolkit leans on (distinct-pair cycle structure,
/// absence of 4-cycles), so odd composite p is rejected.
inline void validate(const AbParams& params) {
    if (params.gamma < 2) throw std::invalid_argument("AbParams: gamma must be >= 2");
    if (params.p < params.gamma) throw std::invalid_argument("AbParams: p must be >= gamma");
    if (!is_prime(params.p)) throw std::invalid_argument("AbParams: p must be prime");
}

/// AB base matrix H(gamma,p): a gamma x p grid of p x p blocks where block
/// (i,j) is the circulant with shift (i*j) mod p. Every column has weight
/// gamma and every row weight p.
inline BinarySparseMatrix build_ab_base(const AbParams& params) {
    validate(params);
    const int p = params.p;
    BinarySparseMatrix a(params.gamma * p, p * p);
    for (int i = 0; i < params.gamma; ++i) {
        for (int j = 0; j < p; ++j) {
            const int shift = (i * j) % p;
            for (int r = 0; r < p; ++r) a.add_entry(i * p + r, j * p + (r + shift) % p);
        }
    }
    a.finalize();
    return a;
}

/// Exact integer y = A x.
inline std::vector<std::int64_t> matvec(const BinarySparseMatrix& a, std::span<const std::int64_t> x) {
    if (static_cast<int>(x.size()) != a.cols()) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<std::int64_t> y(static_cast<std::size_t>(a.rows()), 0);
    for (int r = 0; r < a.rows(); ++r) {
        std::int64_t acc = 0;
        for (int c : a.row(r)) acc += x[static_cast<std::size_t>(c)];
        y[static_cast<std::size_t>(r)] = acc;
    }
    return y;
}

}  // namespace scmeas

#endif
