// Spatial coupling of an array-based (or random block-regular) base matrix:
// cutting-vector edge-spreading, terminated staircase assembly, the
// equivalent algebraic lift by terminated L-circulants, and the terminal
// degree-J permutation lift. Also the uncoupled block-diagonal and
// random-regular baseline constructions.

#ifndef SCMEAS_COUPLING_HPP
#define SCMEAS_COUPLING_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scmeas/binary_matrix.hpp"
#include "scmeas/rng.hpp"

namespace scmeas::coupling {

/// Per-block circulant shift exponents kappa(i,j) in {0..memory} on a
/// gamma x p block grid, plus the coupling length L. For memory 1 this is
/// exactly a binary indicator grid selecting which blocks move to the
/// delayed part.
struct ShiftAssignment {
    int gamma = 0;
    int p = 0;
    std::vector<std::vector<int>> kappa;  // gamma rows, p columns
    int memory = 0;                       // m
    int coupling_len = 0;                 // L
};

inline void validate(const ShiftAssignment& s) {
    if (s.gamma < 1 || s.p < 1) throw std::invalid_argument("ShiftAssignment: gamma and p must be positive");
    if (s.memory < 0) throw std::invalid_argument("ShiftAssignment: memory must be nonnegative");
    if (s.coupling_len <= s.memory) throw std::invalid_argument("ShiftAssignment: need coupling_len > memory");
    if (static_cast<int>(s.kappa.size()) != s.gamma) throw std::invalid_argument("ShiftAssignment: kappa must have gamma rows");
    for (const auto& row : s.kappa) {
        if (static_cast<int>(row.size()) != s.p) throw std::invalid_argument("ShiftAssignment: kappa must have p columns");
        for (int k : row)
            if (k < 0 || k > s.memory) throw std::invalid_argument("ShiftAssignment: kappa value " + std::to_string(k) + " outside 0..memory");
    }
}

/// Column-group break positions, one per row group, weakly ascending in
/// [0, p]. xi[i] = number of leading column groups of row group i assigned
/// to the undelayed part.
struct CuttingVector {
    std::vector<int> xi;
};

inline void validate(const CuttingVector& cv, int gamma, int p) {
    if (static_cast<int>(cv.xi.size()) != gamma) throw std::invalid_argument("CuttingVector: need gamma entries");
    int prev = 0;
    for (int x : cv.xi) {
        if (x < 0 || x > p) throw std::invalid_argument("CuttingVector: entries must lie in [0, p]");
        if (x < prev) throw std::invalid_argument("CuttingVector: entries must be ascending");
        prev = x;
    }
}

/// The memory-1 shift grid induced by a cutting vector: blocks strictly left
/// of the cut stay in part 0, the rest move to part 1.
inline ShiftAssignment shift_from_cutting(const CuttingVector& cv, int gamma, int p, int coupling_len) {
    validate(cv, gamma, p);
    ShiftAssignment s;
    s.gamma = gamma;
    s.p = p;
    s.memory = 1;
    s.coupling_len = coupling_len;
    s.kappa.assign(static_cast<std::size_t>(gamma), std::vector<int>(static_cast<std::size_t>(p), 1));
    for (int i = 0; i < gamma; ++i)
        for (int j = 0; j < cv.xi[static_cast<std::size_t>(i)]; ++j) s.kappa[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0;
    validate(s);
    return s;
}

/// Per-protograph-edge J x J permutations for the terminal lift, indexed by
/// edge id in row-major nonzero order of the protograph.
struct TerminalLift {
    int J = 1;
    std::vector<std::vector<int>> perm;
    std::uint64_t seed = 0;

    static TerminalLift identity(std::size_t num_edges, int J) {
        TerminalLift t;
        t.J = J;
        std::vector<int> id(static_cast<std::size_t>(J));
        for (int k = 0; k < J; ++k) id[static_cast<std::size_t>(k)] = k;
        t.perm.assign(num_edges, id);
        return t;
    }

    static TerminalLift random(std::size_t num_edges, int J, std::uint64_t seed) {
        TerminalLift t;
        t.J = J;
        t.seed = seed;
        t.perm.reserve(num_edges);
        Rng rng(seed);
        for (std::size_t e = 0; e < num_edges; ++e) t.perm.push_back(rng.permutation(J));
        return t;
    }
};

namespace detail {

struct BlockShape {
    int gamma = 0;
    int p = 0;
};

/// Base matrices here are gamma x p grids of p x p blocks; recover the grid
/// shape from the matrix dimensions.
inline BlockShape block_shape(const BinarySparseMatrix& base) {
    const int p = static_cast<int>(std::lround(std::sqrt(static_cast<double>(base.cols()))));
    if (p < 1 || p * p != base.cols()) throw std::invalid_argument("base matrix columns must be a perfect square p*p");
    if (base.rows() % p != 0) throw std::invalid_argument("base matrix rows must be a multiple of p");
    return {base.rows() / p, p};
}

}  // namespace detail

/// Splits the base into memory+1 disjoint-support parts, block (i,j) going
/// whole to part kappa(i,j).
inline std::vector<BinarySparseMatrix> split_by_kappa(const BinarySparseMatrix& base, const ShiftAssignment& s) {
    validate(s);
    const auto shape = detail::block_shape(base);
    if (shape.gamma != s.gamma || shape.p != s.p) throw std::invalid_argument("split_by_kappa: assignment shape does not match base");
    std::vector<BinarySparseMatrix> parts;
    for (int k = 0; k <= s.memory; ++k) parts.emplace_back(base.rows(), base.cols());
    for (int r = 0; r < base.rows(); ++r) {
        const int i = r / s.p;
        for (int c : base.row(r)) {
            const int j = c / s.p;
            parts[static_cast<std::size_t>(s.kappa[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])].add_entry(r, c);
        }
    }
    for (auto& part : parts) part.finalize();
    return parts;
}

/// Memory-1 edge-spreading by a cutting vector: H0 keeps block (i,j) iff
/// j < xi[i], H1 gets the complement; H0 + H1 = base with disjoint supports.
inline std::pair<BinarySparseMatrix, BinarySparseMatrix> spread_cutting_vector(const BinarySparseMatrix& base, const CuttingVector& cv) {
    const auto shape = detail::block_shape(base);
    auto parts = split_by_kappa(base, shift_from_cutting(cv, shape.gamma, shape.p, /*coupling_len=*/2));
    return {std::move(parts[0]), std::move(parts[1])};
}

/// Terminated staircase: block-column t (0 <= t < L) stacks the parts
/// H0..Hm starting at block-row t. With parts of size R x C the result is
/// (L+m)R x LC; for the gamma p-row base this is gamma(L+m)p x Lp^2.
inline BinarySparseMatrix build_sc_protograph(const std::vector<BinarySparseMatrix>& parts, int L) {
    if (parts.empty()) throw std::invalid_argument("build_sc_protograph: need at least one part");
    const int m = static_cast<int>(parts.size()) - 1;
    if (L <= m) throw std::invalid_argument("build_sc_protograph: need L > memory");
    const int R = parts[0].rows();
    const int C = parts[0].cols();
    for (const auto& part : parts)
        if (part.rows() != R || part.cols() != C) throw std::invalid_argument("build_sc_protograph: parts must share dimensions");
    // disjoint supports
    for (int r = 0; r < R; ++r) {
        std::size_t total = 0;
        std::vector<int> merged;
        for (const auto& part : parts) {
            total += part.row(r).size();
            merged.insert(merged.end(), part.row(r).begin(), part.row(r).end());
        }
        std::sort(merged.begin(), merged.end());
        if (std::adjacent_find(merged.begin(), merged.end()) != merged.end())
            throw std::invalid_argument("build_sc_protograph: parts overlap in row " + std::to_string(r));
        (void)total;
    }

    BinarySparseMatrix out((L + m) * R, L * C);
    for (int t = 0; t < L; ++t)
        for (int k = 0; k <= m; ++k)
            for (int r = 0; r < R; ++r)
                for (int c : parts[static_cast<std::size_t>(k)].row(r)) out.add_entry((t + k) * R + r, t * C + c);
    out.finalize();
    return out;
}

/// Algebraic form of the same coupling: every nonzero of base block (i,j)
/// becomes the terminated L-circulant with shift kappa(i,j) — the
/// (L+m) x L matrix U with U(t+kappa, t) = 1 — and every zero an all-zero
/// block. The output is row/column-permutation-equivalent to
/// build_sc_protograph on the kappa-split parts: staircase row b*R+rho maps
/// to rho*(L+m)+b and staircase column t*C+q to q*L+t.
inline BinarySparseMatrix build_sc_protograph_algebraic(const BinarySparseMatrix& base, const ShiftAssignment& s) {
    validate(s);
    const auto shape = detail::block_shape(base);
    if (shape.gamma != s.gamma || shape.p != s.p)
        throw std::invalid_argument("build_sc_protograph_algebraic: assignment shape does not match base");
    const int L = s.coupling_len;
    const int span = L + s.memory;
    BinarySparseMatrix out(base.rows() * span, base.cols() * L);
    for (int r = 0; r < base.rows(); ++r) {
        const int i = r / s.p;
        for (int c : base.row(r)) {
            const int k = s.kappa[static_cast<std::size_t>(i)][static_cast<std::size_t>(c / s.p)];
            for (int t = 0; t < L; ++t) out.add_entry(r * span + t + k, c * L + t);
        }
    }
    out.finalize();
    return out;
}

/// Replaces each nonzero (r, c) of the protograph by the J x J permutation
/// matrix of its edge's permutation: lifted entries (r*J + perm[e][k], c*J + k).
/// Edge ids follow row-major nonzero order.
inline BinarySparseMatrix terminal_lift(const BinarySparseMatrix& proto, const TerminalLift& t) {
    if (t.J < 1) throw std::invalid_argument("terminal_lift: J must be positive");
    if (t.perm.size() != proto.nnz()) throw std::invalid_argument("terminal_lift: need one permutation per protograph edge");
    for (const auto& perm : t.perm) {
        if (static_cast<int>(perm.size()) != t.J) throw std::invalid_argument("terminal_lift: permutation has wrong size");
        std::vector<char> seen(static_cast<std::size_t>(t.J), 0);
        for (int v : perm) {
            if (v < 0 || v >= t.J || seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("terminal_lift: not a permutation");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }
    BinarySparseMatrix out(proto.rows() * t.J, proto.cols() * t.J);
    std::size_t e = 0;
    for (int r = 0; r < proto.rows(); ++r) {
        for (int c : proto.row(r)) {
            const auto& perm = t.perm[e++];
            for (int k = 0; k < t.J; ++k) out.add_entry(r * t.J + perm[static_cast<std::size_t>(k)], c * t.J + k);
        }
    }
    out.finalize();
    return out;
}

/// L disjoint copies of the base on the diagonal (the uncoupled protograph).
inline BinarySparseMatrix build_block_diagonal_protograph(const BinarySparseMatrix& base, int L) {
    if (L < 1) throw std::invalid_argument("build_block_diagonal_protograph: L must be positive");
    BinarySparseMatrix out(L * base.rows(), L * base.cols());
    for (int b = 0; b < L; ++b)
        for (int r = 0; r < base.rows(); ++r)
            for (int c : base.row(r)) out.add_entry(b * base.rows() + r, b * base.cols() + c);
    out.finalize();
    return out;
}

/// Uncoupled baseline: L independent copies of the base, each individually
/// J-lifted (the lift covers all L*nnz(base) protograph edges).
inline BinarySparseMatrix build_block_diagonal(const BinarySparseMatrix& base, int L, const TerminalLift& t) {
    return terminal_lift(build_block_diagonal_protograph(base, L), t);
}

/// Random (gamma, p)-regular base: a gamma x p grid of p x p permutation
/// blocks whose Tanner graph has no 4-cycles, deterministic for a fixed
/// seed. The blocks are a randomly relabeled cyclic transversal design,
///   pi_ij(r) = h_j((w_i(r) + d_i * g(j)) mod p),
/// with random per-block-row input relabelings w_i, per-block-column output
/// relabelings h_j, a random group bijection g, and pairwise-distinct
/// multipliers d_i. Two rows from block-rows i1 != i2 can share a column in
/// group j only where the affine offsets meet, and the difference
/// (d_i1 - d_i2) * (g(j) - g(j')) is nonzero mod the prime p for j != j', so
/// no row pair ever shares two columns. Rejection-sampling arbitrary blocks
/// is not viable here: a 4-cycle-free grid of this shape is equivalent to a
/// set of gamma - 1 mutually orthogonal Latin squares, which blind
/// resampling essentially never hits once p >= 7.
inline BinarySparseMatrix random_regular_base(int gamma, int p, std::uint64_t seed) {
    if (gamma < 1 || p < 1) throw std::invalid_argument("random_regular_base: gamma and p must be positive");
    if (gamma > p) throw std::invalid_argument("random_regular_base: need gamma <= p for distinct block-row multipliers");
    if (gamma >= 2 && !is_prime(p)) throw std::invalid_argument("random_regular_base: p must be prime when gamma >= 2");

    Rng rng(seed);
    std::vector<std::vector<int>> w, h;
    for (int i = 0; i < gamma; ++i) w.push_back(rng.permutation(p));
    for (int j = 0; j < p; ++j) h.push_back(rng.permutation(p));
    const auto g = rng.permutation(p);
    const auto d = rng.sample_without_replacement(p, gamma);

    BinarySparseMatrix base(gamma * p, p * p);
    for (int i = 0; i < gamma; ++i)
        for (int j = 0; j < p; ++j)
            for (int r = 0; r < p; ++r) {
                const int q = (w[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] +
                               d[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(j)]) %
                              p;
                base.add_entry(i * p + r, j * p + h[static_cast<std::size_t>(j)][static_cast<std::size_t>(q)]);
            }
    base.finalize();
    return base;
}

namespace detail {

struct RandomRegularSeeds {
    std::uint64_t base = 0, spread = 0, lift = 0;
};

inline RandomRegularSeeds random_regular_seeds(std::uint64_t seed) {
    std::uint64_t state = seed;
    RandomRegularSeeds s;
    s.base = splitmix64(state);
    s.spread = splitmix64(state);
    s.lift = splitmix64(state);
    return s;
}

}  // namespace detail

/// The pre-lift protograph of the random-regular baseline: random
/// permutation-block base, random block-wise edge-spreading into memory+1
/// parts, terminated staircase.
inline BinarySparseMatrix build_random_regular_protograph(int gamma, int p, int L, int memory, std::uint64_t seed) {
    const auto seeds = detail::random_regular_seeds(seed);
    auto base = random_regular_base(gamma, p, seeds.base);

    ShiftAssignment s;
    s.gamma = gamma;
    s.p = p;
    s.memory = memory;
    s.coupling_len = L;
    Rng rng(seeds.spread);
    s.kappa.assign(static_cast<std::size_t>(gamma), std::vector<int>(static_cast<std::size_t>(p), 0));
    for (auto& row : s.kappa)
        for (auto& k : row) k = rng.bounded_int(memory + 1);

    return build_sc_protograph(split_by_kappa(base, s), L);
}

/// Random-regular coupled baseline: the protograph above plus a random
/// terminal J-lift. Same dimensions as the coupled AB constructions.
inline BinarySparseMatrix build_random_regular(int gamma, int p, int L, int memory, int J, std::uint64_t seed) {
    auto proto = build_random_regular_protograph(gamma, p, L, memory, seed);
    return terminal_lift(proto, TerminalLift::random(proto.nnz(), J, detail::random_regular_seeds(seed).lift));
}

}  // namespace scmeas::coupling

#endif
