// Search for coupling parameters: exhaustive cutting-vector scoring,
// seeded hill-climbing over memory-1 shift grids with a compressed
// cycle-survival surrogate, and the lift-bound check relating protograph
// and terminally lifted substructure counts.

#ifndef SCMEAS_OPTIMIZE_HPP
#define SCMEAS_OPTIMIZE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "scmeas/binary_matrix.hpp"
#include "scmeas/coupling.hpp"
#include "scmeas/cycles.hpp"
#include "scmeas/rng.hpp"
#include "scmeas/tanner.hpp"
#include "scmeas/termatiko.hpp"

namespace scmeas::optimize {

/// One scored coupling candidate. The surrogate is the number of base
/// 12-cycles whose net shift vanishes mod L (cheap, computed for every
/// candidate); the exact fields are filled only when the actual protograph
/// was built and enumerated.
struct CandidateScore {
    std::variant<coupling::ShiftAssignment, coupling::CuttingVector> assignment;
    std::int64_t surviving_12cycles = 0;
    std::optional<std::int64_t> exact_12cycles;
    std::optional<std::int64_t> t6_count;
    std::optional<std::int64_t> t3_count;
    bool budget_exhausted = false;
};

namespace detail {

/// Base 12-cycles compressed for repeated survival scoring. The net shift
/// of a cycle is a fixed integer combination of the per-block shifts, so
/// cycles sharing a coefficient vector always agree on survival; grouping
/// them (10,414 classes for the 228,585 cycles of the gamma=3, p=7 base)
/// makes single-block updates touch only the classes using that block.
class SurrogateEvaluator {
  public:
    SurrogateEvaluator(const std::vector<cycles::Cycle>& base_cycles, int gamma, int p, int L)
        : gamma_(gamma), p_(p), L_(L) {
        std::map<std::vector<std::pair<int, int>>, std::int64_t> classes;
        std::vector<std::pair<int, int>> key;
        for (const auto& c : base_cycles) {
            std::map<int, int> coef;
            const int k = c.k();
            for (int t = 0; t < k; ++t) {
                const int i = c.cns[static_cast<std::size_t>(t)] / p;
                coef[i * p + c.vns[static_cast<std::size_t>(t)] / p] += 1;
                coef[i * p + c.vns[static_cast<std::size_t>((t + 1) % k)] / p] -= 1;
            }
            key.clear();
            for (auto [b, v] : coef)
                if (v != 0) key.emplace_back(b, v);
            classes[key] += 1;
        }
        mult_.reserve(classes.size());
        touching_.assign(static_cast<std::size_t>(gamma * p), {});
        constant_weight_ = 0;
        for (auto& [sig, mult] : classes) {
            if (sig.empty()) {
                constant_weight_ += mult;  // net shift identically zero
                continue;
            }
            const int idx = static_cast<int>(mult_.size());
            mult_.push_back(mult);
            for (auto [b, v] : sig) touching_[static_cast<std::size_t>(b)].emplace_back(idx, v);
        }
        net_.assign(mult_.size(), 0);
        kappa_.assign(static_cast<std::size_t>(gamma * p), 0);
        survivors_ = constant_weight_;
        for (std::size_t i = 0; i < mult_.size(); ++i) survivors_ += mult_[i];
    }

    /// Full recompute from a flat gamma*p shift grid (row-major).
    void set_assignment(const std::vector<int>& kappa_flat) {
        kappa_ = kappa_flat;
        std::fill(net_.begin(), net_.end(), 0);
        for (int b = 0; b < gamma_ * p_; ++b)
            for (auto [idx, v] : touching_[static_cast<std::size_t>(b)])
                net_[static_cast<std::size_t>(idx)] += v * kappa_[static_cast<std::size_t>(b)];
        survivors_ = constant_weight_;
        for (std::size_t i = 0; i < mult_.size(); ++i)
            if (net_[i] % L_ == 0) survivors_ += mult_[i];
    }

    /// Adds delta to one block's shift, updating the survivor count in time
    /// proportional to the cycle classes using that block.
    void adjust(int block, int delta) {
        kappa_[static_cast<std::size_t>(block)] += delta;
        for (auto [idx, v] : touching_[static_cast<std::size_t>(block)]) {
            auto& net = net_[static_cast<std::size_t>(idx)];
            if (net % L_ == 0) survivors_ -= mult_[static_cast<std::size_t>(idx)];
            net += v * delta;
            if (net % L_ == 0) survivors_ += mult_[static_cast<std::size_t>(idx)];
        }
    }

    std::int64_t survivors() const { return survivors_; }
    const std::vector<int>& assignment() const { return kappa_; }

  private:
    int gamma_, p_, L_;
    std::vector<std::int64_t> mult_;
    std::vector<std::vector<std::pair<int, int>>> touching_;  // block -> (class, coefficient)
    std::int64_t constant_weight_ = 0;
    std::vector<int> net_;
    std::vector<int> kappa_;
    std::int64_t survivors_ = 0;
};

inline coupling::ShiftAssignment unflatten(const std::vector<int>& flat, int gamma, int p, int m, int L) {
    coupling::ShiftAssignment s;
    s.gamma = gamma;
    s.p = p;
    s.memory = m;
    s.coupling_len = L;
    s.kappa.assign(static_cast<std::size_t>(gamma), std::vector<int>(static_cast<std::size_t>(p), 0));
    for (int i = 0; i < gamma; ++i)
        for (int j = 0; j < p; ++j) s.kappa[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = flat[static_cast<std::size_t>(i * p + j)];
    return s;
}

}  // namespace detail

struct ExactCounts {
    std::int64_t cycles12 = 0;
    std::int64_t t6 = 0;
    std::int64_t t3 = 0;
};

/// Exact substructure counts of a graph: total 12-cycles plus the T-set
/// enumerations fed by the unique cycle VN sets.
inline ExactCounts exact_counts(const TannerGraph& g) {
    ExactCounts out;
    const auto sets = cycles::unique_vn_sets(g, 12);
    for (const auto& s : sets) out.cycles12 += s.multiplicity;
    out.t6 = termatiko::enumerate_T6(g, sets).count;
    out.t3 = termatiko::enumerate_T3(g, sets).count;
    return out;
}

inline ExactCounts exact_counts(const BinarySparseMatrix& a) { return exact_counts(to_tanner(a)); }

/// Exactly scores one memory-1 shift grid: surrogate survivors from the
/// given base cycle list plus exact 12-cycle and T-set counts of the
/// terminated protograph it induces.
inline CandidateScore score_shift_assignment(const BinarySparseMatrix& base, const std::vector<cycles::Cycle>& base_cycles,
                                             const coupling::ShiftAssignment& s) {
    coupling::validate(s);
    CandidateScore score;
    score.assignment = s;
    score.surviving_12cycles = cycles::count_surviving(base_cycles, s);
    const auto counts = exact_counts(coupling::build_sc_protograph_algebraic(base, s));
    score.exact_12cycles = counts.cycles12;
    score.t6_count = counts.t6;
    score.t3_count = counts.t3;
    return score;
}

/// Exactly scores one cutting vector through its induced memory-1 grid.
inline CandidateScore score_cutting_vector(const BinarySparseMatrix& base, const std::vector<cycles::Cycle>& base_cycles,
                                           const coupling::CuttingVector& cv, int L) {
    const auto shape = coupling::detail::block_shape(base);
    auto inner = score_shift_assignment(base, base_cycles, coupling::shift_from_cutting(cv, shape.gamma, shape.p, L));
    CandidateScore score = std::move(inner);
    score.assignment = cv;
    return score;
}

/// Hill-climbing search over memory-1 shift grids ({0,1}^(gamma*p)): scores
/// `budget` candidates with the survival surrogate (greedy single-block
/// flips from random restarts), then exactly enumerates the `finalists`
/// best distinct assignments and returns the winner by
/// (t6_count, t3_count, exact_12cycles), ties broken by discovery order.
/// Deterministic for fixed seed and budget.
inline CandidateScore optimize_shifts(const BinarySparseMatrix& base, int L, int m, std::int64_t budget, std::uint64_t seed,
                                      int finalists = 20) {
    if (m != 1) throw std::invalid_argument("optimize_shifts: only memory 1 is searched");
    if (L <= m) throw std::invalid_argument("optimize_shifts: need L > memory");
    if (budget < 1) throw std::invalid_argument("optimize_shifts: budget must be positive");
    if (finalists < 1) throw std::invalid_argument("optimize_shifts: need at least one finalist");
    const auto shape = coupling::detail::block_shape(base);
    const int nblocks = shape.gamma * shape.p;
    if (nblocks > 30) throw std::invalid_argument("optimize_shifts: block grid too large for the bit-mask search");

    const auto base_cycles = cycles::enumerate_cycles(to_tanner(base), 12);
    detail::SurrogateEvaluator eval(base_cycles, shape.gamma, shape.p, L);

    struct Seen {
        std::int64_t score;
        std::int64_t order;
    };
    std::unordered_map<std::uint32_t, Seen> seen;
    std::int64_t evals = 0;
    std::int64_t order = 0;

    const auto key_of = [&](const std::vector<int>& flat) {
        std::uint32_t key = 0;
        for (int b = 0; b < nblocks; ++b) key |= static_cast<std::uint32_t>(flat[static_cast<std::size_t>(b)]) << b;
        return key;
    };
    const auto record = [&](std::int64_t score) {
        const std::uint32_t key = key_of(eval.assignment());
        if (seen.try_emplace(key, Seen{score, order}).second) ++order;
        ++evals;
    };

    Rng rng(seed);
    std::vector<int> start(static_cast<std::size_t>(nblocks));
    std::vector<int> scan(static_cast<std::size_t>(nblocks));
    for (int b = 0; b < nblocks; ++b) scan[static_cast<std::size_t>(b)] = b;
    bool exhausted = false;
    while (!exhausted) {
        for (auto& v : start) v = rng.bounded_int(2);
        eval.set_assignment(start);
        record(eval.survivors());
        bool improved = true;
        while (improved && !exhausted) {
            improved = false;
            rng.shuffle(scan);
            for (int b : scan) {
                if (evals >= budget) {
                    exhausted = true;
                    break;
                }
                const std::int64_t before = eval.survivors();
                const int delta = eval.assignment()[static_cast<std::size_t>(b)] == 0 ? 1 : -1;
                eval.adjust(b, delta);
                record(eval.survivors());
                if (eval.survivors() < before) {
                    improved = true;
                } else {
                    eval.adjust(b, -delta);
                }
            }
        }
        if (evals >= budget) exhausted = true;
    }

    // Shortlist the best distinct assignments for exact evaluation.
    struct Finalist {
        std::uint32_t key;
        std::int64_t score;
        std::int64_t order;
    };
    std::vector<Finalist> pool;
    pool.reserve(seen.size());
    for (const auto& [key, s] : seen) pool.push_back({key, s.score, s.order});
    std::sort(pool.begin(), pool.end(), [](const Finalist& a, const Finalist& b) {
        return a.score != b.score ? a.score < b.score : a.order < b.order;
    });
    if (static_cast<std::int64_t>(pool.size()) > finalists) pool.resize(static_cast<std::size_t>(finalists));

    std::optional<CandidateScore> best;
    for (const auto& f : pool) {
        std::vector<int> flat(static_cast<std::size_t>(nblocks));
        for (int b = 0; b < nblocks; ++b) flat[static_cast<std::size_t>(b)] = static_cast<int>((f.key >> b) & 1u);
        auto cand = score_shift_assignment(base, base_cycles, detail::unflatten(flat, shape.gamma, shape.p, m, L));
        const auto tuple_of = [](const CandidateScore& s) {
            return std::make_tuple(*s.t6_count, *s.t3_count, *s.exact_12cycles);
        };
        if (!best || tuple_of(cand) < tuple_of(*best)) best = std::move(cand);
    }
    best->budget_exhausted = exhausted;
    return *best;
}

/// Exhaustively scores every weakly ascending cutting vector in [0, p]^gamma
/// (120 candidates at gamma=3, p=7) by exact protograph enumeration and
/// returns the winner by (t3_count, t6_count, exact_12cycles), ties broken
/// by lexicographic candidate order. Deterministic.
inline CandidateScore optimize_cutting_vector(const BinarySparseMatrix& base, int L) {
    const auto shape = coupling::detail::block_shape(base);
    if (shape.gamma != 3) throw std::invalid_argument("optimize_cutting_vector: search is defined for gamma = 3");
    if (L <= 1) throw std::invalid_argument("optimize_cutting_vector: need L > 1");

    const auto base_cycles = cycles::enumerate_cycles(to_tanner(base), 12);
    std::optional<CandidateScore> best;
    const auto tuple_of = [](const CandidateScore& s) {
        return std::make_tuple(*s.t3_count, *s.t6_count, *s.exact_12cycles);
    };
    for (int x1 = 0; x1 <= shape.p; ++x1)
        for (int x2 = x1; x2 <= shape.p; ++x2)
            for (int x3 = x2; x3 <= shape.p; ++x3) {
                auto cand = score_cutting_vector(base, base_cycles, coupling::CuttingVector{{x1, x2, x3}}, L);
                if (!best || tuple_of(cand) < tuple_of(*best)) best = std::move(cand);
            }
    return *best;
}

/// Substructure counts on a protograph and its degree-J terminal lift, with
/// the lift bound checked: each lifted count is at most J times the
/// protograph count (so zero protograph counts force zero lifted counts).
struct LiftBoundReport {
    int J = 1;
    std::int64_t proto_12cycles = 0, lifted_12cycles = 0;
    std::int64_t proto_t3 = 0, lifted_t3 = 0;
    std::int64_t proto_t6 = 0, lifted_t6 = 0;
};

inline LiftBoundReport verify_lift_bound(const BinarySparseMatrix& proto, const BinarySparseMatrix& lifted, int J) {
    if (J < 1) throw std::invalid_argument("verify_lift_bound: J must be positive");
    if (lifted.rows() != proto.rows() * J || lifted.cols() != proto.cols() * J || lifted.nnz() != proto.nnz() * static_cast<std::size_t>(J))
        throw std::invalid_argument("verify_lift_bound: lifted dimensions do not match a degree-J lift of the protograph");
    const auto p = exact_counts(proto);
    const auto l = exact_counts(lifted);
    LiftBoundReport r;
    r.J = J;
    r.proto_12cycles = p.cycles12;
    r.lifted_12cycles = l.cycles12;
    r.proto_t3 = p.t3;
    r.lifted_t3 = l.t3;
    r.proto_t6 = p.t6;
    r.lifted_t6 = l.t6;
    const auto check = [J](const char* what, std::int64_t lifted_n, std::int64_t proto_n) {
        if (lifted_n > static_cast<std::int64_t>(J) * proto_n)
            throw std::runtime_error(std::string("verify_lift_bound: lifted ") + what + " count " + std::to_string(lifted_n) +
                                     " exceeds J * " + std::to_string(proto_n));
    };
    check("12-cycle", r.lifted_12cycles, r.proto_12cycles);
    check("T3", r.lifted_t3, r.proto_t3);
    check("T6", r.lifted_t6, r.proto_t6);
    return r;
}

}  // namespace scmeas::optimize

#endif
