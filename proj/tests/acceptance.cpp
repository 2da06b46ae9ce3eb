// End-to-end acceptance gate. Runs the nine release criteria in order and
// prints one [PASS]/[FAIL] line per check (criteria with several distinct
// claims get lettered sub-checks). The process exit code is the number of
// failed checks, so the suite runner treats any failure as red.
//
// Expected wall time is dominated by the exhaustive cutting-vector search of
// criterion 2 (roughly fifteen minutes single-threaded); everything else
// finishes in seconds to a couple of minutes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "scmeas/binary_matrix.hpp"
#include "scmeas/coupling.hpp"
#include "scmeas/cycles.hpp"
#include "scmeas/ipa.hpp"
#include "scmeas/optimize.hpp"
#include "scmeas/rng.hpp"
#include "scmeas/simulate.hpp"
#include "scmeas/tanner.hpp"
#include "scmeas/termatiko.hpp"
#include "test_util.hpp"

namespace {

using namespace scmeas;
using Clock = std::chrono::steady_clock;

struct Gate {
    int checks = 0;
    int failures = 0;

    void line(bool ok, const std::string& label) {
        ++checks;
        if (!ok) ++failures;
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", label.c_str());
        std::fflush(stdout);
    }

    static void info(const std::string& text) {
        std::printf("[info] %s\n", text.c_str());
        std::fflush(stdout);
    }
};

double elapsed(Clock::time_point since) { return std::chrono::duration<double>(Clock::now() - since).count(); }

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os.precision(1);
    os << std::fixed << s << "s";
    return os.str();
}

template <typename... Parts>
std::string cat(const Parts&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

/// Visits every k-combination of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
    if (k > n) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

std::vector<int> vn_set_vector(const cycles::CycleVnSet& s) {
    return std::vector<int>(s.vns.begin(), s.vns.begin() + s.size);
}

std::string join_ints(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

// ---------------------------------------------------------------------------
// criterion 1: exact substructure census of the uncoupled baseline
// (block-diagonal chain of ten H(3,7) copies).

struct BaselineCensus {
    std::int64_t cycles12 = 0;
    std::int64_t t3 = 0;
    std::int64_t t6 = 0;
};

BaselineCensus criterion1(Gate& gate, const BinarySparseMatrix& proto1) {
    const auto t0 = Clock::now();
    const auto g = to_tanner(proto1);
    BaselineCensus c;
    c.cycles12 = cycles::count_cycles(g, 12);
    const auto c12 = cycles::unique_vn_sets(g, 12);
    c.t6 = termatiko::enumerate_T6(g, c12).count;
    c.t3 = termatiko::enumerate_T3(g, c12).count;

    gate.line(c.cycles12 == 2409050,
              cat("criterion 1a: uncoupled baseline 12-cycle count — measured ", c.cycles12,
                  ", reference 2409050"));
    if (c.cycles12 != 2409050)
        Gate::info(cat("criterion 1a: the measured count is ", c.cycles12,
                       " = 10 x 228585 per block; it is stable across the library enumerator and an ",
                       "independent brute-force oracle (see the cycle tests), so the reference value is not ",
                       "reproducible from this construction — details in README \"Known discrepancy\""));
    gate.line(c.t3 == 4900, cat("criterion 1b: uncoupled baseline termatiko triples — measured ", c.t3,
                                ", reference 4900"));
    gate.line(c.t6 == 9800, cat("criterion 1c: uncoupled baseline size-6 termatiko sets — measured ", c.t6,
                                ", reference 9800"));
    Gate::info(cat("criterion 1 runtime ", fmt_seconds(elapsed(t0))));
    return c;
}

// ---------------------------------------------------------------------------
// criterion 2: exhaustive cutting-vector search at p=7, L=10 reaches zero
// termatiko triples.

void criterion2(Gate& gate, const BinarySparseMatrix& base37) {
    const auto t0 = Clock::now();
    const auto best = optimize::optimize_cutting_vector(base37, 10);
    const auto& cv = std::get<coupling::CuttingVector>(best.assignment);
    gate.line(best.t3_count.has_value() && *best.t3_count == 0,
              cat("criterion 2: best cutting vector xi=(", join_ints(cv.xi),
                  ") has zero termatiko triples in the coupled protograph"));
    Gate::info(cat("criterion 2: reported values for xi=(", join_ints(cv.xi), "): 12-cycles ",
                   best.exact_12cycles.value_or(-1), ", size-6 termatiko sets ", best.t6_count.value_or(-1)));
    Gate::info(cat("criterion 2 runtime ", fmt_seconds(elapsed(t0))));
}

// ---------------------------------------------------------------------------
// criterion 3: budgeted shift search eliminates both termatiko families and
// lowers the exact 12-cycle count below the uncoupled baseline.

coupling::ShiftAssignment criterion3(Gate& gate, const BinarySparseMatrix& base37, const BaselineCensus& baseline) {
    const auto t0 = Clock::now();
    const auto best = optimize::optimize_shifts(base37, 10, 1, 100000, 2025, 20);
    const auto& s = std::get<coupling::ShiftAssignment>(best.assignment);
    gate.line(best.t6_count.has_value() && *best.t6_count == 0 && best.t3_count.has_value() && *best.t3_count == 0,
              cat("criterion 3a: shift search (budget 100000, 20 finalists) reaches zero size-6 and ",
                  "zero size-3 termatiko sets"));
    gate.line(best.exact_12cycles.has_value() && *best.exact_12cycles < baseline.cycles12,
              cat("criterion 3b: optimized protograph 12-cycle count ", best.exact_12cycles.value_or(-1),
                  " is below the uncoupled baseline ", baseline.cycles12));
    std::string rows;
    for (const auto& row : s.kappa) rows += (rows.empty() ? "" : " / ") + join_ints(row);
    Gate::info(cat("criterion 3: winning shift grid kappa = [", rows, "]"));
    Gate::info(cat("criterion 3 runtime ", fmt_seconds(elapsed(t0))));
    return s;
}

// ---------------------------------------------------------------------------
// criterion 4: lifted substructure counts never exceed J times the
// protograph counts, and zero protograph termatiko counts stay zero.

void lift_bound_check(Gate& gate, const std::string& label, const BinarySparseMatrix& proto,
                      const BinarySparseMatrix& lifted, int J) {
    bool bound_ok = true;
    std::string detail;
    optimize::LiftBoundReport rep;
    try {
        rep = optimize::verify_lift_bound(proto, lifted, J);
        detail = cat("12-cycles ", rep.lifted_12cycles, " <= ", J, "x", rep.proto_12cycles, ", T3 ", rep.lifted_t3,
                     " <= ", J, "x", rep.proto_t3, ", T6 ", rep.lifted_t6, " <= ", J, "x", rep.proto_t6);
    } catch (const std::exception& e) {
        bound_ok = false;
        detail = cat("bound violated: ", e.what());
    }
    gate.line(bound_ok, cat(label, ": lifted counts within J x protograph counts (", detail, ")"));
    if (bound_ok) {
        const bool zeros = rep.proto_t3 == 0 && rep.proto_t6 == 0 && rep.lifted_t3 == 0 && rep.lifted_t6 == 0;
        gate.line(zeros, cat(label, ": termatiko-free protograph lifts to a termatiko-free graph (proto T3=",
                             rep.proto_t3, " T6=", rep.proto_t6, ", lifted T3=", rep.lifted_t3, " T6=",
                             rep.lifted_t6, ")"));
    }
}

void criterion4(Gate& gate, const BinarySparseMatrix& proto4, const BinarySparseMatrix& lifted4,
                const BinarySparseMatrix& base35) {
    const auto t0 = Clock::now();
    lift_bound_check(gate, "criterion 4a (p=7, L=10, J=5)", proto4, lifted4, 5);

    // Desk-scale variant: optimize the p=5, L=4 chain the same way, lift by 3.
    const auto small = optimize::optimize_cutting_vector(base35, 4);
    const auto& cv = std::get<coupling::CuttingVector>(small.assignment);
    const auto s5 = coupling::shift_from_cutting(cv, 3, 5, 4);
    const auto proto5 = coupling::build_sc_protograph_algebraic(base35, s5);
    const auto lifted5 = coupling::terminal_lift(proto5, coupling::TerminalLift::random(proto5.nnz(), 3, 77));
    lift_bound_check(gate, cat("criterion 4b (p=5, L=4, J=3, xi=(", join_ints(cv.xi), "))"), proto5, lifted5, 3);
    Gate::info(cat("criterion 4 runtime ", fmt_seconds(elapsed(t0))));
}

// ---------------------------------------------------------------------------
// criterion 5: structural properties of every minimum stopping set of the
// single H(3,7) block, verified against an exhaustive scan of all supports
// of size at most six.

void criterion5(Gate& gate, const BinarySparseMatrix& h37) {
    const auto t0 = Clock::now();
    const auto g = to_tanner(h37);
    const int n = h37.cols();

    // 21 checks fit one 32-bit mask per variable.
    std::vector<std::uint32_t> vmask(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int c : h37.col(v)) vmask[static_cast<std::size_t>(v)] |= (1u << c);

    auto scan_stopping = [&](int k, auto&& on_set) {
        for_each_combination(n, k, [&](const std::vector<int>& idx) {
            std::uint32_t al1 = 0, al2 = 0;
            for (int v : idx) {
                const std::uint32_t m = vmask[static_cast<std::size_t>(v)];
                al2 |= al1 & m;
                al1 |= m;
            }
            if (al1 != 0 && al1 == al2) on_set(idx, al1);
        });
    };

    long small_sets = 0;
    for (int k = 1; k <= 5; ++k) scan_stopping(k, [&](const std::vector<int>&, std::uint32_t) { ++small_sets; });

    std::vector<std::vector<int>> min_sets;
    bool structure_ok = true;
    scan_stopping(6, [&](const std::vector<int>& idx, std::uint32_t al1) {
        min_sets.push_back(idx);
        // Nine neighbor checks, eighteen edges, every check sees the set twice.
        int edges = 0;
        bool indeg2 = true;
        for (int c = 0; c < h37.rows(); ++c) {
            if (!(al1 & (1u << c))) continue;
            int d = 0;
            for (int v : idx) d += (vmask[static_cast<std::size_t>(v)] >> c) & 1u;
            edges += d;
            if (d != 2) indeg2 = false;
        }
        if (__builtin_popcount(al1) != 9 || edges != 18 || !indeg2) structure_ok = false;
    });
    gate.line(small_sets == 0 && !min_sets.empty(),
              cat("criterion 5a: exhaustive scan of H(3,7) — no stopping sets of size <= 5, ", min_sets.size(),
                  " minimum stopping sets of size 6"));
    gate.line(structure_ok, "criterion 5b: every minimum stopping set spans 9 checks and 18 edges with every "
                         "check seeing it exactly twice");

    // Termatiko structure inside each minimum stopping set.
    bool partition_ok = true;
    bool cycles_ok = true;
    long t66 = 0;
    std::map<cycles::u128, std::int64_t> set_multiplicity;
    for (const auto& s : cycles::unique_vn_sets(g, 12))
        set_multiplicity[cycles::pack_vn_set(s.vns.data(), s.size)] = s.multiplicity;

    for (const auto& six : min_sets) {
        std::vector<std::vector<int>> triples;
        for_each_combination(6, 3, [&](const std::vector<int>& pick) {
            std::vector<int> triple;
            for (int i : pick) triple.push_back(six[static_cast<std::size_t>(i)]);
            if (termatiko::is_termatiko(g, triple).verdict) triples.push_back(triple);
        });
        bool ok = triples.size() == 2;
        if (ok) {
            std::vector<int> merged = triples[0];
            merged.insert(merged.end(), triples[1].begin(), triples[1].end());
            std::sort(merged.begin(), merged.end());
            ok = merged == six;  // disjoint triples covering the whole set
        }
        if (!ok) partition_ok = false;

        if (termatiko::is_termatiko(g, six).verdict) {
            ++t66;
            const auto it = set_multiplicity.find(cycles::pack_vn_set(six.data(), 6));
            if (it == set_multiplicity.end() || it->second < 2) cycles_ok = false;
        }
    }
    gate.line(partition_ok, "criterion 5c: every minimum stopping set splits into exactly two disjoint "
                            "termatiko triples covering it");
    gate.line(t66 > 0 && cycles_ok,
              cat("criterion 5d: each of the ", t66,
                  " size-6 termatiko stopping sets carries at least two distinct 12-cycles on its variables"));
    Gate::info(cat("criterion 5 runtime ", fmt_seconds(elapsed(t0))));
}

// ---------------------------------------------------------------------------
// criterion 6: the structural enumerators agree with brute force on H(3,5)
// and on two random (3,5)-regular matrices of the same size.

void criterion6(Gate& gate) {
    const auto t0 = Clock::now();
    struct Case {
        std::string name;
        BinarySparseMatrix a;
    };
    std::vector<Case> cases;
    cases.push_back({"H(3,5)", build_ab_base({3, 5})});
    cases.push_back({"random #1", coupling::random_regular_base(3, 5, 1)});
    cases.push_back({"random #2", coupling::random_regular_base(3, 5, 2)});

    char sub = 'a';
    for (const auto& c : cases) {
        const auto g = to_tanner(c.a);

        // size <= 3: the enumerator must find exactly the brute-force triples,
        // and brute force must find nothing smaller.
        std::set<std::vector<int>> brute3;
        bool smaller = false;
        for (const auto& rec : termatiko::bruteforce_termatiko(g, 3)) {
            if (rec.support.size() < 3) smaller = true;
            else brute3.insert(rec.support);
        }
        const auto c12 = cycles::unique_vn_sets(g, 12);
        std::set<std::vector<int>> enum3;
        for (const auto& rec : termatiko::enumerate_T3(g, c12).records) enum3.insert(rec.support);

        // size-6 sets supported on 12-cycles: compare the localized enumerator
        // against the direct full-graph probe of every candidate.
        std::set<std::vector<int>> probe6;
        for (const auto& s : c12) {
            const auto set = vn_set_vector(s);
            if (termatiko::is_termatiko(g, set).verdict) probe6.insert(set);
        }
        std::set<std::vector<int>> enum6;
        for (const auto& rec : termatiko::enumerate_T6(g, c12).records) enum6.insert(rec.support);

        gate.line(!smaller && enum3 == brute3 && enum6 == probe6,
                  cat("criterion 6", sub, ": enumerators match brute force on ", c.name, " (",
                      enum3.size(), " triples, ", enum6.size(), " size-6 sets, none smaller than 3)"));
        ++sub;
    }
    Gate::info(cat("criterion 6 runtime ", fmt_seconds(elapsed(t0))));
}

// ---------------------------------------------------------------------------
// criterion 7: ordinal recovery comparison of the lifted optimized chain
// against the lifted uncoupled baseline.

void criterion7(Gate& gate, const BinarySparseMatrix& lifted1, const BinarySparseMatrix& lifted4) {
    const auto t0 = Clock::now();
    simulate::SweepConfig cfg;
    cfg.trials = 200;
    cfg.seed = 2026;
    cfg.max_iter = 100;
    for (int k = 20; k <= 500; k += 20) cfg.k_values.push_back(k);

    const auto res1 = simulate::run_sweep(lifted1, cfg);
    const auto res4 = simulate::run_sweep(lifted4, cfg);

    auto kstar = [](const simulate::SweepResult& r) {
        int best = 0;
        for (const auto& pt : r.points)
            if (pt.probability >= 0.99) best = std::max(best, pt.k);
        return best;
    };
    auto monotone_within_noise = [](const simulate::SweepResult& r) {
        for (std::size_t i = 1; i < r.points.size(); ++i) {
            const auto& a = r.points[i - 1];
            const auto& b = r.points[i];
            const double se = std::sqrt(a.probability * (1 - a.probability) / a.trials +
                                        b.probability * (1 - b.probability) / b.trials);
            if (b.probability > a.probability + 3 * se) return false;
        }
        return true;
    };

    const int k1 = kstar(res1);
    const int k4 = kstar(res4);
    gate.line(k1 > 0 && static_cast<double>(k4) >= 1.2 * static_cast<double>(k1),
              cat("criterion 7a: highest sparsity with >= 0.99 recovery — optimized chain k=", k4,
                  " vs uncoupled baseline k=", k1, " (>= 1.2x required)"));
    gate.line(monotone_within_noise(res1) && monotone_within_noise(res4),
              "criterion 7b: both recovery curves are monotone nonincreasing within 3 binomial standard errors");
    Gate::info(cat("criterion 7: 200 trials per point, k = 20..500 step 20, n = ", lifted1.cols()));
    Gate::info(cat("criterion 7 runtime ", fmt_seconds(elapsed(t0))));
}

// ---------------------------------------------------------------------------
// criterion 8: interval-passing invariants on random instances.

struct InstrumentedOutcome {
    bool containment = true;
    bool monotone = true;
    bool ordered = true;
    bool consistent = true;
    bool converged = false;
};

InstrumentedOutcome run_instrumented(const BinarySparseMatrix& a, const std::vector<std::int64_t>& x, int max_iter) {
    InstrumentedOutcome out;
    const auto g = to_tanner(a);
    const auto y = matvec(a, x);
    auto s = ipa::init_state(g, y);

    auto contained = [&](const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi) {
        for (int e = 0; e < g.num_edges(); ++e) {
            const auto xv = x[static_cast<std::size_t>(g.edge_var[static_cast<std::size_t>(e)])];
            if (lo[static_cast<std::size_t>(e)] > xv || hi[static_cast<std::size_t>(e)] < xv) return false;
        }
        return true;
    };
    if (!contained(s.lo_vc, s.hi_vc)) out.containment = false;

    std::vector<std::int64_t> prev_lo, prev_hi;
    while (s.iteration < max_iter) {
        prev_lo = s.lo_vc;
        prev_hi = s.hi_vc;
        ipa::cn_update(s, g, y);
        if (!contained(s.lo_cv, s.hi_cv)) out.containment = false;
        ipa::vn_update(s, g);
        if (!contained(s.lo_vc, s.hi_vc)) out.containment = false;
        for (std::size_t e = 0; e < s.lo_vc.size(); ++e) {
            if (s.lo_vc[e] < prev_lo[e] || s.hi_vc[e] > prev_hi[e]) out.monotone = false;
            if (s.lo_vc[e] > s.hi_vc[e]) out.ordered = false;
        }
        if (ipa::intervals_collapsed(s, g)) {
            out.converged = true;
            break;
        }
        if (s.lo_vc == prev_lo && s.hi_vc == prev_hi) break;
    }
    if (out.converged && matvec(a, ipa::extract_estimate(s, g)) != y) out.consistent = false;
    return out;
}

void criterion8(Gate& gate) {
    const auto t0 = Clock::now();
    Rng meta(20260815);
    long bad_containment = 0, bad_monotone = 0, bad_order = 0, bad_consistency = 0, converged = 0;
    const int instances = 1000;
    for (int i = 0; i < instances; ++i) {
        const int rows = 1 + meta.bounded_int(40);
        const int cols = 1 + meta.bounded_int(100);
        const double density = 0.03 + 0.27 * static_cast<double>(meta.bounded_int(1000)) / 1000.0;
        const auto a = test_util::random_bipartite(rows, cols, density, meta.next());
        std::vector<std::int64_t> x(static_cast<std::size_t>(cols), 0);
        const int k = meta.bounded_int(cols / 4 + 2);
        for (int v : meta.sample_without_replacement(cols, std::min(k, cols)))
            x[static_cast<std::size_t>(v)] = 1 + meta.bounded_int(9);
        const auto out = run_instrumented(a, x, 50);
        if (!out.containment) ++bad_containment;
        if (!out.monotone) ++bad_monotone;
        if (!out.ordered) ++bad_order;
        if (!out.consistent) ++bad_consistency;
        if (out.converged) ++converged;
    }
    gate.line(bad_containment == 0 && bad_monotone == 0 && bad_order == 0 && bad_consistency == 0,
              cat("criterion 8: interval invariants on ", instances,
                  " random instances — containment violations ", bad_containment, ", monotonicity violations ",
                  bad_monotone, ", interval-order violations ", bad_order, ", measurement mismatches after "
                  "convergence ", bad_consistency));
    Gate::info(cat("criterion 8: ", converged, " of ", instances, " instances converged"));
    Gate::info(cat("criterion 8 runtime ", fmt_seconds(elapsed(t0))));
}

// ---------------------------------------------------------------------------
// criterion 9: the cycle enumerator against brute-force DFS, plus the
// girth-6 guarantee of the array base.

void criterion9(Gate& gate, const BinarySparseMatrix& h37) {
    const auto t0 = Clock::now();
    long mismatches = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int rows = 4 + trial % 10;
        const int cols = 5 + trial % 12;
        const double density = 0.12 + 0.02 * (trial % 6);
        const auto a = test_util::random_bipartite(rows, cols, density, 9000 + static_cast<std::uint64_t>(trial));
        const auto g = to_tanner(a);
        const auto adj = test_util::union_adjacency(a);
        for (int len : {4, 6, 8, 10, 12})
            if (cycles::count_cycles(g, len) != test_util::brute_count_cycles(adj, len)) ++mismatches;
    }
    gate.line(mismatches == 0,
              cat("criterion 9a: cycle counts match brute-force DFS on 50 random bipartite graphs (<= 30 nodes, "
                  "lengths 4-12), mismatches ", mismatches));
    const auto four = cycles::count_cycles(to_tanner(h37), 4);
    gate.line(four == 0, cat("criterion 9b: H(3,7) has no 4-cycles (count ", four, ")"));
    Gate::info(cat("criterion 9 runtime ", fmt_seconds(elapsed(t0))));
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    Gate gate;

    const auto base37 = build_ab_base({3, 7});
    const auto base35 = build_ab_base({3, 5});
    const auto proto1 = coupling::build_block_diagonal_protograph(base37, 10);

    const auto baseline = criterion1(gate, proto1);
    criterion2(gate, base37);
    const auto kappa4 = criterion3(gate, base37, baseline);

    const auto proto4 = coupling::build_sc_protograph_algebraic(base37, kappa4);
    const auto lifted4 = coupling::terminal_lift(proto4, coupling::TerminalLift::random(proto4.nnz(), 5, 424242));
    criterion4(gate, proto4, lifted4, base35);

    criterion5(gate, base37);
    criterion6(gate);

    const auto lifted1 = coupling::terminal_lift(proto1, coupling::TerminalLift::random(proto1.nnz(), 5, 424242));
    criterion7(gate, lifted1, lifted4);

    criterion8(gate);
    criterion9(gate, base37);

    std::printf("acceptance: %d checks, %d failed, total runtime %s\n", gate.checks, gate.failures,
                fmt_seconds(elapsed(t0)).c_str());
    return gate.failures;
}
