// Stopping sets and termatiko sets. A stopping set is a variable subset all
// of whose neighboring checks see it at least twice; a termatiko set is a
// support on which interval passing returns the all-zero estimate, i.e. a
// total reconstruction failure. This header provides the membership tests,
// the structural enumerators over 12-cycle variable sets (for size-6 sets
// and the triples inside minimum size-6 stopping sets), the necessary-
// condition verifier, and an exhaustive oracle for small matrices.

#ifndef SCMEAS_TERMATIKO_HPP
#define SCMEAS_TERMATIKO_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scmeas/binary_matrix.hpp"
#include "scmeas/cycles.hpp"
#include "scmeas/ipa.hpp"
#include "scmeas/tanner.hpp"

namespace scmeas::termatiko {

/// A stopping set: every check adjacent to `vns` has at least two edges into
/// it. `neighbor_cns` is that check set.
struct StoppingSet {
    std::vector<int> vns;
    std::vector<int> neighbor_cns;
    int size = 0;
};

/// Outcome of one termatiko probe. `cn_set` is N (all checks adjacent to the
/// support), `shadow` is the outside variables connected only to N. When the
/// union support ∪ shadow is itself a stopping set, `enclosing_m` records its
/// size (the canonical enclosing stopping set); otherwise -1. `source` keeps
/// the candidate set an enumerator derived the record from (empty for direct
/// probes).
struct TermatikoRecord {
    std::vector<int> support;
    int w = 0;
    bool verdict = false;
    std::vector<int> cn_set;
    std::vector<int> shadow;
    int enclosing_m = -1;
    std::vector<int> source;
};

struct EnumerationResult {
    std::int64_t count = 0;
    std::vector<TermatikoRecord> records;
};

namespace detail {

inline void check_vn_set(const TannerGraph& g, const std::vector<int>& vns, const char* who) {
    if (vns.empty()) throw std::invalid_argument(std::string(who) + ": variable set must be nonempty");
    for (int v : vns)
        if (v < 0 || v >= g.num_vars)
            throw std::invalid_argument(std::string(who) + ": variable index " + std::to_string(v) +
                                        " out of range");
}

/// Sorted set of checks adjacent to any of the given variables.
inline std::vector<int> neighbor_checks(const TannerGraph& g, const std::vector<int>& vns) {
    std::vector<int> cns;
    for (int v : vns)
        for (int i = g.var_offset[static_cast<std::size_t>(v)]; i < g.var_offset[static_cast<std::size_t>(v) + 1]; ++i)
            cns.push_back(g.var_check[static_cast<std::size_t>(i)]);
    std::sort(cns.begin(), cns.end());
    cns.erase(std::unique(cns.begin(), cns.end()), cns.end());
    return cns;
}

inline bool sorted_contains(const std::vector<int>& sorted, int value) {
    return std::binary_search(sorted.begin(), sorted.end(), value);
}

/// Shadow set: variables outside `tset` (sorted) with at least one edge, all
/// of whose checks lie inside `nset` (sorted). Scans only variables adjacent
/// to `nset`, so it stays local on large graphs.
inline std::vector<int> shadow_set(const TannerGraph& g, const std::vector<int>& tset,
                                   const std::vector<int>& nset) {
    std::vector<int> candidates;
    for (int c : nset)
        for (int i = g.check_offset[static_cast<std::size_t>(c)]; i < g.check_offset[static_cast<std::size_t>(c) + 1]; ++i)
            candidates.push_back(g.check_var[static_cast<std::size_t>(i)]);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<int> shadow;
    for (int v : candidates) {
        if (sorted_contains(tset, v)) continue;
        bool inside = true;
        for (int i = g.var_offset[static_cast<std::size_t>(v)]; inside && i < g.var_offset[static_cast<std::size_t>(v) + 1]; ++i)
            inside = sorted_contains(nset, g.var_check[static_cast<std::size_t>(i)]);
        if (inside) shadow.push_back(v);
    }
    return shadow;
}

/// Interval passing restricted to the subsystem (tset ∪ shadow) × nset with
/// the measurement y = A·1_tset. This is exact for the zero-estimate verdict:
/// every variable outside tset ∪ shadow has some zero-measurement check, so
/// from initialization onward it only ever sends [0, 0] into nset and its own
/// estimate is pinned at zero — the subsystem evolves exactly as in the full
/// graph.
inline bool localized_zero_estimate(const TannerGraph& g, const std::vector<int>& tset,
                                    const std::vector<int>& nset, const std::vector<int>& shadow,
                                    int max_iter) {
    std::vector<int> vars(tset);
    vars.insert(vars.end(), shadow.begin(), shadow.end());
    std::sort(vars.begin(), vars.end());

    BinarySparseMatrix sub(static_cast<int>(nset.size()), static_cast<int>(vars.size()));
    std::vector<std::int64_t> y(nset.size(), 0);
    for (std::size_t r = 0; r < nset.size(); ++r) {
        const int c = nset[r];
        for (int i = g.check_offset[static_cast<std::size_t>(c)]; i < g.check_offset[static_cast<std::size_t>(c) + 1]; ++i) {
            const int v = g.check_var[static_cast<std::size_t>(i)];
            if (sorted_contains(tset, v)) ++y[r];
            const auto it = std::lower_bound(vars.begin(), vars.end(), v);
            if (it != vars.end() && *it == v)
                sub.add_entry(static_cast<int>(r), static_cast<int>(it - vars.begin()));
        }
    }
    sub.finalize();
    const auto result = ipa::ipa_reconstruct(y, sub, max_iter);
    return std::all_of(result.xhat.begin(), result.xhat.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace detail

/// True iff every check adjacent to S has at least two edges into S.
inline bool is_stopping_set(const TannerGraph& g, const std::vector<int>& vns) {
    detail::check_vn_set(g, vns, "is_stopping_set");
    std::vector<int> sorted(vns);
    std::sort(sorted.begin(), sorted.end());
    for (int c : detail::neighbor_checks(g, sorted)) {
        int inside = 0;
        for (int i = g.check_offset[static_cast<std::size_t>(c)]; i < g.check_offset[static_cast<std::size_t>(c) + 1]; ++i)
            inside += detail::sorted_contains(sorted, g.check_var[static_cast<std::size_t>(i)]) ? 1 : 0;
        if (inside < 2) return false;
    }
    return true;
}

inline bool is_stopping_set(const BinarySparseMatrix& a, const std::vector<int>& vns) {
    return is_stopping_set(to_tanner(a), vns);
}

/// Iteration cap for termatiko probes; the verdict is a fixed-point property
/// reached within a handful of iterations at these scales.
constexpr int kProbeIterations = 50;

namespace detail {

/// Fills the structural fields shared by all probes: N, shadow, and the
/// greedy minimal enclosing stopping set size (the support itself if it is a
/// stopping set, else support ∪ shadow if that is, else unknown).
inline TermatikoRecord make_record(const TannerGraph& g, std::vector<int> support_sorted) {
    TermatikoRecord rec;
    rec.support = std::move(support_sorted);
    rec.w = static_cast<int>(rec.support.size());
    rec.cn_set = neighbor_checks(g, rec.support);
    rec.shadow = shadow_set(g, rec.support, rec.cn_set);
    if (is_stopping_set(g, rec.support)) {
        rec.enclosing_m = rec.w;
    } else {
        std::vector<int> closure(rec.support);
        closure.insert(closure.end(), rec.shadow.begin(), rec.shadow.end());
        std::sort(closure.begin(), closure.end());
        if (is_stopping_set(g, closure)) rec.enclosing_m = static_cast<int>(closure.size());
    }
    return rec;
}

}  // namespace detail

/// Probes one support with the interval-passing oracle on the full graph and
/// fills the structural context (N, shadow, enclosing stopping set size).
inline TermatikoRecord is_termatiko(const TannerGraph& g, const std::vector<int>& tset) {
    detail::check_vn_set(g, tset, "is_termatiko");
    std::vector<int> sorted(tset);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    TermatikoRecord rec = detail::make_record(g, std::move(sorted));

    std::vector<std::int64_t> y(static_cast<std::size_t>(g.num_checks), 0);
    for (int v : rec.support)
        for (int i = g.var_offset[static_cast<std::size_t>(v)]; i < g.var_offset[static_cast<std::size_t>(v) + 1]; ++i)
            ++y[static_cast<std::size_t>(g.var_check[static_cast<std::size_t>(i)])];
    const auto result = ipa::ipa_reconstruct(y, g, kProbeIterations);
    rec.verdict = std::all_of(result.xhat.begin(), result.xhat.end(), [](std::int64_t x) { return x == 0; });
    return rec;
}

inline TermatikoRecord is_termatiko(const BinarySparseMatrix& a, const std::vector<int>& tset) {
    return is_termatiko(to_tanner(a), tset);
}

/// Algorithm: probe each unique 12-cycle variable set as a size-6 termatiko
/// candidate and count the failures. Candidates must be pre-deduplicated
/// (the cycle enumerator's unique sets are). Probes run on the localized
/// subsystem, which is exact for the verdict.
inline EnumerationResult enumerate_T6(const TannerGraph& g, const std::vector<cycles::CycleVnSet>& c12sets) {
    EnumerationResult out;
    std::vector<int> tset;
    for (const auto& cand : c12sets) {
        tset.assign(cand.vns.begin(), cand.vns.begin() + cand.size);
        detail::check_vn_set(g, tset, "enumerate_T6");
        const auto nset = detail::neighbor_checks(g, tset);
        const auto shadow = detail::shadow_set(g, tset, nset);
        if (!detail::localized_zero_estimate(g, tset, nset, shadow, kProbeIterations)) continue;
        ++out.count;
        TermatikoRecord rec = detail::make_record(g, tset);
        rec.verdict = true;
        rec.source = tset;
        out.records.push_back(std::move(rec));
    }
    return out;
}

inline EnumerationResult enumerate_T6(const BinarySparseMatrix& a, const std::vector<cycles::CycleVnSet>& c12sets) {
    return enumerate_T6(to_tanner(a), c12sets);
}

/// Extracts the distinct termatiko triples living inside minimum size-6
/// stopping sets. Candidates (size-6 variable sets, typically the unique
/// 12-cycle sets) are screened for the minimum stopping-set signature
/// (stopping set with exactly nine neighbor checks); inside each survivor,
/// every triple connected to all nine checks is probed with the oracle.
/// Accepted triples are deduplicated globally.
inline EnumerationResult enumerate_T3(const TannerGraph& g, const std::vector<cycles::CycleVnSet>& s6_candidates) {
    EnumerationResult out;
    std::set<cycles::u128> seen;
    std::vector<int> six, triple;
    for (const auto& cand : s6_candidates) {
        if (cand.size != 6) continue;
        six.assign(cand.vns.begin(), cand.vns.begin() + cand.size);
        detail::check_vn_set(g, six, "enumerate_T3");
        const auto nset = detail::neighbor_checks(g, six);
        if (nset.size() != 9 || !is_stopping_set(g, six)) continue;
        for (int mask = 0; mask < 64; ++mask) {
            if (__builtin_popcount(static_cast<unsigned>(mask)) != 3) continue;
            triple.clear();
            for (int b = 0; b < 6; ++b)
                if (mask & (1 << b)) triple.push_back(six[static_cast<std::size_t>(b)]);
            if (detail::neighbor_checks(g, triple) != nset) continue;  // must cover all nine
            const auto key = cycles::pack_vn_set(triple.data(), 3);
            if (seen.count(key)) continue;
            const auto shadow = detail::shadow_set(g, triple, nset);
            if (!detail::localized_zero_estimate(g, triple, nset, shadow, kProbeIterations)) continue;
            seen.insert(key);
            ++out.count;
            TermatikoRecord rec = detail::make_record(g, triple);
            rec.verdict = true;
            rec.source = six;
            out.records.push_back(std::move(rec));
        }
    }
    return out;
}

inline EnumerationResult enumerate_T3(const BinarySparseMatrix& a, const std::vector<cycles::CycleVnSet>& s6_candidates) {
    return enumerate_T3(to_tanner(a), s6_candidates);
}

/// Which necessary condition each check of N satisfies for a termatiko
/// support: kConditionShadow — the check touches the shadow set; kConditionCore
/// — the check has two support neighbors all of whose checks see the support
/// twice; kViolated — neither (impossible for a genuine termatiko set, so a
/// violation flags a bug in either the probe or this verifier).
enum class CnCondition { kConditionShadow, kConditionCore, kViolated };

struct ConditionReport {
    struct Entry {
        int cn = -1;
        CnCondition condition = CnCondition::kViolated;
    };
    std::vector<Entry> entries;
    bool all_satisfied = false;
};

inline ConditionReport verify_conditions(const TannerGraph& g, const std::vector<int>& tset) {
    detail::check_vn_set(g, tset, "verify_conditions");
    std::vector<int> sorted(tset);
    std::sort(sorted.begin(), sorted.end());
    const auto nset = detail::neighbor_checks(g, sorted);
    const auto shadow = detail::shadow_set(g, sorted, nset);

    auto support_degree = [&](int c) {
        int inside = 0;
        for (int i = g.check_offset[static_cast<std::size_t>(c)]; i < g.check_offset[static_cast<std::size_t>(c) + 1]; ++i)
            inside += detail::sorted_contains(sorted, g.check_var[static_cast<std::size_t>(i)]) ? 1 : 0;
        return inside;
    };

    ConditionReport report;
    report.all_satisfied = true;
    for (int c : nset) {
        ConditionReport::Entry entry;
        entry.cn = c;
        bool touches_shadow = false;
        for (int i = g.check_offset[static_cast<std::size_t>(c)]; !touches_shadow && i < g.check_offset[static_cast<std::size_t>(c) + 1]; ++i)
            touches_shadow = detail::sorted_contains(shadow, g.check_var[static_cast<std::size_t>(i)]);
        if (touches_shadow) {
            entry.condition = CnCondition::kConditionShadow;
        } else {
            // count support neighbors of c whose every check sees the support twice
            int anchored = 0;
            for (int i = g.check_offset[static_cast<std::size_t>(c)]; i < g.check_offset[static_cast<std::size_t>(c) + 1]; ++i) {
                const int v = g.check_var[static_cast<std::size_t>(i)];
                if (!detail::sorted_contains(sorted, v)) continue;
                bool all_twice = true;
                for (int j = g.var_offset[static_cast<std::size_t>(v)]; all_twice && j < g.var_offset[static_cast<std::size_t>(v) + 1]; ++j)
                    all_twice = support_degree(g.var_check[static_cast<std::size_t>(j)]) >= 2;
                if (all_twice) ++anchored;
            }
            entry.condition = anchored >= 2 ? CnCondition::kConditionCore : CnCondition::kViolated;
            if (entry.condition == CnCondition::kViolated) report.all_satisfied = false;
        }
        report.entries.push_back(entry);
    }
    return report;
}

inline ConditionReport verify_conditions(const BinarySparseMatrix& a, const std::vector<int>& tset) {
    return verify_conditions(to_tanner(a), tset);
}

/// Exhaustive ground truth: probes every variable subset of size 1..max_w on
/// the full graph and returns the termatiko records. Guarded to small
/// matrices — the subset count explodes.
inline std::vector<TermatikoRecord> bruteforce_termatiko(const TannerGraph& g, int max_w) {
    if (max_w < 0 || max_w > 6) throw std::invalid_argument("bruteforce_termatiko: max_w must be in 0..6");
    if (g.num_vars > 64)
        throw std::invalid_argument("bruteforce_termatiko: matrix too large (" + std::to_string(g.num_vars) +
                                    " variables, limit 64)");
    std::vector<TermatikoRecord> found;
    std::vector<int> subset;
    auto descend = [&](auto&& self, int next, int remaining) -> void {
        if (remaining == 0) {
            auto rec = is_termatiko(g, subset);
            if (rec.verdict) found.push_back(std::move(rec));
            return;
        }
        for (int v = next; v <= g.num_vars - remaining; ++v) {
            subset.push_back(v);
            self(self, v + 1, remaining - 1);
            subset.pop_back();
        }
    };
    for (int w = 1; w <= max_w; ++w) descend(descend, 0, w);
    return found;
}

inline std::vector<TermatikoRecord> bruteforce_termatiko(const BinarySparseMatrix& a, int max_w) {
    return bruteforce_termatiko(to_tanner(a), max_w);
}

}  // namespace scmeas::termatiko

#endif  // SCMEAS_TERMATIKO_HPP
