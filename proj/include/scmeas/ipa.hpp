// Interval-passing reconstruction of a nonnegative integer signal from
// y = A x on the Tanner graph of a binary matrix A. Messages are exact
// integer intervals [lo, hi] exchanged along edges; check nodes propagate
// extrinsic bounds derived from their measurement, variable nodes intersect
// the intervals of their whole neighborhood (sound, since every interval
// bounds the same signal entry).

#ifndef SCMEAS_IPA_HPP
#define SCMEAS_IPA_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "scmeas/binary_matrix.hpp"
#include "scmeas/tanner.hpp"

namespace scmeas::ipa {

/// Upper-bound sentinel for variable nodes with no measurements ("no
/// information"). Kept far from the int64 range so interval arithmetic
/// cannot overflow even after summing over a large check neighborhood.
constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max() / 4;

/// Per-edge interval messages in both directions, indexed by Tanner edge id,
/// plus the iteration counter. One full iteration is a cn_update followed by
/// a vn_update; each phase reads only the opposite direction's messages, so
/// updates within a phase are order-independent.
struct IntervalState {
    std::vector<std::int64_t> lo_vc, hi_vc;  // variable -> check
    std::vector<std::int64_t> lo_cv, hi_cv;  // check -> variable
    int iteration = 0;
};

/// Result of one reconstruction. `converged` means every measured variable's
/// interval collapsed (lo == hi), which guarantees A·xhat = y; otherwise the
/// run ended at a message fixed point or at the iteration cap.
struct IpaResult {
    std::vector<std::int64_t> xhat;
    bool converged = false;
    int iterations = 0;
};

inline void check_measurement(const TannerGraph& g, const std::vector<std::int64_t>& y) {
    if (static_cast<int>(y.size()) != g.num_checks)
        throw std::invalid_argument("ipa: measurement length " + std::to_string(y.size()) +
                                    " does not match check count " + std::to_string(g.num_checks));
    for (const auto& value : y)
        if (value < 0) throw std::invalid_argument("ipa: measurements must be nonnegative");
}

/// Initial messages: lo = 0 and hi = min over the variable's measurements
/// (the tightest a-priori bounds a nonnegative signal admits).
inline IntervalState init_state(const TannerGraph& g, const std::vector<std::int64_t>& y) {
    check_measurement(g, y);
    IntervalState s;
    const auto edges = static_cast<std::size_t>(g.num_edges());
    s.lo_vc.assign(edges, 0);
    s.hi_vc.assign(edges, 0);
    s.lo_cv.assign(edges, 0);
    s.hi_cv.assign(edges, 0);
    for (int v = 0; v < g.num_vars; ++v) {
        std::int64_t cap = kUnbounded;
        for (int i = g.var_offset[static_cast<std::size_t>(v)]; i < g.var_offset[static_cast<std::size_t>(v) + 1]; ++i)
            cap = std::min(cap, y[static_cast<std::size_t>(g.var_check[static_cast<std::size_t>(i)])]);
        for (int i = g.var_offset[static_cast<std::size_t>(v)]; i < g.var_offset[static_cast<std::size_t>(v) + 1]; ++i)
            s.hi_vc[static_cast<std::size_t>(g.var_edge[static_cast<std::size_t>(i)])] = cap;
    }
    return s;
}

/// Check-node phase: for each edge (c,v),
///   lo_{c->v} = max(0, y(c) - sum of hi_{v'->c} over the other neighbors)
///   hi_{c->v} =        y(c) - sum of lo_{v'->c} over the other neighbors
/// computed extrinsically via whole-neighborhood sums minus the edge's own
/// message. Sums run in 128-bit so sentinel upper bounds cannot overflow;
/// results are clamped back into [0, kUnbounded].
inline void cn_update(IntervalState& s, const TannerGraph& g, const std::vector<std::int64_t>& y) {
    using i128 = __int128;
    for (int c = 0; c < g.num_checks; ++c) {
        i128 sum_lo = 0, sum_hi = 0;
        const int begin = g.check_offset[static_cast<std::size_t>(c)];
        const int end = g.check_offset[static_cast<std::size_t>(c) + 1];
        for (int i = begin; i < end; ++i) {
            const auto e = static_cast<std::size_t>(g.check_edge[static_cast<std::size_t>(i)]);
            sum_lo += s.lo_vc[e];
            sum_hi += s.hi_vc[e];
        }
        const i128 yc = y[static_cast<std::size_t>(c)];
        for (int i = begin; i < end; ++i) {
            const auto e = static_cast<std::size_t>(g.check_edge[static_cast<std::size_t>(i)]);
            const i128 lo = yc - (sum_hi - s.hi_vc[e]);
            const i128 hi = yc - (sum_lo - s.lo_vc[e]);
            s.lo_cv[e] = lo <= 0 ? 0 : static_cast<std::int64_t>(lo);
            s.hi_cv[e] = hi >= kUnbounded ? kUnbounded : (hi <= 0 ? 0 : static_cast<std::int64_t>(hi));
        }
    }
}

/// Variable-node phase: each variable intersects all incoming intervals and
/// sends the result on every edge (full neighborhood, not extrinsic):
///   lo_{v->c} = max over c' of lo_{c'->v},  hi_{v->c} = min over c' of hi_{c'->v}.
inline void vn_update(IntervalState& s, const TannerGraph& g) {
    for (int v = 0; v < g.num_vars; ++v) {
        std::int64_t lo = 0, hi = kUnbounded;
        const int begin = g.var_offset[static_cast<std::size_t>(v)];
        const int end = g.var_offset[static_cast<std::size_t>(v) + 1];
        for (int i = begin; i < end; ++i) {
            const auto e = static_cast<std::size_t>(g.var_edge[static_cast<std::size_t>(i)]);
            lo = std::max(lo, s.lo_cv[e]);
            hi = std::min(hi, s.hi_cv[e]);
        }
        for (int i = begin; i < end; ++i) {
            const auto e = static_cast<std::size_t>(g.var_edge[static_cast<std::size_t>(i)]);
            s.lo_vc[e] = lo;
            s.hi_vc[e] = hi;
        }
    }
    ++s.iteration;
}

/// Final estimate: the best lower bound seen by each variable (zero for
/// variables with no measurements).
inline std::vector<std::int64_t> extract_estimate(const IntervalState& s, const TannerGraph& g) {
    std::vector<std::int64_t> xhat(static_cast<std::size_t>(g.num_vars), 0);
    for (int v = 0; v < g.num_vars; ++v)
        for (int i = g.var_offset[static_cast<std::size_t>(v)]; i < g.var_offset[static_cast<std::size_t>(v) + 1]; ++i)
            xhat[static_cast<std::size_t>(v)] = std::max(
                xhat[static_cast<std::size_t>(v)],
                s.lo_cv[static_cast<std::size_t>(g.var_edge[static_cast<std::size_t>(i)])]);
    return xhat;
}

/// True when every measured variable's interval has collapsed to a point.
/// vn_update writes one shared interval to all of a variable's edges, so
/// inspecting the first edge suffices.
inline bool intervals_collapsed(const IntervalState& s, const TannerGraph& g) {
    for (int v = 0; v < g.num_vars; ++v) {
        const int begin = g.var_offset[static_cast<std::size_t>(v)];
        if (begin == g.var_offset[static_cast<std::size_t>(v) + 1]) continue;  // unmeasured
        const auto e = static_cast<std::size_t>(g.var_edge[static_cast<std::size_t>(begin)]);
        if (s.lo_vc[e] != s.hi_vc[e]) return false;
    }
    return true;
}

/// Runs interval passing until every measured variable's interval collapses,
/// the messages reach a fixed point, or max_iter full iterations elapse.
inline IpaResult ipa_reconstruct(const std::vector<std::int64_t>& y, const TannerGraph& g, int max_iter = 100) {
    if (max_iter < 1) throw std::invalid_argument("ipa: max_iter must be at least 1");
    IntervalState s = init_state(g, y);
    IpaResult r;
    std::vector<std::int64_t> prev_lo, prev_hi;
    while (s.iteration < max_iter) {
        prev_lo = s.lo_vc;
        prev_hi = s.hi_vc;
        cn_update(s, g, y);
        vn_update(s, g);
        if (intervals_collapsed(s, g)) {
            r.converged = true;
            break;
        }
        if (s.lo_vc == prev_lo && s.hi_vc == prev_hi) break;  // fixed point
    }
    r.iterations = s.iteration;
    r.xhat = extract_estimate(s, g);
    return r;
}

inline IpaResult ipa_reconstruct(const std::vector<std::int64_t>& y, const BinarySparseMatrix& a,
                                 int max_iter = 100) {
    return ipa_reconstruct(y, to_tanner(a), max_iter);
}

/// Index set of nonzero entries.
inline std::vector<int> support(const std::vector<std::int64_t>& x) {
    std::vector<int> s;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) s.push_back(static_cast<int>(i));
    return s;
}

}  // namespace scmeas::ipa

#endif  // SCMEAS_IPA_HPP
