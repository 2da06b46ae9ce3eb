// Exact enumeration of short even cycles in Tanner graphs, unique
// variable-node sets of 12-cycles, and the net-shift survival test that
// decides which base-graph cycles remain cycles after a circulant lift.

#ifndef SCMEAS_CYCLES_HPP
#define SCMEAS_CYCLES_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "scmeas/coupling.hpp"
#include "scmeas/tanner.hpp"

namespace scmeas::cycles {

/// A simple cycle of even length 4..12, stored in canonical traversal
/// order: vns[0] is the smallest VN of the cycle, cns[0] < cns[k-1], and
/// the walk is vns[0], cns[0], vns[1], ..., vns[k-1], cns[k-1], back to
/// vns[0]. edges[2t] joins vns[t] and cns[t]; edges[2t+1] joins cns[t] and
/// vns[(t+1) mod k]. Two cycles are equal iff their canonical fields match,
/// so the struct is its own rotation/reflection-invariant key.
struct Cycle {
    int length = 0;
    std::array<int, 6> vns{};
    std::array<int, 6> cns{};
    std::array<int, 12> edges{};

    int k() const { return length / 2; }
};

/// A distinct set of cycle VNs with the number of cycles sharing it. For
/// 12-cycles this is the C(12) set (6 VNs).
struct CycleVnSet {
    std::array<int, 6> vns{};  // sorted ascending; entries past `size` are -1
    int size = 0;
    std::int64_t multiplicity = 0;
};

using u128 = unsigned __int128;

/// Packs up to six sorted VN indices (each < 2^21 - 1) into one key.
inline u128 pack_vn_set(const int* vns, int k) {
    std::array<int, 6> v{};
    std::copy(vns, vns + k, v.begin());
    std::sort(v.begin(), v.begin() + k);
    u128 key = 0;
    for (int i = 0; i < k; ++i) key |= static_cast<u128>(static_cast<std::uint32_t>(v[static_cast<std::size_t>(i)] + 1)) << (21 * i);
    return key;
}

namespace detail {

constexpr int kInf = std::numeric_limits<int>::max() / 2;

/// Streaming depth-first enumeration of all simple cycles of one fixed even
/// length. Each cycle is emitted exactly once: the root VN is the smallest
/// VN of the cycle and the orientation is fixed by cns[0] < cns[k-1].
/// Breadth-first distances from the root (through admissible VNs only)
/// prune branches that cannot close in the remaining edge budget.
template <class Sink>
class CycleEnumerator {
  public:
    CycleEnumerator(const TannerGraph& g, int length, Sink& sink) : g_(g), k_(length / 2), sink_(sink) {
        cycle_.length = length;
        dist_vn_.assign(static_cast<std::size_t>(g.num_vars), kInf);
        dist_cn_.assign(static_cast<std::size_t>(g.num_checks), kInf);
        used_vn_.assign(static_cast<std::size_t>(g.num_vars), 0);
        used_cn_.assign(static_cast<std::size_t>(g.num_checks), 0);
        root_edge_.assign(static_cast<std::size_t>(g.num_checks), -1);
    }

    void run() {
        for (int v0 = 0; v0 < g_.num_vars; ++v0) {
            root_ = v0;
            bfs();
            for (int s = g_.var_offset[static_cast<std::size_t>(v0)]; s < g_.var_offset[static_cast<std::size_t>(v0) + 1]; ++s)
                root_edge_[static_cast<std::size_t>(g_.var_check[static_cast<std::size_t>(s)])] = g_.var_edge[static_cast<std::size_t>(s)];
            cycle_.vns[0] = v0;
            used_vn_[static_cast<std::size_t>(v0)] = 1;
            descend_vn(0);
            used_vn_[static_cast<std::size_t>(v0)] = 0;
            for (int s = g_.var_offset[static_cast<std::size_t>(v0)]; s < g_.var_offset[static_cast<std::size_t>(v0) + 1]; ++s)
                root_edge_[static_cast<std::size_t>(g_.var_check[static_cast<std::size_t>(s)])] = -1;
        }
    }

  private:
    void bfs() {
        std::fill(dist_vn_.begin(), dist_vn_.end(), kInf);
        std::fill(dist_cn_.begin(), dist_cn_.end(), kInf);
        queue_.clear();
        dist_vn_[static_cast<std::size_t>(root_)] = 0;
        queue_.push_back(root_);  // VNs as v, CNs as num_vars + c
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const int node = queue_[head];
            if (node < g_.num_vars) {
                const int d = dist_vn_[static_cast<std::size_t>(node)];
                if (d + 1 >= 2 * k_) continue;
                for (int s = g_.var_offset[static_cast<std::size_t>(node)]; s < g_.var_offset[static_cast<std::size_t>(node) + 1]; ++s) {
                    const int c = g_.var_check[static_cast<std::size_t>(s)];
                    if (dist_cn_[static_cast<std::size_t>(c)] == kInf) {
                        dist_cn_[static_cast<std::size_t>(c)] = d + 1;
                        queue_.push_back(g_.num_vars + c);
                    }
                }
            } else {
                const int c = node - g_.num_vars;
                const int d = dist_cn_[static_cast<std::size_t>(c)];
                if (d + 1 >= 2 * k_) continue;
                for (int s = g_.check_offset[static_cast<std::size_t>(c)]; s < g_.check_offset[static_cast<std::size_t>(c) + 1]; ++s) {
                    const int v = g_.check_var[static_cast<std::size_t>(s)];
                    if (v > root_ && dist_vn_[static_cast<std::size_t>(v)] == kInf) {
                        dist_vn_[static_cast<std::size_t>(v)] = d + 1;
                        queue_.push_back(v);
                    }
                }
            }
        }
    }

    // at vns[t], choose cns[t]; 2t edges used so far
    void descend_vn(int t) {
        const int v = cycle_.vns[static_cast<std::size_t>(t)];
        const bool closing = (t == k_ - 1);
        for (int s = g_.var_offset[static_cast<std::size_t>(v)]; s < g_.var_offset[static_cast<std::size_t>(v) + 1]; ++s) {
            const int c = g_.var_check[static_cast<std::size_t>(s)];
            if (used_cn_[static_cast<std::size_t>(c)]) continue;
            if (closing) {
                if (root_edge_[static_cast<std::size_t>(c)] >= 0 && c > cycle_.cns[0]) {
                    cycle_.cns[static_cast<std::size_t>(t)] = c;
                    cycle_.edges[static_cast<std::size_t>(2 * t)] = g_.var_edge[static_cast<std::size_t>(s)];
                    cycle_.edges[static_cast<std::size_t>(2 * t + 1)] = root_edge_[static_cast<std::size_t>(c)];
                    sink_(static_cast<const Cycle&>(cycle_));
                }
                continue;
            }
            if (dist_cn_[static_cast<std::size_t>(c)] > 2 * k_ - (2 * t + 1)) continue;
            used_cn_[static_cast<std::size_t>(c)] = 1;
            cycle_.cns[static_cast<std::size_t>(t)] = c;
            cycle_.edges[static_cast<std::size_t>(2 * t)] = g_.var_edge[static_cast<std::size_t>(s)];
            descend_cn(t);
            used_cn_[static_cast<std::size_t>(c)] = 0;
        }
    }

    // at cns[t], choose vns[t+1]; 2t+1 edges used so far
    void descend_cn(int t) {
        const int c = cycle_.cns[static_cast<std::size_t>(t)];
        for (int s = g_.check_offset[static_cast<std::size_t>(c)]; s < g_.check_offset[static_cast<std::size_t>(c) + 1]; ++s) {
            const int v = g_.check_var[static_cast<std::size_t>(s)];
            if (v <= root_ || used_vn_[static_cast<std::size_t>(v)]) continue;
            if (dist_vn_[static_cast<std::size_t>(v)] > 2 * k_ - (2 * t + 2)) continue;
            used_vn_[static_cast<std::size_t>(v)] = 1;
            cycle_.vns[static_cast<std::size_t>(t) + 1] = v;
            cycle_.edges[static_cast<std::size_t>(2 * t + 1)] = g_.check_edge[static_cast<std::size_t>(s)];
            descend_vn(t + 1);
            used_vn_[static_cast<std::size_t>(v)] = 0;
        }
    }

    const TannerGraph& g_;
    int k_;
    Sink& sink_;
    int root_ = 0;
    Cycle cycle_;
    std::vector<int> dist_vn_, dist_cn_;
    std::vector<char> used_vn_, used_cn_;
    std::vector<int> root_edge_;
    std::vector<int> queue_;
};

inline void check_length(int length) {
    if (length < 4 || length > 12 || length % 2 != 0) throw std::invalid_argument("cycle length must be even and in 4..12");
}

}  // namespace detail

/// Streams every simple cycle of the given length to the sink, each exactly
/// once; the Cycle reference passed to the sink is reused between calls.
template <class Sink>
void for_each_cycle(const TannerGraph& g, int length, Sink&& sink) {
    detail::check_length(length);
    detail::CycleEnumerator<std::remove_reference_t<Sink>> e(g, length, sink);
    e.run();
}

inline std::int64_t count_cycles(const TannerGraph& g, int length) {
    std::int64_t n = 0;
    for_each_cycle(g, length, [&](const Cycle&) { ++n; });
    return n;
}

inline std::vector<Cycle> enumerate_cycles(const TannerGraph& g, int length) {
    std::vector<Cycle> out;
    for_each_cycle(g, length, [&](const Cycle& c) { out.push_back(c); });
    return out;
}

namespace detail {

inline std::vector<CycleVnSet> keys_to_sets(std::vector<u128>& keys, int k) {
    std::sort(keys.begin(), keys.end());
    std::vector<CycleVnSet> out;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        CycleVnSet s;
        s.size = k;
        s.vns.fill(-1);
        for (int t = 0; t < k; ++t) s.vns[static_cast<std::size_t>(t)] = static_cast<int>((keys[i] >> (21 * t)) & ((1u << 21) - 1)) - 1;
        s.multiplicity = static_cast<std::int64_t>(j - i);
        out.push_back(s);
        i = j;
    }
    return out;
}

}  // namespace detail

/// Groups cycles by their VN set; one entry per distinct set with its
/// multiplicity. All cycles must share one length.
inline std::vector<CycleVnSet> unique_vn_sets(const std::vector<Cycle>& cycles) {
    if (cycles.empty()) return {};
    const int k = cycles.front().k();
    std::vector<u128> keys;
    keys.reserve(cycles.size());
    for (const auto& c : cycles) {
        if (c.k() != k) throw std::invalid_argument("unique_vn_sets: cycles must share one length");
        keys.push_back(pack_vn_set(c.vns.data(), k));
    }
    return detail::keys_to_sets(keys, k);
}

/// Streaming variant: enumerates cycles of the given length and returns the
/// distinct VN sets with multiplicities without materializing the cycles.
inline std::vector<CycleVnSet> unique_vn_sets(const TannerGraph& g, int length) {
    std::vector<u128> keys;
    for_each_cycle(g, length, [&](const Cycle& c) { keys.push_back(pack_vn_set(c.vns.data(), c.k())); });
    return detail::keys_to_sets(keys, length / 2);
}

/// Alternating shift sum around a base-graph cycle under a per-block shift
/// assignment: edges traversed VN->CN add kappa, edges traversed CN->VN
/// subtract it. Returned reduced into [0, L); the cycle survives the
/// L-circulant lift (stays a union of L cycles) iff the result is 0.
inline int net_shift(const Cycle& cycle, const coupling::ShiftAssignment& s) {
    const int k = cycle.k();
    long sum = 0;
    for (int t = 0; t < k; ++t) {
        const int cn = cycle.cns[static_cast<std::size_t>(t)];
        const int vn_in = cycle.vns[static_cast<std::size_t>(t)];
        const int vn_out = cycle.vns[static_cast<std::size_t>((t + 1) % k)];
        const int i = cn / s.p;
        if (i >= s.gamma || vn_in / s.p >= s.p || vn_out / s.p >= s.p)
            throw std::invalid_argument("net_shift: cycle node outside the base block grid");
        sum += s.kappa[static_cast<std::size_t>(i)][static_cast<std::size_t>(vn_in / s.p)];
        sum -= s.kappa[static_cast<std::size_t>(i)][static_cast<std::size_t>(vn_out / s.p)];
    }
    const int L = s.coupling_len;
    return static_cast<int>(((sum % L) + L) % L);
}

/// Number of base cycles whose net shift vanishes, i.e. that survive the
/// lift. Each surviving base cycle spawns exactly L lifted cycles.
inline std::int64_t count_surviving(const std::vector<Cycle>& base_cycles, const coupling::ShiftAssignment& s) {
    std::int64_t n = 0;
    for (const auto& c : base_cycles)
        if (net_shift(c, s) == 0) ++n;
    return n;
}

}  // namespace scmeas::cycles

#endif
