// Monte Carlo sparsity sweeps: reconstruction probability of the interval
// passing algorithm versus signal density, with per-trial RNG streams
// derived from (seed, k, trial) so thread count and trial order cannot
// change results.

#ifndef SCMEAS_SIMULATE_HPP
#define SCMEAS_SIMULATE_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "scmeas/binary_matrix.hpp"
#include "scmeas/ipa.hpp"
#include "scmeas/rng.hpp"
#include "scmeas/tanner.hpp"

namespace scmeas::simulate {

struct SweepConfig {
    std::vector<int> k_values;
    int trials = 1000;
    std::uint64_t seed = 0;
    int max_iter = 100;
    int threads = 1;
    std::string family;  // carried into the result metadata verbatim
};

struct SweepPoint {
    int k = 0;
    int trials = 0;
    int successes = 0;
    double probability = 0.0;
    double mean_iterations = 0.0;
};

struct SweepResult {
    int n = 0;  // signal length (columns)
    int m = 0;  // measurements (rows)
    std::string family;
    std::vector<SweepPoint> points;  // sorted ascending by k
};

/// Binary vector of length n with exactly k ones at uniformly random
/// distinct positions.
inline std::vector<std::int64_t> random_ksparse(int n, int k, Rng& rng) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("random_ksparse: need 0 <= k <= n");
    std::vector<std::int64_t> x(static_cast<std::size_t>(n), 0);
    for (int i : rng.sample_without_replacement(n, k)) x[static_cast<std::size_t>(i)] = 1;
    return x;
}

namespace detail {

struct TrialTotals {
    std::int64_t successes = 0;
    std::int64_t iterations = 0;
};

/// Runs trials [first, last) of one sweep point; stream seeds depend only
/// on (seed, k, trial index).
inline TrialTotals run_trials(const BinarySparseMatrix& a, const TannerGraph& g, int k, int first, int last,
                              std::uint64_t seed, int max_iter) {
    TrialTotals totals;
    for (int t = first; t < last; ++t) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(t)));
        const auto x = random_ksparse(a.cols(), k, rng);
        const auto y = matvec(a, x);
        const auto res = ipa::ipa_reconstruct(y, g, max_iter);
        if (res.xhat == x) ++totals.successes;
        totals.iterations += res.iterations;
    }
    return totals;
}

}  // namespace detail

/// Sweeps reconstruction probability over the configured sparsities:
/// `trials` random k-sparse signals per point, exact integer equality
/// x_hat == x as the success criterion. Deterministic for a fixed seed,
/// independent of thread count.
inline SweepResult run_sweep(const BinarySparseMatrix& a, const SweepConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_sweep: need at least one trial");
    if (cfg.max_iter < 1) throw std::invalid_argument("run_sweep: need at least one iteration");
    if (cfg.threads < 1) throw std::invalid_argument("run_sweep: need at least one thread");
    for (int k : cfg.k_values)
        if (k < 0 || k > a.cols()) throw std::invalid_argument("run_sweep: sparsity " + std::to_string(k) + " outside [0, n]");

    const auto g = to_tanner(a);
    SweepResult result;
    result.n = a.cols();
    result.m = a.rows();
    result.family = cfg.family;

    auto ks = cfg.k_values;
    std::sort(ks.begin(), ks.end());
    for (int k : ks) {
        detail::TrialTotals totals;
        const int workers = std::min(cfg.threads, cfg.trials);
        if (workers <= 1) {
            totals = detail::run_trials(a, g, k, 0, cfg.trials, cfg.seed, cfg.max_iter);
        } else {
            std::vector<detail::TrialTotals> parts(static_cast<std::size_t>(workers));
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    const int first = static_cast<int>(static_cast<std::int64_t>(cfg.trials) * w / workers);
                    const int last = static_cast<int>(static_cast<std::int64_t>(cfg.trials) * (w + 1) / workers);
                    parts[static_cast<std::size_t>(w)] = detail::run_trials(a, g, k, first, last, cfg.seed, cfg.max_iter);
                });
            for (auto& th : pool) th.join();
            for (const auto& part : parts) {
                totals.successes += part.successes;
                totals.iterations += part.iterations;
            }
        }
        SweepPoint point;
        point.k = k;
        point.trials = cfg.trials;
        point.successes = static_cast<int>(totals.successes);
        point.probability = static_cast<double>(totals.successes) / static_cast<double>(cfg.trials);
        point.mean_iterations = static_cast<double>(totals.iterations) / static_cast<double>(cfg.trials);
        result.points.push_back(point);
    }
    return result;
}

/// CSV rows k,trials,successes,prob,mean_iters in ascending k; fixed
/// 6-decimal formatting so equal results emit byte-identical files.
inline void emit_curve(const SweepResult& result, std::ostream& out) {
    out << "k,trials,successes,prob,mean_iters\n";
    std::ostringstream line;
    line << std::fixed << std::setprecision(6);
    for (const auto& p : result.points) {
        line.str("");
        line << p.k << ',' << p.trials << ',' << p.successes << ',' << p.probability << ',' << p.mean_iterations << '\n';
        out << line.str();
    }
}

inline void emit_curve(const SweepResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_curve: cannot open " + path);
    emit_curve(result, out);
    if (!out.good()) throw std::runtime_error("emit_curve: write failed for " + path);
}

}  // namespace scmeas::simulate

#endif
