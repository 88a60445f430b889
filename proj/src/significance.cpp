#include "sepscore/significance.hpp"

#include "sepscore/errors.hpp"
#include "sepscore/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace sepscore {

IndexFunction make_index_function(IndexId id, std::shared_ptr<const CloudEvaluator> evaluator) {
    IndexFunction fn;
    fn.id = id;
    fn.better = better_direction(id);
    fn.eval = [id, evaluator = std::move(evaluator)](const Members& members) {
        return evaluator->evaluate(id, members);
    };
    return fn;
}

NullModelSummary permutation_null(const LabeledPointCloud& cloud, const IndexFunction& fn,
                                  int replicates, std::uint64_t seed, int threads) {
    if (replicates < 1) throw DataError("permutation null needs at least 1 replicate");
    const std::vector<int> base_codes = cloud.label_codes();
    const std::size_t n_groups = cloud.n_groups();
    const double observed = fn.eval(cloud.group_members());

    std::vector<double> null_values(static_cast<std::size_t>(replicates));
    auto run_range = [&](int begin, int end) {
        std::vector<int> codes;
        Members members(n_groups);
        for (int r = begin; r < end; ++r) {
            codes = base_codes;
            SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
            shuffle(codes, rng);
            for (auto& rows : members) rows.clear();
            for (std::size_t i = 0; i < codes.size(); ++i) {
                members[static_cast<std::size_t>(codes[i])].push_back(
                    static_cast<Eigen::Index>(i));
            }
            null_values[static_cast<std::size_t>(r)] = fn.eval(members);
        }
    };

    if (threads <= 1) {
        run_range(0, replicates);
    } else {
        const int n_threads = std::min(threads, replicates);
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        const int chunk = (replicates + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const int begin = t * chunk;
            const int end = std::min(replicates, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    // Aggregate sequentially in replicate order so the summary does not
    // depend on the thread count.
    std::size_t as_good = 0;
    double sum = 0.0;
    for (double v : null_values) {
        sum += v;
        const bool good = fn.better == Better::Higher ? v >= observed : v <= observed;
        if (good) ++as_good;
    }
    const double r = static_cast<double>(replicates);
    const double mean = sum / r;
    double se = 0.0;
    if (replicates > 1) {
        double ss = 0.0;
        for (double v : null_values) ss += (v - mean) * (v - mean);
        se = std::sqrt(ss / (r - 1.0)) / std::sqrt(r);
    }

    NullModelSummary out;
    out.index_id = fn.id;
    out.observed = observed;
    out.null_mean = mean;
    out.null_se = se;
    out.p_value = static_cast<double>(as_good) / r;
    out.p_conservative = static_cast<double>(as_good + 1) / (r + 1.0);
    out.replicates = replicates;
    out.seed = seed;
    return out;
}

NullModelSummary permutation_null(const LabeledPointCloud& cloud, IndexId id, CentroidMode mode,
                                  int replicates, std::uint64_t seed, int threads) {
    auto evaluator = std::make_shared<const CloudEvaluator>(cloud, std::vector<IndexId>{id}, mode);
    return permutation_null(cloud, make_index_function(id, std::move(evaluator)), replicates, seed,
                            threads);
}

std::vector<double> bh_adjust(const std::vector<double>& p_values) {
    for (double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw OutOfRangePError("p-value outside [0,1]: " + std::to_string(p));
        }
    }
    const std::size_t m = p_values.size();
    if (m == 0) return {};
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
    std::vector<double> adjusted(m);
    double running = 1.0;
    for (std::size_t k = m; k-- > 0;) {
        const double scaled =
            p_values[order[k]] * static_cast<double>(m) / static_cast<double>(k + 1);
        running = std::min(running, scaled);
        adjusted[order[k]] = running;
    }
    return adjusted;
}

bool is_significant(const NullModelSummary& summary, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("alpha must lie in (0,1)");
    return summary.p_value < alpha;
}

}  // namespace sepscore
