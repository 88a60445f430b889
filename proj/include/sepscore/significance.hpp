#pragma once

#include "sepscore/core.hpp"
#include "sepscore/evaluator.hpp"

#include <cstdint>
#include <functional>
#include <memory>

namespace sepscore {

/// Index evaluated under permutation: points stay fixed, only the grouping
/// changes. `better` tells the null comparison which tail counts.
struct IndexFunction {
    IndexId id = IndexId::PsiRoc;
    Better better = Better::Higher;
    std::function<double(const Members&)> eval;
};

/// Wires a prepared evaluator into the permutation machinery.
IndexFunction make_index_function(IndexId id, std::shared_ptr<const CloudEvaluator> evaluator);

/// Outcome of comparing one observed index value against its permutation
/// null model.
struct NullModelSummary {
    IndexId index_id = IndexId::PsiRoc;
    double observed = 0.0;
    double null_mean = 0.0;
    /// Standard error of the null values: stddev / sqrt(replicates).
    double null_se = 0.0;
    /// Fraction of null values at least as good as the observed one
    /// (direction-aware, weak inequality). May legitimately be 0.
    double p_value = 1.0;
    /// The (count+1)/(replicates+1) variant for users needing nonzero p's.
    double p_conservative = 1.0;
    int replicates = 0;
    std::uint64_t seed = 0;
};

/// Reshuffles the labels uniformly at random `replicates` times with the
/// point positions frozen, re-scoring the index each round. Group sizes are
/// preserved by construction. Replicate r draws from a sub-seed derived from
/// (seed, r), so results are bit-identical regardless of execution order or
/// thread count.
NullModelSummary permutation_null(const LabeledPointCloud& cloud, const IndexFunction& fn,
                                  int replicates, std::uint64_t seed, int threads = 1);

/// Convenience overload preparing the one index itself.
NullModelSummary permutation_null(const LabeledPointCloud& cloud, IndexId id, CentroidMode mode,
                                  int replicates, std::uint64_t seed, int threads = 1);

/// Benjamini-Hochberg step-up adjustment; returns the adjusted p-values in
/// the original order, capped at 1.
std::vector<double> bh_adjust(const std::vector<double>& p_values);

/// Strictly below alpha, as in "significant all the p-values lower than".
bool is_significant(const NullModelSummary& summary, double alpha = 0.01);

}  // namespace sepscore
