#pragma once

#include "sepscore/core.hpp"
#include "sepscore/projection.hpp"
#include "sepscore/significance.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sepscore {

/// Raw-data normalization schemes applied before dimensionality reduction.
enum class Normalization { Non, Drs, Dcs, Log };

std::string_view to_string(Normalization scheme);
std::optional<Normalization> parse_normalization(std::string_view name);

/// NON: identity. DRS: each row divided by its sum. DCS: each column divided
/// by its sum. LOG: log10(x + 1) elementwise (inputs must be >= 0).
Eigen::MatrixXd normalize(const Eigen::MatrixXd& matrix, Normalization scheme);

/// One embedding awaiting scoring: a (method, parameter-setting,
/// normalization) tag plus the labeled low-dimensional cloud it produced.
/// The original high-dimensional data travels through the same pipeline
/// under the conventional method name "hd".
struct EmbeddingCandidate {
    std::string method;
    std::vector<std::pair<std::string, std::string>> params;  // sorted by key
    Normalization normalization = Normalization::Non;
    LabeledPointCloud cloud;
};

/// Canonical identity string: "method;k=4,p=30;NON".
std::string candidate_key(const std::string& method,
                          const std::vector<std::pair<std::string, std::string>>& params,
                          Normalization normalization);
std::string candidate_key(const EmbeddingCandidate& candidate);

struct IndexOutcome {
    double value = 0.0;
    std::optional<NullModelSummary> null_summary;
    /// Benjamini-Hochberg adjusted p across the candidate's method grid.
    std::optional<double> p_bh;
};

/// One report row: every requested index of one candidate.
struct CandidateResult {
    std::string method;
    std::vector<std::pair<std::string, std::string>> params;
    Normalization normalization = Normalization::Non;
    std::map<IndexId, IndexOutcome> outcomes;

    std::string key() const { return candidate_key(method, params, normalization); }
    double value(IndexId id) const { return outcomes.at(id).value; }
};

struct ScoreOptions {
    std::vector<IndexId> indices{kAllIndices.begin(), kAllIndices.end()};
    /// Null-model replicates per index; 0 skips the null model entirely.
    int replicates = 1000;
    std::uint64_t seed = 0;
    CentroidMode centroid_mode = CentroidMode::Median;
    int threads = 1;
};

/// Scores one candidate: all requested indices, each with its permutation
/// null summary. Null streams are keyed on (seed, candidate key, index
/// name), so scoring order and index selection never shift results.
CandidateResult score_candidate(const EmbeddingCandidate& candidate, const ScoreOptions& options);

/// Row indices of every candidate tying the optimum of `id` within relative
/// tolerance `tie_tol` (direction-aware). Plural optima are preserved.
std::vector<std::size_t> select_best(const std::vector<CandidateResult>& rows, IndexId id,
                                     double tie_tol = 1e-9);

/// Benjamini-Hochberg correction per (method, index) family across that
/// method's parameter grid; fills IndexOutcome::p_bh.
void adjust_grid_pvalues(std::vector<CandidateResult>& rows);

/// Direction-aware competition ranks, 1 = best, exact-value ties averaged.
std::vector<double> rank_values(const std::vector<double>& values, Better better);

struct MethodIndexValues {
    std::string method;
    std::map<IndexId, double> values;
};

struct AvgRankRow {
    std::string method;
    std::map<IndexId, double> ranks;
    double avg_rank = 0.0;
};

/// Tables-style summary: each method enters with its best value per index;
/// rows come back sorted by ascending AVG rank.
std::vector<AvgRankRow> avg_rank_table(const std::vector<MethodIndexValues>& methods,
                                       const std::vector<IndexId>& indices);

struct EvaluationReport {
    std::string dataset;
    std::vector<IndexId> indices;
    std::vector<CandidateResult> rows;  // canonically sorted by candidate key
    std::map<IndexId, std::vector<std::size_t>> best_per_index;
    std::vector<AvgRankRow> avg_rank;
};

/// Full pipeline over a candidate set: canonical ordering, scoring,
/// grid-level BH adjustment, best-per-index selection and the AVG-rank
/// table over each method's best values.
EvaluationReport evaluate_candidates(std::vector<EmbeddingCandidate> candidates,
                                     std::string dataset, const ScoreOptions& options);

}  // namespace sepscore
