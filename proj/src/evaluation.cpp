#include "sepscore/evaluation.hpp"

#include "sepscore/errors.hpp"
#include "sepscore/evaluator.hpp"
#include "sepscore/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

namespace sepscore {

std::string_view to_string(Normalization scheme) {
    switch (scheme) {
        case Normalization::Non: return "NON";
        case Normalization::Drs: return "DRS";
        case Normalization::Dcs: return "DCS";
        case Normalization::Log: return "LOG";
    }
    return "?";
}

std::optional<Normalization> parse_normalization(std::string_view name) {
    std::string canon;
    for (char c : name) canon.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (canon == "NON") return Normalization::Non;
    if (canon == "DRS") return Normalization::Drs;
    if (canon == "DCS") return Normalization::Dcs;
    if (canon == "LOG") return Normalization::Log;
    return std::nullopt;
}

Eigen::MatrixXd normalize(const Eigen::MatrixXd& matrix, Normalization scheme) {
    switch (scheme) {
        case Normalization::Non:
            return matrix;
        case Normalization::Drs: {
            Eigen::MatrixXd out = matrix;
            for (Eigen::Index i = 0; i < out.rows(); ++i) {
                const double sum = out.row(i).sum();
                if (sum == 0.0) throw ZeroSumError("row " + std::to_string(i) + " sums to zero");
                out.row(i) /= sum;
            }
            return out;
        }
        case Normalization::Dcs: {
            Eigen::MatrixXd out = matrix;
            for (Eigen::Index j = 0; j < out.cols(); ++j) {
                const double sum = out.col(j).sum();
                if (sum == 0.0) throw ZeroSumError("column " + std::to_string(j) + " sums to zero");
                out.col(j) /= sum;
            }
            return out;
        }
        case Normalization::Log: {
            if ((matrix.array() < 0.0).any()) {
                throw NegativeInputForLogError("LOG normalization needs non-negative values");
            }
            return (matrix.array() + 1.0).log10().matrix();
        }
    }
    return matrix;
}

std::string candidate_key(const std::string& method,
                          const std::vector<std::pair<std::string, std::string>>& params,
                          Normalization normalization) {
    std::string key = method;
    key += ';';
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i > 0) key += ',';
        key += params[i].first;
        key += '=';
        key += params[i].second;
    }
    key += ';';
    key += to_string(normalization);
    return key;
}

std::string candidate_key(const EmbeddingCandidate& candidate) {
    return candidate_key(candidate.method, candidate.params, candidate.normalization);
}

CandidateResult score_candidate(const EmbeddingCandidate& candidate, const ScoreOptions& options) {
    CandidateResult row;
    row.method = candidate.method;
    row.params = candidate.params;
    row.normalization = candidate.normalization;

    auto evaluator = std::make_shared<const CloudEvaluator>(candidate.cloud, options.indices,
                                                            options.centroid_mode);
    const std::string key = candidate_key(candidate);
    for (IndexId id : options.indices) {
        IndexOutcome outcome;
        outcome.value = evaluator->observed(id);
        if (options.replicates > 0) {
            const std::uint64_t sub_seed =
                derive_seed(options.seed, key + "/" + std::string(index_name(id)));
            outcome.null_summary =
                permutation_null(candidate.cloud, make_index_function(id, evaluator),
                                 options.replicates, sub_seed, options.threads);
        }
        row.outcomes.emplace(id, std::move(outcome));
    }
    return row;
}

std::vector<std::size_t> select_best(const std::vector<CandidateResult>& rows, IndexId id,
                                     double tie_tol) {
    if (rows.empty()) return {};
    const Better better = better_direction(id);
    double best = rows.front().value(id);
    for (const auto& row : rows) {
        const double v = row.value(id);
        if (better == Better::Higher ? v > best : v < best) best = v;
    }
    std::vector<std::size_t> winners;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double v = rows[i].value(id);
        const bool tie =
            v == best || (std::isfinite(best) &&
                          std::fabs(v - best) <= tie_tol * std::max(1.0, std::fabs(best)));
        if (tie) winners.push_back(i);
    }
    return winners;
}

void adjust_grid_pvalues(std::vector<CandidateResult>& rows) {
    std::map<std::string, std::vector<std::size_t>> by_method;
    for (std::size_t i = 0; i < rows.size(); ++i) by_method[rows[i].method].push_back(i);
    for (const auto& [method, indices] : by_method) {
        if (indices.empty()) continue;
        for (auto& [id, first_outcome] : rows[indices.front()].outcomes) {
            if (!first_outcome.null_summary) continue;
            std::vector<double> raw;
            raw.reserve(indices.size());
            for (std::size_t i : indices) raw.push_back(rows[i].outcomes.at(id).null_summary->p_value);
            const std::vector<double> adjusted = bh_adjust(raw);
            for (std::size_t k = 0; k < indices.size(); ++k) {
                rows[indices[k]].outcomes.at(id).p_bh = adjusted[k];
            }
        }
    }
}

std::vector<double> rank_values(const std::vector<double>& values, Better better) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return better == Better::Higher ? values[a] > values[b] : values[a] < values[b];
    });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg_rank;
        i = j + 1;
    }
    return ranks;
}

std::vector<AvgRankRow> avg_rank_table(const std::vector<MethodIndexValues>& methods,
                                       const std::vector<IndexId>& indices) {
    std::vector<AvgRankRow> table(methods.size());
    for (std::size_t m = 0; m < methods.size(); ++m) table[m].method = methods[m].method;
    for (IndexId id : indices) {
        std::vector<double> column;
        column.reserve(methods.size());
        for (const auto& row : methods) column.push_back(row.values.at(id));
        const std::vector<double> ranks = rank_values(column, better_direction(id));
        for (std::size_t m = 0; m < methods.size(); ++m) table[m].ranks[id] = ranks[m];
    }
    for (auto& row : table) {
        double sum = 0.0;
        for (const auto& [id, rank] : row.ranks) sum += rank;
        row.avg_rank = row.ranks.empty() ? 0.0 : sum / static_cast<double>(row.ranks.size());
    }
    std::stable_sort(table.begin(), table.end(), [](const AvgRankRow& a, const AvgRankRow& b) {
        if (a.avg_rank != b.avg_rank) return a.avg_rank < b.avg_rank;
        return a.method < b.method;
    });
    return table;
}

EvaluationReport evaluate_candidates(std::vector<EmbeddingCandidate> candidates,
                                     std::string dataset, const ScoreOptions& options) {
    // Canonical candidate order makes the whole report independent of the
    // order candidates arrived in.
    std::sort(candidates.begin(), candidates.end(),
              [](const EmbeddingCandidate& a, const EmbeddingCandidate& b) {
                  return candidate_key(a) < candidate_key(b);
              });
    std::set<std::string> keys;
    for (const auto& candidate : candidates) {
        if (!keys.insert(candidate_key(candidate)).second) {
            throw ManifestError("duplicate candidate '" + candidate_key(candidate) + "'");
        }
    }

    EvaluationReport report;
    report.dataset = std::move(dataset);
    report.indices = options.indices;
    report.rows.reserve(candidates.size());
    for (const auto& candidate : candidates) {
        report.rows.push_back(score_candidate(candidate, options));
    }
    adjust_grid_pvalues(report.rows);

    for (IndexId id : options.indices) {
        report.best_per_index[id] = select_best(report.rows, id);
    }

    std::map<std::string, MethodIndexValues> per_method;
    for (const auto& row : report.rows) {
        auto [it, inserted] = per_method.try_emplace(row.method);
        if (inserted) it->second.method = row.method;
        for (IndexId id : options.indices) {
            const double v = row.value(id);
            auto [vit, fresh] = it->second.values.try_emplace(id, v);
            if (!fresh) {
                const bool improves =
                    better_direction(id) == Better::Higher ? v > vit->second : v < vit->second;
                if (improves) vit->second = v;
            }
        }
    }
    std::vector<MethodIndexValues> methods;
    methods.reserve(per_method.size());
    for (auto& [name, values] : per_method) methods.push_back(std::move(values));
    report.avg_rank = avg_rank_table(methods, options.indices);
    return report;
}

}  // namespace sepscore
