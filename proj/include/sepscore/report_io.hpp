#pragma once

#include "sepscore/evaluation.hpp"
#include "sepscore/similarity.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace sepscore {

inline constexpr int kReportSchemaVersion = 1;

/// JSON has no infinity literal; divergent index values travel as the
/// strings "inf" / "-inf".
nlohmann::json json_number(double v);
double number_from_json(const nlohmann::json& v);

nlohmann::json to_json(const NullModelSummary& summary);
nlohmann::json to_json(const CandidateResult& row);
nlohmann::json to_json(const EvaluationReport& report);
nlohmann::json to_json(const SimilarityMap& map);

/// Recovers the parts of a report that downstream consumers (the similarity
/// map) need: candidate identities, index set and scores, plus the null
/// summaries when present.
EvaluationReport report_from_json(const nlohmann::json& doc);

std::string report_to_csv(const EvaluationReport& report);
std::string similarity_to_csv(const SimilarityMap& map);

}  // namespace sepscore
