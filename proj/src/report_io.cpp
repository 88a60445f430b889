#include "sepscore/report_io.hpp"

#include "sepscore/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sepscore {

namespace {

std::string csv_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json params_json(const std::vector<std::pair<std::string, std::string>>& params) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& [key, value] : params) obj[key] = value;
    return obj;
}

std::vector<std::pair<std::string, std::string>> params_from_json(const nlohmann::json& obj) {
    std::vector<std::pair<std::string, std::string>> params;
    for (const auto& [key, value] : obj.items()) {
        params.emplace_back(key, value.get<std::string>());
    }
    std::sort(params.begin(), params.end());
    return params;
}

std::string params_csv(const std::vector<std::pair<std::string, std::string>>& params) {
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i > 0) out += ' ';
        out += params[i].first + "=" + params[i].second;
    }
    return out;
}

}  // namespace

nlohmann::json json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

double number_from_json(const nlohmann::json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw DataError("expected a number, got " + v.dump());
}

nlohmann::json to_json(const NullModelSummary& summary) {
    return nlohmann::json{{"mean", json_number(summary.null_mean)},
                          {"se", json_number(summary.null_se)},
                          {"p", summary.p_value},
                          {"p_conservative", summary.p_conservative},
                          {"replicates", summary.replicates},
                          {"seed", summary.seed}};
}

nlohmann::json to_json(const CandidateResult& row) {
    nlohmann::json scores = nlohmann::json::object();
    nlohmann::json nulls = nlohmann::json::object();
    bool any_null = false;
    for (const auto& [id, outcome] : row.outcomes) {
        const std::string name(index_name(id));
        scores[name] = json_number(outcome.value);
        if (outcome.null_summary) {
            any_null = true;
            nlohmann::json entry = to_json(*outcome.null_summary);
            if (outcome.p_bh) entry["p_bh"] = *outcome.p_bh;
            nulls[name] = std::move(entry);
        }
    }
    nlohmann::json out{{"method", row.method},
                       {"params", params_json(row.params)},
                       {"normalization", std::string(to_string(row.normalization))},
                       {"scores", std::move(scores)}};
    if (any_null) out["null"] = std::move(nulls);
    return out;
}

nlohmann::json to_json(const EvaluationReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) rows.push_back(to_json(row));

    nlohmann::json best = nlohmann::json::object();
    for (const auto& [id, winners] : report.best_per_index) {
        nlohmann::json list = nlohmann::json::array();
        for (std::size_t i : winners) list.push_back(report.rows[i].key());
        best[std::string(index_name(id))] = std::move(list);
    }

    nlohmann::json ranks = nlohmann::json::array();
    for (const auto& row : report.avg_rank) {
        nlohmann::json per_index = nlohmann::json::object();
        for (const auto& [id, rank] : row.ranks) per_index[std::string(index_name(id))] = rank;
        ranks.push_back(nlohmann::json{{"method", row.method},
                                       {"ranks", std::move(per_index)},
                                       {"avg_rank", row.avg_rank}});
    }

    nlohmann::json indices = nlohmann::json::array();
    for (IndexId id : report.indices) indices.push_back(std::string(index_name(id)));

    return nlohmann::json{{"schema_version", kReportSchemaVersion},
                          {"dataset", report.dataset},
                          {"indices", std::move(indices)},
                          {"candidates", std::move(rows)},
                          {"best_per_index", std::move(best)},
                          {"avg_rank", std::move(ranks)}};
}

EvaluationReport report_from_json(const nlohmann::json& doc) {
    EvaluationReport report;
    try {
        report.dataset = doc.value("dataset", std::string{});
        for (const auto& name : doc.at("indices")) {
            const auto id = parse_index(name.get<std::string>());
            if (!id) throw DataError("unknown index '" + name.get<std::string>() + "' in report");
            report.indices.push_back(*id);
        }
        for (const auto& item : doc.at("candidates")) {
            CandidateResult row;
            row.method = item.at("method").get<std::string>();
            row.params = params_from_json(item.at("params"));
            const std::string norm = item.at("normalization").get<std::string>();
            const auto scheme = parse_normalization(norm);
            if (!scheme) throw DataError("unknown normalization '" + norm + "' in report");
            row.normalization = *scheme;
            const auto& scores = item.at("scores");
            for (IndexId id : report.indices) {
                const std::string name(index_name(id));
                if (!scores.contains(name)) {
                    throw DataError("report row lacks score for '" + name + "'");
                }
                IndexOutcome outcome;
                outcome.value = number_from_json(scores.at(name));
                if (item.contains("null") && item.at("null").contains(name)) {
                    const auto& null_entry = item.at("null").at(name);
                    NullModelSummary summary;
                    summary.index_id = id;
                    summary.observed = outcome.value;
                    summary.null_mean = number_from_json(null_entry.at("mean"));
                    summary.null_se = number_from_json(null_entry.at("se"));
                    summary.p_value = null_entry.at("p").get<double>();
                    summary.p_conservative = null_entry.value("p_conservative", 1.0);
                    summary.replicates = null_entry.value("replicates", 0);
                    summary.seed = null_entry.value("seed", std::uint64_t{0});
                    if (null_entry.contains("p_bh")) outcome.p_bh = null_entry.at("p_bh").get<double>();
                    outcome.null_summary = summary;
                }
                row.outcomes.emplace(id, std::move(outcome));
            }
            report.rows.push_back(std::move(row));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string{"malformed report: "} + e.what());
    }
    return report;
}

std::string report_to_csv(const EvaluationReport& report) {
    std::ostringstream out;
    out << "method,params,normalization,index,value,null_mean,null_se,p,p_conservative,p_bh\n";
    for (const auto& row : report.rows) {
        for (const auto& [id, outcome] : row.outcomes) {
            out << row.method << ',' << params_csv(row.params) << ','
                << to_string(row.normalization) << ',' << index_name(id) << ','
                << csv_number(outcome.value);
            if (outcome.null_summary) {
                out << ',' << csv_number(outcome.null_summary->null_mean) << ','
                    << csv_number(outcome.null_summary->null_se) << ','
                    << csv_number(outcome.null_summary->p_value) << ','
                    << csv_number(outcome.null_summary->p_conservative) << ','
                    << (outcome.p_bh ? csv_number(*outcome.p_bh) : "");
            } else {
                out << ",,,,,";
            }
            out << '\n';
        }
    }
    if (!report.avg_rank.empty()) {
        out << "\nmethod";
        for (IndexId id : report.indices) out << ',' << index_name(id) << "_rank";
        out << ",avg_rank\n";
        for (const auto& row : report.avg_rank) {
            out << row.method;
            for (IndexId id : report.indices) out << ',' << csv_number(row.ranks.at(id));
            out << ',' << csv_number(row.avg_rank) << '\n';
        }
    }
    return out.str();
}

nlohmann::json to_json(const SimilarityMap& map) {
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i = 0; i < map.row_ids.size(); ++i) {
        points.push_back(nlohmann::json{{"index", map.row_ids[i]},
                                        {"x", map.scores(static_cast<Eigen::Index>(i), 0)},
                                        {"y", map.scores(static_cast<Eigen::Index>(i), 1)},
                                        {"inside_psi_triangle", static_cast<bool>(map.inside[i])}});
    }
    nlohmann::json triangle = nlohmann::json::array();
    for (const auto& vertex : map.triangle) {
        triangle.push_back(nlohmann::json::array({vertex.x(), vertex.y()}));
    }
    return nlohmann::json{{"schema_version", kReportSchemaVersion},
                          {"points", std::move(points)},
                          {"psi_triangle", std::move(triangle)},
                          {"notes", map.notes}};
}

std::string similarity_to_csv(const SimilarityMap& map) {
    std::ostringstream out;
    out << "index,x,y,inside_psi_triangle\n";
    for (std::size_t i = 0; i < map.row_ids.size(); ++i) {
        out << map.row_ids[i] << ',' << csv_number(map.scores(static_cast<Eigen::Index>(i), 0))
            << ',' << csv_number(map.scores(static_cast<Eigen::Index>(i), 1)) << ','
            << (map.inside[i] ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace sepscore
