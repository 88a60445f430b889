#include "sepscore/cli.hpp"

#include "sepscore/datasets.hpp"
#include "sepscore/errors.hpp"
#include "sepscore/evaluation.hpp"
#include "sepscore/report_io.hpp"
#include "sepscore/similarity.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sepscore::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitCompute = 3;

std::string fmt17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t seed_from_env_or(std::uint64_t fallback) {
    const char* env = std::getenv("SEPSCORE_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    std::uint64_t value = 0;
    const char* end = env + std::string_view(env).size();
    const auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc() || ptr != end) {
        throw DataError(std::string{"SEPSCORE_SEED is not an unsigned integer: '"} + env + "'");
    }
    return value;
}

std::vector<IndexId> parse_index_list(const std::vector<std::string>& specs) {
    if (specs.empty()) return {kAllIndices.begin(), kAllIndices.end()};
    std::vector<IndexId> ids;
    for (const auto& spec : specs) {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            const auto id = parse_index(item);
            if (!id) throw DataError("unknown index '" + item + "'");
            ids.push_back(*id);
        }
    }
    if (ids.empty()) throw DataError("no indices selected");
    // Canonical order, duplicates dropped.
    std::vector<IndexId> canon;
    for (IndexId id : kAllIndices) {
        if (std::find(ids.begin(), ids.end(), id) != ids.end()) canon.push_back(id);
    }
    return canon;
}

LabeledPointCloud load_cloud_arg(const std::string& data, const std::string& label_column) {
    if (data == "-") return load_labeled_csv(std::cin, label_column, "<stdin>");
    return load_labeled_csv(std::filesystem::path(data), label_column);
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw DataError("cannot write '" + out_path + "'");
    file << text;
}

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

/// Shared knobs; each subcommand registers only the ones it uses.
struct CommonOptions {
    std::vector<std::string> indices;
    std::string centroid = "median";
    int replicates = 1000;
    double alpha = 0.01;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 1;
    std::string format = "json";
    std::string out_path;
    std::string label_column = "label";

    std::uint64_t resolved_seed() const { return seed_given ? seed : seed_from_env_or(0); }

    CentroidMode centroid_mode() const {
        const auto mode = parse_centroid_mode(centroid);
        if (!mode) throw DataError("unknown centroid mode '" + centroid + "'");
        return *mode;
    }
};

void add_format_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("-o,--out", opts.out_path, "Write output to this file instead of stdout");
}

void add_seed_option(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--seed", opts.seed, "Master seed (SEPSCORE_SEED as fallback, else 0)")
        ->each([&opts](const std::string&) { opts.seed_given = true; });
}

nlohmann::json null_summary_json(const NullModelSummary& summary, double alpha) {
    nlohmann::json entry = to_json(summary);
    entry["significant"] = is_significant(summary, alpha);
    return entry;
}

int run_score(const std::string& data, const CommonOptions& opts, bool with_null,
              std::ostream& out) {
    const LabeledPointCloud cloud = load_cloud_arg(data, opts.label_column);
    ScoreOptions options;
    options.indices = parse_index_list(opts.indices);
    options.replicates = with_null ? opts.replicates : 0;
    options.seed = opts.resolved_seed();
    options.centroid_mode = opts.centroid_mode();
    options.threads = opts.threads;

    EmbeddingCandidate candidate{"cloud", {}, Normalization::Non, cloud};
    const CandidateResult row = score_candidate(candidate, options);

    if (opts.format == "csv") {
        std::ostringstream csv;
        csv << "index,value";
        if (with_null) csv << ",null_mean,null_se,p,p_conservative,significant";
        csv << '\n';
        for (const auto& [id, outcome] : row.outcomes) {
            csv << index_name(id) << ',' << fmt17(outcome.value);
            if (with_null) {
                const auto& summary = *outcome.null_summary;
                csv << ',' << fmt17(summary.null_mean) << ',' << fmt17(summary.null_se) << ','
                    << fmt17(summary.p_value) << ',' << fmt17(summary.p_conservative) << ','
                    << (is_significant(summary, opts.alpha) ? "true" : "false");
            }
            csv << '\n';
        }
        emit(csv.str(), opts.out_path, out);
        return kExitOk;
    }

    nlohmann::json scores = nlohmann::json::object();
    nlohmann::json nulls = nlohmann::json::object();
    for (const auto& [id, outcome] : row.outcomes) {
        scores[std::string(index_name(id))] = json_number(outcome.value);
        if (outcome.null_summary) {
            nulls[std::string(index_name(id))] = null_summary_json(*outcome.null_summary, opts.alpha);
        }
    }
    nlohmann::json doc{{"schema_version", kReportSchemaVersion},
                       {"dataset", data},
                       {"n_points", cloud.n_points()},
                       {"n_dims", cloud.n_dims()},
                       {"groups", cloud.group_labels()},
                       {"centroid_mode", std::string(to_string(options.centroid_mode))},
                       {"scores", std::move(scores)}};
    if (with_null) {
        doc["null"] = std::move(nulls);
        doc["alpha"] = opts.alpha;
        doc["replicates"] = opts.replicates;
        doc["seed"] = options.seed;
    }
    emit(dump_json(doc), opts.out_path, out);
    return kExitOk;
}

int run_nullmodel(const std::string& data, const std::string& index_spec,
                  const CommonOptions& opts, std::ostream& out) {
    const auto id = parse_index(index_spec);
    if (!id) throw DataError("unknown index '" + index_spec + "'");
    const LabeledPointCloud cloud = load_cloud_arg(data, opts.label_column);
    const NullModelSummary summary = permutation_null(
        cloud, *id, opts.centroid_mode(), opts.replicates, opts.resolved_seed(), opts.threads);

    if (opts.format == "csv") {
        std::ostringstream csv;
        csv << "index,observed,null_mean,null_se,p,p_conservative,replicates,seed,significant\n"
            << index_name(*id) << ',' << fmt17(summary.observed) << ','
            << fmt17(summary.null_mean) << ',' << fmt17(summary.null_se) << ','
            << fmt17(summary.p_value) << ',' << fmt17(summary.p_conservative) << ','
            << summary.replicates << ',' << summary.seed << ','
            << (is_significant(summary, opts.alpha) ? "true" : "false") << '\n';
        emit(csv.str(), opts.out_path, out);
        return kExitOk;
    }
    nlohmann::json doc{{"schema_version", kReportSchemaVersion},
                       {"dataset", data},
                       {"index", std::string(index_name(*id))},
                       {"observed", json_number(summary.observed)},
                       {"alpha", opts.alpha}};
    doc["null"] = null_summary_json(summary, opts.alpha);
    emit(dump_json(doc), opts.out_path, out);
    return kExitOk;
}

int run_evaluate(const std::string& manifest_path, const CommonOptions& opts, std::ostream& out) {
    const CandidateManifest manifest = load_manifest(manifest_path);
    std::vector<EmbeddingCandidate> candidates = load_candidates(manifest);
    ScoreOptions options;
    options.indices = parse_index_list(opts.indices);
    options.replicates = opts.replicates;
    options.seed = opts.resolved_seed();
    options.centroid_mode = opts.centroid_mode();
    options.threads = opts.threads;
    const EvaluationReport report =
        evaluate_candidates(std::move(candidates), manifest.dataset, options);
    if (opts.format == "csv") {
        emit(report_to_csv(report), opts.out_path, out);
    } else {
        emit(dump_json(to_json(report)), opts.out_path, out);
    }
    return kExitOk;
}

IndexProfileMatrix profile_from_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    IndexProfileMatrix profile;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    std::stringstream header(line);
    std::string cell;
    bool first = true;
    while (std::getline(header, cell, ',')) {
        if (first) {
            first = false;
            continue;  // corner cell
        }
        profile.column_ids.push_back(cell);
    }
    if (profile.column_ids.empty()) throw ParseError(path + ": no value columns");
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::getline(ss, cell, ',');
        profile.row_ids.push_back(cell);
        std::vector<double> values;
        while (std::getline(ss, cell, ',')) {
            if (cell == "inf") {
                values.push_back(std::numeric_limits<double>::infinity());
                continue;
            }
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size()) {
                throw ParseError(path + ": '" + cell + "' is not numeric");
            }
            values.push_back(v);
        }
        if (values.size() != profile.column_ids.size()) {
            throw ParseError(path + ": row '" + profile.row_ids.back() + "' has " +
                             std::to_string(values.size()) + " values, expected " +
                             std::to_string(profile.column_ids.size()));
        }
        rows.push_back(std::move(values));
    }
    profile.values.resize(static_cast<Eigen::Index>(rows.size()),
                          static_cast<Eigen::Index>(profile.column_ids.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            profile.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return profile;
}

int run_similarity(const std::vector<std::string>& report_paths, const std::string& matrix_path,
                   const CommonOptions& opts, std::ostream& out) {
    IndexProfileMatrix profile;
    if (!matrix_path.empty()) {
        if (!report_paths.empty()) {
            throw DataError("give either report files or --matrix, not both");
        }
        profile = profile_from_matrix_csv(matrix_path);
    } else {
        if (report_paths.empty()) throw DataError("similarity needs report files or --matrix");
        std::vector<EvaluationReport> reports;
        reports.reserve(report_paths.size());
        for (const auto& path : report_paths) {
            std::ifstream in(path);
            if (!in) throw DataError("cannot open '" + path + "'");
            nlohmann::json doc;
            try {
                in >> doc;
            } catch (const nlohmann::json::exception& e) {
                throw DataError("report '" + path + "': " + e.what());
            }
            reports.push_back(report_from_json(doc));
        }
        profile = profile_from_reports(reports);
    }
    const SimilarityMap map = similarity_map(profile);
    if (opts.format == "csv") {
        emit(similarity_to_csv(map), opts.out_path, out);
    } else {
        emit(dump_json(to_json(map)), opts.out_path, out);
    }
    return kExitOk;
}

int run_gen_swissroll(const SwissRollSpec& spec, const std::string& param_out,
                      const CommonOptions& opts, std::ostream& out) {
    const SwissRollData data = generate_swiss_roll(spec);
    std::ostringstream csv;
    write_labeled_csv(csv, data.cloud, "label", {"x", "y", "z"});
    emit(csv.str(), opts.out_path, out);
    if (!param_out.empty()) {
        std::ostringstream side;
        side << "row,t\n";
        for (std::size_t i = 0; i < data.arc_parameter.size(); ++i) {
            side << i << ',' << fmt17(data.arc_parameter[i]) << '\n';
        }
        std::ofstream file(param_out, std::ios::binary);
        if (!file) throw DataError("cannot write '" + param_out + "'");
        file << side.str();
    }
    return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Group separability indices for labeled point clouds"};
    app.name("sepscore");
    app.require_subcommand(1);

    CommonOptions opts;

    auto* score = app.add_subcommand("score", "Score one labeled cloud with chosen indices");
    std::string score_data;
    bool score_null = false;
    score->add_option("data", score_data, "CSV file ('-' reads stdin)")->required();
    score->add_option("--label-col", opts.label_column, "Label column name")->capture_default_str();
    score->add_option("--indices", opts.indices, "Comma-separated index list (default: all nine)");
    score->add_option("--centroid", opts.centroid, "Centroid mode for the PSIs")
        ->check(CLI::IsMember({"mean", "median", "mode"}))
        ->capture_default_str();
    score->add_flag("--null", score_null, "Also run the permutation null model per index");
    score->add_option("--replicates", opts.replicates, "Null-model replicates")
        ->capture_default_str();
    score->add_option("--alpha", opts.alpha, "Significance level")->capture_default_str();
    score->add_option("--threads", opts.threads, "Worker threads for the null model")
        ->capture_default_str();
    add_seed_option(score, opts);
    add_format_options(score, opts);

    auto* nullmodel = app.add_subcommand("nullmodel", "Permutation null model for one index");
    std::string null_data;
    std::string null_index;
    nullmodel->add_option("data", null_data, "CSV file ('-' reads stdin)")->required();
    nullmodel->add_option("--index", null_index, "Index to test")->required();
    nullmodel->add_option("--label-col", opts.label_column, "Label column name")
        ->capture_default_str();
    nullmodel->add_option("--centroid", opts.centroid, "Centroid mode for the PSIs")
        ->check(CLI::IsMember({"mean", "median", "mode"}))
        ->capture_default_str();
    nullmodel->add_option("--replicates", opts.replicates, "Null-model replicates")
        ->capture_default_str();
    nullmodel->add_option("--alpha", opts.alpha, "Significance level")->capture_default_str();
    nullmodel->add_option("--threads", opts.threads, "Worker threads")->capture_default_str();
    add_seed_option(nullmodel, opts);
    add_format_options(nullmodel, opts);

    auto* evaluate = app.add_subcommand("evaluate", "Score a manifest of embedding candidates");
    std::string manifest_path;
    evaluate->add_option("manifest", manifest_path, "Candidate manifest JSON")->required();
    evaluate->add_option("--indices", opts.indices, "Comma-separated index list");
    evaluate->add_option("--centroid", opts.centroid, "Centroid mode for the PSIs")
        ->check(CLI::IsMember({"mean", "median", "mode"}))
        ->capture_default_str();
    evaluate->add_option("--replicates", opts.replicates, "Null-model replicates (0 disables)")
        ->capture_default_str();
    evaluate->add_option("--alpha", opts.alpha, "Significance level")->capture_default_str();
    evaluate->add_option("--threads", opts.threads, "Worker threads")->capture_default_str();
    add_seed_option(evaluate, opts);
    add_format_options(evaluate, opts);

    auto* similarity =
        app.add_subcommand("similarity", "Index-similarity map with the PSI triangle");
    std::vector<std::string> report_paths;
    std::string matrix_path;
    similarity->add_option("reports", report_paths, "Evaluation report JSON files");
    similarity->add_option("--matrix", matrix_path, "Profile matrix CSV instead of reports");
    add_format_options(similarity, opts);

    auto* gen = app.add_subcommand("gen-swissroll", "Generate a tripartite swiss-roll CSV");
    SwissRollSpec spec;
    std::string param_out;
    gen->add_option("--n", spec.n_points, "Total points")->capture_default_str();
    gen->add_option("--arcs", spec.n_arcs, "Number of arcs")->capture_default_str();
    gen->add_option("--gap", spec.gap_fraction, "Gap fraction of each parameter segment")
        ->capture_default_str();
    gen->add_option("--noise", spec.noise_sd, "Gaussian noise standard deviation")
        ->capture_default_str();
    gen->add_option("--height", spec.height, "Roll height")->capture_default_str();
    bool gen_seed_given = false;
    gen->add_option("--seed", spec.seed, "Generator seed")
        ->each([&gen_seed_given](const std::string&) { gen_seed_given = true; });
    gen->add_option("--param-out", param_out,
                    "Also write the per-point spiral parameter t to this CSV");
    gen->add_option("-o,--out", opts.out_path, "Write the cloud CSV here instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (score->parsed()) return run_score(score_data, opts, score_null, out);
        if (nullmodel->parsed()) return run_nullmodel(null_data, null_index, opts, out);
        if (evaluate->parsed()) return run_evaluate(manifest_path, opts, out);
        if (similarity->parsed()) return run_similarity(report_paths, matrix_path, opts, out);
        if (gen->parsed()) {
            if (!gen_seed_given) spec.seed = seed_from_env_or(0);
            return run_gen_swissroll(spec, param_out, opts, out);
        }
        err << "error: no subcommand given\n";
        return kExitUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const ComputeError& e) {
        err << "error: " << e.what() << '\n';
        return kExitCompute;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCompute;
    }
}

}  // namespace sepscore::cli
