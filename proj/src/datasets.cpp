#include "sepscore/datasets.hpp"

#include "sepscore/errors.hpp"
#include "sepscore/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace sepscore {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

std::string format_coordinate(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

LabeledPointCloud load_labeled_csv(std::istream& in, const std::string& label_column,
                                   const std::string& source_name) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(source_name + ": empty file");
    const std::vector<std::string> header = split_csv_line(line);
    std::size_t label_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == label_column) {
            label_col = i;
            break;
        }
    }
    if (label_col == header.size()) {
        throw MissingLabelColumnError(source_name + ": no column named '" + label_column + "'");
    }
    const std::size_t n_coords = header.size() - 1;
    if (n_coords == 0) throw ParseError(source_name + ": no coordinate columns");

    std::vector<double> coords;
    std::vector<std::string> labels;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw ParseError(source_name + ": row " + std::to_string(row) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(header.size()));
        }
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i == label_col) {
                labels.push_back(fields[i]);
                continue;
            }
            double value = 0.0;
            const char* begin = fields[i].data();
            const char* end = begin + fields[i].size();
            const auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc() || ptr != end) {
                throw ParseError(source_name + ": row " + std::to_string(row) + ", column '" +
                                 header[i] + "': '" + fields[i] + "' is not numeric");
            }
            if (!std::isfinite(value)) {
                throw NonFiniteError(source_name + ": row " + std::to_string(row) + ", column '" +
                                     header[i] + "': non-finite coordinate");
            }
            coords.push_back(value);
        }
    }
    const std::size_t n_rows = labels.size();
    Eigen::MatrixXd points(n_rows, n_coords);
    for (std::size_t i = 0; i < n_rows; ++i) {
        for (std::size_t j = 0; j < n_coords; ++j) {
            points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                coords[i * n_coords + j];
        }
    }
    return LabeledPointCloud(std::move(points), std::move(labels));
}

LabeledPointCloud load_labeled_csv(const std::filesystem::path& path,
                                   const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    return load_labeled_csv(in, label_column, path.string());
}

void write_labeled_csv(std::ostream& out, const LabeledPointCloud& cloud,
                       const std::string& label_column,
                       const std::vector<std::string>& feature_names) {
    const Eigen::Index d = cloud.n_dims();
    if (!feature_names.empty() && feature_names.size() != static_cast<std::size_t>(d)) {
        throw DataError("feature name count does not match dimensionality");
    }
    for (Eigen::Index j = 0; j < d; ++j) {
        if (feature_names.empty()) {
            out << 'x' << (j + 1);
        } else {
            out << feature_names[static_cast<std::size_t>(j)];
        }
        out << ',';
    }
    out << label_column << '\n';
    for (Eigen::Index i = 0; i < cloud.n_points(); ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            out << format_coordinate(cloud.points()(i, j)) << ',';
        }
        out << cloud.labels()[static_cast<std::size_t>(i)] << '\n';
    }
}

SwissRollData generate_swiss_roll(const SwissRollSpec& spec) {
    if (spec.n_points < 2) throw DataError("swiss roll needs at least 2 points");
    if (spec.n_arcs < 2) throw DataError("swiss roll needs at least 2 arcs");
    if (!(spec.gap_fraction > 0.0 && spec.gap_fraction < 1.0)) {
        throw DataError("gap fraction must lie in (0,1)");
    }
    if (spec.noise_sd < 0.0) throw DataError("noise sd must be >= 0");
    if (!(spec.t_max > spec.t_min)) throw DataError("t_max must exceed t_min");

    SplitMix64 rng(derive_seed(spec.seed, "swissroll"));
    const int arcs = spec.n_arcs;
    std::vector<int> sizes(static_cast<std::size_t>(arcs), spec.n_points / arcs);
    for (int i = 0; i < spec.n_points % arcs; ++i) ++sizes[static_cast<std::size_t>(i)];

    const double segment = (spec.t_max - spec.t_min) / static_cast<double>(arcs);
    Eigen::MatrixXd points(spec.n_points, 3);
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(spec.n_points));
    std::vector<double> arc_parameter;
    arc_parameter.reserve(static_cast<std::size_t>(spec.n_points));

    Eigen::Index row = 0;
    for (int arc = 0; arc < arcs; ++arc) {
        // Each band sits centered within its segment; the remaining
        // gap_fraction of the segment forms the discontinuity.
        const double band_lo =
            spec.t_min + segment * (static_cast<double>(arc) + 0.5 * spec.gap_fraction);
        const double band_width = segment * (1.0 - spec.gap_fraction);
        const int m = sizes[static_cast<std::size_t>(arc)];
        const std::string label = "arc" + std::to_string(arc + 1);
        for (int j = 0; j < m; ++j) {
            const double t = band_lo + band_width * (static_cast<double>(j) + 0.5) /
                                           static_cast<double>(m);
            const double h = spec.height * rng.next_double();
            double x = t * std::cos(t);
            double y = h;
            double z = t * std::sin(t);
            if (spec.noise_sd > 0.0) {
                x += spec.noise_sd * rng.next_normal();
                y += spec.noise_sd * rng.next_normal();
                z += spec.noise_sd * rng.next_normal();
            }
            points(row, 0) = x;
            points(row, 1) = y;
            points(row, 2) = z;
            labels.push_back(label);
            arc_parameter.push_back(t);
            ++row;
        }
    }
    return SwissRollData{LabeledPointCloud(std::move(points), std::move(labels)),
                         std::move(arc_parameter)};
}

LabeledPointCloud subsample_balanced(const LabeledPointCloud& cloud, Eigen::Index per_group,
                                     std::uint64_t seed) {
    if (per_group < 1) throw DataError("per-group sample size must be >= 1");
    std::vector<Eigen::Index> keep;
    for (std::size_t g = 0; g < cloud.n_groups(); ++g) {
        const auto& rows = cloud.group_members()[g];
        if (static_cast<Eigen::Index>(rows.size()) < per_group) {
            throw GroupTooSmallError("group '" + cloud.group_labels()[g] + "' has " +
                                     std::to_string(rows.size()) + " members, need " +
                                     std::to_string(per_group));
        }
        SplitMix64 rng(derive_seed(seed, "subsample/" + cloud.group_labels()[g]));
        for (std::size_t pick : sample_without_replacement(
                 rows.size(), static_cast<std::size_t>(per_group), rng)) {
            keep.push_back(rows[pick]);
        }
    }
    std::sort(keep.begin(), keep.end());
    Eigen::MatrixXd points(static_cast<Eigen::Index>(keep.size()), cloud.n_dims());
    std::vector<std::string> labels;
    labels.reserve(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        points.row(static_cast<Eigen::Index>(i)) = cloud.points().row(keep[i]);
        labels.push_back(cloud.labels()[static_cast<std::size_t>(keep[i])]);
    }
    return LabeledPointCloud(std::move(points), std::move(labels));
}

CandidateManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest '" + path.string() + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ManifestError("manifest '" + path.string() + "': " + e.what());
    }

    CandidateManifest manifest;
    try {
        manifest.dataset = doc.value("dataset", std::string{});
        manifest.label_column = doc.value("label_column", std::string{"label"});
        const auto& entries = doc.at("candidates");
        if (!entries.is_array() || entries.empty()) {
            throw ManifestError("manifest '" + path.string() + "': no candidates");
        }
        const std::filesystem::path base = path.parent_path();
        for (const auto& item : entries) {
            ManifestEntry entry;
            entry.method = item.at("method").get<std::string>();
            if (item.contains("params")) {
                for (const auto& [key, value] : item.at("params").items()) {
                    entry.params.emplace_back(
                        key, value.is_string() ? value.get<std::string>() : value.dump());
                }
            }
            std::sort(entry.params.begin(), entry.params.end());
            const std::string norm = item.value("normalization", std::string{"NON"});
            const auto scheme = parse_normalization(norm);
            if (!scheme) {
                throw ManifestError("manifest '" + path.string() + "': unknown normalization '" +
                                    norm + "'");
            }
            entry.normalization = *scheme;
            entry.apply_normalization = item.value("apply_normalization", false);
            const std::filesystem::path data = item.at("data").get<std::string>();
            entry.data_path = data.is_absolute() ? data : base / data;
            if (!std::filesystem::exists(entry.data_path)) {
                throw ManifestError("manifest '" + path.string() + "': data file '" +
                                    entry.data_path.string() + "' does not exist");
            }
            manifest.entries.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ManifestError("manifest '" + path.string() + "': " + e.what());
    }
    return manifest;
}

std::vector<EmbeddingCandidate> load_candidates(const CandidateManifest& manifest) {
    std::vector<EmbeddingCandidate> candidates;
    candidates.reserve(manifest.entries.size());
    for (const auto& entry : manifest.entries) {
        LabeledPointCloud cloud = load_labeled_csv(entry.data_path, manifest.label_column);
        if (entry.apply_normalization && entry.normalization != Normalization::Non) {
            cloud = LabeledPointCloud(normalize(cloud.points(), entry.normalization),
                                      cloud.labels());
        }
        candidates.push_back(
            EmbeddingCandidate{entry.method, entry.params, entry.normalization, std::move(cloud)});
    }
    return candidates;
}

}  // namespace sepscore
