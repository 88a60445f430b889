#pragma once

#include "sepscore/core.hpp"
#include "sepscore/evaluation.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace sepscore {

/// Reads a labeled cloud from a header-carrying CSV. The named column holds
/// opaque group labels; every other column is parsed as a real coordinate in
/// header order.
LabeledPointCloud load_labeled_csv(std::istream& in, const std::string& label_column,
                                   const std::string& source_name = "<stream>");
LabeledPointCloud load_labeled_csv(const std::filesystem::path& path,
                                   const std::string& label_column);

/// Writes a cloud as CSV with coordinates at 17 significant digits, which
/// round-trips doubles exactly. Feature columns are named x1..xD unless
/// custom names are given.
void write_labeled_csv(std::ostream& out, const LabeledPointCloud& cloud,
                       const std::string& label_column = "label",
                       const std::vector<std::string>& feature_names = {});

/// Tripartite swiss-roll synthesis: (t cos t, h, t sin t) with the spiral
/// parameter range split into n_arcs bands separated by gaps.
struct SwissRollSpec {
    int n_points = 723;
    int n_arcs = 3;
    /// Fraction of each parameter segment ceded to the surrounding gaps.
    double gap_fraction = 0.1;
    double noise_sd = 0.0;
    std::uint64_t seed = 0;
    // Spiral constants. One full turn keeps the arcs compact enough that
    // every index separates them cleanly at zero noise.
    double t_min = 2.0 * 3.14159265358979323846;
    double t_max = 4.0 * 3.14159265358979323846;
    double height = 2.0;
};

struct SwissRollData {
    LabeledPointCloud cloud;
    /// Spiral parameter per point - the color gradient of the original
    /// manifold, kept as metadata beside the coordinates.
    std::vector<double> arc_parameter;
};

/// Deterministic for a fixed seed. Arc sizes differ by at most one point;
/// labels are "arc1".."arcN".
SwissRollData generate_swiss_roll(const SwissRollSpec& spec);

/// Uniform per-group sample without replacement; deterministic for a fixed
/// seed and independent of group enumeration order (streams are keyed per
/// group label). Point order of the original cloud is preserved.
LabeledPointCloud subsample_balanced(const LabeledPointCloud& cloud, Eigen::Index per_group,
                                     std::uint64_t seed);

/// One entry of a candidate manifest.
struct ManifestEntry {
    std::string method;
    std::vector<std::pair<std::string, std::string>> params;
    Normalization normalization = Normalization::Non;
    std::filesystem::path data_path;
    /// When set, the named scheme is applied to the loaded coordinates
    /// before scoring (useful for "hd" rows built from raw data).
    bool apply_normalization = false;
};

struct CandidateManifest {
    std::string dataset;
    std::string label_column = "label";
    std::vector<ManifestEntry> entries;
};

/// Parses a manifest JSON file; data paths are resolved relative to the
/// manifest's directory and must exist.
CandidateManifest load_manifest(const std::filesystem::path& path);

/// Loads every entry's cloud and assembles the candidates.
std::vector<EmbeddingCandidate> load_candidates(const CandidateManifest& manifest);

}  // namespace sepscore
