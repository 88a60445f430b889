#pragma once

#include "sepscore/core.hpp"

#include <span>
#include <string_view>

namespace sepscore {

/// How a group's centroid is computed before drawing the projection line.
enum class CentroidMode { Mean, Median, Mode };

std::string_view to_string(CentroidMode mode);
std::optional<CentroidMode> parse_centroid_mode(std::string_view name);

/// Coordinate-wise centroid of the given rows.
///   mean   - arithmetic mean
///   median - midpoint of the two middle values for even counts
///   mode   - most frequent value after rounding to 12 significant digits,
///            ties resolved to the smallest value (a continuous-data mode
///            needs such a fixed rule to be deterministic)
Eigen::VectorXd centroid(const Eigen::MatrixXd& points, std::span<const Eigen::Index> rows,
                         CentroidMode mode);
/// Centroid of all rows.
Eigen::VectorXd centroid(const Eigen::MatrixXd& points, CentroidMode mode);

/// Orthogonal projection of p onto the infinite line through a and b:
/// a + ((p-a).(b-a)) / ((b-a).(b-a)) * (b-a).
/// Throws CoincidentCentroidsError when ||b-a|| is below the coincidence
/// threshold 1e-12 * (1 + max |coordinate| of a, b).
Eigen::VectorXd project_to_line(const Eigen::VectorXd& p, const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b);

/// Scalar position of p's projection along the a->b line: 0 at a, 1 at b.
/// This is a positive affine image of "distance from the reference extreme",
/// so every rank- or threshold-based statistic downstream is unaffected by
/// the choice of reference.
double line_coordinate(const Eigen::VectorXd& p, const Eigen::VectorXd& a,
                       const Eigen::VectorXd& b);

/// Two-sided Mann-Whitney p-value for xs vs ys. Exact by enumeration of the
/// U distribution when |xs|+|ys| <= 20 and the pooled values carry no ties;
/// otherwise the normal approximation with tie and continuity correction.
double mann_whitney_p(std::span<const double> xs, std::span<const double> ys);

/// Area under the ROC curve: fraction of (pos, neg) pairs won, ties half.
double auc_roc(std::span<const double> pos, std::span<const double> neg);

/// Area under the precision-recall curve as average precision over a
/// descending score sweep. Tied scores are swept positives-first.
double auc_pr(std::span<const double> pos, std::span<const double> neg);

/// Separability of one group pair on its centroid projection line.
struct PairSeparability {
    std::string label_a;
    std::string label_b;
    /// Which group played the positive class for AUC-ROC / AUC-PR: the one
    /// whose centroid sits at the larger line coordinate.
    std::string positive_label;
    double p = 1.0;
    double auc_roc = 0.5;
    double auc_pr = 0.0;
};

/// The three projection separability indices plus their per-pair breakdown.
struct PsiResult {
    double psi_p = 1.0;
    double psi_roc = 0.5;
    double psi_pr = 0.0;
    std::vector<PairSeparability> per_pair;
};

/// Projects both groups onto the line through their centroids and returns
/// the 1-D coordinates. Labels are reported in lexicographic order.
GroupPair project_pair(const LabeledPointCloud& cloud, std::string_view label_a,
                       std::string_view label_b, CentroidMode mode);

/// PS statistics for one group pair. Coincident centroids are maximal
/// non-separability, not an error: the neutral triple
/// (p=1, auc_roc=0.5, auc_pr=prevalence of the positive class) is returned.
PairSeparability psi_pair(const LabeledPointCloud& cloud, std::string_view label_a,
                          std::string_view label_b, CentroidMode mode);

/// All unordered group pairs in lexicographic label order; the overall
/// indices are the arithmetic means of the per-pair columns.
PsiResult psi_all(const LabeledPointCloud& cloud, CentroidMode mode = CentroidMode::Median);

/// Core used by permutation replicates: same points, any regrouping.
PsiResult psi_all_members(const Eigen::MatrixXd& points,
                          const std::vector<std::string>& group_labels, const Members& members,
                          CentroidMode mode);

}  // namespace sepscore
