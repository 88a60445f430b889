#pragma once

#include "sepscore/core.hpp"

#include <utility>

namespace sepscore {

/// The six baseline cluster validity indices of one cloud.
struct CviBundle {
    double sh;
    double ch;
    double dn;
    double bz;
    double db_star;
    double th;
};

/// Shared geometry caches for CVI evaluation: the pairwise Euclidean
/// distance matrix, the first-nearest-neighbour table (self excluded, ties
/// to the lowest row index) and the overall mean. All of it depends on the
/// points only, so one context serves every relabeling of the same cloud --
/// which is what makes 1000-replicate permutation nulls cheap.
class CviContext {
public:
    explicit CviContext(Eigen::MatrixXd points);

    double silhouette(const Members& members) const;
    /// Sets *degenerate when both scatter terms vanish (every point equal),
    /// in which case 0 is returned; SS_W = 0 alone yields +infinity.
    double calinski_harabasz(const Members& members, bool* degenerate = nullptr) const;
    double dunn(const Members& members) const;
    double bezdek(const Members& members) const;
    /// Returns (DB, DB*) with DB* = 1/(1+DB); coincident cluster centroids
    /// give the (+infinity, 0) sentinel pair.
    std::pair<double, double> davies_bouldin(const Members& members) const;
    double thornton(const Members& members) const;

    const Eigen::MatrixXd& points() const { return points_; }
    const Eigen::MatrixXd& distances() const { return dist_; }
    const std::vector<Eigen::Index>& nearest_neighbor() const { return nn_; }
    Eigen::Index n_points() const { return points_.rows(); }

private:
    std::vector<int> codes_of(const Members& members) const;
    std::vector<Eigen::VectorXd> mean_centroids(const Members& members) const;

    Eigen::MatrixXd points_;
    Eigen::MatrixXd dist_;
    std::vector<Eigen::Index> nn_;
    Eigen::RowVectorXd overall_mean_;
};

// Whole-cloud conveniences. Each builds a context, so prefer CviContext when
// evaluating many relabelings or several indices of the same cloud.

double silhouette(const LabeledPointCloud& cloud);
double calinski_harabasz(const LabeledPointCloud& cloud, bool* degenerate = nullptr);
double dunn(const LabeledPointCloud& cloud);
double bezdek(const LabeledPointCloud& cloud);
std::pair<double, double> davies_bouldin(const LabeledPointCloud& cloud);
double davies_bouldin_star(const LabeledPointCloud& cloud);
double thornton(const LabeledPointCloud& cloud);

CviBundle cvi_bundle(const LabeledPointCloud& cloud);

}  // namespace sepscore
