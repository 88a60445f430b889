#pragma once

#include "sepscore/core.hpp"
#include "sepscore/evaluation.hpp"

#include <array>
#include <string>
#include <vector>

namespace sepscore {

/// Indices as samples, index values across (dataset, method, parameters,
/// normalization) combinations as features.
struct IndexProfileMatrix {
    std::vector<std::string> row_ids;     // index names
    std::vector<std::string> column_ids;  // candidate combination keys
    Eigen::MatrixXd values;               // row_ids.size() x column_ids.size()
};

/// Builds the profile matrix from one or more evaluation reports: one row
/// per index in the standard order, one column per candidate of each report.
IndexProfileMatrix profile_from_reports(const std::vector<EvaluationReport>& reports);

/// Replaces divergent (+infinity) entries by 10x the largest finite value in
/// their row, so the matrix becomes PCA-ready. Appends one note per affected
/// row when `notes` is given.
Eigen::MatrixXd replace_divergent(const Eigen::MatrixXd& matrix,
                                  std::vector<std::string>* notes = nullptr);

/// Scales every row to mean 0 and sample (n-1) standard deviation 1.
/// Throws ConstantRowError when a row has no variation to scale.
Eigen::MatrixXd zscore_rows(const Eigen::MatrixXd& matrix);

/// Centered PCA scores on the top-k components (descending eigenvalue
/// order). Sign convention: the entry of largest magnitude in each score
/// column is made positive. Throws RankDeficientError when the centered
/// matrix has fewer than k positive eigenvalues.
Eigen::MatrixXd pca_project(const Eigen::MatrixXd& matrix, int k);

/// Barycentric point-in-triangle test, boundary counted as inside.
bool psi_triangle_contains(const Eigen::Vector2d& point,
                           const std::array<Eigen::Vector2d, 3>& vertices);

/// The 2-D index-similarity map: z-scored profiles projected by PCA, with
/// the PSI-triangle spanned by the three PSI rows and a containment flag per
/// index.
struct SimilarityMap {
    std::vector<std::string> row_ids;
    Eigen::MatrixXd scores;                    // rows x 2
    std::array<Eigen::Vector2d, 3> triangle;   // psi_p, psi_roc, psi_pr
    std::vector<bool> inside;
    std::vector<std::string> notes;
};

SimilarityMap similarity_map(const IndexProfileMatrix& profile);

}  // namespace sepscore
