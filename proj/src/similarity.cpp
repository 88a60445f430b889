#include "sepscore/similarity.hpp"

#include "sepscore/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace sepscore {

IndexProfileMatrix profile_from_reports(const std::vector<EvaluationReport>& reports) {
    IndexProfileMatrix profile;
    if (reports.empty()) throw DataError("no reports to build a profile matrix from");
    const std::vector<IndexId>& ids = reports.front().indices;
    for (const auto& report : reports) {
        if (report.indices != ids) {
            throw DataError("reports disagree on the index set");
        }
    }
    for (IndexId id : ids) profile.row_ids.emplace_back(index_name(id));

    std::size_t n_cols = 0;
    for (const auto& report : reports) n_cols += report.rows.size();
    profile.values.resize(static_cast<Eigen::Index>(ids.size()), static_cast<Eigen::Index>(n_cols));
    Eigen::Index col = 0;
    for (const auto& report : reports) {
        for (const auto& row : report.rows) {
            profile.column_ids.push_back(report.dataset.empty() ? row.key()
                                                                : report.dataset + ":" + row.key());
            for (std::size_t r = 0; r < ids.size(); ++r) {
                profile.values(static_cast<Eigen::Index>(r), col) = row.value(ids[r]);
            }
            ++col;
        }
    }
    return profile;
}

Eigen::MatrixXd replace_divergent(const Eigen::MatrixXd& matrix, std::vector<std::string>* notes) {
    Eigen::MatrixXd out = matrix;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        double max_finite = -std::numeric_limits<double>::infinity();
        Eigen::Index divergent = 0;
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            const double v = out(i, j);
            if (std::isnan(v)) throw DataError("NaN in profile row " + std::to_string(i));
            if (std::isinf(v)) {
                ++divergent;
            } else {
                max_finite = std::max(max_finite, v);
            }
        }
        if (divergent == 0) continue;
        if (divergent == out.cols()) {
            throw DataError("profile row " + std::to_string(i) + " is entirely divergent");
        }
        const double replacement = max_finite * 10.0;
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            if (std::isinf(out(i, j))) out(i, j) = replacement;
        }
        if (notes != nullptr) {
            notes->push_back("row " + std::to_string(i) + ": replaced " +
                             std::to_string(divergent) + " divergent value(s) by " +
                             std::to_string(replacement));
        }
    }
    return out;
}

Eigen::MatrixXd zscore_rows(const Eigen::MatrixXd& matrix) {
    if (matrix.cols() < 2) throw DataError("z-scoring needs at least 2 columns");
    Eigen::MatrixXd out = matrix;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        const double mean = out.row(i).mean();
        const double ss = (out.row(i).array() - mean).square().sum();
        const double sd = std::sqrt(ss / static_cast<double>(out.cols() - 1));
        if (sd <= 1e-12 * (1.0 + std::fabs(mean))) {
            throw ConstantRowError("row " + std::to_string(i) + " has no variation");
        }
        out.row(i) = (out.row(i).array() - mean) / sd;
    }
    return out;
}

Eigen::MatrixXd pca_project(const Eigen::MatrixXd& matrix, int k) {
    const Eigen::Index rows = matrix.rows();
    const Eigen::Index cols = matrix.cols();
    if (k < 1 || k > std::min(rows - 1, cols)) {
        throw DataError("component count k=" + std::to_string(k) + " out of range for a " +
                        std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
    const Eigen::MatrixXd centered = matrix.rowwise() - matrix.colwise().mean();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();

    const double tol = sigma.size() > 0
                           ? sigma(0) * static_cast<double>(std::max(rows, cols)) *
                                 std::numeric_limits<double>::epsilon()
                           : 0.0;
    Eigen::Index positive = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > tol) ++positive;
    }
    if (positive < k) {
        throw RankDeficientError("only " + std::to_string(positive) +
                                 " positive eigenvalue(s), need " + std::to_string(k));
    }

    Eigen::MatrixXd scores = svd.matrixU().leftCols(k) * sigma.head(k).asDiagonal();
    for (Eigen::Index j = 0; j < scores.cols(); ++j) {
        Eigen::Index argmax = 0;
        scores.col(j).cwiseAbs().maxCoeff(&argmax);
        if (scores(argmax, j) < 0.0) scores.col(j) = -scores.col(j);
    }
    return scores;
}

bool psi_triangle_contains(const Eigen::Vector2d& point,
                           const std::array<Eigen::Vector2d, 3>& vertices) {
    const Eigen::Vector2d e1 = vertices[1] - vertices[0];
    const Eigen::Vector2d e2 = vertices[2] - vertices[0];
    const Eigen::Vector2d dp = point - vertices[0];
    const double det = e1.x() * e2.y() - e1.y() * e2.x();
    if (std::fabs(det) <= 1e-12 * e1.norm() * e2.norm()) {
        throw DegenerateTriangleError("triangle vertices are collinear");
    }
    const double beta = (dp.x() * e2.y() - dp.y() * e2.x()) / det;
    const double gamma = (e1.x() * dp.y() - e1.y() * dp.x()) / det;
    const double alpha = 1.0 - beta - gamma;
    constexpr double tol = 1e-12;
    return alpha >= -tol && beta >= -tol && gamma >= -tol;
}

SimilarityMap similarity_map(const IndexProfileMatrix& profile) {
    SimilarityMap map;
    map.row_ids = profile.row_ids;

    const auto row_of = [&](std::string_view name) {
        const auto it = std::find(profile.row_ids.begin(), profile.row_ids.end(), name);
        if (it == profile.row_ids.end()) {
            throw DataError("profile matrix lacks required row '" + std::string(name) + "'");
        }
        return static_cast<Eigen::Index>(it - profile.row_ids.begin());
    };
    const Eigen::Index psi_p_row = row_of(index_name(IndexId::PsiP));
    const Eigen::Index psi_roc_row = row_of(index_name(IndexId::PsiRoc));
    const Eigen::Index psi_pr_row = row_of(index_name(IndexId::PsiPr));

    const Eigen::MatrixXd finite = replace_divergent(profile.values, &map.notes);
    const Eigen::MatrixXd scaled = zscore_rows(finite);
    map.scores = pca_project(scaled, 2);

    map.triangle = {map.scores.row(psi_p_row).transpose(),
                    map.scores.row(psi_roc_row).transpose(),
                    map.scores.row(psi_pr_row).transpose()};
    map.inside.reserve(map.row_ids.size());
    for (Eigen::Index i = 0; i < map.scores.rows(); ++i) {
        map.inside.push_back(psi_triangle_contains(map.scores.row(i).transpose(), map.triangle));
    }
    return map;
}

}  // namespace sepscore
