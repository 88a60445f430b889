#include "sepscore/cluster_validity.hpp"

#include "sepscore/errors.hpp"

#include <cmath>
#include <limits>

namespace sepscore {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CviContext::CviContext(Eigen::MatrixXd points) : points_(std::move(points)) {
    const Eigen::Index n = points_.rows();
    dist_.resize(n, n);
    dist_.diagonal().setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = (points_.row(i) - points_.row(j)).norm();
            dist_(i, j) = d;
            dist_(j, i) = d;
        }
    }
    nn_.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index best = i == 0 ? 1 : 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            if (dist_(i, j) < dist_(i, best)) best = j;  // ties keep the lowest index
        }
        nn_[static_cast<std::size_t>(i)] = best;
    }
    overall_mean_ = points_.colwise().mean();
}

std::vector<int> CviContext::codes_of(const Members& members) const {
    std::vector<int> codes(static_cast<std::size_t>(n_points()), -1);
    for (std::size_t g = 0; g < members.size(); ++g) {
        for (Eigen::Index row : members[g]) codes[static_cast<std::size_t>(row)] = static_cast<int>(g);
    }
    return codes;
}

std::vector<Eigen::VectorXd> CviContext::mean_centroids(const Members& members) const {
    std::vector<Eigen::VectorXd> centroids(members.size());
    for (std::size_t g = 0; g < members.size(); ++g) {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(points_.cols());
        for (Eigen::Index row : members[g]) c += points_.row(row).transpose();
        centroids[g] = c / static_cast<double>(members[g].size());
    }
    return centroids;
}

double CviContext::silhouette(const Members& members) const {
    const auto codes = codes_of(members);
    const std::size_t g = members.size();
    std::vector<double> cluster_sum(g, 0.0);
    std::vector<double> per_point_sums(g);
    double total = 0.0;
    for (std::size_t k = 0; k < g; ++k) {
        double sum_sh = 0.0;
        for (Eigen::Index i : members[k]) {
            if (members[k].size() == 1) continue;  // singleton: SH(x) = 0
            std::fill(per_point_sums.begin(), per_point_sums.end(), 0.0);
            for (Eigen::Index j = 0; j < n_points(); ++j) {
                per_point_sums[static_cast<std::size_t>(codes[static_cast<std::size_t>(j)])] +=
                    dist_(i, j);
            }
            const double a = per_point_sums[k] / static_cast<double>(members[k].size() - 1);
            double b = kInf;
            for (std::size_t other = 0; other < g; ++other) {
                if (other == k) continue;
                b = std::min(b, per_point_sums[other] / static_cast<double>(members[other].size()));
            }
            const double denom = std::max(a, b);
            sum_sh += denom == 0.0 ? 0.0 : (b - a) / denom;
        }
        cluster_sum[k] = sum_sh / static_cast<double>(members[k].size());
        total += cluster_sum[k];
    }
    return total / static_cast<double>(g);
}

double CviContext::calinski_harabasz(const Members& members, bool* degenerate) const {
    if (degenerate != nullptr) *degenerate = false;
    const auto centroids = mean_centroids(members);
    const std::size_t g = members.size();
    double ss_b = 0.0;
    double ss_w = 0.0;
    for (std::size_t k = 0; k < g; ++k) {
        ss_b += static_cast<double>(members[k].size()) *
                (centroids[k].transpose() - overall_mean_).squaredNorm();
        for (Eigen::Index row : members[k]) {
            ss_w += (points_.row(row) - centroids[k].transpose()).squaredNorm();
        }
    }
    if (ss_w == 0.0) {
        if (ss_b == 0.0) {
            if (degenerate != nullptr) *degenerate = true;
            return 0.0;
        }
        return kInf;
    }
    const double t = static_cast<double>(n_points());
    const double n_clusters = static_cast<double>(g);
    return ss_b / ss_w * (t - n_clusters) / (n_clusters - 1.0);
}

double CviContext::dunn(const Members& members) const {
    const std::size_t g = members.size();
    double min_between = kInf;
    for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t b = a + 1; b < g; ++b) {
            for (Eigen::Index i : members[a]) {
                for (Eigen::Index j : members[b]) min_between = std::min(min_between, dist_(i, j));
            }
        }
    }
    double max_diameter = 0.0;
    for (const auto& rows : members) {
        for (std::size_t x = 0; x < rows.size(); ++x) {
            for (std::size_t y = x + 1; y < rows.size(); ++y) {
                max_diameter = std::max(max_diameter, dist_(rows[x], rows[y]));
            }
        }
    }
    if (min_between == 0.0) return 0.0;
    if (max_diameter == 0.0) return kInf;  // all clusters singleton or collapsed
    return min_between / max_diameter;
}

double CviContext::bezdek(const Members& members) const {
    const std::size_t g = members.size();
    double min_between = kInf;
    for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t b = a + 1; b < g; ++b) {
            double sum = 0.0;
            for (Eigen::Index i : members[a]) {
                for (Eigen::Index j : members[b]) sum += dist_(i, j);
            }
            min_between = std::min(
                sum / (static_cast<double>(members[a].size()) * static_cast<double>(members[b].size())),
                min_between);
        }
    }
    const auto centroids = mean_centroids(members);
    double max_diameter = 0.0;
    for (std::size_t k = 0; k < g; ++k) {
        double sum = 0.0;
        for (Eigen::Index row : members[k]) {
            sum += (points_.row(row) - centroids[k].transpose()).norm();
        }
        max_diameter = std::max(max_diameter, 2.0 * sum / static_cast<double>(members[k].size()));
    }
    if (min_between == 0.0) return 0.0;
    if (max_diameter == 0.0) return kInf;
    return min_between / max_diameter;
}

std::pair<double, double> CviContext::davies_bouldin(const Members& members) const {
    const std::size_t g = members.size();
    const auto centroids = mean_centroids(members);
    std::vector<double> scatter(g, 0.0);
    for (std::size_t k = 0; k < g; ++k) {
        for (Eigen::Index row : members[k]) {
            scatter[k] += (points_.row(row) - centroids[k].transpose()).norm();
        }
        scatter[k] /= static_cast<double>(members[k].size());
    }
    double db = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < g; ++j) {
            if (j == i) continue;
            const double d = (centroids[i] - centroids[j]).norm();
            if (d == 0.0) {
                worst = kInf;  // coincident centroids
                break;
            }
            worst = std::max(worst, (scatter[i] + scatter[j]) / d);
        }
        db += worst;
    }
    db /= static_cast<double>(g);
    const double db_star = std::isinf(db) ? 0.0 : 1.0 / (1.0 + db);
    return {db, db_star};
}

double CviContext::thornton(const Members& members) const {
    const auto codes = codes_of(members);
    const std::size_t n = codes.size();
    double agree = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (codes[i] == codes[static_cast<std::size_t>(nn_[i])]) agree += 1.0;
    }
    return agree / static_cast<double>(n);
}

double silhouette(const LabeledPointCloud& cloud) {
    return CviContext(cloud.points()).silhouette(cloud.group_members());
}

double calinski_harabasz(const LabeledPointCloud& cloud, bool* degenerate) {
    return CviContext(cloud.points()).calinski_harabasz(cloud.group_members(), degenerate);
}

double dunn(const LabeledPointCloud& cloud) {
    return CviContext(cloud.points()).dunn(cloud.group_members());
}

double bezdek(const LabeledPointCloud& cloud) {
    return CviContext(cloud.points()).bezdek(cloud.group_members());
}

std::pair<double, double> davies_bouldin(const LabeledPointCloud& cloud) {
    return CviContext(cloud.points()).davies_bouldin(cloud.group_members());
}

double davies_bouldin_star(const LabeledPointCloud& cloud) {
    return davies_bouldin(cloud).second;
}

double thornton(const LabeledPointCloud& cloud) {
    return CviContext(cloud.points()).thornton(cloud.group_members());
}

CviBundle cvi_bundle(const LabeledPointCloud& cloud) {
    const CviContext ctx(cloud.points());
    const Members& members = cloud.group_members();
    CviBundle out{};
    out.sh = ctx.silhouette(members);
    out.ch = ctx.calinski_harabasz(members);
    out.dn = ctx.dunn(members);
    out.bz = ctx.bezdek(members);
    out.db_star = ctx.davies_bouldin(members).second;
    out.th = ctx.thornton(members);
    return out;
}

}  // namespace sepscore
