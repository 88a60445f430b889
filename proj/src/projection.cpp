#include "sepscore/projection.hpp"

#include "sepscore/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

namespace sepscore {

namespace {

double round_significant(double x, int digits) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(x))));
    const double scale = std::pow(10.0, digits - 1 - exponent);
    return std::round(x * scale) / scale;
}

double column_median(std::vector<double>& vals) {
    std::sort(vals.begin(), vals.end());
    const std::size_t n = vals.size();
    if (n % 2 == 1) return vals[n / 2];
    return 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
}

double column_mode(const std::vector<double>& vals) {
    std::map<double, int> counts;
    for (double v : vals) ++counts[round_significant(v, 12)];
    double best = counts.begin()->first;
    int best_count = 0;
    for (const auto& [value, count] : counts) {
        // std::map iterates ascending, so a strict > keeps the smallest
        // value among equally frequent ones.
        if (count > best_count) {
            best = value;
            best_count = count;
        }
    }
    return best;
}

double coincidence_epsilon(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return 1e-12 * (1.0 + scale);
}

/// Pooled midranks, the rank-sum U for `first`, and tie bookkeeping.
struct RankedU {
    double u_first = 0.0;            // #(first > second) + 0.5 #(first == second)
    bool has_ties = false;
    double tie_term = 0.0;           // sum over tie groups of t^3 - t
};

RankedU ranked_u(std::span<const double> first, std::span<const double> second) {
    const std::size_t n1 = first.size();
    const std::size_t n2 = second.size();
    const std::size_t n = n1 + n2;
    std::vector<std::pair<double, bool>> pooled;  // (value, belongs to first)
    pooled.reserve(n);
    for (double v : first) pooled.emplace_back(v, true);
    for (double v : second) pooled.emplace_back(v, false);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    RankedU out;
    double rank_sum_first = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[j + 1].first == pooled[i].first) ++j;
        const double t = static_cast<double>(j - i + 1);
        if (j > i) {
            out.has_ties = true;
            out.tie_term += t * t * t - t;
        }
        const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (pooled[k].second) rank_sum_first += midrank;
        }
        i = j + 1;
    }
    out.u_first = rank_sum_first - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);
    return out;
}

/// Counts of rank arrangements per U value for group sizes (n1, n2),
/// via the classic recurrence c(a,b,u) = c(a-1,b,u-b) + c(a,b-1,u)
/// (condition on whether the largest pooled value belongs to the first
/// group, in which case it wins against all b others).
std::vector<double> u_distribution(std::size_t n1, std::size_t n2) {
    std::vector<std::vector<std::vector<double>>> c(n1 + 1);
    for (std::size_t a = 0; a <= n1; ++a) {
        c[a].resize(n2 + 1);
        for (std::size_t b = 0; b <= n2; ++b) {
            auto& cell = c[a][b];
            cell.assign(a * b + 1, 0.0);
            if (a == 0 || b == 0) {
                cell[0] = 1.0;
                continue;
            }
            for (std::size_t u = 0; u <= a * b; ++u) {
                double ways = c[a][b - 1].size() > u ? c[a][b - 1][u] : 0.0;
                if (u >= b) ways += c[a - 1][b][u - b];
                cell[u] = ways;
            }
        }
    }
    return c[n1][n2];
}

}  // namespace

std::string_view to_string(CentroidMode mode) {
    switch (mode) {
        case CentroidMode::Mean: return "mean";
        case CentroidMode::Median: return "median";
        case CentroidMode::Mode: return "mode";
    }
    return "?";
}

std::optional<CentroidMode> parse_centroid_mode(std::string_view name) {
    std::string canon;
    for (char c : name) canon.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (canon == "mean") return CentroidMode::Mean;
    if (canon == "median") return CentroidMode::Median;
    if (canon == "mode") return CentroidMode::Mode;
    return std::nullopt;
}

Eigen::VectorXd centroid(const Eigen::MatrixXd& points, std::span<const Eigen::Index> rows,
                         CentroidMode mode) {
    if (rows.empty()) throw EmptySubsetError("centroid of an empty point subset");
    const Eigen::Index d = points.cols();
    Eigen::VectorXd out(d);
    if (mode == CentroidMode::Mean) {
        out.setZero();
        for (Eigen::Index r : rows) out += points.row(r).transpose();
        out /= static_cast<double>(rows.size());
        return out;
    }
    std::vector<double> column(rows.size());
    for (Eigen::Index j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < rows.size(); ++k) column[k] = points(rows[k], j);
        out[j] = mode == CentroidMode::Median ? column_median(column) : column_mode(column);
    }
    return out;
}

Eigen::VectorXd centroid(const Eigen::MatrixXd& points, CentroidMode mode) {
    std::vector<Eigen::Index> rows(static_cast<std::size_t>(points.rows()));
    std::iota(rows.begin(), rows.end(), Eigen::Index{0});
    return centroid(points, rows, mode);
}

double line_coordinate(const Eigen::VectorXd& p, const Eigen::VectorXd& a,
                       const Eigen::VectorXd& b) {
    const Eigen::VectorXd ab = b - a;
    if (ab.norm() <= coincidence_epsilon(a, b)) {
        throw CoincidentCentroidsError("line endpoints coincide");
    }
    return (p - a).dot(ab) / ab.squaredNorm();
}

Eigen::VectorXd project_to_line(const Eigen::VectorXd& p, const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b) {
    return a + line_coordinate(p, a, b) * (b - a);
}

double mann_whitney_p(std::span<const double> xs, std::span<const double> ys) {
    if (xs.empty() || ys.empty()) throw EmptyGroupInputError("Mann-Whitney on an empty sample");
    const std::size_t n1 = xs.size();
    const std::size_t n2 = ys.size();
    const std::size_t n = n1 + n2;
    const RankedU ranked = ranked_u(xs, ys);
    const double m = static_cast<double>(n1) * static_cast<double>(n2);

    if (n <= 20 && !ranked.has_ties) {
        const auto counts = u_distribution(n1, n2);
        const auto u_obs = static_cast<std::size_t>(std::llround(ranked.u_first));
        const std::size_t lo = std::min(u_obs, n1 * n2 - u_obs);
        double extreme = 0.0;
        double total = 0.0;
        for (std::size_t u = 0; u < counts.size(); ++u) {
            total += counts[u];
            if (std::min(u, n1 * n2 - u) <= lo) extreme += counts[u];
        }
        return extreme / total;
    }

    const double mean = 0.5 * m;
    const double variance = m / 12.0 *
                            (static_cast<double>(n + 1) -
                             ranked.tie_term / (static_cast<double>(n) * static_cast<double>(n - 1)));
    if (variance <= 0.0) return 1.0;  // every pooled value identical
    const double z = std::max(0.0, std::fabs(ranked.u_first - mean) - 0.5) / std::sqrt(variance);
    return std::min(1.0, std::erfc(z / std::numbers::sqrt2_v<double>));
}

double auc_roc(std::span<const double> pos, std::span<const double> neg) {
    if (pos.empty() || neg.empty()) throw EmptyGroupInputError("AUC-ROC on an empty sample");
    const RankedU ranked = ranked_u(pos, neg);
    return ranked.u_first / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

double auc_pr(std::span<const double> pos, std::span<const double> neg) {
    if (pos.empty() || neg.empty()) throw EmptyGroupInputError("AUC-PR on an empty sample");
    std::vector<std::pair<double, bool>> ranking;  // (score, is positive)
    ranking.reserve(pos.size() + neg.size());
    for (double v : pos) ranking.emplace_back(v, true);
    for (double v : neg) ranking.emplace_back(v, false);
    std::sort(ranking.begin(), ranking.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;
        return x.second && !y.second;  // positives ahead of tied negatives
    });
    double tp = 0.0;
    double fp = 0.0;
    double ap = 0.0;
    const double recall_step = 1.0 / static_cast<double>(pos.size());
    for (const auto& [score, is_pos] : ranking) {
        if (is_pos) {
            tp += 1.0;
            ap += tp / (tp + fp) * recall_step;
        } else {
            fp += 1.0;
        }
    }
    return ap;
}

namespace {

PairSeparability psi_pair_members(const Eigen::MatrixXd& points,
                                  const std::vector<Eigen::Index>& rows_a,
                                  const std::vector<Eigen::Index>& rows_b,
                                  std::string_view label_a, std::string_view label_b,
                                  CentroidMode mode) {
    // Canonical orientation: the line runs from the lexicographically
    // smaller label's centroid towards the larger's, making the result
    // independent of argument order.
    const bool swapped = label_b < label_a;
    const auto& first_rows = swapped ? rows_b : rows_a;
    const auto& second_rows = swapped ? rows_a : rows_b;
    PairSeparability out;
    out.label_a = std::string(swapped ? label_b : label_a);
    out.label_b = std::string(swapped ? label_a : label_b);

    const Eigen::VectorXd ca = centroid(points, first_rows, mode);
    const Eigen::VectorXd cb = centroid(points, second_rows, mode);

    if ((cb - ca).norm() <= coincidence_epsilon(ca, cb)) {
        // Fully overlapping centroids: maximal non-separability. The second
        // group keeps the positive role it would have had from the centroid
        // ordering rule.
        out.positive_label = out.label_b;
        out.p = 1.0;
        out.auc_roc = 0.5;
        out.auc_pr = static_cast<double>(second_rows.size()) /
                     static_cast<double>(first_rows.size() + second_rows.size());
        return out;
    }

    std::vector<double> ta(first_rows.size());
    std::vector<double> tb(second_rows.size());
    for (std::size_t k = 0; k < first_rows.size(); ++k) {
        ta[k] = line_coordinate(points.row(first_rows[k]).transpose(), ca, cb);
    }
    for (std::size_t k = 0; k < second_rows.size(); ++k) {
        tb[k] = line_coordinate(points.row(second_rows[k]).transpose(), ca, cb);
    }

    // Positive class: the group whose centroid has the larger line
    // coordinate. The centroids themselves map to 0 and 1, so that is the
    // second group under the canonical orientation.
    out.positive_label = out.label_b;
    out.p = mann_whitney_p(ta, tb);
    out.auc_roc = auc_roc(tb, ta);
    out.auc_pr = auc_pr(tb, ta);
    return out;
}

}  // namespace

GroupPair project_pair(const LabeledPointCloud& cloud, std::string_view label_a,
                       std::string_view label_b, CentroidMode mode) {
    const Eigen::Index ga = cloud.group_index(label_a);
    const Eigen::Index gb = cloud.group_index(label_b);
    if (ga < 0) throw UnknownLabelError("unknown group label '" + std::string(label_a) + "'");
    if (gb < 0) throw UnknownLabelError("unknown group label '" + std::string(label_b) + "'");
    const bool swapped = label_b < label_a;
    const auto& rows_a = cloud.group_members()[static_cast<std::size_t>(swapped ? gb : ga)];
    const auto& rows_b = cloud.group_members()[static_cast<std::size_t>(swapped ? ga : gb)];

    GroupPair out;
    out.label_a = std::string(swapped ? label_b : label_a);
    out.label_b = std::string(swapped ? label_a : label_b);
    const Eigen::VectorXd ca = centroid(cloud.points(), rows_a, mode);
    const Eigen::VectorXd cb = centroid(cloud.points(), rows_b, mode);
    out.projected_a.resize(rows_a.size());
    out.projected_b.resize(rows_b.size());
    for (std::size_t k = 0; k < rows_a.size(); ++k) {
        out.projected_a[k] = line_coordinate(cloud.points().row(rows_a[k]).transpose(), ca, cb);
    }
    for (std::size_t k = 0; k < rows_b.size(); ++k) {
        out.projected_b[k] = line_coordinate(cloud.points().row(rows_b[k]).transpose(), ca, cb);
    }
    return out;
}

PairSeparability psi_pair(const LabeledPointCloud& cloud, std::string_view label_a,
                          std::string_view label_b, CentroidMode mode) {
    const Eigen::Index ga = cloud.group_index(label_a);
    const Eigen::Index gb = cloud.group_index(label_b);
    if (ga < 0) throw UnknownLabelError("unknown group label '" + std::string(label_a) + "'");
    if (gb < 0) throw UnknownLabelError("unknown group label '" + std::string(label_b) + "'");
    return psi_pair_members(cloud.points(), cloud.group_members()[static_cast<std::size_t>(ga)],
                            cloud.group_members()[static_cast<std::size_t>(gb)], label_a, label_b,
                            mode);
}

PsiResult psi_all_members(const Eigen::MatrixXd& points,
                          const std::vector<std::string>& group_labels, const Members& members,
                          CentroidMode mode) {
    PsiResult out;
    const std::size_t g = members.size();
    out.per_pair.reserve(g * (g - 1) / 2);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) {
            out.per_pair.push_back(psi_pair_members(points, members[i], members[j],
                                                    group_labels[i], group_labels[j], mode));
        }
    }
    double sum_p = 0.0;
    double sum_roc = 0.0;
    double sum_pr = 0.0;
    for (const auto& pair : out.per_pair) {
        sum_p += pair.p;
        sum_roc += pair.auc_roc;
        sum_pr += pair.auc_pr;
    }
    const double count = static_cast<double>(out.per_pair.size());
    out.psi_p = sum_p / count;
    out.psi_roc = sum_roc / count;
    out.psi_pr = sum_pr / count;
    return out;
}

PsiResult psi_all(const LabeledPointCloud& cloud, CentroidMode mode) {
    return psi_all_members(cloud.points(), cloud.group_labels(), cloud.group_members(), mode);
}

}  // namespace sepscore
