#include "sepscore/core.hpp"

#include "sepscore/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace sepscore {

Better better_direction(IndexId id) {
    // PSI-P is a p-value: smaller means the projected groups are easier to
    // tell apart. Every other index grows with separability.
    return id == IndexId::PsiP ? Better::Lower : Better::Higher;
}

std::optional<Interval> bounded_range(IndexId id) {
    switch (id) {
        case IndexId::PsiP:
        case IndexId::PsiRoc:
        case IndexId::PsiPr:
        case IndexId::Th:
        case IndexId::DbStar:
            return Interval{0.0, 1.0};
        case IndexId::Sh:
            return Interval{-1.0, 1.0};
        case IndexId::Ch:
        case IndexId::Dn:
        case IndexId::Bz:
            return std::nullopt;
    }
    return std::nullopt;
}

std::string_view index_name(IndexId id) {
    switch (id) {
        case IndexId::PsiP: return "psi_p";
        case IndexId::PsiRoc: return "psi_roc";
        case IndexId::PsiPr: return "psi_pr";
        case IndexId::Sh: return "sh";
        case IndexId::Ch: return "ch";
        case IndexId::Dn: return "dn";
        case IndexId::Bz: return "bz";
        case IndexId::DbStar: return "db_star";
        case IndexId::Th: return "th";
    }
    return "?";
}

std::string_view index_cli_name(IndexId id) {
    switch (id) {
        case IndexId::PsiP: return "psi-p";
        case IndexId::PsiRoc: return "psi-roc";
        case IndexId::PsiPr: return "psi-pr";
        case IndexId::DbStar: return "db-star";
        default: return index_name(id);
    }
}

std::optional<IndexId> parse_index(std::string_view name) {
    std::string canon;
    canon.reserve(name.size());
    for (char c : name) {
        canon.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    for (IndexId id : kAllIndices) {
        if (canon == index_name(id)) return id;
    }
    return std::nullopt;
}

IndexScore make_index_score(IndexId id, double value) {
    return IndexScore{id, value, better_direction(id), bounded_range(id)};
}

void validate(const Eigen::MatrixXd& points, const std::vector<std::string>& labels) {
    if (static_cast<std::size_t>(points.rows()) != labels.size()) {
        throw DataError("point rows (" + std::to_string(points.rows()) +
                        ") and labels (" + std::to_string(labels.size()) + ") differ in count");
    }
    if (points.rows() < 2) {
        throw DataError("a cloud needs at least 2 points, got " + std::to_string(points.rows()));
    }
    if (points.cols() < 1) {
        throw DataError("a cloud needs at least 1 dimension");
    }
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        for (Eigen::Index j = 0; j < points.cols(); ++j) {
            if (!std::isfinite(points(i, j))) {
                throw NonFiniteError("non-finite coordinate at row " + std::to_string(i) +
                                     ", column " + std::to_string(j));
            }
        }
    }
    std::map<std::string_view, int> distinct;
    for (const auto& l : labels) ++distinct[l];
    if (distinct.size() < 2) {
        throw DegenerateLabelsError("need at least 2 distinct labels, got " +
                                    std::to_string(distinct.size()));
    }
    for (const auto& [label, count] : distinct) {
        if (count == 0) throw EmptyGroupError("empty group '" + std::string(label) + "'");
    }
}

LabeledPointCloud::LabeledPointCloud(Eigen::MatrixXd points, std::vector<std::string> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
    validate(points_, labels_);
    std::map<std::string, std::vector<Eigen::Index>> by_label;
    for (Eigen::Index i = 0; i < points_.rows(); ++i) {
        by_label[labels_[static_cast<std::size_t>(i)]].push_back(i);
    }
    group_labels_.reserve(by_label.size());
    members_.reserve(by_label.size());
    for (auto& [label, rows] : by_label) {
        group_labels_.push_back(label);
        members_.push_back(std::move(rows));
    }
}

Eigen::Index LabeledPointCloud::group_index(std::string_view label) const {
    const auto it = std::lower_bound(group_labels_.begin(), group_labels_.end(), label);
    if (it == group_labels_.end() || *it != label) return -1;
    return static_cast<Eigen::Index>(it - group_labels_.begin());
}

std::vector<int> LabeledPointCloud::label_codes() const {
    std::vector<int> codes(labels_.size());
    for (std::size_t g = 0; g < members_.size(); ++g) {
        for (Eigen::Index row : members_[g]) {
            codes[static_cast<std::size_t>(row)] = static_cast<int>(g);
        }
    }
    return codes;
}

void validate(const LabeledPointCloud& cloud) {
    validate(cloud.points(), cloud.labels());
    // The derived partition must tile {0..N-1}, each member list sorted and
    // carrying exactly its group's label.
    std::vector<bool> seen(static_cast<std::size_t>(cloud.n_points()), false);
    for (std::size_t g = 0; g < cloud.n_groups(); ++g) {
        const auto& rows = cloud.group_members()[g];
        if (rows.empty()) throw EmptyGroupError("empty group '" + cloud.group_labels()[g] + "'");
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k > 0 && rows[k] <= rows[k - 1]) {
                throw DataError("group member indices not sorted ascending");
            }
            if (seen[static_cast<std::size_t>(rows[k])]) {
                throw DataError("group partition overlaps at row " + std::to_string(rows[k]));
            }
            seen[static_cast<std::size_t>(rows[k])] = true;
            if (cloud.labels()[static_cast<std::size_t>(rows[k])] != cloud.group_labels()[g]) {
                throw DataError("group member label mismatch at row " + std::to_string(rows[k]));
            }
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) throw DataError("row " + std::to_string(i) + " missing from partition");
    }
}

}  // namespace sepscore
