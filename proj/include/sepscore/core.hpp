#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sepscore {

/// Group membership: one vector of row indices per group, indices ascending.
using Members = std::vector<std::vector<Eigen::Index>>;

/// The nine separability indices computed by this library.
enum class IndexId { PsiP, PsiRoc, PsiPr, Sh, Ch, Dn, Bz, DbStar, Th };

inline constexpr std::array<IndexId, 9> kAllIndices = {
    IndexId::PsiP, IndexId::PsiRoc, IndexId::PsiPr, IndexId::Sh,  IndexId::Ch,
    IndexId::Dn,   IndexId::Bz,     IndexId::DbStar, IndexId::Th};

/// Which direction means better separation for an index.
enum class Better { Higher, Lower };

struct Interval {
    double lo;
    double hi;
};

Better better_direction(IndexId id);
std::optional<Interval> bounded_range(IndexId id);

/// Canonical snake_case name used in reports ("psi_roc", "db_star", ...).
std::string_view index_name(IndexId id);
/// Hyphenated spelling used on the command line ("psi-roc", "db-star", ...).
std::string_view index_cli_name(IndexId id);
/// Accepts either spelling, case-insensitive.
std::optional<IndexId> parse_index(std::string_view name);

/// One index value together with its interpretation metadata.
struct IndexScore {
    IndexId id;
    double value;
    Better better;
    std::optional<Interval> bounded;
};

IndexScore make_index_score(IndexId id, double value);

/// N points in D dimensions plus one group label per point. Immutable after
/// construction; construction validates all invariants (finite coordinates,
/// at least two non-empty groups). Groups are kept sorted by label and each
/// group's member indices ascending.
class LabeledPointCloud {
public:
    LabeledPointCloud(Eigen::MatrixXd points, std::vector<std::string> labels);

    const Eigen::MatrixXd& points() const { return points_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::string>& group_labels() const { return group_labels_; }
    const Members& group_members() const { return members_; }

    Eigen::Index n_points() const { return points_.rows(); }
    Eigen::Index n_dims() const { return points_.cols(); }
    std::size_t n_groups() const { return group_labels_.size(); }

    /// Position of `label` in group_labels(), or -1 when absent.
    Eigen::Index group_index(std::string_view label) const;

    /// Group index of every row; the compact relabeling used by permutation
    /// replicates.
    std::vector<int> label_codes() const;

private:
    Eigen::MatrixXd points_;
    std::vector<std::string> labels_;
    std::vector<std::string> group_labels_;
    Members members_;
};

/// Throws (NonFiniteError, DegenerateLabelsError, ...) unless the pair forms
/// a valid cloud.
void validate(const Eigen::MatrixXd& points, const std::vector<std::string>& labels);

/// Re-checks an existing cloud's invariants. Side-effect free.
void validate(const LabeledPointCloud& cloud);

/// Two groups after projection onto the line through their centroids.
struct GroupPair {
    std::string label_a;
    std::string label_b;
    std::vector<double> projected_a;
    std::vector<double> projected_b;
};

}  // namespace sepscore
