#pragma once

#include "sepscore/cluster_validity.hpp"
#include "sepscore/core.hpp"
#include "sepscore/projection.hpp"

#include <memory>

namespace sepscore {

/// Binds a cloud's geometry once and evaluates the requested indices for
/// arbitrary regroupings of the same points. Permutation nulls re-shuffle
/// labels thousands of times; preparing the distance and neighbour caches a
/// single time is what keeps that affordable.
class CloudEvaluator {
public:
    CloudEvaluator(LabeledPointCloud cloud, std::vector<IndexId> ids,
                   CentroidMode mode = CentroidMode::Median);

    /// Value of `id` when the fixed points are regrouped as `members`.
    /// `members` must carry one entry per group of the original cloud.
    double evaluate(IndexId id, const Members& members) const;

    /// Value of `id` under the cloud's own labeling.
    double observed(IndexId id) const;

    const LabeledPointCloud& cloud() const { return cloud_; }
    const std::vector<IndexId>& ids() const { return ids_; }
    CentroidMode centroid_mode() const { return mode_; }

private:
    LabeledPointCloud cloud_;
    std::vector<IndexId> ids_;
    CentroidMode mode_;
    std::unique_ptr<const CviContext> cvi_;  // built only when a CVI is requested
};

}  // namespace sepscore
