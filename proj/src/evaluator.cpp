#include "sepscore/evaluator.hpp"

#include "sepscore/errors.hpp"

#include <algorithm>

namespace sepscore {

namespace {

bool is_cvi(IndexId id) {
    switch (id) {
        case IndexId::Sh:
        case IndexId::Ch:
        case IndexId::Dn:
        case IndexId::Bz:
        case IndexId::DbStar:
        case IndexId::Th:
            return true;
        default:
            return false;
    }
}

}  // namespace

CloudEvaluator::CloudEvaluator(LabeledPointCloud cloud, std::vector<IndexId> ids,
                               CentroidMode mode)
    : cloud_(std::move(cloud)), ids_(std::move(ids)), mode_(mode) {
    if (std::any_of(ids_.begin(), ids_.end(), is_cvi)) {
        cvi_ = std::make_unique<CviContext>(cloud_.points());
    }
}

double CloudEvaluator::evaluate(IndexId id, const Members& members) const {
    switch (id) {
        case IndexId::PsiP:
            return psi_all_members(cloud_.points(), cloud_.group_labels(), members, mode_).psi_p;
        case IndexId::PsiRoc:
            return psi_all_members(cloud_.points(), cloud_.group_labels(), members, mode_).psi_roc;
        case IndexId::PsiPr:
            return psi_all_members(cloud_.points(), cloud_.group_labels(), members, mode_).psi_pr;
        default:
            break;
    }
    if (!cvi_) throw ComputeError("index not prepared on this evaluator");
    switch (id) {
        case IndexId::Sh: return cvi_->silhouette(members);
        case IndexId::Ch: return cvi_->calinski_harabasz(members);
        case IndexId::Dn: return cvi_->dunn(members);
        case IndexId::Bz: return cvi_->bezdek(members);
        case IndexId::DbStar: return cvi_->davies_bouldin(members).second;
        case IndexId::Th: return cvi_->thornton(members);
        default: throw ComputeError("unhandled index id");
    }
}

double CloudEvaluator::observed(IndexId id) const {
    return evaluate(id, cloud_.group_members());
}

}  // namespace sepscore
