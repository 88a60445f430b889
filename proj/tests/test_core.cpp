#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sepscore/core.hpp"
#include "sepscore/errors.hpp"
#include "sepscore/rng.hpp"

#include "test_util.hpp"

#include <cmath>

using namespace sepscore;
using test_util::make_cloud;

TEST_CASE("minimal valid cloud") {
    const auto cloud = make_cloud({{0, 0}, {1, 0}, {5, 5}, {6, 5}}, {"a", "a", "b", "b"});
    CHECK(cloud.n_points() == 4);
    CHECK(cloud.n_dims() == 2);
    CHECK(cloud.n_groups() == 2);
    CHECK(cloud.group_labels() == std::vector<std::string>{"a", "b"});
    CHECK(cloud.group_members()[0] == std::vector<Eigen::Index>{0, 1});
    CHECK(cloud.group_members()[1] == std::vector<Eigen::Index>{2, 3});
    CHECK_NOTHROW(validate(cloud));
}

TEST_CASE("NaN coordinate rejected") {
    CHECK_THROWS_AS(make_cloud({{0, 0}, {std::nan(""), 1}, {2, 2}, {3, 3}}, {"a", "a", "b", "b"}),
                    NonFiniteError);
    CHECK_THROWS_AS(make_cloud({{0}, {std::numeric_limits<double>::infinity()}}, {"a", "b"}),
                    NonFiniteError);
}

TEST_CASE("single label rejected") {
    CHECK_THROWS_AS(make_cloud({{0}, {1}, {2}}, {"a", "a", "a"}), DegenerateLabelsError);
}

TEST_CASE("shape preconditions") {
    CHECK_THROWS_AS(make_cloud({{0}}, {"a"}), DataError);
    CHECK_THROWS_AS(LabeledPointCloud(Eigen::MatrixXd(3, 0), {"a", "b", "c"}), DataError);
    CHECK_THROWS_AS(make_cloud({{0}, {1}}, {"a", "b", "c"}), DataError);
}

TEST_CASE("groups are sorted and reconstruct the label sequence") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const auto cloud = test_util::random_cloud(rng, 2 + static_cast<int>(rng.next_below(4)),
                                                   10, 2, trial % 2 == 0);
        REQUIRE(std::is_sorted(cloud.group_labels().begin(), cloud.group_labels().end()));
        std::size_t covered = 0;
        for (std::size_t g = 0; g < cloud.n_groups(); ++g) {
            const auto& rows = cloud.group_members()[g];
            REQUIRE(std::is_sorted(rows.begin(), rows.end()));
            covered += rows.size();
            for (Eigen::Index row : rows) {
                REQUIRE(cloud.labels()[static_cast<std::size_t>(row)] == cloud.group_labels()[g]);
            }
        }
        REQUIRE(covered == static_cast<std::size_t>(cloud.n_points()));
        CHECK_NOTHROW(validate(cloud));
        CHECK_NOTHROW(validate(cloud));  // idempotent
    }
}

TEST_CASE("label codes invert the grouping") {
    const auto cloud = make_cloud({{0}, {1}, {2}, {3}}, {"b", "a", "b", "a"});
    const auto codes = cloud.label_codes();
    for (std::size_t i = 0; i < codes.size(); ++i) {
        CHECK(cloud.group_labels()[static_cast<std::size_t>(codes[i])] == cloud.labels()[i]);
    }
}

TEST_CASE("group lookup") {
    const auto cloud = make_cloud({{0}, {1}, {2}}, {"x", "y", "x"});
    CHECK(cloud.group_index("x") == 0);
    CHECK(cloud.group_index("y") == 1);
    CHECK(cloud.group_index("z") == -1);
}

TEST_CASE("index metadata") {
    for (IndexId id : kAllIndices) {
        const IndexScore score = make_index_score(id, 0.5);
        if (id == IndexId::PsiP) {
            CHECK(score.better == Better::Lower);
        } else {
            CHECK(score.better == Better::Higher);
        }
    }
    CHECK(bounded_range(IndexId::PsiP)->lo == 0.0);
    CHECK(bounded_range(IndexId::PsiRoc)->hi == 1.0);
    CHECK(bounded_range(IndexId::Sh)->lo == -1.0);
    CHECK(bounded_range(IndexId::Th).has_value());
    CHECK(bounded_range(IndexId::DbStar).has_value());
    CHECK_FALSE(bounded_range(IndexId::Ch).has_value());
    CHECK_FALSE(bounded_range(IndexId::Dn).has_value());
    CHECK_FALSE(bounded_range(IndexId::Bz).has_value());
}

TEST_CASE("index names parse in both spellings") {
    for (IndexId id : kAllIndices) {
        CHECK(parse_index(index_name(id)) == id);
        CHECK(parse_index(index_cli_name(id)) == id);
    }
    CHECK(parse_index("PSI-ROC") == IndexId::PsiRoc);
    CHECK_FALSE(parse_index("nope").has_value());
}
