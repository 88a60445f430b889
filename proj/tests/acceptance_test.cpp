// Acceptance suite: every criterion runs at its stated tolerance and prints
// one [PASS]/[FAIL] line. The process exits with the number of failures.

#include "sepscore/cli.hpp"
#include "sepscore/cluster_validity.hpp"
#include "sepscore/datasets.hpp"
#include "sepscore/evaluation.hpp"
#include "sepscore/projection.hpp"
#include "sepscore/significance.hpp"
#include "sepscore/similarity.hpp"

#include "test_util.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace sepscore;
namespace fs = std::filesystem;

namespace {

class Checker {
public:
    void expect(bool condition, const std::string& detail) {
        if (!condition) failures_.push_back(detail);
    }
    bool ok() const { return failures_.empty(); }
    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

// --------------------------------------------------------------------------
// 1. AUC oracle equivalence
// --------------------------------------------------------------------------
void criterion_auc_oracle(Checker& check) {
    SplitMix64 rng(20200101);
    const auto start = std::chrono::steady_clock::now();
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> pos(1 + rng.next_below(30));
        std::vector<double> neg(1 + rng.next_below(30));
        // roughly 20% of values land on a small lattice, forcing duplicates
        for (auto& v : pos) {
            v = rng.next_below(5) == 0 ? static_cast<double>(rng.next_below(4)) : rng.next_normal();
        }
        for (auto& v : neg) {
            v = rng.next_below(5) == 0 ? static_cast<double>(rng.next_below(4)) : rng.next_normal();
        }
        const double auc = auc_roc(pos, neg);
        const double brute = test_util::auc_pair_count(pos, neg);
        const double n1n2 = static_cast<double>(pos.size()) * static_cast<double>(neg.size());
        const double u = test_util::rank_sum_u(pos, neg);
        check.expect(std::fabs(auc - brute) <= 1e-12,
                     "trial " + std::to_string(trial) + ": auc " + fmt(auc) + " vs brute force " +
                         fmt(brute));
        check.expect(std::fabs(auc - u / n1n2) <= 1e-12,
                     "trial " + std::to_string(trial) + ": auc " + fmt(auc) + " vs U/(n1*n2) " +
                         fmt(u / n1n2));
    }
    const double seconds = elapsed_seconds(start);
    check.expect(seconds < 1.0, "200 instances took " + fmt(seconds) + " s (budget 1 s)");
}

// --------------------------------------------------------------------------
// 2. Exact Mann-Whitney enumeration
// --------------------------------------------------------------------------
void criterion_mw_enumeration(Checker& check) {
    SplitMix64 rng(20200202);
    for (std::size_t n1 = 1; n1 <= 9; ++n1) {
        for (std::size_t n2 = 1; n1 + n2 <= 10; ++n2) {
            // distinct values: a shuffled integer lattice with sub-unit jitter
            std::vector<double> pool(n1 + n2);
            for (std::size_t i = 0; i < pool.size(); ++i) {
                pool[i] = static_cast<double>(i) + 0.4 * rng.next_double();
            }
            shuffle(pool, rng);
            const std::vector<double> xs(pool.begin(), pool.begin() + static_cast<long>(n1));
            const std::vector<double> ys(pool.begin() + static_cast<long>(n1), pool.end());
            const double p = mann_whitney_p(xs, ys);
            const double oracle = test_util::mw_p_enumeration(xs, ys);
            check.expect(p == oracle, "n1=" + std::to_string(n1) + " n2=" + std::to_string(n2) +
                                          ": p " + fmt(p) + " != enumeration " + fmt(oracle));
        }
    }
}

// --------------------------------------------------------------------------
// 3. CVI fixture
// --------------------------------------------------------------------------
void criterion_cvi_fixture(Checker& check) {
    const auto cloud = test_util::cloud_1d({{0, 1}, {5, 6}});
    const CviBundle bundle = cvi_bundle(cloud);
    const auto near = [&](double actual, double expected, const char* name) {
        check.expect(std::fabs(actual - expected) < 1e-4,
                     std::string(name) + " = " + fmt(actual) + ", expected " + fmt(expected));
    };
    near(bundle.sh, 0.79798, "SH");
    near(bundle.ch, 50.0, "CH");
    near(bundle.dn, 4.0, "DN");
    near(bundle.bz, 5.0, "BZ");
    near(bundle.db_star, 0.8333, "DB*");
    near(bundle.th, 1.0, "TH");
}

// --------------------------------------------------------------------------
// 4. Anti-collapse property
// --------------------------------------------------------------------------
LabeledPointCloud collapsed_groups(double radius, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    const double centers[3][2] = {{0.0, 0.0}, {7.0, 0.0}, {0.0, 7.0}};
    for (int g = 0; g < 3; ++g) {
        for (int i = 0; i < 50; ++i) {
            const double angle = 2.0 * std::numbers::pi * rng.next_double();
            const double r = radius * rng.next_double();
            rows.push_back(
                {centers[g][0] + r * std::cos(angle), centers[g][1] + r * std::sin(angle)});
            labels.push_back("g" + std::to_string(g + 1));
        }
    }
    return test_util::make_cloud(rows, labels);
}

void criterion_anti_collapse(Checker& check) {
    const auto wide = collapsed_groups(1e-2, 404);
    const auto tight = collapsed_groups(1e-3, 404);
    check.expect(dunn(tight) > dunn(wide),
                 "DN did not increase: " + fmt(dunn(wide)) + " -> " + fmt(dunn(tight)));
    check.expect(bezdek(tight) > bezdek(wide),
                 "BZ did not increase: " + fmt(bezdek(wide)) + " -> " + fmt(bezdek(tight)));
    check.expect(calinski_harabasz(tight) > calinski_harabasz(wide),
                 "CH did not increase: " + fmt(calinski_harabasz(wide)) + " -> " +
                     fmt(calinski_harabasz(tight)));
    for (const auto* cloud : {&wide, &tight}) {
        const PsiResult psi = psi_all(*cloud);
        check.expect(psi.psi_roc == 1.0, "PSI-ROC " + fmt(psi.psi_roc) + " != 1.0");
        check.expect(psi.psi_pr == 1.0, "PSI-PR " + fmt(psi.psi_pr) + " != 1.0");
        check.expect(thornton(*cloud) == 1.0, "TH " + fmt(thornton(*cloud)) + " != 1.0");
    }
}

// --------------------------------------------------------------------------
// 5. Neutral baselines
// --------------------------------------------------------------------------
void criterion_neutral_baselines(Checker& check) {
    double sum_th = 0.0;
    double sum_roc = 0.0;
    const int seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        SplitMix64 rng(derive_seed(20200505, static_cast<std::uint64_t>(s)));
        std::vector<std::vector<double>> rows(500);
        std::vector<std::string> labels(500);
        std::vector<int> assignment(500);
        for (int i = 0; i < 500; ++i) {
            rows[static_cast<std::size_t>(i)] = {rng.next_normal(), rng.next_normal()};
            assignment[static_cast<std::size_t>(i)] = i < 250 ? 0 : 1;
        }
        shuffle(assignment, rng);
        for (int i = 0; i < 500; ++i) {
            labels[static_cast<std::size_t>(i)] = assignment[static_cast<std::size_t>(i)] == 0
                                                      ? "a"
                                                      : "b";
        }
        const auto cloud = test_util::make_cloud(rows, labels);
        sum_th += thornton(cloud);
        sum_roc += psi_all(cloud).psi_roc;
    }
    const double mean_th = sum_th / seeds;
    const double mean_roc = sum_roc / seeds;
    check.expect(mean_th >= 0.45 && mean_th <= 0.55,
                 "mean TH " + fmt(mean_th) + " outside [0.45, 0.55]");
    check.expect(mean_roc >= 0.45 && mean_roc <= 0.55,
                 "mean PSI-ROC " + fmt(mean_roc) + " outside [0.45, 0.55]");
}

// --------------------------------------------------------------------------
// 6. Significance calibration
// --------------------------------------------------------------------------
void criterion_significance_calibration(Checker& check) {
    // (a) p-values uniform under the null
    std::vector<double> p_values;
    p_values.reserve(200);
    for (int trial = 0; trial < 200; ++trial) {
        SplitMix64 rng(derive_seed(20200606, static_cast<std::uint64_t>(trial)));
        std::vector<std::vector<double>> rows(40);
        std::vector<std::string> labels(40);
        std::vector<int> assignment(40);
        for (int i = 0; i < 40; ++i) {
            rows[static_cast<std::size_t>(i)] = {rng.next_normal(), rng.next_normal()};
            assignment[static_cast<std::size_t>(i)] = i < 20 ? 0 : 1;
        }
        shuffle(assignment, rng);
        for (int i = 0; i < 40; ++i) {
            labels[static_cast<std::size_t>(i)] =
                assignment[static_cast<std::size_t>(i)] == 0 ? "a" : "b";
        }
        const auto cloud = test_util::make_cloud(rows, labels);
        const auto summary = permutation_null(cloud, IndexId::PsiRoc, CentroidMode::Median, 200,
                                              derive_seed(777, static_cast<std::uint64_t>(trial)));
        p_values.push_back(summary.p_value);
    }
    const double ks = test_util::ks_uniform(p_values);
    check.expect(ks < 0.1, "KS distance " + fmt(ks) + " >= 0.1");

    // (b) three well-separated Gaussian groups
    SplitMix64 rng(20200607);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    const double centers[3][2] = {{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}};
    for (int g = 0; g < 3; ++g) {
        for (int i = 0; i < 30; ++i) {
            rows.push_back({centers[g][0] + rng.next_normal(), centers[g][1] + rng.next_normal()});
            labels.push_back("g" + std::to_string(g + 1));
        }
    }
    const auto separated = test_util::make_cloud(rows, labels);
    const auto summary = permutation_null(separated, IndexId::PsiRoc, CentroidMode::Median, 1000, 3);
    check.expect(summary.p_value == 0.0, "p_value " + fmt(summary.p_value) + " != 0");
    check.expect(summary.null_mean >= 0.4 && summary.null_mean <= 0.6,
                 "null_mean " + fmt(summary.null_mean) + " outside [0.4, 0.6]");
}

// --------------------------------------------------------------------------
// 7. Benjamini-Hochberg oracle
// --------------------------------------------------------------------------
void criterion_bh_oracle(Checker& check) {
    SplitMix64 rng(20200707);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> p(1 + rng.next_below(50));
        for (auto& v : p) {
            v = rng.next_below(4) == 0 ? std::round(rng.next_double() * 20.0) / 20.0
                                       : rng.next_double();
        }
        const auto adjusted = bh_adjust(p);
        const auto oracle = test_util::bh_brute_force(p);
        check.expect(adjusted == oracle, "trial " + std::to_string(trial) +
                                             ": adjustment differs from brute-force step-up");
    }
    const std::vector<double> fixture = bh_adjust({0.01, 0.02, 0.03});
    check.expect(fixture == std::vector<double>{0.03, 0.03, 0.03},
                 "fixture {0.01,0.02,0.03} -> {" + fmt(fixture[0]) + "," + fmt(fixture[1]) + "," +
                     fmt(fixture[2]) + "}");
}

// --------------------------------------------------------------------------
// 8. AVG-rank fixture
// --------------------------------------------------------------------------
void criterion_avg_rank(Checker& check) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<MethodIndexValues> methods(3);
    methods[0].method = "m1";
    methods[1].method = "m2";
    methods[2].method = "m3";
    const auto set = [&](IndexId id, double a, double b, double c) {
        methods[0].values[id] = a;
        methods[1].values[id] = b;
        methods[2].values[id] = c;
    };
    set(IndexId::PsiP, 0.01, 0.5, 0.01);   // lower better, tie on the optimum
    set(IndexId::PsiRoc, 1.0, 0.8, 0.9);
    set(IndexId::PsiPr, 1.0, 1.0, 1.0);    // three-way tie
    set(IndexId::Sh, 0.5, 0.7, 0.6);
    set(IndexId::Ch, inf, 100.0, 200.0);   // divergence ranks first
    set(IndexId::Dn, 4.0, 4.0, 1.0);
    set(IndexId::Bz, 5.0, 3.0, 4.0);
    set(IndexId::DbStar, 0.8, 0.9, 0.7);
    set(IndexId::Th, 1.0, 0.9, 0.8);

    const std::vector<IndexId> ids(kAllIndices.begin(), kAllIndices.end());
    const auto table = avg_rank_table(methods, ids);

    // hand-computed tie-averaged ranks
    std::map<std::string, std::map<IndexId, double>> expected;
    expected["m1"] = {{IndexId::PsiP, 1.5}, {IndexId::PsiRoc, 1.0}, {IndexId::PsiPr, 2.0},
                      {IndexId::Sh, 3.0},   {IndexId::Ch, 1.0},     {IndexId::Dn, 1.5},
                      {IndexId::Bz, 1.0},   {IndexId::DbStar, 2.0}, {IndexId::Th, 1.0}};
    expected["m2"] = {{IndexId::PsiP, 3.0}, {IndexId::PsiRoc, 3.0}, {IndexId::PsiPr, 2.0},
                      {IndexId::Sh, 1.0},   {IndexId::Ch, 3.0},     {IndexId::Dn, 1.5},
                      {IndexId::Bz, 3.0},   {IndexId::DbStar, 1.0}, {IndexId::Th, 2.0}};
    expected["m3"] = {{IndexId::PsiP, 1.5}, {IndexId::PsiRoc, 2.0}, {IndexId::PsiPr, 2.0},
                      {IndexId::Sh, 2.0},   {IndexId::Ch, 2.0},     {IndexId::Dn, 3.0},
                      {IndexId::Bz, 2.0},   {IndexId::DbStar, 3.0}, {IndexId::Th, 3.0}};
    const std::map<std::string, double> expected_avg{
        {"m1", 14.0 / 9.0}, {"m2", 19.5 / 9.0}, {"m3", 20.5 / 9.0}};

    check.expect(table.size() == 3, "table row count");
    check.expect(table[0].method == "m1" && table[1].method == "m2" && table[2].method == "m3",
                 "table not sorted by ascending AVG rank");
    for (const auto& row : table) {
        for (IndexId id : ids) {
            const double want = expected.at(row.method).at(id);
            check.expect(row.ranks.at(id) == want,
                         row.method + "/" + std::string(index_name(id)) + ": rank " +
                             fmt(row.ranks.at(id)) + " != " + fmt(want));
        }
        check.expect(std::fabs(row.avg_rank - expected_avg.at(row.method)) < 1e-12,
                     row.method + ": avg rank " + fmt(row.avg_rank));
    }
    for (IndexId id : ids) {
        double sum = 0.0;
        for (const auto& row : table) sum += row.ranks.at(id);
        check.expect(std::fabs(sum - 6.0) < 1e-12,
                     std::string(index_name(id)) + ": rank sum " + fmt(sum) + " != 6");
    }
}

// --------------------------------------------------------------------------
// 9. Similarity map oracles
// --------------------------------------------------------------------------
void jacobi_eigen(Eigen::MatrixXd a, Eigen::MatrixXd& vectors, Eigen::VectorXd& values) {
    const Eigen::Index n = a.rows();
    vectors = Eigen::MatrixXd::Identity(n, n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        }
        if (off < 1e-28) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::fabs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(n, n);
                rot(p, p) = c;
                rot(q, q) = c;
                rot(p, q) = s;
                rot(q, p) = -s;
                a = rot.transpose() * a * rot;
                vectors = vectors * rot;
            }
        }
    }
    values = a.diagonal();
}

void criterion_similarity(Checker& check) {
    SplitMix64 rng(20200909);
    const Eigen::MatrixXd profile = test_util::random_gaussian(9, 40, rng);
    const Eigen::MatrixXd scores = pca_project(profile, 2);

    const Eigen::MatrixXd centered = profile.rowwise() - profile.colwise().mean();
    Eigen::MatrixXd vectors;
    Eigen::VectorXd values;
    jacobi_eigen(centered * centered.transpose(), vectors, values);
    std::vector<Eigen::Index> order(9);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });
    for (int j = 0; j < 2; ++j) {
        const Eigen::VectorXd oracle =
            std::sqrt(values(order[static_cast<std::size_t>(j)])) *
            vectors.col(order[static_cast<std::size_t>(j)]);
        const double dist = std::min((scores.col(j) - oracle).norm(),
                                     (scores.col(j) + oracle).norm());
        check.expect(dist < 1e-8,
                     "component " + std::to_string(j) + " differs from eigensolver oracle by " +
                         fmt(dist));
    }

    const std::array<Eigen::Vector2d, 3> tri{Eigen::Vector2d{-0.8, -0.3},
                                             Eigen::Vector2d{1.6, 0.1},
                                             Eigen::Vector2d{0.2, 1.4}};
    const auto oracle_contains = [&](const Eigen::Vector2d& p) {
        const double ref = (tri[1].x() - tri[0].x()) * (tri[2].y() - tri[0].y()) -
                           (tri[1].y() - tri[0].y()) * (tri[2].x() - tri[0].x());
        const double sign = ref >= 0 ? 1.0 : -1.0;
        for (int e = 0; e < 3; ++e) {
            const Eigen::Vector2d a = tri[static_cast<std::size_t>(e)];
            const Eigen::Vector2d b = tri[static_cast<std::size_t>((e + 1) % 3)];
            const double cross =
                (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
            if (sign * cross < -1e-12) return false;
        }
        return true;
    };
    int disagreements = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Vector2d p(4.0 * rng.next_double() - 2.0, 4.0 * rng.next_double() - 2.0);
        if (psi_triangle_contains(p, tri) != oracle_contains(p)) ++disagreements;
    }
    check.expect(disagreements == 0,
                 std::to_string(disagreements) + " of 1000 triangle points disagree");
}

// --------------------------------------------------------------------------
// 10. Swiss-roll end-to-end
// --------------------------------------------------------------------------
void criterion_swiss_roll(Checker& check) {
    const auto start = std::chrono::steady_clock::now();
    SwissRollSpec spec;
    spec.n_points = 723;
    spec.seed = 1;
    const SwissRollData data = generate_swiss_roll(spec);

    EmbeddingCandidate candidate{"hd", {}, Normalization::Non, data.cloud};
    ScoreOptions options;
    options.replicates = 1000;
    options.seed = 1;
    options.threads = 1;
    const CandidateResult row = score_candidate(candidate, options);

    check.expect(row.value(IndexId::Th) == 1.0, "TH " + fmt(row.value(IndexId::Th)) + " != 1.0");
    check.expect(row.value(IndexId::PsiRoc) >= 0.9,
                 "PSI-ROC " + fmt(row.value(IndexId::PsiRoc)) + " < 0.9");
    for (IndexId id : options.indices) {
        const double p = row.outcomes.at(id).null_summary->p_value;
        check.expect(p < 0.01, std::string(index_name(id)) + ": permutation p " + fmt(p) +
                                   " >= 0.01");
    }
    const double seconds = elapsed_seconds(start);
    check.expect(seconds < 60.0, "end-to-end run took " + fmt(seconds) + " s (budget 60 s)");
}

// --------------------------------------------------------------------------
// 11. CLI determinism
// --------------------------------------------------------------------------
std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    return cli::dispatch(args, out, err);
}

void criterion_cli_determinism(Checker& check) {
    const fs::path dir = fs::temp_directory_path();
    const auto roll = dir / "acc_roll.csv";
    const auto roll2 = dir / "acc_roll2.csv";
    check.expect(run_cli({"gen-swissroll", "--n", "300", "--seed", "9", "--out",
                          roll.string()}) == 0,
                 "gen-swissroll failed");
    check.expect(run_cli({"gen-swissroll", "--n", "300", "--seed", "9", "--out",
                          roll2.string()}) == 0,
                 "gen-swissroll rerun failed");
    check.expect(slurp(roll) == slurp(roll2), "gen-swissroll output differs between runs");

    const auto score_a = dir / "acc_score_a.json";
    const auto score_b = dir / "acc_score_b.json";
    const auto score_c = dir / "acc_score_c.json";
    const std::vector<std::string> score_base{"score",  roll.string(), "--null", "--replicates",
                                              "200",    "--seed",      "5"};
    auto run_score = [&](const fs::path& out_path, const std::vector<std::string>& extra) {
        std::vector<std::string> args = score_base;
        args.insert(args.end(), extra.begin(), extra.end());
        args.push_back("--out");
        args.push_back(out_path.string());
        return run_cli(args);
    };
    check.expect(run_score(score_a, {}) == 0, "score run A failed");
    check.expect(run_score(score_b, {}) == 0, "score run B failed");
    check.expect(run_score(score_c, {"--threads", "8"}) == 0, "score run C failed");
    check.expect(slurp(score_a) == slurp(score_b), "score output differs between identical runs");
    check.expect(slurp(score_a) == slurp(score_c), "score output differs across thread counts");

    // evaluate over a two-candidate manifest
    const auto cand = dir / "acc_cand.csv";
    {
        std::ofstream out(cand, std::ios::binary);
        out << "x,label\n0,a\n1,a\n9,b\n10,b\n";
    }
    const auto manifest = dir / "acc_manifest.json";
    {
        std::ofstream out(manifest, std::ios::binary);
        out << "{\"dataset\":\"acc\",\"label_column\":\"label\",\"candidates\":["
            << "{\"method\":\"hd\",\"data\":\"acc_cand.csv\"},"
            << "{\"method\":\"pca\",\"data\":\"acc_roll.csv\"}]}";
    }
    const auto eval_a = dir / "acc_eval_a.json";
    const auto eval_b = dir / "acc_eval_b.json";
    const std::vector<std::string> eval_base{"evaluate", manifest.string(), "--replicates", "100",
                                             "--seed", "13"};
    auto run_eval = [&](const fs::path& out_path) {
        std::vector<std::string> args = eval_base;
        args.push_back("--out");
        args.push_back(out_path.string());
        return run_cli(args);
    };
    check.expect(run_eval(eval_a) == 0, "evaluate run A failed");
    check.expect(run_eval(eval_b) == 0, "evaluate run B failed");
    check.expect(slurp(eval_a) == slurp(eval_b), "evaluate output differs between runs");
}

struct Criterion {
    int number;
    const char* name;
    std::function<void(Checker&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "AUC oracle equivalence", criterion_auc_oracle},
        {2, "exact Mann-Whitney enumeration", criterion_mw_enumeration},
        {3, "CVI fixture", criterion_cvi_fixture},
        {4, "anti-collapse property", criterion_anti_collapse},
        {5, "neutral baselines", criterion_neutral_baselines},
        {6, "significance calibration", criterion_significance_calibration},
        {7, "Benjamini-Hochberg oracle", criterion_bh_oracle},
        {8, "AVG-rank fixture", criterion_avg_rank},
        {9, "similarity map oracles", criterion_similarity},
        {10, "swiss-roll end-to-end", criterion_swiss_roll},
        {11, "CLI determinism", criterion_cli_determinism},
    };
    int failures = 0;
    for (const auto& criterion : criteria) {
        Checker check;
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string{"unexpected exception: "} + e.what());
        }
        std::printf("[%s] criterion %2d: %s\n", check.ok() ? "PASS" : "FAIL", criterion.number,
                    criterion.name);
        if (!check.ok()) {
            ++failures;
            for (const auto& detail : check.failures()) {
                std::printf("       - %s\n", detail.c_str());
            }
        }
    }
    if (failures == 0) {
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    } else {
        std::printf("%d criteria FAILED\n", failures);
    }
    return failures;
}
