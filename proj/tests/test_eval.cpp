#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "odadvcs/eval.hpp"
#include "test_support.hpp"

using namespace odadvcs;

namespace {

// Five points on a line with the far one labeled: trivially detectable.
LabeledDataset easy_case() {
    return {Dataset::from_rows({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {50, 50}}), {false, false, false, false, true}};
}

// Scorer returning preset scores, for protocol tests independent of geometry.
Scorer fixed_scores(std::vector<double> scores) {
    return [scores](const Dataset&, const Params&) { return ScoreReport::from_scores(scores); };
}

ClassTable load_iris() {
    std::ifstream in(std::string(ODADVCS_TEST_DATA_DIR) + "/iris.csv");
    return read_class_csv(in, ColumnRef::by_name("species"));
}

LabeledDataset synthetic(std::uint64_t seed, std::size_t anomalies = 10) {
    SyntheticSpec spec;
    spec.dim = 3;
    spec.anomaly_count = anomalies;
    spec.shell_min = 1.3;
    spec.seed = seed;
    return generate(spec);
}

}  // namespace

TEST(EvaluateTrial, ExactSetOnEasyCase) {
    const auto labeled = easy_case();
    for (const auto kind : {ScorerKind::naive, ScorerKind::fast}) {
        const auto outcome = evaluate_trial(labeled, Params(2.0, 2), make_scorer(kind));
        EXPECT_TRUE(outcome.exact);
        EXPECT_EQ(outcome.hits, 1u);
        EXPECT_EQ(outcome.outliers, 1u);
    }
}

TEST(EvaluateTrial, PartialHitIsNotExact) {
    const LabeledDataset labeled(Dataset::from_rows({{0, 0}, {1, 0}, {2, 0}, {3, 0}}), {true, false, true, false});
    // Bottom two: indices 1 and 2, so one of two outliers found.
    const auto outcome = evaluate_trial(labeled, ScoreReport::from_scores({0.5, 0.1, 0.2, 0.9}));
    EXPECT_FALSE(outcome.exact);
    EXPECT_EQ(outcome.hits, 1u);
    EXPECT_EQ(outcome.outliers, 2u);
}

TEST(EvaluateTrial, TieAtBoundaryResolvedByIndex) {
    const LabeledDataset labeled(Dataset::from_rows({{0, 0}, {1, 0}, {2, 0}, {3, 0}}), {false, false, true, false});
    // Indices 0 and 2 tie for lowest; index 0 wins, so the outlier is missed.
    EXPECT_FALSE(evaluate_trial(labeled, ScoreReport::from_scores({0.1, 0.5, 0.1, 0.9})).exact);
    const LabeledDataset first(labeled.data(), {true, false, false, false});
    EXPECT_TRUE(evaluate_trial(first, ScoreReport::from_scores({0.1, 0.5, 0.1, 0.9})).exact);
}

TEST(EvaluateTrial, RequiresOutliers) {
    const LabeledDataset none(Dataset::from_rows({{0, 0}, {1, 0}, {2, 0}}), {false, false, false});
    EXPECT_THROW(evaluate_trial(none, ScoreReport::from_scores({1, 2, 3})), NoOutliersLabeled);
}

TEST(ExactSetAccuracy, InvariantUnderRowPermutation) {
    std::mt19937_64 rng(43);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto labeled = synthetic(seed);
        const std::size_t q = labeled.data().size();
        std::vector<std::size_t> perm(q);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> values;
        std::vector<bool> flags;
        for (const auto src : perm) {
            const auto row = labeled.data().row(src);
            values.insert(values.end(), row.begin(), row.end());
            flags.push_back(labeled.is_outlier()[src]);
        }
        const LabeledDataset permuted(Dataset(q, 3, values), flags);
        const Params p(1.0, 10);
        const auto scorer = make_scorer(ScorerKind::fast);
        EXPECT_EQ(exact_set_accuracy(labeled, p, scorer), exact_set_accuracy(permuted, p, scorer));
    }
}

TEST(RunTrials, SingleTrialMatchesDirectEvaluation) {
    SyntheticSpec spec;
    spec.shell_min = 1.3;
    spec.anomaly_count = 10;
    spec.seed = 77;
    const Params p(1.0, 10);
    const auto scorer = make_scorer(ScorerKind::fast);
    const auto report = run_trials(spec, p, 1, scorer);
    EXPECT_EQ(report.trial_count, 1u);

    SyntheticSpec first = spec;
    first.seed = derive_seed(spec.seed, 0);
    const auto outcome = evaluate_trial(generate(first), p, scorer);
    EXPECT_EQ(report.success_count, outcome.exact ? 1u : 0u);
    EXPECT_EQ(report.outlier_hits, outcome.hits);
    EXPECT_EQ(report.outlier_total, 10u);
}

TEST(RunTrials, NaiveAndFastAgree) {
    SyntheticSpec spec;
    spec.dim = 2;
    spec.radius = 100;
    spec.seed = 5;
    const Params p(80.0, 40);
    const auto a = run_trials(spec, p, 20, make_scorer(ScorerKind::naive));
    const auto b = run_trials(spec, p, 20, make_scorer(ScorerKind::fast));
    EXPECT_EQ(a.success_count, b.success_count);
    EXPECT_EQ(a.outlier_hits, b.outlier_hits);
}

TEST(RunTrials, RejectsDegenerateRequests) {
    SyntheticSpec spec;
    spec.anomaly_count = 0;
    EXPECT_THROW(run_trials(spec, Params(), 5, make_scorer(ScorerKind::fast)), NoOutliersLabeled);
    spec.anomaly_count = 5;
    EXPECT_THROW(run_trials(spec, Params(), 0, make_scorer(ScorerKind::fast)), InvalidSpec);
}

TEST(RunTrials, ScorerErrorsPropagate) {
    SyntheticSpec spec;
    spec.normal_count = 5;
    spec.anomaly_count = 2;
    // s_n larger than q - 1.
    EXPECT_THROW(run_trials(spec, Params(1.0, 40), 4, make_scorer(ScorerKind::fast)), InvalidTopR);
}

TEST(EnumerateDonorSets, CountsCombinations) {
    const auto iris = load_iris();
    EXPECT_EQ(enumerate_donor_sets(iris, {"Iris-versicolor"}).size(), 50u);
    const auto pairs = enumerate_donor_sets(iris, {"Iris-virginica", "Iris-virginica"});
    EXPECT_EQ(pairs.size(), 1225u);
    EXPECT_EQ(pairs.front(), (std::vector<std::size_t>{100, 101}));
    EXPECT_EQ(pairs.back(), (std::vector<std::size_t>{148, 149}));
    EXPECT_EQ(enumerate_donor_sets(iris, {"Iris-setosa", "Iris-virginica"}).size(), 2500u);
}

TEST(RunClassTrials, SetosaAgainstVersicolorDonors) {
    const auto iris = load_iris();
    ClassTrialSpec spec;
    spec.normal_class = "Iris-setosa";
    spec.donor_classes = {"Iris-versicolor"};
    spec.preprocess = PreprocessSpec{};
    const auto report = run_class_trials(iris, spec, Params(80.0, 40), make_scorer(ScorerKind::fast));
    EXPECT_EQ(report.trial_count, 50u);
    EXPECT_EQ(report.success_count, 50u);
}

TEST(PercentileRecall, BucketsPartitionRanks) {
    const std::size_t q = 4839;
    std::vector<bool> flags(q, false);
    std::vector<double> scores(q);
    for (std::size_t i = 0; i < q; ++i) {
        scores[i] = static_cast<double>(i);
        flags[i] = i % 50 == 0;
    }
    const LabeledDataset labeled(Dataset(q, 2, std::vector<double>(2 * q, 0.0)), flags);
    const auto report = percentile_recall(labeled, ScoreReport::from_scores(scores), 1.0);
    ASSERT_EQ(report.buckets.size(), 100u);
    EXPECT_EQ(report.buckets[0].first_rank, 1u);
    EXPECT_EQ(report.buckets[0].last_rank, 48u);
    EXPECT_EQ(report.buckets[1].first_rank, 49u);
    EXPECT_EQ(report.buckets.back().last_rank, q);
    std::size_t points = 0;
    std::size_t outliers = 0;
    for (std::size_t b = 0; b < report.buckets.size(); ++b) {
        const auto& bucket = report.buckets[b];
        if (b > 0) {
            EXPECT_EQ(bucket.first_rank, report.buckets[b - 1].last_rank + 1);
        }
        points += bucket.points;
        outliers += bucket.outliers;
    }
    EXPECT_EQ(points, q);
    EXPECT_EQ(outliers, labeled.outlier_count());
    EXPECT_DOUBLE_EQ(report.buckets.back().cumulative_fraction, 1.0);
}

TEST(PercentileRecall, PerfectDetectorFillsFirstBuckets) {
    const std::size_t q = 1000;
    std::vector<bool> flags(q, false);
    std::vector<double> scores(q, 1.0);
    for (std::size_t i = 0; i < 30; ++i) {
        flags[i * 7] = true;
        scores[i * 7] = 0.0;
    }
    const LabeledDataset labeled(Dataset(q, 2, std::vector<double>(2 * q, 0.0)), flags);
    const auto report = percentile_recall(labeled, ScoreReport::from_scores(scores), 1.0);
    EXPECT_EQ(report.buckets[0].outliers, 10u);
    EXPECT_EQ(report.buckets[1].outliers, 10u);
    EXPECT_EQ(report.buckets[2].outliers, 10u);
    EXPECT_DOUBLE_EQ(report.buckets[2].cumulative_fraction, 1.0);
    EXPECT_EQ(report.buckets[3].outliers, 0u);

    std::ostringstream out;
    write_percentile_text(out, report);
    EXPECT_NE(out.str().find("SUM"), std::string::npos);
}

TEST(PercentileRecall, RejectsBadWidth) {
    const auto labeled = easy_case();
    const auto report = ScoreReport::from_scores({1, 2, 3, 4, 0});
    EXPECT_THROW(percentile_recall(labeled, report, 0.0), InvalidSpec);
    EXPECT_THROW(percentile_recall(labeled, report, 101.0), InvalidSpec);
    EXPECT_EQ(percentile_recall(labeled, report, 100.0).buckets.size(), 1u);
}

TEST(WorstOutlierRank, LargestRankAmongOutliers) {
    const LabeledDataset labeled(Dataset::from_rows({{0, 0}, {1, 0}, {2, 0}, {3, 0}}), {true, false, true, false});
    EXPECT_EQ(worst_outlier_rank(labeled, ScoreReport::from_scores({0.1, 0.2, 0.3, 0.4})), 3u);
    EXPECT_EQ(worst_outlier_rank(labeled, ScoreReport::from_scores({0.1, 0.9, 0.2, 0.4})), 2u);
}

TEST(Sweep, SingleValueAndTopOne) {
    const auto labeled = easy_case();
    const auto scorer = make_scorer(ScorerKind::fast);
    const std::vector<double> one{5.0};
    const auto r = sweep(labeled, Params(2.0, 2), SweepTarget::offset, one, scorer);
    ASSERT_EQ(r.curve.size(), 1u);
    EXPECT_EQ(r.curve[0].value, 5.0);
    EXPECT_EQ(r.curve[0].worst_rank, 1u);

    const std::vector<double> top{1.0, 2.0, 4.0};
    const auto t = sweep(labeled, Params(2.0, 2), SweepTarget::top, top, scorer);
    ASSERT_EQ(t.curve.size(), 3u);
    for (const auto& point : t.curve) {
        EXPECT_EQ(point.worst_rank, 1u);
    }
}

TEST(Sweep, RejectsBadValues) {
    const auto labeled = easy_case();
    const auto scorer = make_scorer(ScorerKind::fast);
    EXPECT_THROW(sweep(labeled, Params(), SweepTarget::offset, std::span<const double>{}, scorer), InvalidSpec);
    const std::vector<double> fractional{1.5};
    EXPECT_THROW(sweep(labeled, Params(2.0, 2), SweepTarget::top, fractional, scorer), InvalidParams);
    const std::vector<double> zero{0.0};
    EXPECT_THROW(sweep(labeled, Params(2.0, 2), SweepTarget::top, zero, scorer), InvalidParams);
    EXPECT_THROW(sweep(labeled, Params(2.0, 2), SweepTarget::offset, zero, scorer), InvalidParams);
}

TEST(Sweep, WorstRankInvariantUnderJointScaling) {
    const auto labeled = synthetic(3);
    const double c = 4.0;  // power of two keeps scaling exact
    std::vector<double> scaled(labeled.data().values().begin(), labeled.data().values().end());
    for (auto& v : scaled) {
        v *= c;
    }
    const LabeledDataset big(Dataset(labeled.data().size(), 3, scaled), labeled.is_outlier());
    const auto scorer = make_scorer(ScorerKind::fast);
    const std::vector<double> offsets{0.25, 0.5, 1.0, 2.0};
    std::vector<double> scaled_offsets;
    for (const double v : offsets) {
        scaled_offsets.push_back(v * c);
    }
    const auto a = sweep(labeled, Params(1.0, 10), SweepTarget::offset, offsets, scorer);
    const auto b = sweep(big, Params(1.0, 10), SweepTarget::offset, scaled_offsets, scorer);
    for (std::size_t t = 0; t < offsets.size(); ++t) {
        EXPECT_EQ(a.curve[t].worst_rank, b.curve[t].worst_rank);
    }
}

TEST(Writers, EvalAndSweepCsvHeaders) {
    EvalReport r;
    r.add({true, 2, 2});
    r.add({false, 1, 2});
    EXPECT_DOUBLE_EQ(r.accuracy(), 0.5);
    EXPECT_DOUBLE_EQ(r.per_outlier_recall(), 0.75);
    std::ostringstream eval_csv;
    write_eval_csv(eval_csv, r);
    EXPECT_FALSE(eval_csv.str().empty());

    SweepReport s;
    s.target = SweepTarget::top;
    s.curve = {{10, 3}, {20, 4}};
    std::ostringstream sweep_csv;
    write_sweep_csv(sweep_csv, s);
    EXPECT_EQ(sweep_csv.str(), "s_n,worst_rank\n10,3\n20,4\n");
    s.target = SweepTarget::offset;
    std::ostringstream nd_csv;
    write_sweep_csv(nd_csv, s);
    EXPECT_EQ(nd_csv.str().substr(0, 15), "n_d,worst_rank\n");
}
