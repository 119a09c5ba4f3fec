#pragma once

// Measurement protocols:
//  - exact-set accuracy: a trial succeeds iff the k lowest-scored points are
//    exactly the k labeled outliers (ties in score resolved by index);
//  - percentile-bucket recall: true outliers per consecutive rank band;
//  - parameter sweep: worst (largest) rank held by any true outlier.
// Every protocol takes the scorer as a parameter, so the naive and fast paths
// are interchangeable.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "odadvcs/datagen.hpp"
#include "odadvcs/fast.hpp"
#include "odadvcs/ingest.hpp"
#include "odadvcs/types.hpp"

namespace odadvcs {

using Scorer = std::function<ScoreReport(const Dataset&, const Params&)>;

enum class ScorerKind { naive, fast };

/// Thread-safe scorer for either path.
Scorer make_scorer(ScorerKind kind, const FastOptions& fast = {});

struct TrialOutcome {
    bool exact = false;
    /// True outliers among the outlier_count lowest-ranked points.
    std::size_t hits = 0;
    std::size_t outliers = 0;
};

/// Throws NoOutliersLabeled unless 1 <= outlier_count < q.
TrialOutcome evaluate_trial(const LabeledDataset& labeled, const ScoreReport& report);
TrialOutcome evaluate_trial(const LabeledDataset& labeled, const Params& params, const Scorer& scorer);

bool exact_set_accuracy(const LabeledDataset& labeled, const Params& params, const Scorer& scorer);

struct EvalReport {
    std::size_t trial_count = 0;
    std::size_t success_count = 0;
    /// Per-outlier variant: outliers found in the bottom-k over all trials.
    std::size_t outlier_hits = 0;
    std::size_t outlier_total = 0;

    double accuracy() const noexcept {
        return trial_count ? static_cast<double>(success_count) / static_cast<double>(trial_count) : 0.0;
    }
    double per_outlier_recall() const noexcept {
        return outlier_total ? static_cast<double>(outlier_hits) / static_cast<double>(outlier_total) : 0.0;
    }
    void add(const TrialOutcome& outcome) noexcept;
};

/// Generates, optionally preprocesses, scores and judges `trials` datasets.
/// Trial t uses seed derive_seed(spec.seed, t); trials run in parallel with
/// results independent of scheduling.
EvalReport run_trials(const SyntheticSpec& spec, const Params& params, std::size_t trials,
                      const Scorer& scorer, const std::optional<PreprocessSpec>& preprocess = std::nullopt);

/// Class-donor experiments: normals from one class, outliers drawn from donor
/// classes. Every combination of donor rows is one trial (a donor class listed
/// m times contributes all m-subsets of its rows).
struct ClassTrialSpec {
    std::string normal_class;
    std::vector<std::string> donor_classes;
    std::optional<std::size_t> normal_limit;
    /// Applied to each composed trial dataset.
    std::optional<PreprocessSpec> preprocess;
};

/// Outlier row sets of every trial, in lexicographic order.
std::vector<std::vector<std::size_t>> enumerate_donor_sets(const ClassTable& table,
                                                           const std::vector<std::string>& donor_classes);

EvalReport run_class_trials(const ClassTable& table, const ClassTrialSpec& spec, const Params& params,
                            const Scorer& scorer);

struct PercentileBucket {
    double lo_percent = 0.0;
    double hi_percent = 0.0;
    std::size_t first_rank = 0;  ///< 1-based, inclusive; first_rank > last_rank for an empty bucket
    std::size_t last_rank = 0;
    std::size_t points = 0;
    std::size_t outliers = 0;
    /// Fraction of all outliers found in this and earlier buckets.
    double cumulative_fraction = 0.0;
};

struct PercentileReport {
    std::size_t point_count = 0;
    std::size_t outlier_count = 0;
    std::vector<PercentileBucket> buckets;
};

/// Bucket b covers ranks floor(b·w·q/100)+1 … floor((b+1)·w·q/100).
PercentileReport percentile_recall(const LabeledDataset& labeled, const ScoreReport& report,
                                   double bucket_width_percent);
PercentileReport percentile_recall(const LabeledDataset& labeled, const Params& params,
                                   double bucket_width_percent, const Scorer& scorer);

enum class SweepTarget { offset, top };

struct SweepPoint {
    double value = 0.0;
    std::size_t worst_rank = 0;
};

struct SweepReport {
    SweepTarget target = SweepTarget::offset;
    std::vector<SweepPoint> curve;
};

/// Largest 1-based ascending-score rank held by a true outlier.
std::size_t worst_outlier_rank(const LabeledDataset& labeled, const ScoreReport& report);

/// Varies one parameter over `values`, holding the other at `fixed`.
SweepReport sweep(const LabeledDataset& labeled, const Params& fixed, SweepTarget target,
                  std::span<const double> values, const Scorer& scorer);

void write_eval_csv(std::ostream& out, const EvalReport& report);
void write_eval_text(std::ostream& out, const EvalReport& report, bool per_outlier = false);
void write_percentile_csv(std::ostream& out, const PercentileReport& report);
/// Stops after the first bucket reaching full recall, then a SUM line.
void write_percentile_text(std::ostream& out, const PercentileReport& report);
/// Two columns: parameter value, worst-outlier rank.
void write_sweep_csv(std::ostream& out, const SweepReport& report);
void write_sweep_text(std::ostream& out, const SweepReport& report);

}  // namespace odadvcs
