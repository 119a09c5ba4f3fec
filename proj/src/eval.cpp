#include "odadvcs/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>

#include "odadvcs/naive.hpp"

namespace odadvcs {

Scorer make_scorer(ScorerKind kind, const FastOptions& fast) {
    if (kind == ScorerKind::naive) {
        return [](const Dataset& data, const Params& params) { return score_all_naive(data, params); };
    }
    return [fast](const Dataset& data, const Params& params) { return score_all_fast(data, params, fast); };
}

TrialOutcome evaluate_trial(const LabeledDataset& labeled, const ScoreReport& report) {
    labeled.require_outliers();
    if (report.ranking.size() != labeled.data().size()) {
        throw InvalidSpec("score report does not match the labeled dataset");
    }
    TrialOutcome outcome;
    outcome.outliers = labeled.outlier_count();
    for (std::size_t t = 0; t < outcome.outliers; ++t) {
        if (labeled.is_outlier()[report.ranking[t]]) {
            ++outcome.hits;
        }
    }
    outcome.exact = outcome.hits == outcome.outliers;
    return outcome;
}

TrialOutcome evaluate_trial(const LabeledDataset& labeled, const Params& params, const Scorer& scorer) {
    labeled.require_outliers();
    return evaluate_trial(labeled, scorer(labeled.data(), params));
}

bool exact_set_accuracy(const LabeledDataset& labeled, const Params& params, const Scorer& scorer) {
    return evaluate_trial(labeled, params, scorer).exact;
}

void EvalReport::add(const TrialOutcome& outcome) noexcept {
    ++trial_count;
    success_count += outcome.exact ? 1 : 0;
    outlier_hits += outcome.hits;
    outlier_total += outcome.outliers;
}

namespace {

// Runs `body(t)` for t in [0, count) in parallel and folds the outcomes in
// index order. The first exception (by index) is rethrown after the loop.
template <typename Body>
EvalReport parallel_trials(std::size_t count, Body body) {
    std::vector<TrialOutcome> outcomes(count);
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(count); ++t) {
        try {
            outcomes[static_cast<std::size_t>(t)] = body(static_cast<std::size_t>(t));
        } catch (...) {
            errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
    }
    EvalReport report;
    for (std::size_t t = 0; t < count; ++t) {
        if (errors[t]) {
            std::rethrow_exception(errors[t]);
        }
        report.add(outcomes[t]);
    }
    return report;
}

}  // namespace

EvalReport run_trials(const SyntheticSpec& spec, const Params& params, std::size_t trials,
                      const Scorer& scorer, const std::optional<PreprocessSpec>& preprocess_spec) {
    spec.validate();
    if (trials == 0) {
        throw InvalidSpec("trials must be at least 1");
    }
    if (spec.anomaly_count == 0) {
        throw NoOutliersLabeled();
    }
    if (preprocess_spec) {
        preprocess_spec->validate();
    }
    return parallel_trials(trials, [&](std::size_t t) {
        SyntheticSpec trial = spec;
        trial.seed = derive_seed(spec.seed, t);
        LabeledDataset labeled = generate(trial);
        if (preprocess_spec) {
            labeled = preprocess(labeled, *preprocess_spec);
        }
        return evaluate_trial(labeled, params, scorer);
    });
}

namespace {

void combinations(const std::vector<std::size_t>& pool, std::size_t choose, std::size_t start,
                  std::vector<std::size_t>& current, std::vector<std::vector<std::size_t>>& out) {
    if (current.size() == choose) {
        out.push_back(current);
        return;
    }
    for (std::size_t i = start; i + (choose - current.size()) <= pool.size(); ++i) {
        current.push_back(pool[i]);
        combinations(pool, choose, i + 1, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<std::vector<std::size_t>> enumerate_donor_sets(const ClassTable& table,
                                                           const std::vector<std::string>& donor_classes) {
    if (donor_classes.empty()) {
        throw InvalidSpec("at least one donor class is required");
    }
    // Group by class, keeping first-appearance order.
    std::vector<std::pair<std::string, std::size_t>> groups;
    for (const auto& name : donor_classes) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == name; });
        if (it == groups.end()) {
            groups.emplace_back(name, 1);
        } else {
            ++it->second;
        }
    }
    std::vector<std::vector<std::size_t>> result{{}};
    for (const auto& [name, count] : groups) {
        const auto pool = table.rows_of(name);
        if (pool.size() < count) {
            throw ConfigError("class '" + name + "' has " + std::to_string(pool.size()) +
                              " rows, fewer than the " + std::to_string(count) + " requested");
        }
        std::vector<std::vector<std::size_t>> subsets;
        std::vector<std::size_t> current;
        combinations(pool, count, 0, current, subsets);
        std::vector<std::vector<std::size_t>> next;
        next.reserve(result.size() * subsets.size());
        for (const auto& prefix : result) {
            for (const auto& subset : subsets) {
                auto joined = prefix;
                joined.insert(joined.end(), subset.begin(), subset.end());
                next.push_back(std::move(joined));
            }
        }
        result = std::move(next);
    }
    return result;
}

EvalReport run_class_trials(const ClassTable& table, const ClassTrialSpec& spec, const Params& params,
                            const Scorer& scorer) {
    if (std::find(spec.donor_classes.begin(), spec.donor_classes.end(), spec.normal_class) !=
        spec.donor_classes.end()) {
        throw InvalidSpec("donor classes must differ from the normal class");
    }
    if (spec.preprocess) {
        spec.preprocess->validate();
    }
    const auto sets = enumerate_donor_sets(table, spec.donor_classes);
    return parallel_trials(sets.size(), [&](std::size_t t) {
        LabeledDataset labeled = compose_labeled(table, spec.normal_class, sets[t], spec.normal_limit);
        if (spec.preprocess) {
            labeled = preprocess(labeled, *spec.preprocess);
        }
        return evaluate_trial(labeled, params, scorer);
    });
}

PercentileReport percentile_recall(const LabeledDataset& labeled, const ScoreReport& report,
                                   double bucket_width_percent) {
    if (!(bucket_width_percent > 0.0) || !(bucket_width_percent <= 100.0)) {
        throw InvalidSpec("bucket width must be in (0, 100] percent");
    }
    labeled.require_outliers();
    const std::size_t q = labeled.data().size();
    if (report.ranking.size() != q) {
        throw InvalidSpec("score report does not match the labeled dataset");
    }
    PercentileReport out;
    out.point_count = q;
    out.outlier_count = labeled.outlier_count();

    // Small slack so e.g. 3 × 0.1 % lands on the intended integer boundary.
    const auto bucket_count =
        static_cast<std::size_t>(std::ceil(100.0L / bucket_width_percent - 1e-9L));
    std::size_t prev_end = 0;
    std::size_t found = 0;
    for (std::size_t b = 0; b < bucket_count; ++b) {
        std::size_t end = q;
        if (b + 1 < bucket_count) {
            const long double boundary = static_cast<long double>(b + 1) * bucket_width_percent *
                                         static_cast<long double>(q) / 100.0L;
            end = std::min(q, static_cast<std::size_t>(std::floor(boundary + 1e-9L)));
        }
        end = std::max(end, prev_end);
        PercentileBucket bucket;
        bucket.lo_percent = static_cast<double>(b) * bucket_width_percent;
        bucket.hi_percent = std::min(100.0, static_cast<double>(b + 1) * bucket_width_percent);
        bucket.first_rank = prev_end + 1;
        bucket.last_rank = end;
        bucket.points = end - prev_end;
        for (std::size_t t = prev_end; t < end; ++t) {
            bucket.outliers += labeled.is_outlier()[report.ranking[t]] ? 1 : 0;
        }
        found += bucket.outliers;
        bucket.cumulative_fraction = static_cast<double>(found) / static_cast<double>(out.outlier_count);
        out.buckets.push_back(bucket);
        prev_end = end;
    }
    return out;
}

PercentileReport percentile_recall(const LabeledDataset& labeled, const Params& params,
                                   double bucket_width_percent, const Scorer& scorer) {
    if (!(bucket_width_percent > 0.0) || !(bucket_width_percent <= 100.0)) {
        throw InvalidSpec("bucket width must be in (0, 100] percent");
    }
    labeled.require_outliers();
    return percentile_recall(labeled, scorer(labeled.data(), params), bucket_width_percent);
}

std::size_t worst_outlier_rank(const LabeledDataset& labeled, const ScoreReport& report) {
    labeled.require_outliers();
    for (std::size_t t = report.ranking.size(); t > 0; --t) {
        if (labeled.is_outlier()[report.ranking[t - 1]]) {
            return t;
        }
    }
    return 0;
}

SweepReport sweep(const LabeledDataset& labeled, const Params& fixed, SweepTarget target,
                  std::span<const double> values, const Scorer& scorer) {
    if (values.empty()) {
        throw InvalidSpec("sweep needs at least one value");
    }
    labeled.require_outliers();
    std::vector<Params> settings;
    settings.reserve(values.size());
    for (const double v : values) {
        if (target == SweepTarget::offset) {
            settings.emplace_back(v, fixed.top());
        } else {
            if (!(v >= 1.0) || v != std::floor(v)) {
                throw InvalidParams("s_n sweep values must be positive integers");
            }
            settings.emplace_back(fixed.offset(), static_cast<std::size_t>(v));
        }
        settings.back().check_against(labeled.data());
    }
    SweepReport out;
    out.target = target;
    for (std::size_t s = 0; s < settings.size(); ++s) {
        out.curve.push_back({values[s], worst_outlier_rank(labeled, scorer(labeled.data(), settings[s]))});
    }
    return out;
}

namespace {

std::string percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * fraction);
    return buf;
}

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

void write_eval_csv(std::ostream& out, const EvalReport& r) {
    char acc[32];
    char rec[32];
    std::snprintf(acc, sizeof acc, "%.6f", r.accuracy());
    std::snprintf(rec, sizeof rec, "%.6f", r.per_outlier_recall());
    out << "trials,successes,accuracy,outlier_hits,outliers,per_outlier_recall\n"
        << r.trial_count << ',' << r.success_count << ',' << acc << ',' << r.outlier_hits << ','
        << r.outlier_total << ',' << rec << '\n';
}

void write_eval_text(std::ostream& out, const EvalReport& r, bool per_outlier) {
    out << "trials: " << r.trial_count << "  exact-set successes: " << r.success_count
        << "  accuracy: " << percent(r.accuracy()) << '\n';
    if (per_outlier) {
        out << "outliers in bottom-k: " << r.outlier_hits << " / " << r.outlier_total
            << "  per-outlier recall: " << percent(r.per_outlier_recall()) << '\n';
    }
}

void write_percentile_csv(std::ostream& out, const PercentileReport& r) {
    out << "lo_percent,hi_percent,first_rank,last_rank,points,outliers,cumulative_fraction\n";
    for (const auto& b : r.buckets) {
        char frac[32];
        std::snprintf(frac, sizeof frac, "%.6f", b.cumulative_fraction);
        out << number(b.lo_percent) << ',' << number(b.hi_percent) << ',' << b.first_rank << ','
            << b.last_rank << ',' << b.points << ',' << b.outliers << ',' << frac << '\n';
    }
}

void write_percentile_text(std::ostream& out, const PercentileReport& r) {
    char line[160];
    std::snprintf(line, sizeof line, "%-12s %-13s %6s %9s %9s %9s %10s\n", "rank scope", "ranks", "qty",
                  "outliers", "of total", "in scope", "cumulative");
    out << line;
    for (const auto& b : r.buckets) {
        const std::string scope = number(b.lo_percent) + "-" + number(b.hi_percent) + "%";
        const std::string ranks = std::to_string(b.first_rank) + "-" + std::to_string(b.last_rank);
        const double of_total = static_cast<double>(b.outliers) / static_cast<double>(r.outlier_count);
        const double in_scope = b.points ? static_cast<double>(b.outliers) / static_cast<double>(b.points) : 0.0;
        std::snprintf(line, sizeof line, "%-12s %-13s %6zu %9zu %9s %9s %10s\n", scope.c_str(), ranks.c_str(),
                      b.points, b.outliers, percent(of_total).c_str(), percent(in_scope).c_str(),
                      percent(b.cumulative_fraction).c_str());
        out << line;
        if (b.cumulative_fraction >= 1.0) {
            break;
        }
    }
    std::snprintf(line, sizeof line, "%-12s %-13s %6zu %9zu\n", "SUM", "-", r.point_count, r.outlier_count);
    out << line;
}

void write_sweep_csv(std::ostream& out, const SweepReport& r) {
    out << (r.target == SweepTarget::offset ? "n_d" : "s_n") << ",worst_rank\n";
    for (const auto& p : r.curve) {
        out << number(p.value) << ',' << p.worst_rank << '\n';
    }
}

void write_sweep_text(std::ostream& out, const SweepReport& r) {
    char line[96];
    std::snprintf(line, sizeof line, "%-12s %s\n", r.target == SweepTarget::offset ? "n_d" : "s_n",
                  "worst outlier rank");
    out << line;
    for (const auto& p : r.curve) {
        std::snprintf(line, sizeof line, "%-12s %zu\n", number(p.value).c_str(), p.worst_rank);
        out << line;
    }
}

}  // namespace odadvcs
