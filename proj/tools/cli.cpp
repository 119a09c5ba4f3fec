#include "odadvcs/cli.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "odadvcs/datagen.hpp"
#include "odadvcs/eval.hpp"
#include "odadvcs/fast.hpp"
#include "odadvcs/ingest.hpp"
#include "odadvcs/naive.hpp"

namespace odadvcs::cli {

namespace {

struct ScoringFlags {
    double offset = Params::kDefaultOffset;
    std::size_t top = Params::kDefaultTop;
    bool normalize = false;
    std::optional<double> scale;
    std::string scorer = "fast";
    bool no_header = false;
    int threads = 0;

    Params params() const { return Params(offset, top); }

    std::optional<PreprocessSpec> preprocess() const {
        if (!normalize && !scale) {
            return std::nullopt;
        }
        PreprocessSpec spec{normalize, scale.value_or(normalize ? 300.0 : 1.0)};
        spec.validate();
        return spec;
    }

    Scorer make() const {
        FastOptions fast;
        fast.threads = threads;
        return make_scorer(scorer == "naive" ? ScorerKind::naive : ScorerKind::fast, fast);
    }
};

void add_scoring_flags(CLI::App& cmd, ScoringFlags& flags) {
    cmd.add_option("--nd", flags.offset, "Added-dimension offset of the observation point (n_d)")
        ->capture_default_str();
    cmd.add_option("--sn", flags.top, "Number of largest similarities summed per point (s_n)")
        ->capture_default_str();
    cmd.add_flag("--normalize", flags.normalize, "Min-max normalize every column before scoring");
    cmd.add_option("--scale", flags.scale, "Multiplier applied after normalization (default 300 with --normalize)");
    cmd.add_option("--scorer", flags.scorer, "Scoring path")
        ->check(CLI::IsMember({"naive", "fast"}))
        ->capture_default_str();
    cmd.add_flag("--no-header", flags.no_header, "Input CSV has no header row");
    cmd.add_option("--threads", flags.threads, "OpenMP threads for the fast scorer (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);
}

void add_synthetic_flags(CLI::App& cmd, SyntheticSpec& spec) {
    cmd.add_option("--dim", spec.dim, "Dimensionality")->capture_default_str();
    cmd.add_option("--normal", spec.normal_count, "Normal points inside the ball")->capture_default_str();
    cmd.add_option("--anomalies", spec.anomaly_count, "Anomalies in the surrounding shell")->capture_default_str();
    cmd.add_option("--radius", spec.radius, "Ball radius R")->capture_default_str();
    cmd.add_option("--shell-min", spec.shell_min, "Inner shell radius as a multiple of R")->capture_default_str();
    cmd.add_option("--shell-max", spec.shell_max, "Outer shell radius as a multiple of R")->capture_default_str();
    cmd.add_option("--seed", spec.seed, "Random seed")->capture_default_str();
    cmd.add_option_function<std::string>(
           "--radial-law",
           [&spec](const std::string& law) {
               spec.law = law == "volume" ? RadialLaw::uniform_volume : RadialLaw::uniform_radius;
           },
           "Radius distribution: radius (uniform in radius, default) or volume")
        ->check(CLI::IsMember({"radius", "volume"}));
    cmd.add_option("--center", spec.center, "Cluster center, comma separated")->delimiter(',');
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open input file: " + path);
    }
    return in;
}

// Writes through `body` to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw DataError("cannot open output file: " + path);
    }
    body(file);
    file.flush();
    if (!file) {
        throw DataError("failed writing output file: " + path);
    }
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find_first_of(", ", start);
        if (end == std::string::npos) {
            end = text.size();
        }
        if (end > start) {
            double v = 0.0;
            const char* first = text.data() + start;
            const char* last = text.data() + end;
            const auto res = std::from_chars(first, last, v);
            if (res.ec != std::errc() || res.ptr != last) {
                throw ConfigError("bad value in list: '" + text.substr(start, end - start) + "'");
            }
            values.push_back(v);
        }
        start = end + 1;
    }
    if (values.empty()) {
        throw ConfigError("value list is empty");
    }
    return values;
}

int score(const ScoringFlags& flags, const std::string& input, const std::string& output,
          const std::string& label_col, std::ostream& out) {
    const Params params = flags.params();
    const auto prep = flags.preprocess();
    auto in = open_input(input);
    Dataset data = label_col.empty()
                       ? read_csv(in, !flags.no_header)
                       : read_labeled_csv(in, ColumnRef::parse(label_col), !flags.no_header).data();
    if (prep) {
        data = preprocess(data, *prep);
    }
    const ScoreReport report = flags.make()(data, params);
    emit(output, out, [&](std::ostream& os) { write_scores(report, os); });
    return kExitOk;
}

struct EvalFlags {
    std::string input;
    std::string output;
    std::string label_col;
    std::string class_col;
    std::string normal_class;
    std::vector<std::string> donors;
    std::optional<std::size_t> normal_limit;
    std::optional<double> buckets;
    bool wilt_style = false;
    std::size_t trials = 200;
    bool per_outlier = false;
    std::string format = "text";
};

int evaluate(const ScoringFlags& flags, const SyntheticSpec& synth, const EvalFlags& ef, std::ostream& out) {
    const Params params = flags.params();
    const auto prep = flags.preprocess();
    const Scorer scorer = flags.make();
    const bool csv = ef.format == "csv";

    if (ef.input.empty()) {
        const EvalReport report = run_trials(synth, params, ef.trials, scorer, prep);
        emit(ef.output, out, [&](std::ostream& os) {
            csv ? write_eval_csv(os, report) : write_eval_text(os, report, ef.per_outlier);
        });
        return kExitOk;
    }

    if (!ef.class_col.empty()) {
        if (ef.normal_class.empty() || ef.donors.empty()) {
            throw ConfigError("--class-col needs --normal-class and at least one --donor");
        }
        auto in = open_input(ef.input);
        const ClassTable table = read_class_csv(in, ColumnRef::parse(ef.class_col), !flags.no_header);
        const ClassTrialSpec spec{ef.normal_class, ef.donors, ef.normal_limit, prep};
        const EvalReport report = run_class_trials(table, spec, params, scorer);
        emit(ef.output, out, [&](std::ostream& os) {
            csv ? write_eval_csv(os, report) : write_eval_text(os, report, ef.per_outlier);
        });
        return kExitOk;
    }

    if (ef.label_col.empty()) {
        throw DataError("eval needs labeled data: pass --label-col or --class-col");
    }
    if (ef.buckets && !(*ef.buckets > 0.0 && *ef.buckets <= 100.0)) {
        throw InvalidSpec("--buckets must be in (0, 100]");
    }
    auto in = open_input(ef.input);
    LabeledDataset labeled = read_labeled_csv(in, ColumnRef::parse(ef.label_col), !flags.no_header);
    if (prep) {
        labeled = preprocess(labeled, *prep);
    }
    labeled.require_outliers();
    if (ef.buckets || ef.wilt_style) {
        const PercentileReport report = percentile_recall(labeled, params, ef.buckets.value_or(1.0), scorer);
        emit(ef.output, out, [&](std::ostream& os) {
            csv ? write_percentile_csv(os, report) : write_percentile_text(os, report);
        });
        return kExitOk;
    }
    EvalReport report;
    report.add(evaluate_trial(labeled, params, scorer));
    emit(ef.output, out, [&](std::ostream& os) {
        csv ? write_eval_csv(os, report) : write_eval_text(os, report, ef.per_outlier);
    });
    return kExitOk;
}

struct SweepFlags {
    std::string input;
    std::string output;
    std::string label_col;
    std::string vary = "nd";
    std::string values;
    std::string format = "csv";
};

int run_sweep(const ScoringFlags& flags, const SweepFlags& sf, std::ostream& out) {
    const Params fixed = flags.params();
    const auto prep = flags.preprocess();
    const auto values = parse_values(sf.values);
    auto in = open_input(sf.input);
    LabeledDataset labeled = read_labeled_csv(in, ColumnRef::parse(sf.label_col), !flags.no_header);
    if (prep) {
        labeled = preprocess(labeled, *prep);
    }
    const auto target = sf.vary == "sn" ? SweepTarget::top : SweepTarget::offset;
    const SweepReport report = sweep(labeled, fixed, target, values, flags.make());
    emit(sf.output, out, [&](std::ostream& os) {
        sf.format == "csv" ? write_sweep_csv(os, report) : write_sweep_text(os, report);
    });
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Outlier scoring by augmented-dimension cosine similarity", "odadvcs"};
    app.require_subcommand(1);

    ScoringFlags score_flags;
    std::string score_in;
    std::string score_out;
    std::string score_label;
    auto* score_cmd = app.add_subcommand("score", "Score every point of a CSV dataset");
    score_cmd->add_option("--in", score_in, "Input CSV")->required();
    score_cmd->add_option("--out", score_out, "Output CSV (default: stdout)");
    score_cmd->add_option("--label-col", score_label, "Label column to drop before scoring (name or 0-based index)");
    add_scoring_flags(*score_cmd, score_flags);

    SyntheticSpec gen_spec;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("generate", "Write a labeled synthetic ball-and-shell dataset");
    add_synthetic_flags(*gen_cmd, gen_spec);
    gen_cmd->add_option("--out", gen_out, "Output CSV (default: stdout)");

    ScoringFlags eval_flags;
    SyntheticSpec eval_spec;
    EvalFlags ef;
    auto* eval_cmd = app.add_subcommand("eval", "Measure detection accuracy");
    add_scoring_flags(*eval_cmd, eval_flags);
    add_synthetic_flags(*eval_cmd, eval_spec);
    eval_cmd->add_option("--in", ef.input, "Labeled CSV (omit for synthetic trials)");
    eval_cmd->add_option("--out", ef.output, "Report destination (default: stdout)");
    eval_cmd->add_option("--label-col", ef.label_col, "0/1 outlier label column (name or 0-based index)");
    eval_cmd->add_option("--class-col", ef.class_col, "Class column for class-donor trials");
    eval_cmd->add_option("--normal-class", ef.normal_class, "Class providing the normal points");
    eval_cmd->add_option("--donor", ef.donors, "Class donating one outlier per occurrence (repeatable)");
    eval_cmd->add_option("--normal-limit", ef.normal_limit, "Use only the first N rows of the normal class");
    eval_cmd->add_option("--buckets", ef.buckets, "Percentile bucket width in percent");
    eval_cmd->add_flag("--wilt-style", ef.wilt_style, "Percentile-bucket report (1% buckets unless --buckets)");
    eval_cmd->add_option("--trials", ef.trials, "Synthetic trials")->capture_default_str()->check(CLI::PositiveNumber);
    eval_cmd->add_flag("--per-outlier", ef.per_outlier, "Also report per-outlier recall in the bottom k");
    eval_cmd->add_option("--format", ef.format, "Report format")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();

    ScoringFlags sweep_flags;
    SweepFlags sf;
    auto* sweep_cmd = app.add_subcommand("sweep", "Worst outlier rank across parameter values");
    add_scoring_flags(*sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--in", sf.input, "Labeled CSV")->required();
    sweep_cmd->add_option("--label-col", sf.label_col, "0/1 outlier label column")->required();
    sweep_cmd->add_option("--out", sf.output, "Output CSV (default: stdout)");
    sweep_cmd->add_option("--vary", sf.vary, "Parameter to vary")
        ->check(CLI::IsMember({"nd", "sn"}))
        ->capture_default_str();
    sweep_cmd->add_option("--values", sf.values, "Comma-separated parameter values")->required();
    sweep_cmd->add_option("--format", sf.format, "Output format")
        ->check(CLI::IsMember({"csv", "text"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsageError;
    }

    try {
        if (score_cmd->parsed()) {
            return score(score_flags, score_in, score_out, score_label, out);
        }
        if (gen_cmd->parsed()) {
            const LabeledDataset data = generate(gen_spec);
            emit(gen_out, out, [&](std::ostream& os) { write_csv(os, data); });
            return kExitOk;
        }
        if (eval_cmd->parsed()) {
            return evaluate(eval_flags, eval_spec, ef, out);
        }
        if (sweep_cmd->parsed()) {
            return run_sweep(sweep_flags, sf, out);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return kExitUsageError;
}

}  // namespace odadvcs::cli
