#include "brierdecomp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "brierdecomp/conditional_decomp.hpp"
#include "brierdecomp/format.hpp"
#include "brierdecomp/ingest.hpp"
#include "brierdecomp/synthetic.hpp"

namespace brierdecomp::cli {

namespace {

const std::map<std::string, Scheme, std::less<>> kSchemeFlags{
    {"bias-variance", Scheme::bias_variance},
    {"yates", Scheme::yates},
    {"alt-yates", Scheme::alt_yates},
    {"sanders", Scheme::sanders},
    {"urr", Scheme::urr},
    {"excess-correctness", Scheme::excess_correctness},
    {"rdc", Scheme::rdc},
};

DecompositionReport compute_scheme(Scheme s, const Dataset& d, const MomentSummary& m, double brier, double tol)
{
    switch (s) {
    case Scheme::bias_variance:
        return bias_variance(m, brier, tol);
    case Scheme::yates:
        return yates(m, brier, tol);
    case Scheme::alt_yates:
        return alt_yates(m, brier, tol);
    case Scheme::sanders:
        return sanders(d, tol);
    case Scheme::urr:
        return urr(d, tol);
    case Scheme::excess_correctness:
        return excess_correctness(d, tol);
    case Scheme::rdc:
        return rdc(d, tol);
    case Scheme::binned_urr:
        break;
    }
    throw std::invalid_argument("scheme is not an exact decomposition");
}

struct ScoreArgs {
    std::string input = "-";
    std::string format = "csv";
    std::string schemes = "all";
    std::optional<std::size_t> bins;
    std::string bin_kind = "uniform";
    bool reliability_curve = false;
    double tol = kDefaultTolerance;
    std::string output = "text";
};

struct GenerateArgs {
    std::string kind;
    GeneratorSpec spec;
    std::string output_path = "-";
    std::string format = "csv";
};

class InputFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int score(const ScoreArgs& a, std::istream& in, std::ostream& out, std::ostream& err)
{
    ScoreOptions options;
    try {
        options.schemes = parse_scheme_list(a.schemes);
    } catch (const std::invalid_argument& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kInputError;
    }
    if (!(a.tol > 0.0) || !std::isfinite(a.tol)) {
        err << kToolName << ": --tol must be a positive finite number\n";
        return kInputError;
    }
    options.tolerance = a.tol;
    options.bins = a.bins;
    options.bin_kind = a.bin_kind == "quantile" ? BinKind::quantile : BinKind::uniform_width;
    options.reliability_curve = a.reliability_curve;
    const auto format = input_format_from_name(a.format).value_or(InputFormat::csv);

    std::optional<Dataset> dataset;
    try {
        if (a.input == "-") {
            dataset = ingest(in, format);
        } else {
            options.source = a.input;
            std::ifstream file(a.input, std::ios::binary);
            if (!file)
                throw InputFailure("cannot open file");
            dataset = ingest(file, format);
        }
    } catch (const InputFailure& e) {
        err << kToolName << ": " << options.source << ": " << e.what() << '\n';
        return kInputError;
    } catch (const Error& e) {
        err << kToolName << ": " << options.source << ": " << e.what() << '\n';
        return kInputError;
    }

    std::ostringstream rendered;
    try {
        const auto doc = build_report(*dataset, options);
        if (a.output == "json")
            write_json(rendered, doc);
        else
            write_text(rendered, doc);
    } catch (const InvariantViolation& e) {
        err << kToolName << ": internal invariant violation: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const Error& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kInputError;
    }
    out << rendered.str();
    return kSuccess;
}

int generate_cmd(GenerateArgs a, std::ostream& out, std::ostream& err)
{
    const auto kind = generator_kind_from_name(a.kind);
    if (!kind) {
        err << kToolName << ": unknown generator kind '" << a.kind << "'\n";
        return kInputError;
    }
    a.spec.kind = *kind;
    std::ostringstream rendered;
    try {
        const auto generated = generate(a.spec);
        if (a.format == "jsonl")
            write_jsonl(rendered, generated.dataset);
        else
            write_csv(rendered, generated.dataset);
        if (generated.clipped > 0)
            err << kToolName << ": clipped " << generated.clipped << " forecast(s) to [0, 1]\n";
    } catch (const Error& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kInputError;
    }

    if (a.output_path == "-") {
        out << rendered.str();
        return kSuccess;
    }
    std::ofstream file(a.output_path, std::ios::binary);
    if (!file || !(file << rendered.str())) {
        err << kToolName << ": " << a.output_path << ": cannot write file\n";
        return kInputError;
    }
    return kSuccess;
}

}  // namespace

std::vector<Scheme> all_schemes()
{
    return {Scheme::bias_variance, Scheme::yates, Scheme::alt_yates, Scheme::sanders,
            Scheme::urr,           Scheme::excess_correctness, Scheme::rdc};
}

std::vector<Scheme> parse_scheme_list(std::string_view list)
{
    std::vector<Scheme> picked;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto comma = list.find(',', start);
        const auto item = list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (item == "all") {
            picked = all_schemes();
        } else {
            const auto it = kSchemeFlags.find(item);
            if (it == kSchemeFlags.end())
                throw std::invalid_argument("unknown scheme '" + std::string(item) + "'");
            picked.push_back(it->second);
        }
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    std::vector<Scheme> ordered;
    for (const auto s : all_schemes())
        if (std::find(picked.begin(), picked.end(), s) != picked.end())
            ordered.push_back(s);
    return ordered;
}

ReportDocument build_report(const Dataset& dataset, const ScoreOptions& options)
{
    const auto m = accumulate_moments(dataset);
    const double brier = brier_score(dataset);
    const double tol = options.tolerance;

    ReportDocument doc;
    doc.source = options.source;
    doc.n = dataset.size();
    doc.brier = brier;
    doc.tolerance = tol;
    doc.moments = MomentsView::of(m);
    doc.correlation = correlation(m);
    doc.deficit_correlation_form = covariance_deficit_correlation_form(m);
    for (const auto s : options.schemes) {
        auto report = compute_scheme(s, dataset, m, brier, tol);
        if (!report.reconstructs()) {
            throw InvariantViolation(std::string(scheme_name(s)) + " terms sum to " +
                                     format_number(report.term_sum()) + " but the Brier score is " +
                                     format_number(brier) + " (tolerance " + format_number(tol) + ")");
        }
        doc.schemes.push_back(std::move(report));
    }
    doc.optimality = check_optimality(m, tol);

    if (options.bins || options.reliability_curve) {
        const auto bins = make_bins(options.bin_kind, options.bins.value_or(kDefaultCurveBins), &dataset);
        doc.binning = bins;
        doc.binned = binned_urr(dataset, bins, tol);
        if (options.reliability_curve)
            doc.curve = reliability_curve(dataset, bins);
    }
    return doc;
}

int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Brier score and its decompositions for binary forecasts", std::string(kToolName)};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    ScoreArgs score_args;
    auto* score_cmd = app.add_subcommand("score", "Decompose the Brier score of a forecast/outcome file");
    score_cmd->add_option("--input", score_args.input, "Input path, or - for standard input")->capture_default_str();
    score_cmd->add_option("--format", score_args.format, "Input format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    score_cmd->add_option("--schemes", score_args.schemes,
                          "Comma-separated: bias-variance,yates,alt-yates,sanders,urr,excess-correctness,rdc or all")
        ->capture_default_str();
    score_cmd->add_option("--bins", score_args.bins, "Bin count for the binned URR estimate")
        ->check(CLI::PositiveNumber);
    score_cmd->add_option("--bin-kind", score_args.bin_kind, "Binning rule")
        ->check(CLI::IsMember({"uniform", "quantile"}))
        ->capture_default_str();
    score_cmd->add_flag("--reliability-curve", score_args.reliability_curve, "Emit the reliability curve");
    score_cmd->add_option("--tol", score_args.tol, "Identity tolerance")->capture_default_str();
    score_cmd->add_option("--output", score_args.output, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    GenerateArgs gen_args;
    auto& spec = gen_args.spec;
    auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic forecast/outcome dataset");
    gen_cmd->add_option("--kind", gen_args.kind,
                        "perfect, constant, calibrated-two-level, biased-shift, variance-scaled, "
                        "anti-correlated, random-uniform")
        ->required();
    gen_cmd->add_option("--n", spec.n, "Number of records")->capture_default_str();
    gen_cmd->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--constant", spec.constant, "Forecast value for constant")->capture_default_str();
    gen_cmd->add_option("--rate", spec.outcome_rate, "Outcome rate for perfect, constant, anti-correlated")
        ->capture_default_str();
    gen_cmd->add_option("--p-low", spec.p_low, "Low forecast level")->capture_default_str();
    gen_cmd->add_option("--p-high", spec.p_high, "High forecast level")->capture_default_str();
    gen_cmd->add_option("--mix", spec.mix, "Probability of the high level")->capture_default_str();
    gen_cmd->add_option("--delta", spec.delta, "Forecast shift for biased-shift")->capture_default_str();
    gen_cmd->add_option("--gamma", spec.gamma, "Spread factor for variance-scaled")->capture_default_str();
    gen_cmd->add_option("--output-path", gen_args.output_path, "Output path, or - for standard output")
        ->capture_default_str();
    gen_cmd->add_option("--format", gen_args.format, "Output format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    if (score_cmd->parsed())
        return score(score_args, in, out, err);
    return generate_cmd(gen_args, out, err);
}

}  // namespace brierdecomp::cli
