#include "brierdecomp/report.hpp"

#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "brierdecomp/format.hpp"

namespace brierdecomp {

using json = nlohmann::ordered_json;

namespace {

template <typename T>
json optional_to_json(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const json& j, const char* key)
{
    const auto it = j.find(key);
    if (it == j.end() || it->is_null())
        return std::nullopt;
    return it->get<T>();
}

}  // namespace

MomentsView MomentsView::of(const MomentSummary& m)
{
    return {m.n(), m.mu_f(), m.mu_y(), m.var_f(), m.var_y(), m.cov_fy()};
}

void to_json(json& j, const Term& t)
{
    j = json{{"name", t.name}, {"value", t.value}, {"sign", t.sign}};
}

void from_json(const json& j, Term& t)
{
    j.at("name").get_to(t.name);
    j.at("value").get_to(t.value);
    j.at("sign").get_to(t.sign);
}

void to_json(json& j, const DecompositionReport& r)
{
    j = json{{"scheme", scheme_name(r.scheme)},
             {"terms", r.terms},
             {"sum", r.term_sum()},
             {"brier", r.brier},
             {"residual", r.residual()},
             {"tolerance", r.tolerance},
             {"exact", is_exact(r.scheme)}};
}

void from_json(const json& j, DecompositionReport& r)
{
    const auto name = j.at("scheme").get<std::string>();
    const auto scheme = scheme_from_name(name);
    if (!scheme)
        throw std::invalid_argument("unknown scheme '" + name + "'");
    r.scheme = *scheme;
    j.at("terms").get_to(r.terms);
    j.at("brier").get_to(r.brier);
    j.at("tolerance").get_to(r.tolerance);
}

void to_json(json& j, const MomentsView& m)
{
    j = json{{"n", m.n},         {"mu_f", m.mu_f},   {"mu_y", m.mu_y},
             {"var_f", m.var_f}, {"var_y", m.var_y}, {"cov_fy", m.cov_fy}};
}

void from_json(const json& j, MomentsView& m)
{
    j.at("n").get_to(m.n);
    j.at("mu_f").get_to(m.mu_f);
    j.at("mu_y").get_to(m.mu_y);
    j.at("var_f").get_to(m.var_f);
    j.at("var_y").get_to(m.var_y);
    j.at("cov_fy").get_to(m.cov_fy);
}

void to_json(json& j, const OptimalityDiagnosis& d)
{
    j = json{{"variance_matched", d.variance_matched},
             {"variance_gap", d.variance_gap},
             {"perfectly_correlated", d.perfectly_correlated},
             {"correlation_gap", d.correlation_gap},
             {"unbiased", d.unbiased},
             {"bias_gap", d.bias_gap},
             {"is_perfect", d.is_perfect},
             {"tolerance", d.tolerance}};
}

void from_json(const json& j, OptimalityDiagnosis& d)
{
    j.at("variance_matched").get_to(d.variance_matched);
    j.at("variance_gap").get_to(d.variance_gap);
    j.at("perfectly_correlated").get_to(d.perfectly_correlated);
    j.at("correlation_gap").get_to(d.correlation_gap);
    j.at("unbiased").get_to(d.unbiased);
    j.at("bias_gap").get_to(d.bias_gap);
    j.at("is_perfect").get_to(d.is_perfect);
    j.at("tolerance").get_to(d.tolerance);
}

void to_json(json& j, const BinningScheme& b)
{
    j = json{{"kind", bin_kind_name(b.kind)},
             {"requested_bins", b.requested_bins},
             {"bin_count", b.bin_count()},
             {"edges", b.edges},
             {"degenerate", b.degenerate}};
}

void from_json(const json& j, BinningScheme& b)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "uniform")
        b.kind = BinKind::uniform_width;
    else if (kind == "quantile")
        b.kind = BinKind::quantile;
    else if (kind == "explicit")
        b.kind = BinKind::explicit_edges;
    else
        throw std::invalid_argument("unknown bin kind '" + kind + "'");
    j.at("requested_bins").get_to(b.requested_bins);
    j.at("edges").get_to(b.edges);
    j.at("degenerate").get_to(b.degenerate);
}

void to_json(json& j, const ReliabilityCurve& c)
{
    json bins = json::array();
    for (const auto& b : c.bins)
        bins.push_back(json{{"lower_edge", b.lower_edge},
                            {"upper_edge", b.upper_edge},
                            {"count", b.count},
                            {"mean_forecast", optional_to_json(b.mean_forecast)},
                            {"event_frequency", optional_to_json(b.event_frequency)}});
    j = json{{"n", c.n}, {"bins", bins}};
}

void from_json(const json& j, ReliabilityCurve& c)
{
    j.at("n").get_to(c.n);
    c.bins.clear();
    for (const auto& b : j.at("bins"))
        c.bins.push_back({b.at("lower_edge").get<double>(), b.at("upper_edge").get<double>(),
                          b.at("count").get<std::size_t>(), optional_from_json<double>(b, "mean_forecast"),
                          optional_from_json<double>(b, "event_frequency")});
}

void to_json(json& j, const ReportDocument& doc)
{
    j = json{{"tool", kToolName},
             {"version", doc.tool_version},
             {"input", {{"source", doc.source}, {"n", doc.n}}},
             {"brier", doc.brier},
             {"tolerance", doc.tolerance},
             {"moments", doc.moments},
             {"correlation", optional_to_json(doc.correlation)},
             {"deficit_correlation_form", optional_to_json(doc.deficit_correlation_form)},
             {"schemes", doc.schemes},
             {"optimality", doc.optimality}};
    if (doc.binning)
        j["binning"] = *doc.binning;
    if (doc.binned)
        j["binned_urr"] = *doc.binned;
    if (doc.curve)
        j["reliability_curve"] = *doc.curve;
}

void from_json(const json& j, ReportDocument& doc)
{
    j.at("version").get_to(doc.tool_version);
    j.at("input").at("source").get_to(doc.source);
    j.at("input").at("n").get_to(doc.n);
    j.at("brier").get_to(doc.brier);
    j.at("tolerance").get_to(doc.tolerance);
    j.at("moments").get_to(doc.moments);
    doc.correlation = optional_from_json<double>(j, "correlation");
    doc.deficit_correlation_form = optional_from_json<double>(j, "deficit_correlation_form");
    j.at("schemes").get_to(doc.schemes);
    j.at("optimality").get_to(doc.optimality);
    doc.binning = optional_from_json<BinningScheme>(j, "binning");
    doc.binned = optional_from_json<DecompositionReport>(j, "binned_urr");
    doc.curve = optional_from_json<ReliabilityCurve>(j, "reliability_curve");
}

void write_json(std::ostream& out, const ReportDocument& doc)
{
    out << json(doc).dump(2) << '\n';
}

ReportDocument parse_report(std::string_view json_text)
{
    return json::parse(json_text).get<ReportDocument>();
}

namespace {

// Values start at this column whatever the indent or sign prefix.
constexpr std::size_t kValueColumn = 34;

std::string opt_number(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string("undefined");
}

void line(std::ostream& out, std::string_view indent, std::string_view label, std::string_view value)
{
    out << indent << std::left << std::setw(static_cast<int>(kValueColumn - indent.size())) << label << value
        << '\n';
}

void write_scheme(std::ostream& out, const DecompositionReport& r)
{
    out << '\n' << "scheme " << scheme_name(r.scheme) << '\n';
    for (const auto& t : r.terms)
        line(out, t.sign < 0 ? "  - " : "  + ", t.name, format_number(t.value));
    line(out, "  = ", "sum", format_number(r.term_sum()));
    line(out, "    ", "brier", format_number(r.brier));
    line(out, "    ", "residual", format_number(r.residual()));
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string condition(bool holds, double gap)
{
    return (holds ? "yes  " : "no   ") + std::string("gap ") + format_number(gap);
}

}  // namespace

void write_text(std::ostream& out, const ReportDocument& doc)
{
    out << kToolName << ' ' << doc.tool_version << '\n';
    line(out, "", "source", doc.source);
    line(out, "", "n", std::to_string(doc.n));
    line(out, "", "brier", format_number(doc.brier));
    line(out, "", "tolerance", format_number(doc.tolerance));

    out << "\nmoments\n";
    line(out, "  ", "mu_f", format_number(doc.moments.mu_f));
    line(out, "  ", "mu_y", format_number(doc.moments.mu_y));
    line(out, "  ", "var_f", format_number(doc.moments.var_f));
    line(out, "  ", "var_y", format_number(doc.moments.var_y));
    line(out, "  ", "cov_fy", format_number(doc.moments.cov_fy));
    line(out, "  ", "correlation", opt_number(doc.correlation));
    line(out, "  ", "deficit_correlation_form", opt_number(doc.deficit_correlation_form));

    for (const auto& r : doc.schemes)
        write_scheme(out, r);

    const auto& d = doc.optimality;
    out << "\noptimality\n";
    line(out, "  ", "variance_matched", condition(d.variance_matched, d.variance_gap));
    line(out, "  ", "perfectly_correlated", condition(d.perfectly_correlated, d.correlation_gap));
    line(out, "  ", "unbiased", condition(d.unbiased, d.bias_gap));
    line(out, "  ", "is_perfect", yes_no(d.is_perfect));

    if (doc.binning) {
        const auto& b = *doc.binning;
        out << "\nbinning\n";
        line(out, "  ", "kind", bin_kind_name(b.kind));
        line(out, "  ", "requested_bins", std::to_string(b.requested_bins));
        line(out, "  ", "bin_count", std::to_string(b.bin_count()));
        std::string edges;
        for (const double e : b.edges)
            edges += (edges.empty() ? "" : " ") + format_number(e);
        line(out, "  ", "edges", edges);
        if (b.degenerate)
            line(out, "  ", "degenerate", "yes (all forecasts equal; single bin)");
    }
    if (doc.binned)
        write_scheme(out, *doc.binned);
    if (doc.curve) {
        out << "\nreliability_curve\n";
        out << "  " << std::left << std::setw(24) << "lower_edge" << std::setw(24) << "upper_edge"
            << std::setw(10) << "count" << std::setw(24) << "mean_forecast" << "event_frequency" << '\n';
        for (const auto& b : doc.curve->bins) {
            out << "  " << std::setw(24) << format_number(b.lower_edge) << std::setw(24)
                << format_number(b.upper_edge) << std::setw(10) << b.count;
            if (b.empty())
                out << std::setw(24) << "empty" << "empty" << '\n';
            else
                out << std::setw(24) << format_number(*b.mean_forecast) << format_number(*b.event_frequency)
                    << '\n';
        }
    }
}

}  // namespace brierdecomp
