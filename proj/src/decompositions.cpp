#include "brierdecomp/decompositions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace brierdecomp {

namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 8> kSchemeNames{{
    {Scheme::bias_variance, "bias_variance"},
    {Scheme::yates, "yates"},
    {Scheme::alt_yates, "alt_yates"},
    {Scheme::sanders, "sanders"},
    {Scheme::urr, "urr"},
    {Scheme::excess_correctness, "excess_correctness"},
    {Scheme::rdc, "rdc"},
    {Scheme::binned_urr, "binned_urr"},
}};

DecompositionReport make_report(Scheme scheme, std::vector<Term> terms, const MomentSummary& m,
                                std::optional<double> brier, double tol)
{
    return {scheme, std::move(terms), brier.value_or(moment_brier(m)), tol};
}

double squared(double x) noexcept { return x * x; }

}  // namespace

std::string_view scheme_name(Scheme s) noexcept
{
    for (const auto& [scheme, name] : kSchemeNames)
        if (scheme == s)
            return name;
    return "unknown";
}

std::optional<Scheme> scheme_from_name(std::string_view name) noexcept
{
    for (const auto& [scheme, n] : kSchemeNames)
        if (n == name)
            return scheme;
    return std::nullopt;
}

double DecompositionReport::term_sum() const noexcept
{
    double sum = 0.0;
    for (const auto& t : terms)
        sum += t.sign * t.value;
    return sum;
}

bool DecompositionReport::reconstructs() const noexcept
{
    return within_tolerance(brier, term_sum(), tolerance);
}

const Term& DecompositionReport::term(std::string_view name) const
{
    auto it = std::find_if(terms.begin(), terms.end(), [&](const Term& t) { return t.name == name; });
    if (it == terms.end())
        throw std::out_of_range("no term named '" + std::string(name) + "' in " +
                                std::string(scheme_name(scheme)) + " report");
    return *it;
}

double moment_brier(const MomentSummary& m) noexcept
{
    return m.var_f() + m.var_y() - 2.0 * m.cov_fy() + squared(m.mu_f() - m.mu_y());
}

DecompositionReport bias_variance(const MomentSummary& m, std::optional<double> brier, double tol)
{
    return make_report(Scheme::bias_variance,
                       {
                           {"var_of_difference", m.var_f() + m.var_y() - 2.0 * m.cov_fy()},
                           {"squared_bias", squared(m.mu_f() - m.mu_y())},
                       },
                       m, brier, tol);
}

DecompositionReport yates(const MomentSummary& m, std::optional<double> brier, double tol)
{
    return make_report(Scheme::yates,
                       {
                           {"forecast_variance", m.var_f()},
                           {"outcome_variance", m.var_y()},
                           {"minus_twice_covariance", -2.0 * m.cov_fy() + 0.0},
                           {"squared_bias", squared(m.mu_f() - m.mu_y())},
                       },
                       m, brier, tol);
}

DecompositionReport alt_yates(const MomentSummary& m, std::optional<double> brier, double tol)
{
    const double sd_f = m.sd_f();
    const double sd_y = m.sd_y();
    double deficit = 2.0 * (sd_f * sd_y - m.cov_fy());
    if (deficit < 0.0) {
        if (!within_tolerance(deficit, 0.0, tol)) {
            std::ostringstream os;
            os.precision(17);
            os << "covariance deficit " << deficit << " below -" << tol
               << ": moment summary violates Cauchy-Schwarz";
            throw InvariantViolation(os.str());
        }
        deficit = 0.0;
    }
    return make_report(Scheme::alt_yates,
                       {
                           {"variance_mismatch", squared(sd_f - sd_y)},
                           {"covariance_deficit", deficit},
                           {"calibration_in_the_large", squared(m.mu_f() - m.mu_y())},
                       },
                       m, brier, tol);
}

std::optional<double> correlation(const MomentSummary& m) noexcept
{
    const double sd_f = m.sd_f();
    const double sd_y = m.sd_y();
    if (sd_f == 0.0 || sd_y == 0.0)
        return std::nullopt;
    return m.cov_fy() / (sd_f * sd_y);
}

std::optional<double> covariance_deficit_correlation_form(const MomentSummary& m) noexcept
{
    const auto rho = correlation(m);
    if (!rho)
        return std::nullopt;
    return 2.0 * m.sd_f() * m.sd_y() * (1.0 - *rho);
}

OptimalityDiagnosis check_optimality(const MomentSummary& m, double tol)
{
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw InvalidTolerance("tolerance must be a positive finite number");
    const auto report = alt_yates(m, std::nullopt, std::max(tol, kDefaultTolerance));
    OptimalityDiagnosis d;
    d.tolerance = tol;
    d.variance_gap = report.value("variance_mismatch");
    d.correlation_gap = report.value("covariance_deficit");
    d.bias_gap = report.value("calibration_in_the_large");
    d.variance_matched = d.variance_gap <= tol;
    d.perfectly_correlated = d.correlation_gap <= tol;
    d.unbiased = d.bias_gap <= tol;
    d.is_perfect = d.variance_matched && d.perfectly_correlated && d.unbiased;
    return d;
}

}  // namespace brierdecomp
