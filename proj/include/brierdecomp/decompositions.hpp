#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brierdecomp/core_data.hpp"

namespace brierdecomp {

enum class Scheme {
    bias_variance,
    yates,
    alt_yates,
    sanders,
    urr,
    excess_correctness,
    rdc,
    binned_urr,
};

/// Stable snake_case tag, e.g. "alt_yates".
[[nodiscard]] std::string_view scheme_name(Scheme s) noexcept;
[[nodiscard]] std::optional<Scheme> scheme_from_name(std::string_view name) noexcept;

/// Whether the scheme's terms reproduce the Brier score up to rounding.
/// Only the binned estimator carries a genuine residual.
[[nodiscard]] constexpr bool is_exact(Scheme s) noexcept { return s != Scheme::binned_urr; }

struct Term {
    std::string name;
    double value = 0.0;
    /// +1 when the term adds to the score, -1 when it is subtracted.
    int sign = +1;

    friend bool operator==(const Term&, const Term&) = default;
};

struct DecompositionReport {
    Scheme scheme = Scheme::yates;
    std::vector<Term> terms;
    double brier = 0.0;
    double tolerance = kDefaultTolerance;

    /// Signed sum of the term values, recomputed on every call.
    [[nodiscard]] double term_sum() const noexcept;
    [[nodiscard]] double residual() const noexcept { return brier - term_sum(); }
    [[nodiscard]] bool reconstructs() const noexcept;

    /// Throws std::out_of_range for unknown names.
    [[nodiscard]] const Term& term(std::string_view name) const;
    [[nodiscard]] double value(std::string_view name) const { return term(name).value; }

    friend bool operator==(const DecompositionReport&, const DecompositionReport&) = default;
};

/// sigma_F^2 + sigma_Y^2 - 2 sigma_FY + (mu_F - mu_Y)^2, the score implied by
/// the moments alone. Used as the report's `brier` when no dataset score is given.
[[nodiscard]] double moment_brier(const MomentSummary& m) noexcept;

/// [var_of_difference, squared_bias]
[[nodiscard]] DecompositionReport bias_variance(const MomentSummary& m,
                                                std::optional<double> brier = std::nullopt,
                                                double tol = kDefaultTolerance);

/// [forecast_variance, outcome_variance, minus_twice_covariance, squared_bias].
/// minus_twice_covariance carries its own sign in the value and may be negative.
[[nodiscard]] DecompositionReport yates(const MomentSummary& m,
                                        std::optional<double> brier = std::nullopt,
                                        double tol = kDefaultTolerance);

/// [variance_mismatch, covariance_deficit, calibration_in_the_large], each
/// non-negative.
///
/// covariance_deficit = 2 (sigma_F sigma_Y - sigma_FY) is non-negative by
/// Cauchy-Schwarz. A computed value in (-tol, 0) is rounding and is reported as
/// 0; the difference then shows up in residual(). Anything below -tol means
/// the summary is inconsistent and raises InvariantViolation.
[[nodiscard]] DecompositionReport alt_yates(const MomentSummary& m,
                                            std::optional<double> brier = std::nullopt,
                                            double tol = kDefaultTolerance);

/// Pearson correlation, or nullopt when either standard deviation is zero.
[[nodiscard]] std::optional<double> correlation(const MomentSummary& m) noexcept;

/// 2 sigma_F sigma_Y (1 - rho). nullopt (undefined) when sigma_F or sigma_Y is
/// zero; the covariance deficit itself is 0 in that case.
[[nodiscard]] std::optional<double> covariance_deficit_correlation_form(const MomentSummary& m) noexcept;

struct OptimalityDiagnosis {
    bool variance_matched = false;
    double variance_gap = 0.0;     ///< (sigma_F - sigma_Y)^2
    bool perfectly_correlated = false;
    double correlation_gap = 0.0;  ///< 2 (sigma_F sigma_Y - sigma_FY)
    bool unbiased = false;
    double bias_gap = 0.0;         ///< (mu_F - mu_Y)^2
    bool is_perfect = false;
    double tolerance = kDefaultTolerance;

    friend bool operator==(const OptimalityDiagnosis&, const OptimalityDiagnosis&) = default;
};

/// Evaluates the three conditions independently; none is inferred from another.
/// Throws InvalidTolerance unless tol > 0.
[[nodiscard]] OptimalityDiagnosis check_optimality(const MomentSummary& m,
                                                   double tol = kDefaultTolerance);

}  // namespace brierdecomp
