#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "brierdecomp/core_data.hpp"

namespace brierdecomp {

enum class GeneratorKind {
    perfect,
    constant,
    calibrated_two_level,
    biased_shift,
    variance_scaled,
    anti_correlated,
    random_uniform,
};

/// Hyphenated name used on the command line, e.g. "calibrated-two-level".
[[nodiscard]] std::string_view generator_kind_name(GeneratorKind k) noexcept;
[[nodiscard]] std::optional<GeneratorKind> generator_kind_from_name(std::string_view name) noexcept;

/// Kinds and the parameters they read:
///
///   perfect               Y ~ Bernoulli(outcome_rate), F = Y
///   constant              Y ~ Bernoulli(outcome_rate), F = constant
///   calibrated_two_level  F = p_high with probability mix, else p_low; Y ~ Bernoulli(F)
///   biased_shift          calibrated_two_level, then F + delta
///   variance_scaled       calibrated_two_level, then mean_F + gamma (F - mean_F),
///                         mean_F being the sample mean of the base forecasts
///   anti_correlated       Y ~ Bernoulli(outcome_rate); F ~ U[0, 0.5) when Y = 1,
///                         F ~ U[0.5, 1) when Y = 0
///   random_uniform        F ~ U[0, 1); Y ~ Bernoulli(F)
///
/// Transformed forecasts are clipped to [0, 1] and the clips are counted.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::perfect;
    std::size_t n = 100;
    std::uint64_t seed = 0;

    double constant = 0.5;
    double outcome_rate = 0.5;
    double p_low = 0.2;
    double p_high = 0.8;
    double mix = 0.5;
    double delta = 0.0;
    double gamma = 1.0;
};

/// Throws DomainError naming the first bad parameter.
void validate(const GeneratorSpec& spec);

struct Generated {
    Dataset dataset;
    std::size_t clipped = 0;
};

/// Deterministic in (spec, seed). The random source is std::mt19937_64 seeded
/// with `seed`; a uniform draw is (next() >> 11) * 2^-53 and a Bernoulli(p)
/// draw is `uniform < p`. Each record consumes its draws in the order listed
/// for its kind above (outcome first where the outcome is drawn independently).
[[nodiscard]] Generated generate(const GeneratorSpec& spec);

/// Distribution-level values of the three alt_yates terms.
struct TermTargets {
    double variance_mismatch = 0.0;
    double covariance_deficit = 0.0;
    double calibration_in_the_large = 0.0;

    /// Sampling tolerance for a finite sample of size n: 5 / sqrt(n).
    [[nodiscard]] static double tolerance_for(std::size_t n) noexcept;
};

/// Throws UnsupportedSpec for random_uniform, and for shift/scale parameters
/// under which clipping can occur (no closed form then).
[[nodiscard]] TermTargets empirical_term_targets(const GeneratorSpec& spec);

}  // namespace brierdecomp
