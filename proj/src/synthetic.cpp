#include "brierdecomp/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "brierdecomp/detail/compensated_sum.hpp"

namespace brierdecomp {

namespace {

constexpr std::array<std::pair<GeneratorKind, std::string_view>, 7> kKindNames{{
    {GeneratorKind::perfect, "perfect"},
    {GeneratorKind::constant, "constant"},
    {GeneratorKind::calibrated_two_level, "calibrated-two-level"},
    {GeneratorKind::biased_shift, "biased-shift"},
    {GeneratorKind::variance_scaled, "variance-scaled"},
    {GeneratorKind::anti_correlated, "anti-correlated"},
    {GeneratorKind::random_uniform, "random-uniform"},
}};

class Draws {
public:
    explicit Draws(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::uint8_t bernoulli(double p) { return uniform() < p ? 1 : 0; }

private:
    std::mt19937_64 engine_;
};

void require_probability(double value, const char* name)
{
    if (!(value >= 0.0 && value <= 1.0))
        throw DomainError(std::string(name) + " = " + std::to_string(value) + " outside [0, 1]");
}

struct Clipper {
    std::size_t clipped = 0;

    double operator()(double f)
    {
        if (f < 0.0) {
            ++clipped;
            return 0.0;
        }
        if (f > 1.0) {
            ++clipped;
            return 1.0;
        }
        return f;
    }
};

ForecastRecord two_level_draw(const GeneratorSpec& spec, Draws& draws)
{
    const double f = draws.uniform() < spec.mix ? spec.p_high : spec.p_low;
    return {f, draws.bernoulli(f)};
}

double squared(double x) noexcept { return x * x; }

struct TwoLevelMoments {
    double mu;
    double var_f;
    double var_y;
};

TwoLevelMoments two_level_moments(const GeneratorSpec& spec)
{
    const double mu = spec.mix * spec.p_high + (1.0 - spec.mix) * spec.p_low;
    return {mu, spec.mix * (1.0 - spec.mix) * squared(spec.p_high - spec.p_low), mu * (1.0 - mu)};
}

TermTargets targets_from(double var_f, double var_y, double cov, double bias)
{
    const double sd_f = std::sqrt(var_f);
    const double sd_y = std::sqrt(var_y);
    return {squared(sd_f - sd_y), 2.0 * (sd_f * sd_y - cov), squared(bias)};
}

}  // namespace

std::string_view generator_kind_name(GeneratorKind k) noexcept
{
    for (const auto& [kind, name] : kKindNames)
        if (kind == k)
            return name;
    return "unknown";
}

std::optional<GeneratorKind> generator_kind_from_name(std::string_view name) noexcept
{
    for (const auto& [kind, n] : kKindNames)
        if (n == name)
            return kind;
    return std::nullopt;
}

void validate(const GeneratorSpec& spec)
{
    if (spec.n == 0)
        throw DomainError("n must be at least 1");
    require_probability(spec.constant, "constant");
    require_probability(spec.outcome_rate, "outcome_rate");
    require_probability(spec.p_low, "p_low");
    require_probability(spec.p_high, "p_high");
    require_probability(spec.mix, "mix");
    if (!(spec.delta >= -1.0 && spec.delta <= 1.0))
        throw DomainError("delta = " + std::to_string(spec.delta) + " outside [-1, 1]");
    if (!(spec.gamma >= 0.0) || !std::isfinite(spec.gamma))
        throw DomainError("gamma = " + std::to_string(spec.gamma) + " must be finite and >= 0");
}

Generated generate(const GeneratorSpec& spec)
{
    validate(spec);
    Draws draws(spec.seed);
    Clipper clip;
    std::vector<ForecastRecord> records;
    records.reserve(spec.n);

    switch (spec.kind) {
    case GeneratorKind::perfect:
        for (std::size_t i = 0; i < spec.n; ++i) {
            const auto y = draws.bernoulli(spec.outcome_rate);
            records.push_back({static_cast<double>(y), y});
        }
        break;
    case GeneratorKind::constant:
        for (std::size_t i = 0; i < spec.n; ++i)
            records.push_back({spec.constant, draws.bernoulli(spec.outcome_rate)});
        break;
    case GeneratorKind::calibrated_two_level:
        for (std::size_t i = 0; i < spec.n; ++i)
            records.push_back(two_level_draw(spec, draws));
        break;
    case GeneratorKind::biased_shift:
        for (std::size_t i = 0; i < spec.n; ++i) {
            auto r = two_level_draw(spec, draws);
            r.forecast = clip(r.forecast + spec.delta);
            records.push_back(r);
        }
        break;
    case GeneratorKind::variance_scaled: {
        for (std::size_t i = 0; i < spec.n; ++i)
            records.push_back(two_level_draw(spec, draws));
        if (spec.gamma == 1.0)
            break;
        detail::CompensatedSum sum;
        for (const auto& r : records)
            sum += r.forecast;
        const double mean = sum.value() / static_cast<double>(spec.n);
        for (auto& r : records)
            r.forecast = clip(mean + spec.gamma * (r.forecast - mean));
        break;
    }
    case GeneratorKind::anti_correlated:
        for (std::size_t i = 0; i < spec.n; ++i) {
            const auto y = draws.bernoulli(spec.outcome_rate);
            const double u = draws.uniform();
            records.push_back({y == 1 ? 0.5 * u : 0.5 + 0.5 * u, y});
        }
        break;
    case GeneratorKind::random_uniform:
        for (std::size_t i = 0; i < spec.n; ++i) {
            const double f = draws.uniform();
            records.push_back({f, draws.bernoulli(f)});
        }
        break;
    }
    return {make_dataset(std::move(records)), clip.clipped};
}

double TermTargets::tolerance_for(std::size_t n) noexcept
{
    return 5.0 / std::sqrt(static_cast<double>(n));
}

TermTargets empirical_term_targets(const GeneratorSpec& spec)
{
    validate(spec);
    const double p = spec.outcome_rate;
    switch (spec.kind) {
    case GeneratorKind::perfect:
        return {0.0, 0.0, 0.0};
    case GeneratorKind::constant:
        return targets_from(0.0, p * (1.0 - p), 0.0, spec.constant - p);
    case GeneratorKind::calibrated_two_level: {
        const auto m = two_level_moments(spec);
        // Calibration makes Cov(F, Y) = Cov(F, E[Y|F]) = Var(F).
        return targets_from(m.var_f, m.var_y, m.var_f, 0.0);
    }
    case GeneratorKind::biased_shift: {
        if (spec.p_low + spec.delta < 0.0 || spec.p_high + spec.delta > 1.0)
            throw UnsupportedSpec("biased-shift parameters allow clipping; no closed form");
        const auto m = two_level_moments(spec);
        return targets_from(m.var_f, m.var_y, m.var_f, spec.delta);
    }
    case GeneratorKind::variance_scaled: {
        const auto m = two_level_moments(spec);
        const double lo = m.mu + spec.gamma * (spec.p_low - m.mu);
        const double hi = m.mu + spec.gamma * (spec.p_high - m.mu);
        if (std::min(lo, hi) < 0.0 || std::max(lo, hi) > 1.0)
            throw UnsupportedSpec("variance-scaled parameters allow clipping; no closed form");
        const double g = spec.gamma;
        return targets_from(g * g * m.var_f, m.var_y, g * m.var_f, 0.0);
    }
    case GeneratorKind::anti_correlated: {
        const double var_y = p * (1.0 - p);
        const double var_f = 1.0 / 48.0 + 0.25 * var_y;
        const double mu_f = 0.75 - 0.5 * p;
        return targets_from(var_f, var_y, -0.5 * var_y, mu_f - p);
    }
    case GeneratorKind::random_uniform:
        break;
    }
    throw UnsupportedSpec("no closed-form term targets for " +
                          std::string(generator_kind_name(spec.kind)));
}

}  // namespace brierdecomp
