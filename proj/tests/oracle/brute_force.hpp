#pragma once

// Test-only reference computations. Everything here follows the textbook
// definitions directly (two passes, long double, quadratic scans) and shares
// no code with the library's accumulation paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "brierdecomp/core_data.hpp"

namespace oracle {

using Pairs = std::vector<std::pair<double, int>>;

inline Pairs pairs_of(const brierdecomp::Dataset& d)
{
    Pairs p;
    p.reserve(d.size());
    for (const auto& r : d)
        p.emplace_back(r.forecast, r.outcome);
    return p;
}

inline double brier(const Pairs& p)
{
    long double s = 0;
    for (const auto& [f, y] : p) {
        const long double d = static_cast<long double>(f) - y;
        s += d * d;
    }
    return static_cast<double>(s / p.size());
}

struct Moments {
    double mu_f, mu_y, var_f, var_y, cov_fy;
};

inline Moments two_pass(const Pairs& p)
{
    const long double n = p.size();
    long double sf = 0, sy = 0;
    for (const auto& [f, y] : p) {
        sf += f;
        sy += y;
    }
    const long double mf = sf / n, my = sy / n;
    long double vf = 0, vy = 0, c = 0;
    for (const auto& [f, y] : p) {
        vf += (f - mf) * (f - mf);
        vy += (y - my) * (y - my);
        c += (f - mf) * (y - my);
    }
    return {static_cast<double>(mf), static_cast<double>(my), static_cast<double>(vf / n),
            static_cast<double>(vy / n), static_cast<double>(c / n)};
}

// E[Y | F = f_i] by scanning every record: O(n^2).
inline std::vector<double> outcome_mean_given_forecast(const Pairs& p)
{
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        long double s = 0;
        std::size_t k = 0;
        for (const auto& [f, y] : p)
            if (f == p[i].first) {
                s += y;
                ++k;
            }
        out[i] = static_cast<double>(s / k);
    }
    return out;
}

struct Conditional {
    double sharpness, reliability, uncertainty, resolution;
    double excess, correctness, refinement, discrimination;
};

// Every conditional term written as a per-record expectation.
inline Conditional conditional_terms(const Pairs& p)
{
    const auto m = two_pass(p);
    const auto ey_f = outcome_mean_given_forecast(p);
    long double ef_y[2] = {0, 0};
    std::size_t cnt[2] = {0, 0};
    for (const auto& [f, y] : p) {
        ef_y[y] += f;
        ++cnt[y];
    }
    for (int y = 0; y < 2; ++y)
        if (cnt[y] > 0)
            ef_y[y] /= cnt[y];

    const long double n = p.size();
    long double sharp = 0, rel = 0, res = 0, exc = 0, cor = 0, dis = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto [f, y] = p[i];
        sharp += (y - ey_f[i]) * static_cast<long double>(y - ey_f[i]);
        rel += (f - ey_f[i]) * static_cast<long double>(f - ey_f[i]);
        res += (ey_f[i] - m.mu_y) * static_cast<long double>(ey_f[i] - m.mu_y);
        exc += (f - ef_y[y]) * (f - ef_y[y]);
        cor += (ef_y[y] - y) * (ef_y[y] - y);
        dis += (ef_y[y] - m.mu_f) * (ef_y[y] - m.mu_f);
    }
    return {static_cast<double>(sharp / n), static_cast<double>(rel / n), m.var_y,
            static_cast<double>(res / n),   static_cast<double>(exc / n), static_cast<double>(cor / n),
            m.var_f,                        static_cast<double>(dis / n)};
}

struct WithinBin {
    double forecast_variance;  // E[(F - mean forecast of F's bin)^2]
    double covariance;         // E[(F - bin mean F)(Y - bin mean Y)]
};

// Within-bin spread with bins [e_i, e_{i+1}), last closed.
inline WithinBin within_bin(const Pairs& p, const std::vector<double>& edges)
{
    const std::size_t bins = edges.size() - 1;
    auto bin_of = [&](double f) {
        for (std::size_t b = 0; b + 1 < bins; ++b)
            if (f < edges[b + 1])
                return b;
        return bins - 1;
    };
    std::vector<long double> sum_f(bins, 0);
    std::vector<long double> sum_y(bins, 0);
    std::vector<std::size_t> cnt(bins, 0);
    for (const auto& [f, y] : p) {
        sum_f[bin_of(f)] += f;
        sum_y[bin_of(f)] += y;
        ++cnt[bin_of(f)];
    }
    long double v = 0;
    long double c = 0;
    for (const auto& [f, y] : p) {
        const auto b = bin_of(f);
        const long double df = f - sum_f[b] / cnt[b];
        const long double dy = y - sum_y[b] / cnt[b];
        v += df * df;
        c += df * dy;
    }
    return {static_cast<double>(v / p.size()), static_cast<double>(c / p.size())};
}

inline double rel_err(double a, double b)
{
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace oracle
