#include "brierdecomp/conditional_decomp.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "brierdecomp/detail/compensated_sum.hpp"

namespace brierdecomp {

namespace {

Group make_group(double key, const MomentAccumulator& acc, std::size_t n, bool outcome_given_forecast)
{
    const auto s = acc.summary();
    Group g;
    g.key = key;
    g.members = s.n();
    g.weight = static_cast<double>(s.n()) / static_cast<double>(n);
    g.cond_mean = outcome_given_forecast ? s.mu_y() : s.mu_f();
    g.cond_var = outcome_given_forecast ? s.var_y() : s.var_f();
    return g;
}

// sum over groups of weight * f(group)
template <typename F>
double weighted_sum(const Partition& p, F&& f)
{
    detail::CompensatedSum sum;
    for (const auto& g : p.groups)
        sum += g.weight * f(g);
    return sum.value();
}

double squared(double x) noexcept { return x * x; }

}  // namespace

Partition partition_by_forecast(const Dataset& dataset)
{
    const auto records = dataset.records();
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return records[a].forecast < records[b].forecast;
    });

    Partition p{Conditioning::on_forecast_exact, {}};
    std::size_t i = 0;
    while (i < order.size()) {
        const double key = records[order[i]].forecast;
        MomentAccumulator acc;
        for (; i < order.size() && records[order[i]].forecast == key; ++i)
            acc.push(records[order[i]]);
        p.groups.push_back(make_group(key, acc, records.size(), true));
    }
    return p;
}

Partition partition_by_outcome(const Dataset& dataset)
{
    std::array<MomentAccumulator, 2> by_class;
    for (const auto& r : dataset)
        by_class[r.outcome].push(r);

    Partition p{Conditioning::on_outcome, {}};
    for (std::size_t y = 0; y < by_class.size(); ++y)
        if (by_class[y].count() > 0)
            p.groups.push_back(make_group(static_cast<double>(y), by_class[y], dataset.size(), false));
    return p;
}

DecompositionReport sanders(const Dataset& dataset, double tol)
{
    const auto p = partition_by_forecast(dataset);
    const double sharpness = weighted_sum(p, [](const Group& g) { return g.cond_var; });
    const double reliability = weighted_sum(p, [](const Group& g) { return squared(g.key - g.cond_mean); });
    return {Scheme::sanders,
            {{"sharpness", sharpness}, {"reliability", reliability}},
            brier_score(dataset),
            tol};
}

DecompositionReport urr(const Dataset& dataset, double tol)
{
    const auto m = accumulate_moments(dataset);
    const auto p = partition_by_forecast(dataset);
    const double mu_y = m.mu_y();
    const double resolution = weighted_sum(p, [&](const Group& g) { return squared(g.cond_mean - mu_y); });
    const double reliability = weighted_sum(p, [](const Group& g) { return squared(g.key - g.cond_mean); });
    return {Scheme::urr,
            {{"uncertainty", m.var_y()}, {"resolution", resolution, -1}, {"reliability", reliability}},
            brier_score(dataset),
            tol};
}

DecompositionReport excess_correctness(const Dataset& dataset, double tol)
{
    const auto p = partition_by_outcome(dataset);
    const double excess = weighted_sum(p, [](const Group& g) { return g.cond_var; });
    const double correctness = weighted_sum(p, [](const Group& g) { return squared(g.cond_mean - g.key); });
    return {Scheme::excess_correctness,
            {{"excess", excess}, {"correctness", correctness}},
            brier_score(dataset),
            tol};
}

DecompositionReport rdc(const Dataset& dataset, double tol)
{
    const auto m = accumulate_moments(dataset);
    const auto p = partition_by_outcome(dataset);
    const double mu_f = m.mu_f();
    const double discrimination = weighted_sum(p, [&](const Group& g) { return squared(g.cond_mean - mu_f); });
    const double correctness = weighted_sum(p, [](const Group& g) { return squared(g.cond_mean - g.key); });
    return {Scheme::rdc,
            {{"refinement", m.var_f()}, {"discrimination", discrimination, -1}, {"correctness", correctness}},
            brier_score(dataset),
            tol};
}

}  // namespace brierdecomp
