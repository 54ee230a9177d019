#include "brierdecomp/estimators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "brierdecomp/detail/compensated_sum.hpp"

namespace brierdecomp {

std::string_view bin_kind_name(BinKind k) noexcept
{
    switch (k) {
    case BinKind::uniform_width:
        return "uniform";
    case BinKind::quantile:
        return "quantile";
    case BinKind::explicit_edges:
        return "explicit";
    }
    return "unknown";
}

std::size_t BinningScheme::bin_of(double forecast) const noexcept
{
    const auto it = std::upper_bound(edges.begin(), edges.end(), forecast);
    if (it == edges.begin())
        return 0;
    return std::min(static_cast<std::size_t>(it - edges.begin()) - 1, bin_count() - 1);
}

namespace {

std::vector<double> uniform_edges(std::size_t k)
{
    std::vector<double> edges(k + 1);
    for (std::size_t i = 0; i <= k; ++i)
        edges[i] = static_cast<double>(i) / static_cast<double>(k);
    return edges;
}

std::vector<double> quantile_edges(std::size_t k, const Dataset& dataset)
{
    std::vector<double> sorted;
    sorted.reserve(dataset.size());
    for (const auto& r : dataset)
        sorted.push_back(r.forecast);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    std::vector<double> edges{0.0};
    for (std::size_t j = 1; j < k; ++j) {
        const std::size_t num = j * n;
        const std::size_t pos = num / k;
        double edge;
        if (num % k == 0)
            edge = 0.5 * (sorted[pos - 1] + sorted[pos]);
        else
            edge = sorted[pos];
        if (edge > edges.back() && edge < 1.0)
            edges.push_back(edge);
    }
    edges.push_back(1.0);
    return edges;
}

}  // namespace

BinningScheme make_bins(BinKind kind, std::size_t bin_count, const Dataset* dataset)
{
    if (bin_count == 0)
        throw InvalidBinCount("bin count must be at least 1");
    BinningScheme scheme;
    scheme.kind = kind;
    scheme.requested_bins = bin_count;
    switch (kind) {
    case BinKind::uniform_width:
        scheme.edges = uniform_edges(bin_count);
        break;
    case BinKind::quantile: {
        if (dataset == nullptr)
            throw std::invalid_argument("quantile binning needs a dataset");
        const auto [lo, hi] = std::minmax_element(
            dataset->begin(), dataset->end(),
            [](const ForecastRecord& a, const ForecastRecord& b) { return a.forecast < b.forecast; });
        if (lo->forecast == hi->forecast) {
            scheme.edges = {0.0, 1.0};
            scheme.degenerate = true;
        } else {
            scheme.edges = quantile_edges(bin_count, *dataset);
        }
        break;
    }
    case BinKind::explicit_edges:
        throw std::invalid_argument("explicit edges are built with make_bins_from_edges");
    }
    return scheme;
}

BinningScheme make_bins_from_edges(std::vector<double> edges)
{
    if (edges.size() < 2 || edges.front() != 0.0 || edges.back() != 1.0)
        throw InvalidBinCount("edges must start at 0, end at 1 and describe at least one bin");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw InvalidBinCount("edges must be strictly increasing (index " + std::to_string(i) + ")");
    BinningScheme scheme;
    scheme.kind = BinKind::explicit_edges;
    scheme.requested_bins = edges.size() - 1;
    scheme.edges = std::move(edges);
    return scheme;
}

BinningScheme isolating_bins(const Dataset& dataset)
{
    std::vector<double> values;
    values.reserve(dataset.size());
    for (const auto& r : dataset)
        values.push_back(r.forecast);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<double> edges{0.0};
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double a = values[i - 1];
        const double b = values[i];
        double mid = a + 0.5 * (b - a);
        // Adjacent doubles: the midpoint can round down onto a, which would
        // put a into the upper bin.
        if (mid <= a)
            mid = b;
        if (mid < 1.0)
            edges.push_back(mid);
    }
    edges.push_back(1.0);
    return make_bins_from_edges(std::move(edges));
}

namespace {

std::vector<MomentAccumulator> accumulate_bins(const Dataset& dataset, const BinningScheme& bins)
{
    std::vector<MomentAccumulator> acc(bins.bin_count());
    for (const auto& r : dataset)
        acc[bins.bin_of(r.forecast)].push(r);
    return acc;
}

}  // namespace

ReliabilityCurve reliability_curve(const Dataset& dataset, const BinningScheme& bins)
{
    const auto acc = accumulate_bins(dataset, bins);
    ReliabilityCurve curve;
    curve.n = dataset.size();
    curve.bins.reserve(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
        CurveBin b{bins.edges[i], bins.edges[i + 1], acc[i].count(), std::nullopt, std::nullopt};
        if (acc[i].count() > 0) {
            const auto s = acc[i].summary();
            b.mean_forecast = s.mu_f();
            b.event_frequency = s.mu_y();
        }
        curve.bins.push_back(b);
    }
    return curve;
}

DecompositionReport binned_urr(const Dataset& dataset, const BinningScheme& bins, double tol)
{
    const auto m = accumulate_moments(dataset);
    const auto curve = reliability_curve(dataset, bins);
    const double n = static_cast<double>(dataset.size());
    const double mu_y = m.mu_y();

    detail::CompensatedSum resolution;
    detail::CompensatedSum reliability;
    for (const auto& b : curve.bins) {
        if (b.empty())
            continue;
        const double w = static_cast<double>(b.count) / n;
        const double freq = *b.event_frequency;
        const double gap = *b.mean_forecast - freq;
        resolution += w * (freq - mu_y) * (freq - mu_y);
        reliability += w * gap * gap;
    }
    return {Scheme::binned_urr,
            {{"uncertainty", m.var_y()},
             {"resolution", resolution.value(), -1},
             {"reliability", reliability.value()}},
            brier_score(dataset),
            tol};
}

}  // namespace brierdecomp
