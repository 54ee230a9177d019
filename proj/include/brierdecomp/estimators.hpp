#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "brierdecomp/core_data.hpp"
#include "brierdecomp/decompositions.hpp"

namespace brierdecomp {

enum class BinKind { uniform_width, quantile, explicit_edges };

[[nodiscard]] std::string_view bin_kind_name(BinKind k) noexcept;

/// Bins are half-open [e_i, e_{i+1}) except the last, which is closed so that
/// a forecast of exactly 1 has a home.
struct BinningScheme {
    BinKind kind = BinKind::uniform_width;
    std::size_t requested_bins = 1;
    std::vector<double> edges{0.0, 1.0};
    /// Set when quantile binning found a single distinct forecast value and fell
    /// back to one bin.
    bool degenerate = false;

    [[nodiscard]] std::size_t bin_count() const noexcept { return edges.size() - 1; }
    /// Index of the bin holding `forecast`; total over [0, 1].
    [[nodiscard]] std::size_t bin_of(double forecast) const noexcept;

    friend bool operator==(const BinningScheme&, const BinningScheme&) = default;
};

/// Uniform-width edges over [0, 1], or edges at empirical forecast quantiles.
///
/// Quantile j/k uses the midpoint rule: with sorted forecasts x_0..x_{n-1} and
/// position p = j n / k, the edge is (x_{p-1} + x_p) / 2 when p is an integer
/// and x_{floor(p)} otherwise. Repeated edges are dropped, so the resulting
/// bin_count may be smaller than requested.
///
/// Throws InvalidBinCount for bin_count == 0, and std::invalid_argument when
/// quantile binning is requested without a dataset.
[[nodiscard]] BinningScheme make_bins(BinKind kind, std::size_t bin_count,
                                      const Dataset* dataset = nullptr);

/// Caller-supplied edges: strictly increasing, first 0, last 1.
/// Throws InvalidBinCount otherwise.
[[nodiscard]] BinningScheme make_bins_from_edges(std::vector<double> edges);

/// Edges at midpoints between consecutive distinct forecasts, so every bin
/// holds exactly one distinct forecast value.
[[nodiscard]] BinningScheme isolating_bins(const Dataset& dataset);

struct CurveBin {
    double lower_edge = 0.0;
    double upper_edge = 0.0;
    std::size_t count = 0;
    /// Both empty when count == 0.
    std::optional<double> mean_forecast;
    std::optional<double> event_frequency;

    [[nodiscard]] bool empty() const noexcept { return count == 0; }

    friend bool operator==(const CurveBin&, const CurveBin&) = default;
};

struct ReliabilityCurve {
    std::size_t n = 0;
    std::vector<CurveBin> bins;

    friend bool operator==(const ReliabilityCurve&, const ReliabilityCurve&) = default;
};

[[nodiscard]] ReliabilityCurve reliability_curve(const Dataset& dataset, const BinningScheme& bins);

/// Binned uncertainty - resolution + reliability. The report's residual() is
/// what binning cannot see: the within-bin forecast variance minus twice the
/// within-bin covariance of forecast and outcome. It is zero when no bin holds
/// two distinct forecast values, and reduces to the within-bin forecast
/// variance when outcomes are constant inside each bin.
[[nodiscard]] DecompositionReport binned_urr(const Dataset& dataset, const BinningScheme& bins,
                                             double tol = kDefaultTolerance);

}  // namespace brierdecomp
