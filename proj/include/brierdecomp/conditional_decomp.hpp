#pragma once

#include <cstddef>
#include <vector>

#include "brierdecomp/core_data.hpp"
#include "brierdecomp/decompositions.hpp"

namespace brierdecomp {

enum class Conditioning { on_forecast_exact, on_forecast_binned, on_outcome };

/// Per-group conditional statistics. For forecast partitions cond_mean/cond_var
/// describe Y given F = key; for outcome partitions they describe F given Y = key.
struct Group {
    double key = 0.0;
    double weight = 0.0;
    double cond_mean = 0.0;
    double cond_var = 0.0;
    std::size_t members = 0;

    friend bool operator==(const Group&, const Group&) = default;
};

/// Groups are ordered by ascending key.
struct Partition {
    Conditioning conditioning = Conditioning::on_forecast_exact;
    std::vector<Group> groups;
};

/// One group per distinct forecast value. Values are compared exactly, so
/// forecasts that differ only in the last bit form separate groups; coarser
/// grouping is the job of the binned estimators.
[[nodiscard]] Partition partition_by_forecast(const Dataset& dataset);

/// At most two groups, keys 0 and 1. A class absent from the data has no group.
[[nodiscard]] Partition partition_by_outcome(const Dataset& dataset);

/// [sharpness, reliability]
[[nodiscard]] DecompositionReport sanders(const Dataset& dataset, double tol = kDefaultTolerance);

/// BS = uncertainty - resolution + reliability; `resolution` carries sign -1.
[[nodiscard]] DecompositionReport urr(const Dataset& dataset, double tol = kDefaultTolerance);

/// [excess, correctness]
[[nodiscard]] DecompositionReport excess_correctness(const Dataset& dataset,
                                                     double tol = kDefaultTolerance);

/// BS = refinement - discrimination + correctness; `discrimination` carries sign -1.
[[nodiscard]] DecompositionReport rdc(const Dataset& dataset, double tol = kDefaultTolerance);

}  // namespace brierdecomp
