#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "brierdecomp/errors.hpp"

namespace brierdecomp {

/// Library-wide identity tolerance. Comparisons are relative above unit scale
/// and absolute below it; see `within_tolerance`.
inline constexpr double kDefaultTolerance = 1e-12;

/// |a - b| <= tol * max(1, |a|, |b|). Every decomposition term and the Brier
/// score itself live in [-1, 1], so for them this is an absolute bound.
[[nodiscard]] bool within_tolerance(double a, double b, double tol = kDefaultTolerance) noexcept;

struct ForecastRecord {
    double forecast = 0.0;
    std::uint8_t outcome = 0;

    friend bool operator==(const ForecastRecord&, const ForecastRecord&) = default;
};

/// Reason a raw (forecast, outcome) pair is invalid, or nullopt when it is valid.
[[nodiscard]] std::optional<std::string> record_domain_problem(double forecast, long long outcome);

/// Non-empty, validated sequence of records in input order.
class Dataset {
public:
    [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
    [[nodiscard]] std::span<const ForecastRecord> records() const noexcept { return records_; }
    [[nodiscard]] const ForecastRecord& operator[](std::size_t i) const { return records_[i]; }
    [[nodiscard]] auto begin() const noexcept { return records_.begin(); }
    [[nodiscard]] auto end() const noexcept { return records_.end(); }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    explicit Dataset(std::vector<ForecastRecord> records) : records_(std::move(records)) {}

    friend Dataset make_dataset(std::vector<ForecastRecord> records);

    std::vector<ForecastRecord> records_;
};

using RawRecord = std::pair<double, long long>;

/// Throws DomainError naming the first offending index, or EmptyInputError.
/// A forecast of -0.0 is stored as +0.0 so that grouping by value is unambiguous.
Dataset make_dataset(std::span<const RawRecord> pairs);
Dataset make_dataset(std::initializer_list<RawRecord> pairs);
Dataset make_dataset(std::vector<ForecastRecord> records);

class MomentSummary;

/// One-pass bivariate moment accumulator (Welford updates with Chan's merge).
///
/// Running means are kept as pivot + offset, where the pivot is the first
/// observation. Deviations are then formed against an exactly representable
/// anchor, which keeps the co-moments accurate when the data sit in a narrow
/// band far from zero.
class MomentAccumulator {
public:
    void push(double forecast, double outcome) noexcept;
    void push(const ForecastRecord& r) noexcept { push(r.forecast, static_cast<double>(r.outcome)); }
    void merge(const MomentAccumulator& other) noexcept;

    [[nodiscard]] std::size_t count() const noexcept { return n_; }

    /// Throws EmptyInputError when nothing was pushed.
    [[nodiscard]] MomentSummary summary() const;

private:
    friend class MomentSummary;

    std::size_t n_ = 0;
    double pivot_f_ = 0.0;
    double pivot_y_ = 0.0;
    double offset_f_ = 0.0;
    double offset_y_ = 0.0;
    double m2_f_ = 0.0;
    double m2_y_ = 0.0;
    double c_fy_ = 0.0;
};

/// Population (divide-by-n) moments of a non-empty forecast/outcome sample.
class MomentSummary {
public:
    /// Builds a summary directly from stated moments. Intended for callers that
    /// already know the moments; no dataset is implied.
    static MomentSummary from_moments(std::size_t n, double mu_f, double mu_y, double var_f,
                                      double var_y, double cov_fy);

    [[nodiscard]] std::size_t n() const noexcept { return acc_.n_; }
    [[nodiscard]] double mu_f() const noexcept;
    [[nodiscard]] double mu_y() const noexcept;
    /// Clamped at zero.
    [[nodiscard]] double var_f() const noexcept;
    [[nodiscard]] double var_y() const noexcept;
    [[nodiscard]] double cov_fy() const noexcept;
    [[nodiscard]] double sd_f() const noexcept;
    [[nodiscard]] double sd_y() const noexcept;

    [[nodiscard]] const MomentAccumulator& state() const noexcept { return acc_; }

private:
    friend class MomentAccumulator;
    explicit MomentSummary(const MomentAccumulator& acc) : acc_(acc) {}

    MomentAccumulator acc_;
};

[[nodiscard]] MomentSummary accumulate_moments(const Dataset& dataset);
[[nodiscard]] MomentSummary accumulate_moments(std::span<const ForecastRecord> records);
[[nodiscard]] MomentSummary merge_moments(const MomentSummary& a, const MomentSummary& b);

/// (1/n) * sum (f - y)^2, with compensated summation.
[[nodiscard]] double brier_score(const Dataset& dataset);

}  // namespace brierdecomp
