#include "brierdecomp/core_data.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "brierdecomp/detail/compensated_sum.hpp"

namespace brierdecomp {

bool within_tolerance(double a, double b, double tol) noexcept
{
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

std::optional<std::string> record_domain_problem(double forecast, long long outcome)
{
    if (!std::isfinite(forecast) || forecast < 0.0 || forecast > 1.0) {
        std::ostringstream os;
        os.precision(17);
        os << "forecast " << forecast << " outside [0, 1]";
        return os.str();
    }
    if (outcome != 0 && outcome != 1)
        return "outcome " + std::to_string(outcome) + " not in {0, 1}";
    return std::nullopt;
}

namespace {

void throw_domain(std::size_t index, const std::string& reason)
{
    throw DomainError("record " + std::to_string(index) + ": " + reason, index);
}

}  // namespace

Dataset make_dataset(std::span<const RawRecord> pairs)
{
    if (pairs.empty())
        throw EmptyInputError("dataset must contain at least one record");
    std::vector<ForecastRecord> records;
    records.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [f, y] = pairs[i];
        if (auto problem = record_domain_problem(f, y))
            throw_domain(i, *problem);
        records.push_back({f, static_cast<std::uint8_t>(y)});
    }
    return make_dataset(std::move(records));
}

Dataset make_dataset(std::initializer_list<RawRecord> pairs)
{
    return make_dataset(std::span<const RawRecord>(pairs.begin(), pairs.size()));
}

Dataset make_dataset(std::vector<ForecastRecord> records)
{
    if (records.empty())
        throw EmptyInputError("dataset must contain at least one record");
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (auto problem = record_domain_problem(records[i].forecast, records[i].outcome))
            throw_domain(i, *problem);
        records[i].forecast += 0.0;
    }
    return Dataset(std::move(records));
}

void MomentAccumulator::push(double forecast, double outcome) noexcept
{
    if (n_ == 0) {
        pivot_f_ = forecast;
        pivot_y_ = outcome;
    }
    ++n_;
    const double n = static_cast<double>(n_);
    const double xf = forecast - pivot_f_;
    const double xy = outcome - pivot_y_;
    const double df = xf - offset_f_;
    const double dy = xy - offset_y_;
    offset_f_ += df / n;
    offset_y_ += dy / n;
    m2_f_ += df * (xf - offset_f_);
    m2_y_ += dy * (xy - offset_y_);
    c_fy_ += df * (xy - offset_y_);
}

void MomentAccumulator::merge(const MomentAccumulator& other) noexcept
{
    if (other.n_ == 0)
        return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    // Difference of means, expressed against this accumulator's pivot.
    const double df = (other.pivot_f_ - pivot_f_) + (other.offset_f_ - offset_f_);
    const double dy = (other.pivot_y_ - pivot_y_) + (other.offset_y_ - offset_y_);
    const double w = na * nb / n;
    offset_f_ += df * (nb / n);
    offset_y_ += dy * (nb / n);
    m2_f_ += other.m2_f_ + df * df * w;
    m2_y_ += other.m2_y_ + dy * dy * w;
    c_fy_ += other.c_fy_ + df * dy * w;
    n_ += other.n_;
}

MomentSummary MomentAccumulator::summary() const
{
    if (n_ == 0)
        throw EmptyInputError("no records accumulated");
    return MomentSummary(*this);
}

MomentSummary MomentSummary::from_moments(std::size_t n, double mu_f, double mu_y, double var_f,
                                          double var_y, double cov_fy)
{
    if (n == 0)
        throw EmptyInputError("moment summary requires n >= 1");
    MomentAccumulator acc;
    const double nd = static_cast<double>(n);
    acc.n_ = n;
    acc.pivot_f_ = mu_f;
    acc.pivot_y_ = mu_y;
    acc.m2_f_ = var_f * nd;
    acc.m2_y_ = var_y * nd;
    acc.c_fy_ = cov_fy * nd;
    return MomentSummary(acc);
}

double MomentSummary::mu_f() const noexcept
{
    return std::clamp(acc_.pivot_f_ + acc_.offset_f_, 0.0, 1.0);
}

double MomentSummary::mu_y() const noexcept
{
    return std::clamp(acc_.pivot_y_ + acc_.offset_y_, 0.0, 1.0);
}

double MomentSummary::var_f() const noexcept
{
    return std::max(acc_.m2_f_ / static_cast<double>(acc_.n_), 0.0);
}

double MomentSummary::var_y() const noexcept
{
    return std::max(acc_.m2_y_ / static_cast<double>(acc_.n_), 0.0);
}

double MomentSummary::cov_fy() const noexcept
{
    return acc_.c_fy_ / static_cast<double>(acc_.n_);
}

double MomentSummary::sd_f() const noexcept { return std::sqrt(var_f()); }
double MomentSummary::sd_y() const noexcept { return std::sqrt(var_y()); }

MomentSummary accumulate_moments(std::span<const ForecastRecord> records)
{
    MomentAccumulator acc;
    for (const auto& r : records)
        acc.push(r);
    return acc.summary();
}

MomentSummary accumulate_moments(const Dataset& dataset)
{
    return accumulate_moments(dataset.records());
}

MomentSummary merge_moments(const MomentSummary& a, const MomentSummary& b)
{
    MomentAccumulator acc = a.state();
    acc.merge(b.state());
    return acc.summary();
}

double brier_score(const Dataset& dataset)
{
    detail::CompensatedSum sum;
    for (const auto& r : dataset) {
        const double d = r.forecast - static_cast<double>(r.outcome);
        sum += d * d;
    }
    return std::clamp(sum.value() / static_cast<double>(dataset.size()), 0.0, 1.0);
}

}  // namespace brierdecomp
