#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "brierdecomp/core_data.hpp"
#include "brierdecomp/decompositions.hpp"
#include "brierdecomp/estimators.hpp"

namespace brierdecomp {

inline constexpr std::string_view kToolName = "brierdecomp";
inline constexpr std::string_view kToolVersion = "1.0.0";

struct MomentsView {
    std::size_t n = 0;
    double mu_f = 0.0;
    double mu_y = 0.0;
    double var_f = 0.0;
    double var_y = 0.0;
    double cov_fy = 0.0;

    static MomentsView of(const MomentSummary& m);

    friend bool operator==(const MomentsView&, const MomentsView&) = default;
};

struct ReportDocument {
    std::string tool_version{kToolVersion};
    std::string source;
    std::size_t n = 0;
    double brier = 0.0;
    double tolerance = kDefaultTolerance;
    MomentsView moments;
    /// Pearson correlation and the correlation form of the covariance deficit;
    /// both absent when either standard deviation is zero.
    std::optional<double> correlation;
    std::optional<double> deficit_correlation_form;
    std::vector<DecompositionReport> schemes;
    OptimalityDiagnosis optimality;
    std::optional<BinningScheme> binning;
    std::optional<DecompositionReport> binned;
    std::optional<ReliabilityCurve> curve;

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

void to_json(nlohmann::ordered_json& j, const Term& t);
void from_json(const nlohmann::ordered_json& j, Term& t);
void to_json(nlohmann::ordered_json& j, const DecompositionReport& r);
void from_json(const nlohmann::ordered_json& j, DecompositionReport& r);
void to_json(nlohmann::ordered_json& j, const MomentsView& m);
void from_json(const nlohmann::ordered_json& j, MomentsView& m);
void to_json(nlohmann::ordered_json& j, const OptimalityDiagnosis& d);
void from_json(const nlohmann::ordered_json& j, OptimalityDiagnosis& d);
void to_json(nlohmann::ordered_json& j, const BinningScheme& b);
void from_json(const nlohmann::ordered_json& j, BinningScheme& b);
void to_json(nlohmann::ordered_json& j, const ReliabilityCurve& c);
void from_json(const nlohmann::ordered_json& j, ReliabilityCurve& c);
void to_json(nlohmann::ordered_json& j, const ReportDocument& doc);
void from_json(const nlohmann::ordered_json& j, ReportDocument& doc);

/// Pretty-printed JSON (two-space indent) followed by a newline.
void write_json(std::ostream& out, const ReportDocument& doc);
[[nodiscard]] ReportDocument parse_report(std::string_view json_text);

/// Aligned human-readable rendering. Numbers use the same shortest round-trip
/// form as the JSON output, so both carry identical values.
void write_text(std::ostream& out, const ReportDocument& doc);

}  // namespace brierdecomp
