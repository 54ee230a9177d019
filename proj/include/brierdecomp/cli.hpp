#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brierdecomp/core_data.hpp"
#include "brierdecomp/decompositions.hpp"
#include "brierdecomp/estimators.hpp"
#include "brierdecomp/report.hpp"

namespace brierdecomp::cli {

enum ExitCode : int { kSuccess = 0, kInvariantViolation = 1, kInputError = 2 };

/// Every exact scheme, in report order.
[[nodiscard]] std::vector<Scheme> all_schemes();

/// Parses a comma-separated list of flag names (bias-variance, yates,
/// alt-yates, sanders, urr, excess-correctness, rdc) or "all". Duplicates are
/// dropped; the result follows report order. Throws std::invalid_argument.
[[nodiscard]] std::vector<Scheme> parse_scheme_list(std::string_view list);

struct ScoreOptions {
    std::string source = "<stdin>";
    std::vector<Scheme> schemes = all_schemes();
    double tolerance = kDefaultTolerance;
    std::optional<std::size_t> bins;
    BinKind bin_kind = BinKind::uniform_width;
    bool reliability_curve = false;
};

/// Bins used for the reliability curve when --bins is not given.
inline constexpr std::size_t kDefaultCurveBins = 10;

/// Computes everything `score` reports. Throws InvariantViolation when a
/// computed quantity breaks a guarantee (negative covariance deficit, an exact
/// scheme that fails to reconstruct the score within tolerance).
[[nodiscard]] ReportDocument build_report(const Dataset& dataset, const ScoreOptions& options);

/// Entry point behind the `brierdecomp` executable. `args[0]` is the program
/// name. Returns the process exit status; nothing is written to `out` on failure.
int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace brierdecomp::cli
