#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>

#include "brierdecomp/core_data.hpp"

namespace brierdecomp {

enum class InputFormat { csv, jsonl };

[[nodiscard]] std::optional<InputFormat> input_format_from_name(std::string_view name) noexcept;

/// Reads a dataset.
///
/// CSV: header `forecast,outcome`, then one `forecast,outcome` row per line;
/// the outcome must be the integer literal 0 or 1. JSONL: one object per line
/// with numeric fields `f` and `y`. LF or CRLF line endings; a single final
/// newline is allowed, any other blank line is an error.
///
/// Throws ParseError or DomainError carrying the one-based line number, or
/// EmptyInputError when there are no records.
[[nodiscard]] Dataset ingest(std::istream& in, InputFormat format);
[[nodiscard]] Dataset ingest(std::string_view text, InputFormat format);

/// CSV with the header above; forecasts use the shortest representation that
/// reads back to the same double.
void write_csv(std::ostream& out, const Dataset& dataset);
void write_jsonl(std::ostream& out, const Dataset& dataset);

}  // namespace brierdecomp
