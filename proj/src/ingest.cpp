#include "brierdecomp/ingest.hpp"

#include <charconv>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "brierdecomp/format.hpp"

namespace brierdecomp {

namespace {

using Lines = std::vector<std::string_view>;

// Splits on LF, strips a trailing CR from each line, and drops the empty piece
// that follows a final newline.
Lines split_lines(std::string_view text)
{
    Lines lines;
    if (text.empty())
        return lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        auto line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    if (!lines.empty() && lines.back().empty() && !text.empty() && text.back() == '\n')
        lines.pop_back();
    return lines;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

template <typename T>
std::optional<T> parse_number(std::string_view field)
{
    T value{};
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end || field.empty())
        return std::nullopt;
    return value;
}

class RecordSink {
public:
    void add(double f, long long y, std::size_t line)
    {
        if (auto problem = record_domain_problem(f, y))
            throw DomainError("line " + std::to_string(line) + ": " + *problem, records_.size(), line);
        records_.push_back({f, static_cast<std::uint8_t>(y)});
    }

    Dataset finish() &&
    {
        if (records_.empty())
            throw EmptyInputError("input contains no records");
        return make_dataset(std::move(records_));
    }

private:
    std::vector<ForecastRecord> records_;
};

void reject_blank(std::string_view line, std::size_t number)
{
    if (trim(line).empty())
        throw ParseError(number, "line " + std::to_string(number) + ": blank line");
}

Dataset ingest_csv(const Lines& lines)
{
    if (lines.empty())
        throw EmptyInputError("input is empty");
    auto header = lines.front();
    if (header.starts_with("\xEF\xBB\xBF"))
        header.remove_prefix(3);
    const auto comma = header.find(',');
    if (comma == std::string_view::npos || trim(header.substr(0, comma)) != "forecast" ||
        trim(header.substr(comma + 1)) != "outcome")
        throw ParseError(1, "line 1: expected header 'forecast,outcome', got '" + std::string(header) + "'");

    RecordSink sink;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t number = i + 1;
        const auto line = lines[i];
        reject_blank(line, number);
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
            throw ParseError(number, "line " + std::to_string(number) + ": expected two comma-separated fields");
        const auto f_text = trim(line.substr(0, comma));
        const auto y_text = trim(line.substr(comma + 1));
        const auto f = parse_number<double>(f_text);
        if (!f)
            throw ParseError(number, "line " + std::to_string(number) + ": forecast '" + std::string(f_text) +
                                         "' is not a decimal number");
        const auto y = parse_number<long long>(y_text);
        if (!y)
            throw ParseError(number, "line " + std::to_string(number) + ": outcome '" + std::string(y_text) +
                                         "' is not an integer literal");
        sink.add(*f, *y, number);
    }
    return std::move(sink).finish();
}

Dataset ingest_jsonl(const Lines& lines)
{
    RecordSink sink;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t number = i + 1;
        const auto line = lines[i];
        reject_blank(line, number);
        const auto where = "line " + std::to_string(number) + ": ";
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(number, where + "invalid JSON (" + e.what() + ")");
        }
        if (!obj.is_object())
            throw ParseError(number, where + "expected a JSON object");
        const auto f = obj.find("f");
        const auto y = obj.find("y");
        if (f == obj.end() || !f->is_number())
            throw ParseError(number, where + "missing numeric field 'f'");
        if (y == obj.end() || !y->is_number())
            throw ParseError(number, where + "missing numeric field 'y'");
        long long outcome = 0;
        if (y->is_number_integer()) {
            outcome = y->get<long long>();
        } else {
            const double v = y->get<double>();
            if (v != 0.0 && v != 1.0)
                throw DomainError(where + "outcome " + format_number(v) + " not in {0, 1}", i, number);
            outcome = static_cast<long long>(v);
        }
        sink.add(f->get<double>(), outcome, number);
    }
    return std::move(sink).finish();
}

}  // namespace

std::optional<InputFormat> input_format_from_name(std::string_view name) noexcept
{
    if (name == "csv")
        return InputFormat::csv;
    if (name == "jsonl")
        return InputFormat::jsonl;
    return std::nullopt;
}

Dataset ingest(std::string_view text, InputFormat format)
{
    const auto lines = split_lines(text);
    if (format == InputFormat::csv)
        return ingest_csv(lines);
    return ingest_jsonl(lines);
}

Dataset ingest(std::istream& in, InputFormat format)
{
    const std::string text(std::istreambuf_iterator<char>(in), {});
    return ingest(std::string_view(text), format);
}

void write_csv(std::ostream& out, const Dataset& dataset)
{
    out << "forecast,outcome\n";
    for (const auto& r : dataset)
        out << format_number(r.forecast) << ',' << static_cast<int>(r.outcome) << '\n';
}

void write_jsonl(std::ostream& out, const Dataset& dataset)
{
    for (const auto& r : dataset)
        out << "{\"f\":" << format_number(r.forecast) << ",\"y\":" << static_cast<int>(r.outcome) << "}\n";
}

}  // namespace brierdecomp
