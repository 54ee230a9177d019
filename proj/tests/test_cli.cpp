#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "brierdecomp/cli.hpp"
#include "brierdecomp/ingest.hpp"

using namespace brierdecomp;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args, const std::string& input = "")
{
    args.insert(args.begin(), "brierdecomp");
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    const int status = cli::run(args, in, out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const std::filesystem::path kGolden{BRIERDECOMP_GOLDEN_DIR};

const std::string kD1 = "forecast,outcome\n0.8,1\n0.2,0\n0.6,1\n0.4,0\n";

}  // namespace

TEST_CASE("scheme lists")
{
    CHECK(cli::parse_scheme_list("all") == cli::all_schemes());
    CHECK(cli::parse_scheme_list("urr,alt-yates,urr") == std::vector<Scheme>{Scheme::alt_yates, Scheme::urr});
    CHECK_THROWS_AS((void)cli::parse_scheme_list("alt_yates"), std::invalid_argument);
    CHECK_THROWS_AS((void)cli::parse_scheme_list(""), std::invalid_argument);
}

TEST_CASE("score matches the frozen D1 reports")
{
    const auto d1 = slurp(kGolden / "d1.csv");
    REQUIRE(d1 == kD1);

    const auto text = run_cli({"score"}, d1);
    CHECK(text.status == 0);
    CHECK(text.out == slurp(kGolden / "d1_all.txt"));

    const auto json = run_cli({"score", "--output", "json"}, d1);
    CHECK(json.status == 0);
    CHECK(json.out == slurp(kGolden / "d1_all.json"));

    const auto binned = run_cli({"score", "--bins", "2", "--reliability-curve", "--output", "json"}, d1);
    CHECK(binned.status == 0);
    CHECK(binned.out == slurp(kGolden / "d1_binned.json"));

    const auto from_file = run_cli({"score", "--input", (kGolden / "d1.csv").string(), "--output", "json"});
    CHECK(from_file.status == 0);
    CHECK(parse_report(from_file.out).source == (kGolden / "d1.csv").string());
}

TEST_CASE("every reported exact scheme reconstructs the score")
{
    const auto r = run_cli({"score", "--schemes", "all", "--output", "json"}, kD1);
    REQUIRE(r.status == 0);
    const auto doc = parse_report(r.out);
    CHECK(doc.schemes.size() == 7);
    for (const auto& s : doc.schemes)
        CHECK(s.reconstructs());
}

TEST_CASE("scheme selection and jsonl input")
{
    const auto r = run_cli({"score", "--format", "jsonl", "--schemes", "alt-yates", "--output", "json"},
                           "{\"f\":0.8,\"y\":1}\n{\"f\":0.2,\"y\":0}\n");
    REQUIRE(r.status == 0);
    const auto doc = parse_report(r.out);
    REQUIRE(doc.schemes.size() == 1);
    CHECK(doc.schemes[0].scheme == Scheme::alt_yates);
    CHECK_FALSE(doc.binning.has_value());
}

TEST_CASE("input errors exit with status 2 and write nothing to stdout")
{
    const auto bad_value = run_cli({"score"}, "forecast,outcome\n0.8,1\n1.5,1\n");
    CHECK(bad_value.status == 2);
    CHECK(bad_value.out.empty());
    CHECK(bad_value.err.find("line 3") != std::string::npos);

    const auto bad_outcome = run_cli({"score"}, "forecast,outcome\n0.8,2\n");
    CHECK(bad_outcome.status == 2);
    CHECK(bad_outcome.err.find("line 2") != std::string::npos);

    CHECK(run_cli({"score"}, "forecast,outcome\n").status == 2);
    CHECK(run_cli({"score"}, "").status == 2);
    CHECK(run_cli({"score", "--schemes", "bogus"}, kD1).status == 2);
    CHECK(run_cli({"score", "--tol", "0"}, kD1).status == 2);
    CHECK(run_cli({"score", "--tol", "-1"}, kD1).status == 2);
    CHECK(run_cli({"score", "--bins", "0"}, kD1).status == 2);
    CHECK(run_cli({"score", "--input", "/nonexistent/file.csv"}).status == 2);
    CHECK(run_cli({"score", "--output", "xml"}, kD1).status == 2);
    CHECK(run_cli({}).status == 2);
    CHECK(run_cli({"generate"}).status == 2);
    CHECK(run_cli({"generate", "--kind", "nope"}).status == 2);
    CHECK(run_cli({"generate", "--kind", "constant", "--constant", "2"}).status == 2);
    CHECK(run_cli({"generate", "--kind", "perfect", "--n", "0"}).status == 2);
}

TEST_CASE("an impossible tolerance is reported as an invariant violation")
{
    // A tolerance far below rounding error cannot be met by the moment-based
    // schemes on this dataset.
    const auto r = run_cli({"score", "--tol", "1e-300"}, kD1);
    CHECK(r.status == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("invariant") != std::string::npos);
}

TEST_CASE("generate then score")
{
    const auto g = run_cli({"generate", "--kind", "calibrated-two-level", "--n", "1000", "--seed", "5"});
    REQUIRE(g.status == 0);
    const auto again = run_cli({"generate", "--kind", "calibrated-two-level", "--n", "1000", "--seed", "5"});
    CHECK(g.out == again.out);
    CHECK(ingest(g.out, InputFormat::csv).size() == 1000);

    const auto s = run_cli({"score", "--output", "json"}, g.out);
    CHECK(s.status == 0);

    const auto perfect = run_cli({"generate", "--kind", "perfect", "--n", "200", "--format", "jsonl"});
    REQUIRE(perfect.status == 0);
    const auto p = run_cli({"score", "--format", "jsonl", "--output", "json"}, perfect.out);
    REQUIRE(p.status == 0);
    const auto doc = parse_report(p.out);
    CHECK(doc.brier == 0.0);
    CHECK(doc.optimality.is_perfect);

    const auto clipped = run_cli({"generate", "--kind", "biased-shift", "--delta", "0.5"});
    CHECK(clipped.status == 0);
    CHECK(clipped.err.find("clipped") != std::string::npos);
}

TEST_CASE("version and help")
{
    const auto v = run_cli({"--version"});
    CHECK(v.status == 0);
    CHECK(v.out.find("1.0.0") != std::string::npos);
    CHECK(run_cli({"score", "--help"}).status == 0);
}
