#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "brierdecomp/conditional_decomp.hpp"
#include "brierdecomp/estimators.hpp"
#include "oracle/brute_force.hpp"
#include "support/random_datasets.hpp"

using namespace brierdecomp;

namespace {

const Dataset& d1()
{
    static const Dataset d = make_dataset({{0.8, 1}, {0.2, 0}, {0.6, 1}, {0.4, 0}});
    return d;
}

}  // namespace

TEST_CASE("uniform-width bins")
{
    const auto b = make_bins(BinKind::uniform_width, 4);
    CHECK(b.edges == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(b.bin_count() == 4);
    CHECK_FALSE(b.degenerate);
    CHECK(b.bin_of(0.0) == 0);
    CHECK(b.bin_of(0.25) == 1);
    CHECK(b.bin_of(0.2499) == 0);
    CHECK(b.bin_of(1.0) == 3);

    CHECK_THROWS_AS((void)make_bins(BinKind::uniform_width, 0), InvalidBinCount);
    CHECK_THROWS_AS((void)make_bins(BinKind::quantile, 3), std::invalid_argument);
}

TEST_CASE("quantile bins")
{
    SUBCASE("D1 with two bins splits at the median")
    {
        const auto b = make_bins(BinKind::quantile, 2, &d1());
        CHECK(b.edges == std::vector<double>{0.0, 0.5, 1.0});
    }
    SUBCASE("non-integer positions take the order statistic")
    {
        // n = 4, k = 3: positions 4/3 and 8/3 give x_1 and x_2.
        const auto b = make_bins(BinKind::quantile, 3, &d1());
        CHECK(b.edges == std::vector<double>{0.0, 0.4, 0.6, 1.0});
    }
    SUBCASE("ties collapse repeated edges")
    {
        const auto d = make_dataset({{0.3, 0}, {0.3, 1}, {0.3, 0}, {0.9, 1}});
        const auto b = make_bins(BinKind::quantile, 4, &d);
        CHECK(b.requested_bins == 4);
        CHECK(b.bin_count() < 4);
        for (std::size_t i = 1; i < b.edges.size(); ++i)
            CHECK(b.edges[i] > b.edges[i - 1]);
    }
    SUBCASE("a single distinct forecast is flagged degenerate")
    {
        const auto d = make_dataset({{0.4, 0}, {0.4, 1}});
        const auto b = make_bins(BinKind::quantile, 5, &d);
        CHECK(b.degenerate);
        CHECK(b.bin_count() == 1);
        CHECK(binned_urr(d, b).reconstructs());
    }
}

TEST_CASE("explicit edges are validated")
{
    CHECK(make_bins_from_edges({0.0, 0.3, 1.0}).bin_count() == 2);
    CHECK_THROWS_AS((void)make_bins_from_edges({0.0, 0.5, 0.5, 1.0}), InvalidBinCount);
    CHECK_THROWS_AS((void)make_bins_from_edges({0.1, 1.0}), InvalidBinCount);
    CHECK_THROWS_AS((void)make_bins_from_edges({0.0, 0.9}), InvalidBinCount);
    CHECK_THROWS_AS((void)make_bins_from_edges({0.0}), InvalidBinCount);
}

TEST_CASE("isolating bins hold one distinct forecast each")
{
    const auto b = isolating_bins(d1());
    CHECK(b.bin_count() == 4);
    CHECK(b.bin_of(0.2) != b.bin_of(0.4));

    const double a = 0.7;
    const double next = std::nextafter(a, 1.0);
    const auto tight = isolating_bins(make_dataset({{a, 0}, {next, 1}, {1.0, 1}}));
    CHECK(tight.bin_of(a) != tight.bin_of(next));
    CHECK(tight.bin_of(next) != tight.bin_of(1.0));
}

TEST_CASE("reliability curve")
{
    const auto curve = reliability_curve(d1(), make_bins(BinKind::uniform_width, 4));
    CHECK(curve.n == 4);
    REQUIRE(curve.bins.size() == 4);
    // [0, .25) holds 0.2; [.25, .5) holds 0.4; [.5, .75) holds 0.6; [.75, 1] holds 0.8.
    for (const auto& bin : curve.bins)
        CHECK(bin.count == 1);
    CHECK(*curve.bins[0].mean_forecast == 0.2);
    CHECK(*curve.bins[0].event_frequency == 0.0);
    CHECK(*curve.bins[3].event_frequency == 1.0);

    const auto sparse = reliability_curve(d1(), make_bins(BinKind::uniform_width, 10));
    std::size_t total = 0;
    for (const auto& bin : sparse.bins) {
        total += bin.count;
        CHECK(bin.empty() == !bin.mean_forecast.has_value());
        CHECK(bin.empty() == !bin.event_frequency.has_value());
    }
    CHECK(total == 4);
}

TEST_CASE("binned_urr on D1")
{
    SUBCASE("two quantile bins leave the within-bin forecast variance")
    {
        const auto r = binned_urr(d1(), make_bins(BinKind::quantile, 2, &d1()));
        CHECK(r.value("uncertainty") == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(r.value("resolution") == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(r.value("reliability") == doctest::Approx(0.09).epsilon(1e-12));
        CHECK(r.residual() == doctest::Approx(0.01).epsilon(1e-12));
        CHECK_FALSE(r.reconstructs());
    }
    SUBCASE("isolating bins agree with exact URR")
    {
        const auto r = binned_urr(d1(), isolating_bins(d1()));
        const auto exact = urr(d1());
        CHECK(std::abs(r.residual()) <= 1e-12);
        for (const auto& t : exact.terms)
            CHECK(within_tolerance(r.value(t.name), t.value));
    }
}

TEST_CASE("property: binned residual matches a brute-force within-bin computation")
{
    std::mt19937_64 rng(31337);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 1 + rng() % 400;
        const auto shape = testsupport::random_shape(rng);
        const auto d = testsupport::random_dataset(rng, shape, n);
        const auto pairs = oracle::pairs_of(d);
        CAPTURE(n);
        CAPTURE(static_cast<int>(shape));

        const std::size_t k = 1 + rng() % 20;
        for (const auto& bins : {make_bins(BinKind::uniform_width, k), make_bins(BinKind::quantile, k, &d)}) {
            const auto r = binned_urr(d, bins);
            const auto w = oracle::within_bin(pairs, bins.edges);
            // BS minus the binned terms is the within-bin forecast variance
            // less twice the within-bin covariance of F and Y.
            CHECK(std::abs(r.residual() - (w.forecast_variance - 2.0 * w.covariance)) <= 1e-12);
            if (shape == testsupport::Shape::constant_y)
                CHECK(std::abs(r.residual() - w.forecast_variance) <= 1e-12);
            for (const auto& t : r.terms)
                CHECK(t.value >= 0.0);

            std::size_t total = 0;
            for (const auto& b : reliability_curve(d, bins).bins)
                total += b.count;
            CHECK(total == n);
        }

        const auto isolated = binned_urr(d, isolating_bins(d));
        CHECK(std::abs(isolated.residual()) <= 1e-12);
        const auto exact = urr(d);
        CHECK(std::abs(isolated.value("resolution") - exact.value("resolution")) <= 1e-12);
        CHECK(std::abs(isolated.value("reliability") - exact.value("reliability")) <= 1e-12);
    }
}

TEST_CASE("residual can be negative when forecasts and outcomes co-vary inside a bin")
{
    const auto d = make_dataset({{1.0, 1}, {0.0, 0}});
    const auto one_bin = binned_urr(d, make_bins(BinKind::uniform_width, 1));
    CHECK(one_bin.residual() == doctest::Approx(-0.25));
    CHECK(binned_urr(d, make_bins(BinKind::uniform_width, 2)).residual() == 0.0);
}

TEST_CASE("property: refining bins never increases the within-bin forecast variance")
{
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const auto shape = rep % 2 == 0 ? testsupport::Shape::continuous : testsupport::Shape::constant_y;
        const auto d = testsupport::random_dataset(rng, shape, 1 + rng() % 500);
        const auto pairs = oracle::pairs_of(d);
        double previous_variance = 1.0;
        double previous_residual = 1.0;
        // 1, 2, 4, ..., 64 uniform bins: each scheme refines the one before.
        for (std::size_t k = 1; k <= 64; k *= 2) {
            const auto bins = make_bins(BinKind::uniform_width, k);
            const double variance = oracle::within_bin(pairs, bins.edges).forecast_variance;
            CHECK(variance <= previous_variance + 1e-12);
            previous_variance = variance;
            // With no within-bin covariance the residual is that variance.
            if (shape == testsupport::Shape::constant_y) {
                const double residual = binned_urr(d, bins).residual();
                CHECK(residual <= previous_residual + 1e-12);
                previous_residual = residual;
            }
        }
    }
}
