#include <catch2/catch_amalgamated.hpp>

#include "qmgeo/generators.hpp"
#include "qmgeo/space.hpp"
#include "test_helpers.hpp"

using namespace qmgeo;

namespace {

QuasiMetricSpace collinear_012() {
    SquareMatrix rho(3);
    rho(0, 1) = rho(1, 0) = 1.0;
    rho(1, 2) = rho(2, 1) = 1.0;
    rho(0, 2) = rho(2, 0) = 2.0;
    return QuasiMetricSpace({"0", "1", "2"}, rho);
}

} // namespace

TEST_CASE("validator accepts metric matrices and reports K <= 2") {
    const auto z = collinear_012();
    const auto rep = validate_space(z.matrix());
    CHECK(rep.pass());
    CHECK(min_quasimetric_coefficient(z) <= 2.0);
}

TEST_CASE("validator flags positivity failures with the offending pair") {
    SquareMatrix rho(3);
    rho(1, 2) = rho(2, 1) = 1.0;
    rho(0, 2) = rho(2, 0) = 1.0; // rho(0,1) left at zero
    const auto rep = validate_space(rho);
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(rep.positive_off_diagonal);
    CHECK(rep.nonpositive_pair == std::make_pair<std::size_t, std::size_t>(0, 1));
}

TEST_CASE("validator flags asymmetry") {
    SquareMatrix rho(2);
    rho(0, 1) = 1.0;
    rho(1, 0) = 2.0;
    const auto rep = validate_space(rho);
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(rep.symmetric);
}

TEST_CASE("validator rejects malformed input outright") {
    CHECK_THROWS_AS(validate_space(std::vector<std::vector<double>>{{0.0, 1.0}}), MalformedInput);
    SquareMatrix rho(2);
    rho(0, 1) = rho(1, 0) = -1.0;
    CHECK_THROWS_AS(validate_space(rho), MalformedInput);
}

TEST_CASE("coefficient of collinear triple is 2") {
    CHECK(min_quasimetric_coefficient(collinear_012()) == Catch::Approx(2.0));
}

TEST_CASE("coefficient of squared collinear triple is 4, matching brute force") {
    const auto z = snowflake_transform(collinear_012(), 2.0);
    const double oracle = testing::brute_force_k_min(z);
    CHECK(oracle == Catch::Approx(4.0));
    CHECK(min_quasimetric_coefficient(z) == Catch::Approx(oracle));
}

TEST_CASE("ultrametric has coefficient 1") {
    // Two tight clusters far apart: max(legs) always dominates the span.
    SquareMatrix rho(4);
    const double big = 8.0, small = 1.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            const bool same = (i < 2) == (j < 2);
            rho(i, j) = rho(j, i) = same ? small : big;
        }
    const QuasiMetricSpace z({"a", "b", "c", "d"}, rho);
    CHECK(min_quasimetric_coefficient(z) == Catch::Approx(1.0));
}

TEST_CASE("two-point space clamps the coefficient at 1") {
    SquareMatrix rho(2);
    rho(0, 1) = rho(1, 0) = 3.0;
    const QuasiMetricSpace z({"a", "b"}, rho);
    CHECK(min_quasimetric_coefficient(z) == 1.0);
}

TEST_CASE("coefficient needs at least two points") {
    const QuasiMetricSpace z({"a"}, SquareMatrix(1));
    CHECK_THROWS_AS(min_quasimetric_coefficient(z), DomainError);
}

TEST_CASE("depth-1 cantor endpoints") {
    const auto z = make_cantor(1.0 / 3.0, 1);
    REQUIRE(z.size() == 4);
    CHECK(z.rho(0, 1) == Catch::Approx(1.0 / 3.0));
    CHECK(z.rho(0, 3) == Catch::Approx(1.0));
    CHECK(z.rho(1, 2) == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("geometric linear generator lays out 0 and the powers") {
    const auto z = make_geometric(0.5, GeometricMode::linear, 4);
    REQUIRE(z.size() == 5);
    CHECK(z.rho(0, 1) == Catch::Approx(0.5));
    CHECK(z.rho(0, 4) == Catch::Approx(1.0 / 16.0));
}

TEST_CASE("cantor depth 6 has 128 points, validates, and K <= 2") {
    const auto z = make_cantor(1.0 / 3.0, 6);
    REQUIRE(z.size() == 128);
    CHECK(validate_space(z.matrix()).pass());
    CHECK(min_quasimetric_coefficient(z) <= 2.0 + 1e-12);
}

TEST_CASE("every in-range generator output validates") {
    for (const auto& z :
         {make_cantor(0.4, 3), make_cantor(1.0 / 3.0, 5), make_geometric(0.5, GeometricMode::squared, 8),
          make_arithmetic_grid(17), make_euclidean_cloud(testing::random_planar_cloud(20, 7))}) {
        CHECK(validate_space(z.matrix()).pass());
    }
}

TEST_CASE("generator parameters are range-checked") {
    CHECK_THROWS_AS(make_cantor(0.5, 2), DomainError);
    CHECK_THROWS_AS(make_cantor(1.0 / 3.0, -1), DomainError);
    CHECK_THROWS_AS(make_geometric(1.0, GeometricMode::linear, 3), DomainError);
}

TEST_CASE("snowflake with p = 1 is the identity") {
    const auto z = make_cantor(1.0 / 3.0, 3);
    const auto s = snowflake_transform(z, 1.0);
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j) CHECK(s.rho(i, j) == Catch::Approx(z.rho(i, j)));
}

TEST_CASE("snowflake rejects p < 1") {
    CHECK_THROWS_AS(snowflake_transform(collinear_012(), 0.5), DomainError);
}

TEST_CASE("snowflake coefficient matches the brute-force scan and the power law") {
    const auto base = make_cantor(1.0 / 3.0, 4);
    const double p = 2.0;
    const auto s = snowflake_transform(base, p);
    const double oracle = testing::brute_force_k_min(s);
    CHECK(min_quasimetric_coefficient(s) == Catch::Approx(oracle));
    CHECK(min_quasimetric_coefficient(s) ==
          Catch::Approx(std::pow(min_quasimetric_coefficient(base), p)).epsilon(1e-12));
    CHECK(min_quasimetric_coefficient(s) <= 4.0 + 1e-9);
}

TEST_CASE("coefficient is scale invariant") {
    const auto z = make_cantor(1.0 / 3.0, 4);
    const double k = min_quasimetric_coefficient(z);
    for (const double s : {1e-3, 0.7, 42.0}) {
        CHECK(min_quasimetric_coefficient(rescale(z, s)) == Catch::Approx(k).epsilon(1e-12));
    }
}

TEST_CASE("duplicate points are rejected") {
    CHECK_THROWS_AS(make_euclidean_cloud({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}), DomainError);
}
