#include <catch2/catch_amalgamated.hpp>

#include "qmgeo/generators.hpp"
#include "qmgeo/metrize.hpp"
#include "test_helpers.hpp"

using namespace qmgeo;

TEST_CASE("two-point space keeps its single distance at any exponent") {
    SquareMatrix rho(2);
    rho(0, 1) = rho(1, 0) = 5.0;
    const QuasiMetricSpace z({"a", "b"}, rho);
    for (const double eps : {0.3, 0.5, 1.0}) {
        const auto m = chain_metric(z, eps);
        CHECK(m.d_matrix(0, 1) == Catch::Approx(std::pow(5.0, eps)));
        CHECK(m.min_ratio == Catch::Approx(1.0));
    }
}

TEST_CASE("a metric space with epsilon = 1 is returned unchanged") {
    const auto z = make_cantor(1.0 / 3.0, 5);
    const auto m = chain_metric(z, 1.0);
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j)
            CHECK(m.d_matrix(i, j) == Catch::Approx(z.rho(i, j)).epsilon(1e-12));
    CHECK(m.min_ratio == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("snowflake followed by the inverse exponent recovers the base metric") {
    const auto base = make_arithmetic_grid(24);
    const double p = 2.0;
    const auto snow = snowflake_transform(base, p);
    const auto m = chain_metric(snow, 1.0 / p);
    const auto oracle = testing::min_plus_closure(m.d_matrix); // already closed
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = 0; j < base.size(); ++j) {
            CHECK(m.d_matrix(i, j) == Catch::Approx(base.rho(i, j)).epsilon(1e-12));
            CHECK(m.d_matrix(i, j) == Catch::Approx(oracle(i, j)).epsilon(1e-15));
        }
    CHECK(m.min_ratio == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("chain metric agrees with the min-plus closure oracle") {
    const auto z = testing::perturbed_metric_space(40, 9);
    const double eps = std::log(2.0) / std::log(z.k_min());
    const auto m = chain_metric(z, std::min(1.0, eps));

    SquareMatrix w(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j)
            w(i, j) = i == j ? 0.0 : std::pow(z.rho(i, j), m.epsilon);
    const auto oracle = testing::min_plus_closure(w);
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j)
            CHECK(m.d_matrix(i, j) == Catch::Approx(oracle(i, j)).epsilon(1e-13));
}

TEST_CASE("metrized output satisfies the triangle inequality exactly") {
    for (const auto& z : {snowflake_transform(make_cantor(1.0 / 3.0, 6), 2.0),
                          snowflake_transform(make_arithmetic_grid(64), 3.0)}) {
        const double eps = std::log(2.0) / std::log(z.k_min());
        const auto m = chain_metric(z, eps);
        const std::size_t n = z.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    CHECK(m.d_matrix(i, j) <= m.d_matrix(i, k) + m.d_matrix(k, j));
    }
}

TEST_CASE("frink comparison holds when K^eps = 2 on the snowflaked cantor set") {
    const auto z = snowflake_transform(make_cantor(1.0 / 3.0, 6), 2.0); // coefficient 4
    const auto rep = verify_frink_bounds(z, 0.5);
    CHECK(rep.guarantee_active);
    CHECK(rep.pass);
    CHECK(rep.min_ratio >= 0.25 * (1.0 - 1e-12));
}

TEST_CASE("metric input passes with ratio 1") {
    const auto rep = verify_frink_bounds(make_arithmetic_grid(12), 1.0);
    CHECK(rep.pass);
    CHECK(rep.min_ratio == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("guarantee deactivates when K^eps > 2 and the bound is only reported") {
    const auto z = snowflake_transform(make_arithmetic_grid(16), 3.0); // coefficient 8
    const auto rep = verify_frink_bounds(z, 0.5);                      // K^eps ~ 2.83
    CHECK_FALSE(rep.guarantee_active);
    CHECK(rep.pass); // upper bound still asserted
}

TEST_CASE("exponent domain is (0, 1]") {
    const auto z = make_arithmetic_grid(4);
    CHECK_THROWS_AS(chain_metric(z, 0.0), DomainError);
    CHECK_THROWS_AS(chain_metric(z, 1.5), DomainError);
}

TEST_CASE("chain metric is monotone in the input distances") {
    const auto z = testing::perturbed_metric_space(24, 10);
    SquareMatrix bigger = z.matrix();
    SplitMix64 rng(99);
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            const double f = 1.0 + rng.next_double();
            bigger(i, j) = bigger(j, i) = bigger(i, j) * f;
        }
    const QuasiMetricSpace zb(z.labels(), bigger);
    const auto m1 = chain_metric(z, 0.5);
    const auto m2 = chain_metric(zb, 0.5);
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j)
            CHECK(m1.d_matrix(i, j) <= m2.d_matrix(i, j) * (1.0 + 1e-12));
}

TEST_CASE("metrized space round-trips into a valid space") {
    const auto z = snowflake_transform(make_cantor(1.0 / 3.0, 4), 2.0);
    const auto m = chain_metric(z, 0.5);
    const auto ms = metrized_space(z, m);
    CHECK(validate_space(ms.matrix()).pass());
    CHECK(ms.k_min() <= 2.0 + 1e-12);
}
