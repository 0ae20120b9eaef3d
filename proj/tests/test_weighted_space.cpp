#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"

#include "landis/errors.hpp"
#include "landis/grid_io.hpp"
#include "landis/weighted_norm.hpp"
#include "support.hpp"
#include "verification/oracles.hpp"

using namespace landis;

TEST_SUITE("weighted_space") {

TEST_CASE("weight at sample points") {
    const Params p{1, 0.5, 1.0, 1.0};
    CHECK(weight({0.0, 0.0}, Params{2, 0.3, 1, 1}) == 1.0);
    CHECK(weight({1.0, 0.0}, p) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(weight({-3.0, 0.0}, p) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("weight is radially decreasing") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-20.0, 20.0), S(0.05, 0.95);
    for (int i = 0; i < 10000; ++i) {
        const Params p{1 + i % 2, S(rng), 1, 1};
        Point a{U(rng), p.N == 2 ? U(rng) : 0.0}, b{U(rng), p.N == 2 ? U(rng) : 0.0};
        if (norm(a, p.N) > norm(b, p.N)) std::swap(a, b);
        CHECK(weight(a, p) >= weight(b, p));
    }
}

TEST_CASE("norm of zero and of constants") {
    const DomainSpec d = test::line(4.0, 1.0 / 16, 8.0);
    CHECK(weighted_norm(GridFunction::sample(d, FunctionDescriptor{}), Params{1, 0.5, 1, 1}) == 0.0);

    // midpoint-type error h^2 against the closed forms
    std::vector<double> err;
    for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        const GridFunction one = GridFunction::sample(test::line(4.0, h, 8.0), constant_function(1.0));
        err.push_back(std::abs(weighted_norm(one, Params{1, 0.5, 1, 1}) - std::numbers::pi));
    }
    CHECK(err[2] <= 2e-6);
    CHECK(std::log2(err[0] / err[1]) >= 1.8);
    CHECK(std::log2(err[1] / err[2]) >= 1.8);

    const GridFunction one = GridFunction::sample(test::line(4.0, 1.0 / 64, 8.0), constant_function(1.0));
    CHECK(weighted_norm(one, Params{1, 0.25, 1, 1}) ==
          doctest::Approx(verification::weight_integral(1, 1.5)).epsilon(1e-5));

    const GridFunction one2 = GridFunction::sample(test::square(2.0, 1.0 / 16, 4.0), constant_function(1.0));
    CHECK(weighted_norm(one2, Params{2, 0.5, 1, 1}) ==
          doctest::Approx(verification::weight_integral(2, 3.0)).epsilon(1e-4));
}

TEST_CASE("absolute homogeneity and monotonicity") {
    const Params p{1, 0.4, 1, 1};
    const DomainSpec d = test::line(8.0, 1.0 / 8, 16.0);
    const GridFunction u = GridFunction::sample(d, test::gaussian(1.0, 2.0));
    const double n = weighted_norm(u, p);
    for (double t : {-3.7, 0.0, 0.25, 11.0})
        CHECK(weighted_norm(u.scaled(t), p) == doctest::Approx(std::abs(t) * n).epsilon(1e-12));

    test::WarningCapture quiet;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> a(d.node_count()), b(d.node_count());
    for (std::size_t k = 0; k < a.size(); ++k) {
        b[k] = U(rng);
        a[k] = b[k] * std::abs(U(rng));
    }
    const GridFunction small(d, a, TailModel::power_law(0.5, 1.5));
    const GridFunction big(d, b, TailModel::power_law(-0.9, 1.5));
    CHECK(weighted_norm(small, p) <= weighted_norm(big, p));
}

TEST_CASE("mesh refinement of the norm is second order on a Gaussian") {
    const Params p{1, 0.5, 1, 1};
    std::vector<double> n;
    for (double h : {1.0, 0.5, 0.25})
        n.push_back(weighted_norm(GridFunction::sample(test::line(6.0, h, 12.0), test::gaussian()), p));
    // finer meshes hit round-off: the trapezoid-like rule is spectral on this integrand
    CHECK(std::log2(std::abs(n[1] - n[0]) / std::abs(n[2] - n[1])) >= 1.8);
}

TEST_CASE("evaluation: nodes, interpolation and tails") {
    test::WarningCapture quiet;
    const DomainSpec d = test::line(1.0, 0.5, 2.0);
    const GridFunction u(d, {0.0, 2.0, 0.0, 2.0, 4.0}, TailModel::power_law(1.0, 3.0));
    for (std::size_t k = 0; k < u.size(); ++k) CHECK(u.evaluate(d.node(k)) == u[k]);
    CHECK(u.evaluate({-0.75, 0.0}) == 1.0);
    CHECK(u.evaluate({2.0, 0.0}) == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
    CHECK(u.evaluate({-7.0, 0.0}) == doctest::Approx(std::pow(7.0, -3.0)).epsilon(1e-15));

    const DomainSpec d2 = test::square(1.0, 0.5, 2.0);
    const GridFunction lin = test::sample_fn(d2, [](const Point& x) { return 3.0 * x[0] - x[1] + 0.5; });
    CHECK(lin.evaluate({0.3, -0.7}) == doctest::Approx(3.0 * 0.3 + 0.7 + 0.5).epsilon(1e-14));
}

TEST_CASE("tail mismatch at the box edge warns") {
    test::WarningCapture w;
    const DomainSpec d = test::line(1.0, 0.25, 2.0);
    const GridFunction u(d, std::vector<double>(d.node_count(), 1.0), TailModel::zero());
    CHECK(u.boundary_mismatch() == 1.0);
    (void)weighted_norm(u, Params{});
    CHECK_FALSE(w.messages.empty());
}

TEST_CASE("grid CSV round trip is bit exact") {
    test::WarningCapture quiet;
    const Params p{2, 0.3, 0.5, 2.0};
    const DomainSpec d = test::square(1.0, 0.25, 3.0);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> v(d.node_count());
    for (double& x : v) x = U(rng) / 3.0;
    for (const TailModel& tail : {TailModel::zero(), TailModel::constant(1.0 / 7.0), TailModel::power_law(0.1, 2.6),
                                  TailModel::from_descriptor(test::gaussian(0.7, 0.3, {0.1, -0.2}))}) {
        const GridFunction u(d, v, tail);
        std::stringstream ss;
        write_grid_csv(ss, u, p);
        const LoadedGrid back = read_grid_csv(ss);
        CHECK(back.params == p);
        CHECK(back.u.domain() == d);
        CHECK(back.u.tail().same_as(tail));
        for (std::size_t k = 0; k < v.size(); ++k) CHECK(back.u[k] == v[k]);
        std::stringstream again;
        write_grid_csv(again, back.u, p);
        CHECK(again.str() == ss.str());
    }
}

TEST_CASE("explicit tails without a descriptor cannot be written") {
    const DomainSpec d = test::line(1.0, 0.25, 2.0);
    const GridFunction u = test::sample_fn(d, [](const Point& x) { return x[0]; });
    std::stringstream ss;
    CHECK_THROWS_AS(write_grid_csv(ss, u, Params{}), InputError);
}

TEST_CASE("malformed grid CSV is rejected") {
    std::stringstream ss("params,N,1\nnot a grid\n");
    CHECK_THROWS_AS(read_grid_csv(ss), InputError);
}

}  // TEST_SUITE
