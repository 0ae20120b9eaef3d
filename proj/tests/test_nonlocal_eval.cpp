#include <cmath>
#include <random>

#include "doctest.h"

#include "landis/errors.hpp"
#include "landis/harnack.hpp"
#include "landis/nonlocal_eval.hpp"
#include "support.hpp"
#include "verification/fixtures.hpp"
#include "verification/oracles.hpp"

using namespace landis;

namespace {

OperatorSpec laplacian(int N, double s) {
    const Params p{N, s, 1, 1};
    return OperatorSpec::single(fractional_laplacian_kernel(p));
}

std::vector<KernelSpec> two_kernels(const Params& p) {
    return {KernelSpec{p, Modulation::constant(p.lambda)}, KernelSpec{p, Modulation::constant(p.Lambda)}};
}

}  // namespace

TEST_SUITE("nonlocal_eval") {

TEST_CASE("constants are annihilated") {
    const Params p{1, 0.4, 0.5, 2.0};
    const DomainSpec d = test::line(1.0, 1.0 / 32, 4.0);
    const GridFunction c = GridFunction::sample(d, constant_function(3.5));
    for (const OperatorSpec& op : {laplacian(1, 0.4), OperatorSpec::pucci(true, p), OperatorSpec::pucci(false, p),
                                   OperatorSpec::sup(two_kernels(p), p), OperatorSpec::inf(two_kernels(p), p)}) {
        const Evaluator ev(op, d.h, d.R_cut);
        CHECK(std::abs(ev.at(c, {0.25, 0.0})) <= 1e-12);
    }
    const DomainSpec d2 = test::square(1.0, 1.0 / 8, 3.0);
    const GridFunction c2 = GridFunction::sample(d2, constant_function(-2.0));
    CHECK(std::abs(eval_pucci(c2, {0.0, 0.0}, true, Params{2, 0.5, 1, 2})) <= 1e-12);
}

TEST_CASE("cosines are eigenfunctions") {
    // I cos(k x) = -|k|^(2s) cos(k x)
    const DomainSpec d = test::line(1.0, 1.0 / 256, 64.0);
    const auto cosine = [&](double k) {
        FunctionDescriptor c;
        c.kind = FunctionKind::cosine;
        c.wave = {k, 0.0};
        return GridFunction::sample(d, c);
    };
    for (double s : {0.5, 0.75})
        for (double k : {1.0, 2.0}) {
            const Evaluator ev(laplacian(1, s), d.h, d.R_cut);
            for (double x : {0.0, 0.3}) {
                CAPTURE(s);
                CAPTURE(k);
                CAPTURE(x);
                const double exact = -std::pow(k, 2 * s) * std::cos(k * x);
                CHECK(ev.at(cosine(k), {x, 0.0}) == doctest::Approx(exact).epsilon(1e-3));
            }
        }

    // the oscillating tail decays like rho^(-1/2) at s = 1/4; the far field refuses the
    // default tolerance and is accurate at a looser one
    const Evaluator strict(laplacian(1, 0.25), d.h, d.R_cut);
    CHECK_THROWS_AS(strict.at(cosine(1.0), {0.0, 0.0}), EvaluationError);
    const Evaluator loose(laplacian(1, 0.25), d.h, d.R_cut, QuadratureSpec{0, 1e-4});
    CHECK(loose.at(cosine(1.0), {0.0, 0.0}) == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("Gaussian against the Fourier oracle in 1-D and 2-D") {
    const DomainSpec d = test::line(8.0, 1.0 / 64, 16.0);
    const GridFunction u = GridFunction::sample(d, test::gaussian());
    const Evaluator ev(laplacian(1, 0.3), d.h, d.R_cut);
    for (double x : {0.0, 0.7, 2.5})
        CHECK(ev.at(u, {x, 0.0}) == doctest::Approx(-verification::fractional_laplacian_gaussian(1, 0.3, x))
                                        .epsilon(1e-3)
                                        .scale(1.0));

    const DomainSpec d2 = test::square(4.0, 1.0 / 16, 8.0);
    const GridFunction u2 = GridFunction::sample(d2, test::gaussian());
    const Evaluator ev2(laplacian(2, 0.5), d2.h, d2.R_cut);
    for (const Point& x : {Point{0.0, 0.0}, Point{0.5, -0.25}, Point{1.0, 1.0}}) {
        const double r = std::hypot(x[0], x[1]);
        CHECK(ev2.at(u2, x) ==
              doctest::Approx(-verification::fractional_laplacian_gaussian(2, 0.5, r)).epsilon(1e-2).scale(1.0));
    }
}

TEST_CASE("consistency order against the oracle") {
    const double s = 0.5;
    std::vector<double> err;
    for (double h : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
        const DomainSpec d = test::line(8.0, h, 16.0);
        const GridFunction u = GridFunction::sample(d, test::gaussian());
        const Evaluator ev(laplacian(1, s), h, d.R_cut);
        double e = 0.0;
        for (double x : {0.0, 0.5, 1.0, 1.5})
            e = std::max(e, std::abs(ev.at(u, {x, 0.0}) + verification::fractional_laplacian_gaussian(1, s, x)));
        err.push_back(e);
    }
    CHECK(std::log2(err[0] / err[1]) >= 1.0);
    CHECK(std::log2(err[1] / err[2]) >= 1.0);
}

TEST_CASE("Pucci duality and positive homogeneity") {
    const Params p{1, 0.5, 0.5, 2.0};
    const DomainSpec d = test::line(1.0, 1.0 / 16, 2.0);
    const Evaluator plus(OperatorSpec::pucci(true, p), d.h, d.R_cut);
    const Evaluator minus(OperatorSpec::pucci(false, p), d.h, d.R_cut);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(-1.0, 1.0), T(0.0, 20.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(d.node_count());
        for (std::size_t k = 1; k + 1 < v.size(); ++k) v[k] = U(rng);
        const GridFunction u(d, v, TailModel::zero());
        const double t = T(rng);
        const auto a = plus.apply(u.scaled(-1.0));
        const auto b = minus.apply(u);
        const auto c = plus.apply(u.scaled(t));
        const auto e = plus.apply(u);
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (!std::isfinite(a[k])) continue;
            CHECK(a[k] == doctest::Approx(-b[k]).epsilon(1e-13).scale(1.0));
            CHECK(c[k] == doctest::Approx(t * e[k]).epsilon(1e-13).scale(t));
        }
    }
}

TEST_CASE("brute-force sup over modulations approaches M+") {
    // lower bound for every admissible modulation, and a fine random search gets close
    const Params p{1, 0.5, 1.0, 2.0};
    const DomainSpec d = test::line(2.0, 1.0 / 32, 4.0);
    const GridFunction u = GridFunction::sample(d, test::bump(1.0, 3.0));
    const Point x{0.6, 0.0};
    const double mplus = eval_pucci(u, x, true, p);
    std::mt19937_64 rng(23);
    std::bernoulli_distribution coin(0.5);
    const std::vector<double> edges{0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2};
    double best = -INFINITY;
    for (int trial = 0; trial < 1000; ++trial) {
        Modulation m;
        m.shell_edges = edges;
        m.values.resize(8);
        for (double& v : m.values) v = coin(rng) ? p.Lambda : p.lambda;
        const double v = eval_linear(u, x, KernelSpec{p, m});
        CHECK(v <= mplus + 1e-12);
        best = std::max(best, v);
    }
    CHECK(best >= mplus - 0.05 * std::abs(mplus));
}

TEST_CASE("Isaacs family reductions") {
    const Params p{1, 0.5, 1.0, 2.0};
    const DomainSpec d = test::line(2.0, 1.0 / 32, 4.0);
    const GridFunction u = GridFunction::sample(d, test::gaussian(1.0, 0.7));
    const KernelSpec k{p, Modulation{1, {0.5}, {1.3, 1.9}}};
    for (const Point& x : {Point{0.0, 0.0}, Point{0.4, 0.0}})
        CHECK(eval_isaacs(u, x, OperatorSpec::sup({k}, p)) == eval_linear(u, x, k));

    // 1 - Gaussian has its minimum at 0, so delta >= 0 there
    const GridFunction w = test::sample_fn(d, [](const Point& y) { return 1.0 - std::exp(-y[0] * y[0]); });
    CHECK(eval_isaacs(w, {0.0, 0.0}, OperatorSpec::sup(two_kernels(p), p)) ==
          doctest::Approx(eval_linear(w, {0.0, 0.0}, KernelSpec{p, Modulation::constant(2.0)})).epsilon(1e-14));
    CHECK(eval_isaacs(w, {0.0, 0.0}, OperatorSpec::inf(two_kernels(p), p)) ==
          doctest::Approx(eval_linear(w, {0.0, 0.0}, KernelSpec{p, Modulation::constant(1.0)})).epsilon(1e-14));
}

TEST_CASE("ellipticity sandwich in 2-D") {
    const Params p{2, 0.4, 0.5, 2.0};
    // R_cut past the box diameter keeps far-field rays off the grid
    const DomainSpec d = test::square(1.0, 1.0 / 8, 3.0);
    Modulation m;
    m.sectors = 3;
    m.values = {0.5, 2.0, 1.1};
    const std::vector<KernelSpec> fam{KernelSpec{p, m}, KernelSpec{p, Modulation::constant(1.4)}};
    const Evaluator lo(OperatorSpec::pucci(false, p), d.h, d.R_cut), hi(OperatorSpec::pucci(true, p), d.h, d.R_cut);
    const Evaluator isup(OperatorSpec::sup(fam, p), d.h, d.R_cut), iinf(OperatorSpec::inf(fam, p), d.h, d.R_cut);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const auto random_grid = [&] {
        std::vector<double> v(d.node_count());
        for (double& x : v) x = 0.1 * U(rng);
        return GridFunction(d, v, TailModel::constant(0.0));
    };
    test::WarningCapture quiet;
    for (int trial = 0; trial < 20; ++trial) {
        const GridFunction u = random_grid(), v = random_grid();
        const auto a = lo.apply(GridFunction::combine(1, u, -1, v)), b = hi.apply(GridFunction::combine(1, u, -1, v));
        const Evaluator& I = trial % 2 ? isup : iinf;
        const auto Iu = I.apply(u), Iv = I.apply(v);
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (!std::isfinite(a[k])) continue;
            CHECK(a[k] <= Iu[k] - Iv[k] + 1e-12);
            CHECK(Iu[k] - Iv[k] <= b[k] + 1e-12);
        }
    }
}

TEST_CASE("Pucci operators are monotone in lambda and Lambda") {
    const DomainSpec d = test::line(2.0, 1.0 / 32, 4.0);
    const GridFunction u = GridFunction::sample(d, test::bump(1.0, 3.0));
    for (double x : {0.0, 0.5, 0.9, 1.3}) {
        const Point y{x, 0.0};
        const double narrow_p = eval_pucci(u, y, true, Params{1, 0.5, 1.0, 2.0});
        const double wide_p = eval_pucci(u, y, true, Params{1, 0.5, 0.5, 3.0});
        const double narrow_m = eval_pucci(u, y, false, Params{1, 0.5, 1.0, 2.0});
        const double wide_m = eval_pucci(u, y, false, Params{1, 0.5, 0.5, 3.0});
        CHECK(wide_p >= narrow_p);
        CHECK(wide_m <= narrow_m);
    }
}

TEST_CASE("translation covariance") {
    const DomainSpec d = test::line(4.0, 1.0 / 64, 8.0);
    const double shift = 0.3;
    const GridFunction u = GridFunction::sample(d, test::gaussian());
    const GridFunction v = GridFunction::sample(d, test::gaussian(1.0, 1.0, {shift, 0.0}));
    const Evaluator ev(laplacian(1, 0.5), d.h, d.R_cut);
    for (double x : {-0.5, 0.0, 0.8})
        CHECK(ev.at(v, {x + shift, 0.0}) == doctest::Approx(ev.at(u, {x, 0.0})).epsilon(1e-3).scale(1.0));
}

TEST_CASE("scaling law of the minimal Pucci operator") {
    const Params p{1, 0.5, 0.5, 2.0};
    const DomainSpec d = test::line(4.0, 1.0 / 128, 8.0);
    const GridFunction u = GridFunction::sample(d, test::gaussian(1.0, 1.0, {0.2, 0.0}));
    const Point x0{0.5, 0.0};
    const double r0 = 0.5;
    const GridFunction v = rescale_function(u, x0, r0);
    const double scale = std::pow(r0, 2 * p.s);
    for (double y : {0.0, 0.25, -0.5}) {
        const double lhs = eval_pucci(v, {y, 0.0}, false, p);
        const double rhs = scale * eval_pucci(u, x0 + r0 * Point{y, 0.0}, false, p);
        CHECK(lhs == doctest::Approx(rhs).epsilon(5e-3).scale(1.0));
    }
}

TEST_CASE("serial and parallel sweeps agree bitwise") {
    const Params p{2, 0.5, 0.5, 2.0};
    const DomainSpec d = test::square(1.0, 1.0 / 16, 3.0);
    const GridFunction b = GridFunction::sample(d, test::bump(0.8, 3.0));
    const GridFunction u(d, std::vector<double>(b.values().begin(), b.values().end()), TailModel::zero());
    for (const OperatorSpec& op : {laplacian(2, 0.5), OperatorSpec::pucci(true, p), OperatorSpec::inf(two_kernels(p), p)}) {
        const Evaluator ev(op, d.h, d.R_cut);
        const auto a = ev.apply(u, Exec::serial), b = ev.apply(u, Exec::parallel);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k)
            CHECK((a[k] == b[k] || (std::isnan(a[k]) && std::isnan(b[k]))));
    }
}

TEST_CASE("points too close to the box edge are rejected") {
    const DomainSpec d = test::line(1.0, 1.0 / 16, 2.0);
    const GridFunction u = GridFunction::sample(d, test::gaussian());
    const Evaluator ev(laplacian(1, 0.5), d.h, d.R_cut);
    CHECK_FALSE(ev.evaluable(u, {1.0, 0.0}));
    CHECK_THROWS_AS(ev.at(u, {1.0, 0.0}), InputError);
}

}  // TEST_SUITE
