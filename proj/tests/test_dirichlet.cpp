#include <cmath>
#include <random>

#include "doctest.h"

#include "landis/dirichlet.hpp"
#include "landis/errors.hpp"
#include "landis/nonlocal_eval.hpp"
#include "support.hpp"
#include "verification/fixtures.hpp"
#include "verification/oracles.hpp"

using namespace landis;
using verification::fractional_operator;

namespace {

const Params kPucci{1, 0.5, 0.5, 2.0};

std::vector<OperatorSpec> operators() {
    const std::vector<KernelSpec> fam{KernelSpec{kPucci, Modulation::constant(0.7)},
                                      KernelSpec{kPucci, Modulation{1, {0.3}, {2.0, 0.5}}}};
    return {fractional_operator(), OperatorSpec::pucci(true, kPucci), OperatorSpec::pucci(false, kPucci),
            OperatorSpec::sup(fam, kPucci), OperatorSpec::inf(fam, kPucci)};
}

DirichletProblem problem(const OperatorSpec& op, double V, const FunctionDescriptor& f, const FunctionDescriptor& g,
                         double h = 1.0 / 32) {
    return DirichletProblem::from_functions(test::line(1.0, h, 2.0), op, constant_function(V), f, g);
}

double interior_min(const GridFunction& u) {
    double m = INFINITY;
    for (std::size_t k = 0; k < u.size(); ++k)
        if (u.domain().contains(u.domain().node(k))) m = std::min(m, u[k]);
    return m;
}

}  // namespace

TEST_SUITE("dirichlet") {

TEST_CASE("zero data gives the zero solution") {
    for (const OperatorSpec& op : operators()) {
        const auto [u, rep] = solve(problem(op, -0.3, FunctionDescriptor{}, FunctionDescriptor{}), 1e-12);
        CHECK(rep.converged);
        for (std::size_t k = 0; k < u.size(); ++k) CHECK(u[k] == 0.0);
    }
}

TEST_CASE("constants are reproduced") {
    for (const OperatorSpec& op : operators()) {
        const auto [u1, r1] = solve(problem(op, 0.0, FunctionDescriptor{}, constant_function(1.0)), 1e-12);
        CHECK(r1.converged);
        for (std::size_t k = 0; k < u1.size(); ++k) CHECK(u1[k] == doctest::Approx(1.0).epsilon(1e-10));
        // g = c, f = V c
        const auto [u2, r2] = solve(problem(op, -0.7, constant_function(-1.4), constant_function(2.0)), 1e-12);
        for (std::size_t k = 0; k < u2.size(); ++k) CHECK(u2[k] == doctest::Approx(2.0).epsilon(1e-10));
    }
}

TEST_CASE("Getoor profile on (-1, 1)") {
    const DirichletProblem p = verification::getoor_problem(1.0 / 64);
    const auto [u, rep] = solve(p, 1e-10);
    CHECK(rep.converged);
    CHECK(rep.residual_sup <= 1e-10);
    CHECK(u.evaluate({0.0, 0.0}) == doctest::Approx(1.0).epsilon(0.01));
    double e = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
        e = std::max(e, std::abs(u[k] - verification::getoor_profile(1, 0.5, std::abs(p.domain.node(k)[0]))));
    CHECK(e <= 0.05);
}

TEST_CASE("smooth planted solution converges at first order or better") {
    // u* = exp(-x^2) everywhere, f = -(-Delta)^(1/2) u* from the Fourier oracle
    FunctionDescriptor g;
    g.kind = FunctionKind::gaussian;
    std::vector<double> err;
    for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        const DomainSpec d = test::line(1.0, h, 2.0);
        std::vector<double> fv(d.node_count());
        for (std::size_t k = 0; k < fv.size(); ++k)
            fv[k] = -verification::fractional_laplacian_gaussian(1, 0.5, std::abs(d.node(k)[0]));
        test::WarningCapture quiet;
        const DirichletProblem p{d, fractional_operator(), GridFunction::sample(d, FunctionDescriptor{}),
                                 GridFunction(d, fv, TailModel::zero()), GridFunction::sample(d, g), {}};
        const GridFunction u = solve(p, 1e-12).first;
        double e = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) e = std::max(e, std::abs(u[k] - g(d.node(k))));
        err.push_back(e);
    }
    CHECK(std::log2(err[0] / err[1]) >= 1.0);
    CHECK(std::log2(err[1] / err[2]) >= 1.0);
}

TEST_CASE("residual of converged, zero and manufactured solutions") {
    for (const OperatorSpec& op : operators()) {
        const DirichletProblem p = problem(op, -0.5, test::gaussian(-1.0, 0.5), test::gaussian(0.3, 2.0));
        const auto [u, rep] = solve(p, 1e-11);
        const GridFunction r = residual(p, u);
        double m = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) m = std::max(m, std::abs(r[k]));
        CHECK(m <= 1e-11);
        CHECK(m == doctest::Approx(rep.residual_sup).epsilon(1e-6).scale(1e-11));
    }
    const DirichletProblem z = problem(fractional_operator(), -0.5, FunctionDescriptor{}, FunctionDescriptor{});
    const GridFunction r0 = residual(z, GridFunction::sample(z.domain, FunctionDescriptor{}));
    for (std::size_t k = 0; k < r0.size(); ++k) CHECK(r0[k] == 0.0);

    // f := I u* + V u* at the interior nodes
    const DomainSpec d = test::line(1.0, 1.0 / 32, 2.0);
    const OperatorSpec op = OperatorSpec::pucci(true, kPucci);
    const GridFunction ustar = GridFunction::sample(d, test::gaussian(1.0, 0.6));
    const Evaluator ev(op, d.h, d.R_cut);
    std::vector<double> fv(d.node_count(), 0.0);
    for (std::size_t k = 0; k < fv.size(); ++k)
        if (d.contains(d.node(k))) fv[k] = ev.at(ustar, d.node(k)) - 0.5 * ustar[k];
    test::WarningCapture quiet;
    const DirichletProblem planted{d, op, GridFunction::sample(d, constant_function(-0.5)),
                                   GridFunction(d, fv, TailModel::zero()), ustar, {}};
    const GridFunction r = residual(planted, ustar);
    for (std::size_t k = 0; k < r.size(); ++k) CHECK(std::abs(r[k]) <= 1e-12);
}

TEST_CASE("half eigenvalues") {
    const DomainSpec d = test::line(1.0, 1.0 / 32, 2.0);
    for (const OperatorSpec& op : operators()) {
        const HalfEigenvalues e0 = estimate_half_eigenvalues(d, op, GridFunction::sample(d, FunctionDescriptor{}));
        CHECK(e0.reliable());
        CHECK(e0.lambda_plus > 0.0);
        CHECK(e0.lambda_minus > 0.0);
        const HalfEigenvalues big = estimate_half_eigenvalues(d, op, GridFunction::sample(d, constant_function(20.0)));
        CHECK(std::min(big.lambda_plus, big.lambda_minus) < 0.0);
    }
    // zero-order shift is exact for a linear operator
    const OperatorSpec lin = fractional_operator();
    const HalfEigenvalues a = estimate_half_eigenvalues(d, lin, GridFunction::sample(d, FunctionDescriptor{}));
    const HalfEigenvalues b = estimate_half_eigenvalues(d, lin, GridFunction::sample(d, constant_function(-1.0)));
    CHECK(b.lambda_plus - a.lambda_plus == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(b.lambda_minus - a.lambda_minus == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("comparison check") {
    for (const OperatorSpec& op : operators()) {
        const DirichletProblem p = problem(op, -0.4, test::gaussian(-1.0, 0.5), test::gaussian(0.5, 1.0));
        const GridFunction u = solve(p, 1e-11).first;
        CHECK(comparison_check(p, u, u).flag());
        const GridFunction lifted = GridFunction::combine(1.0, u, 1.0, GridFunction::sample(p.domain, constant_function(0.25)));
        CHECK(comparison_check(p, u, lifted).flag());
        CHECK(comparison_check(p, lifted, u).outcome != Comparison::holds);
    }
}

TEST_CASE("randomized monotone data") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int trial = 0;
    for (const OperatorSpec& op : operators()) {
        for (int rep = 0; rep < 2; ++rep, ++trial) {
            const double V = -U(rng), a = 2.0 * U(rng) - 1.0, df = U(rng), dg = U(rng);
            const DirichletProblem p2 = problem(op, V, test::gaussian(a, 0.5), test::gaussian(U(rng), 1.5));
            const auto f1 = [&](const Point& x) { return p2.f.evaluate(x) + df; };
            const auto g1 = [&](const Point& x) { return p2.g.evaluate(x) - dg * std::exp(-x[0] * x[0]); };
            const DirichletProblem p1{p2.domain, op, p2.V, test::sample_fn(p2.domain, f1), test::sample_fn(p2.domain, g1), {}};
            const GridFunction u1 = solve(p1, 1e-11).first, u2 = solve(p2, 1e-11).first;
            CAPTURE(trial);
            for (std::size_t k = 0; k < u1.size(); ++k) CHECK(u1[k] <= u2[k] + 1e-12);
            CHECK(comparison_check(p2, u1, u2).flag());
        }
    }
}

TEST_CASE("discrete maximum and strong minimum principles") {
    for (const OperatorSpec& op : operators()) {
        // V <= 0, f >= 0, g <= 0 gives u <= 0
        const GridFunction u = solve(problem(op, -0.5, test::bump(0.5, 2.0), test::gaussian(-0.5, 3.0)), 1e-11).first;
        for (std::size_t k = 0; k < u.size(); ++k) CHECK(u[k] <= 1e-14);

        // f <= 0, g >= 0: strictly positive inside, or identically zero
        const GridFunction w = solve(problem(op, -0.5, FunctionDescriptor{}, test::bump(0.3, 2.0, {1.5, 0.0})), 1e-11).first;
        CHECK(interior_min(w) > 0.0);
        const GridFunction z = solve(problem(op, -0.5, FunctionDescriptor{}, FunctionDescriptor{}), 1e-11).first;
        CHECK(interior_min(z) == 0.0);
    }
}

TEST_CASE("the damped update is order preserving") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> U(-1.0, 1.0), P(0.0, 0.5);
    for (const OperatorSpec& op : operators()) {
        const DirichletScheme s(problem(op, -0.6, test::gaussian(0.4, 0.5), test::gaussian(0.2, 2.0)));
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> u(s.unknowns()), v(s.unknowns());
            for (std::size_t i = 0; i < u.size(); ++i) {
                u[i] = U(rng);
                v[i] = u[i] + P(rng);
            }
            const auto a = s.damped_step(u, 0.9), b = s.damped_step(v, 0.9);
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] <= b[i] + 1e-14);
        }
    }
}

TEST_CASE("fixed point and policy iteration agree") {
    for (const OperatorSpec& op : operators()) {
        const DirichletProblem p = problem(op, -0.5, test::gaussian(-1.0, 0.5), test::gaussian(0.5, 1.0), 1.0 / 16);
        SolveOptions fp;
        fp.method = SolveMethod::fixed_point;
        const auto [a, ra] = solve(p, 1e-11);
        const auto [b, rb] = solve(p, 1e-11, fp);
        CHECK(ra.converged);
        CHECK(rb.converged);
        CHECK(test::max_abs_diff(a, b) <= 1e-9);
    }
}

TEST_CASE("serial and parallel solves agree bitwise") {
    for (const OperatorSpec& op : operators()) {
        const DirichletProblem p = problem(op, -0.5, test::gaussian(-1.0, 0.5), test::gaussian(0.5, 1.0));
        SolveOptions ser, par;
        ser.exec = Exec::serial;
        const GridFunction a = solve(p, 1e-11, ser).first, b = solve(p, 1e-11, par).first;
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
    }
}

TEST_CASE("invalid inputs are rejected") {
    const DirichletProblem p = problem(fractional_operator(), 0.0, FunctionDescriptor{}, FunctionDescriptor{});
    CHECK_THROWS_AS(solve(p, 0.0), InputError);
    const GridFunction other = GridFunction::sample(test::line(1.0, 1.0 / 16, 2.0), FunctionDescriptor{});
    CHECK_THROWS_AS(residual(p, other), InputError);
    DirichletProblem flat = p;
    flat.V = GridFunction::sample(test::square(1.0, 1.0 / 4, 2.0), FunctionDescriptor{});
    CHECK_THROWS_AS(solve(flat, 1e-10), InputError);
}

}  // TEST_SUITE
