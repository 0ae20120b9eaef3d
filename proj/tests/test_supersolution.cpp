#include <cmath>

#include "doctest.h"

#include "landis/decay.hpp"
#include "landis/dirichlet.hpp"
#include "landis/errors.hpp"
#include "landis/supersolution.hpp"
#include "landis/weighted_norm.hpp"
#include "support.hpp"
#include "verification/fixtures.hpp"

using namespace landis;
using verification::fractional_operator;

namespace {

GridFunction constant_V(double v) { return GridFunction::sample(test::line(1.0, 1.0 / 16, 2.0), constant_function(v)); }

ExhaustionPlan short_plan(std::vector<double> radii = {1, 2, 4, 8}) {
    ExhaustionPlan plan;
    plan.radii = std::move(radii);
    return plan;
}

}  // namespace

TEST_SUITE("supersolution") {

TEST_CASE("V = 0 gives psi = 1 and stops at the first settled stage") {
    const SupersolutionResult r = build_supersolution(fractional_operator(), constant_V(0.0), short_plan({1, 2, 4}));
    REQUIRE(r.stages.size() == 2);
    CHECK(r.stages.back().sup_difference <= 1e-12);
    for (const ExhaustionStage& s : r.stages) CHECK(s.u_at_x0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.converged);
    for (std::size_t k = 0; k < r.psi.size(); ++k) CHECK(r.psi[k] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalization, bounds and stability") {
    const SupersolutionResult r = build_supersolution(fractional_operator(), constant_V(-0.5), short_plan());
    CHECK(r.psi_base.evaluate({0.0, 0.0}) == 1.0);
    double last = 1.0;
    for (const ExhaustionStage& s : r.stages) {
        CHECK(s.u_at_x0 > 0.0);
        CHECK(s.u_at_x0 <= 1.0);
        CHECK(s.u_at_x0 <= last);  // larger balls absorb more
        last = s.u_at_x0;
        CHECK(s.solve_residual <= 1e-9);
    }
    CHECK(std::isnan(r.stages.front().sup_difference));
    CHECK(r.min_node_value > 0.0);
    const double cap = std::max(1.0, 1.0 / r.stages.back().u_at_x0);
    for (std::size_t k = 0; k < r.psi_base.size(); ++k) {
        CHECK(r.psi_base[k] > 0.0);
        CHECK(r.psi_base[k] <= cap * (1 + 1e-12));
    }
    CHECK(r.residual <= 1e-8);
}

TEST_CASE("weighted-norm normalization") {
    ExhaustionPlan plan = short_plan({1, 2, 4});
    plan.normalization = Normalization::weighted_norm;
    const SupersolutionResult r = build_supersolution(fractional_operator(), constant_V(-0.5), plan);
    CHECK(weighted_norm(r.psi, fractional_operator().params) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.psi[0] / r.psi_base[0] == doctest::Approx(1.0 / r.weighted_norm).epsilon(1e-12));
}

TEST_CASE("stronger absorption gives smaller stage solutions") {
    // V1 <= V2 <= 0: compare the un-normalized u = psi * u(x0) on one ball
    const auto stage = [](double v) {
        const SupersolutionResult r = build_supersolution(fractional_operator(), constant_V(v), short_plan({2}));
        return r.psi_base.scaled(r.stages.front().u_at_x0);
    };
    const GridFunction strong = stage(-1.0), weak = stage(-0.5);
    for (std::size_t k = 0; k < strong.size(); ++k) CHECK(strong[k] <= weak[k] + 1e-12);
}

TEST_CASE("Pucci and Isaacs operators") {
    const Params p{1, 0.5, 0.5, 2.0};
    const std::vector<KernelSpec> fam{KernelSpec{p, Modulation::constant(0.6)}, KernelSpec{p, Modulation::constant(1.5)}};
    for (const OperatorSpec& op : {OperatorSpec::pucci(false, p), OperatorSpec::inf(fam, p)}) {
        const SupersolutionResult r = build_supersolution(op, constant_V(-0.5), short_plan({1, 2, 4}));
        CHECK(r.min_node_value > 0.0);
        CHECK(r.residual <= 1e-8);
    }
}

TEST_CASE("serial and parallel builds agree bitwise") {
    const SupersolutionResult a =
        build_supersolution(fractional_operator(), constant_V(-0.5), short_plan({1, 2}), {}, Exec::serial);
    const SupersolutionResult b =
        build_supersolution(fractional_operator(), constant_V(-0.5), short_plan({1, 2}), {}, Exec::parallel);
    for (std::size_t k = 0; k < a.psi.size(); ++k) CHECK(a.psi[k] == b.psi[k]);
}

TEST_CASE("invalid plans are rejected") {
    CHECK_THROWS_AS(short_plan({}).validate(1), InputError);
    CHECK_THROWS_AS(short_plan({2, 1}).validate(1), InputError);
    ExhaustionPlan bad_h = short_plan();
    bad_h.h0 = 0.3;
    CHECK_THROWS_AS(bad_h.validate(1), InputError);
    ExhaustionPlan bad_tol = short_plan();
    bad_tol.tol = 0.0;
    CHECK_THROWS_AS(bad_tol.validate(1), InputError);
}

TEST_CASE("V = -1/2 supersolution: positive, radially decreasing, decays like |x|^-(N+2s)") {
    const SupersolutionResult r = build_supersolution(fractional_operator(), constant_V(-0.5), ExhaustionPlan{});
    CHECK(r.converged);
    CHECK(r.min_node_value > 0.0);
    CHECK(r.residual <= 1e-4);
    const DomainSpec& d = r.psi.domain();
    int increases = 0;
    for (std::size_t k = 0; k + 1 < r.psi.size(); ++k) {
        const double x = d.node(k)[0];
        if (x >= 0.0 && r.psi[k + 1] > r.psi[k]) ++increases;
    }
    CHECK(increases == 0);
    const DecayFit fit = fit_decay_exponent(r.psi, 4.0, 32.0);
    CHECK(fit.exponent >= 1.6);
    CHECK(fit.exponent <= 2.4);
}

}  // TEST_SUITE
