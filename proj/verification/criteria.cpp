#include "verification/criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "landis/decay.hpp"
#include "landis/dirichlet.hpp"
#include "landis/harnack.hpp"
#include "landis/landis.hpp"
#include "landis/nonlocal_eval.hpp"
#include "landis/supersolution.hpp"
#include "verification/fixtures.hpp"
#include "verification/oracles.hpp"

namespace verification {

using namespace landis;

namespace {

std::string fmt(double x, int digits = 4) {
    std::ostringstream s;
    s.precision(digits);
    s << x;
    return s.str();
}

CriterionOutcome outcome(int id, std::string name) {
    CriterionOutcome c;
    c.id = id;
    c.name = std::move(name);
    return c;
}

void stamp(CriterionOutcome& c, Json inputs) {
    c.report.subcommand = "corpus";
    c.report.note("criterion", std::to_string(c.id) + " " + c.name);
    c.report.digest = fnv1a_hex(inputs.dump());
    c.report.config = std::move(inputs);
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// 1. operator against closed forms and the Fourier oracle
CriterionOutcome operator_correctness(Exec exec) {
    CriterionOutcome c = outcome(1, "operator correctness");
    c.limit_seconds = 10.0;
    const Params p = fractional_params();
    const OperatorSpec op = fractional_operator();
    const double h = 1.0 / 256, R_cut = 64.0;

    DomainSpec dc;
    dc.R = 1.0;
    dc.h = h;
    dc.R_cut = R_cut;
    FunctionDescriptor cosd;
    cosd.kind = FunctionKind::cosine;
    const GridFunction u = GridFunction::sample(dc, cosd);
    const Evaluator ev_cos(op, h, R_cut);
    const double v = ev_cos.at(u, {0.0, 0.0});
    const double cos_err = std::abs(v + 1.0);

    DomainSpec dg = dc;
    dg.R = 8.0;
    FunctionDescriptor gd;
    gd.kind = FunctionKind::gaussian;
    const GridFunction G = GridFunction::sample(dg, gd);
    const Evaluator ev(op, h, R_cut);
    Table t{"gaussian", {"x", "value", "oracle"}, {}};
    std::vector<double> vals(32), refs(32);
    for_each_index(32, exec, [&](std::size_t i) {
        const double x = -3.875 + 0.25 * static_cast<double>(i);
        vals[i] = ev.at(G, {x, 0.0});
        refs[i] = -fractional_laplacian_gaussian(1, p.s, std::abs(x));
    });
    double diff = 0.0;
    for (std::size_t i = 0; i < 32; ++i) {
        diff = std::max(diff, std::abs(vals[i] - refs[i]));
        t.rows.push_back({-3.875 + 0.25 * static_cast<double>(i), vals[i], refs[i]});
    }
    const double gauss_err = diff / max_abs(refs);

    c.report.scalar("cos_value_at_0", v);
    c.report.scalar("cos_relative_error", cos_err);
    c.report.scalar("gaussian_relative_error", gauss_err);
    c.report.flag("cos_within_1e-3", cos_err <= 1e-3);
    c.report.flag("gaussian_within_1e-3", gauss_err <= 1e-3);
    c.tables.push_back(std::move(t));
    c.summary = "cos(0) -> " + fmt(v, 10) + " (rel err " + fmt(cos_err, 3) + "), Gaussian rel err " + fmt(gauss_err, 3) +
                " at 32 points";
    stamp(c, {{"N", 1}, {"s", 0.5}, {"h", h}, {"R_cut", R_cut}, {"points", 32}});
    return c;
}

// 2. Pucci duality, homogeneity and the ellipticity sandwich
CriterionOutcome pucci_structure(Exec exec) {
    CriterionOutcome c = outcome(2, "Pucci structure");
    const Params p{1, 0.5, 0.5, 2.0};
    DomainSpec d;
    d.R = 1.0;
    d.h = 1.0 / 16;
    d.R_cut = 2.0;
    std::vector<KernelSpec> family;
    for (const Modulation& m : {Modulation::constant(0.5), Modulation::constant(2.0),
                                Modulation{1, {0.25}, {2.0, 0.5}}, Modulation{1, {0.1, 0.5}, {0.5, 2.0, 1.0}}})
        family.push_back(KernelSpec{p, m});
    const Evaluator plus(OperatorSpec::pucci(true, p), d.h, d.R_cut);
    const Evaluator minus(OperatorSpec::pucci(false, p), d.h, d.R_cut);
    const Evaluator isup(OperatorSpec::sup(family, p), d.h, d.R_cut);
    const Evaluator iinf(OperatorSpec::inf(family, p), d.h, d.R_cut);

    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const auto random_grid = [&] {
        std::vector<double> v(d.node_count());
        for (std::size_t k = 1; k + 1 < v.size(); ++k) v[k] = unit(rng);
        return GridFunction(d, std::move(v), TailModel::zero());
    };
    const auto neg = [](const GridFunction& u) { return u.scaled(-1.0); };

    double duality = 0.0, homog = 0.0, sandwich = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const GridFunction u = random_grid();
        const std::vector<double> mp = plus.apply(neg(u), exec);
        const std::vector<double> mm = minus.apply(u, exec);
        const double t = std::exp(3.0 * unit(rng));
        const std::vector<double> mpt = plus.apply(u.scaled(t), exec);
        const std::vector<double> mp1 = plus.apply(u, exec);
        const std::vector<double> mmt = minus.apply(u.scaled(t), exec);
        const double scale = std::max({1.0, max_abs(mm), max_abs(mp1)});
        for (std::size_t k = 0; k < mm.size(); ++k) {
            if (!std::isfinite(mm[k])) continue;
            duality = std::max(duality, std::abs(mp[k] + mm[k]) / scale);
            homog = std::max(homog, std::abs(mpt[k] - t * mp1[k]) / (t * scale));
            homog = std::max(homog, std::abs(mmt[k] - t * mm[k]) / (t * scale));
        }
    }
    long violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const GridFunction u = random_grid();
        const GridFunction v = random_grid();
        const Evaluator& I = trial % 2 == 0 ? isup : iinf;
        const std::vector<double> Iu = I.apply(u, exec);
        const std::vector<double> Iv = I.apply(v, exec);
        const GridFunction w = GridFunction::combine(1.0, u, -1.0, v);
        const std::vector<double> lo = minus.apply(w, exec);
        const std::vector<double> hi = plus.apply(w, exec);
        const double scale = std::max({1.0, max_abs(Iu), max_abs(Iv)});
        for (std::size_t k = 0; k < Iu.size(); ++k) {
            if (!std::isfinite(Iu[k])) continue;
            const double r = Iu[k] - Iv[k];
            const double gap = std::max(lo[k] - r, r - hi[k]) / scale;
            sandwich = std::max(sandwich, gap);
            if (gap > 1e-12) ++violations;
        }
    }
    c.report.scalar("duality_max_relative", duality);
    c.report.scalar("homogeneity_max_relative", homog);
    c.report.scalar("sandwich_max_excess", sandwich);
    c.report.scalar("sandwich_violations", static_cast<double>(violations));
    c.report.flag("duality", duality <= 1e-12);
    c.report.flag("homogeneity", homog <= 1e-12);
    c.report.flag("sandwich", violations == 0);
    c.summary = "duality " + fmt(duality, 2) + ", homogeneity " + fmt(homog, 2) + ", sandwich violations " +
                std::to_string(violations) + " of 1000 pairs";
    stamp(c, {{"N", 1}, {"s", 0.5}, {"lambda", 0.5}, {"Lambda", 2.0}, {"h", d.h}, {"trials", 1000}, {"seed", 20240601}});
    return c;
}

// 3. Getoor benchmark and mesh convergence
CriterionOutcome dirichlet_benchmark(Exec exec) {
    CriterionOutcome c = outcome(3, "Dirichlet benchmark");
    c.limit_seconds = 60.0;
    Table t{"convergence", {"h", "max_error", "center_error", "residual"}, {}};
    std::vector<double> lh, le, lc;
    double err_fine = 0.0;
    for (int inv : {64, 128, 256}) {
        const DirichletProblem prob = getoor_problem(1.0 / inv);
        SolveOptions opt;
        opt.exec = exec;
        const auto [u, rep] = solve(prob, 1e-10, opt);
        double e = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double x = prob.domain.node(k)[0];
            e = std::max(e, std::abs(u[k] - getoor_profile(1, 0.5, std::abs(x))));
        }
        const double ec = std::abs(u.evaluate({0.0, 0.0}) - getoor_profile(1, 0.5, 0.0));
        t.rows.push_back({1.0 / inv, e, ec, rep.residual_sup});
        lh.push_back(std::log(1.0 / inv));
        le.push_back(std::log(e));
        lc.push_back(std::log(ec));
        err_fine = e;
    }
    const double order = least_squares_line(lh, le).slope;
    const double center_order = least_squares_line(lh, lc).slope;
    c.report.scalar("max_error_h_1_256", err_fine);
    c.report.scalar("max_error_order", order);
    c.report.scalar("center_error_order", center_order);
    c.report.flag("max_error_within_2_percent", err_fine <= 0.02);
    c.report.flag("order_at_least_1", order >= 1.0);
    c.tables.push_back(std::move(t));
    c.summary = "max error " + fmt(err_fine, 4) + " at h=1/256, observed order " + fmt(order, 3) +
                " (center order " + fmt(center_order, 3) + ")";
    stamp(c, {{"N", 1}, {"s", 0.5}, {"h", {1.0 / 64, 1.0 / 128, 1.0 / 256}}, {"f", -1.0}, {"g", 0.0}});
    return c;
}

// 4. weight-ratio inequality at random triples
CriterionOutcome weight_ratio(Exec) {
    CriterionOutcome c = outcome(4, "weight-ratio bounds");
    c.limit_seconds = 1.0;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ux(-10.0, 10.0), uz(-30.0, 30.0), ur(1e-3, 1.0), us(0.05, 0.95);
    long violations = 0;
    double min_lower_slack = INFINITY, min_upper_slack = INFINITY;
    for (int i = 0; i < 100000; ++i) {
        const int N = i % 2 + 1;
        const Params p{N, us(rng), 1.0, 1.0};
        const Point x0{ux(rng), N == 2 ? ux(rng) : 0.0};
        const double r0 = ur(rng);
        const Point z{uz(rng), N == 2 ? uz(rng) : 0.0};
        const WeightRatio w = weight_ratio_bounds(x0, r0, z, p);
        if (!w.holds()) ++violations;
        min_lower_slack = std::min(min_lower_slack, w.ratio / w.lower);
        min_upper_slack = std::min(min_upper_slack, w.upper / w.ratio);
    }
    c.report.scalar("violations", static_cast<double>(violations));
    c.report.scalar("min_ratio_over_lower", min_lower_slack);
    c.report.scalar("min_upper_over_ratio", min_upper_slack);
    c.report.flag("no_violations", violations == 0);
    c.summary = std::to_string(violations) + " violations in 100000 triples (tightest margins " + fmt(min_lower_slack, 3) +
                ", " + fmt(min_upper_slack, 3) + ")";
    stamp(c, {{"samples", 100000}, {"seed", 77}});
    return c;
}

SupersolutionResult half_potential_supersolution(Exec exec) {
    DomainSpec d;
    d.R = 1.0;
    d.h = 1.0 / 16;
    d.R_cut = 2.0;
    const GridFunction V = GridFunction::sample(d, constant_function(-0.5));
    return build_supersolution(fractional_operator(), V, ExhaustionPlan{}, {}, exec);
}

// 5. scaled Harnack exponent on psi and on the planted saturating function
CriterionOutcome scaled_harnack(Exec exec) {
    CriterionOutcome c = outcome(5, "scaled Harnack exponent");
    c.limit_seconds = 300.0;
    const Params p = fractional_params();
    const std::vector<double> R_list{1, 2, 4, 8};
    const SupersolutionResult psi = half_potential_supersolution(exec);
    const GridFunction V = GridFunction::sample(psi.psi.domain(), constant_function(-0.5));
    const ScaledHarnack hp = verify_harnack_scaled(psi.psi, V, 0.0, R_list, p, 0.3, 1e-6, {}, exec);

    DomainSpec d;
    d.R = 16.0;
    d.h = 1.0 / 16;
    d.R_cut = 32.0;
    const Planted planted = planted_harnack(d, p);
    const ScaledHarnack hq = verify_harnack_scaled(planted.u, planted.V, 0.0, R_list, p, 0.3, 1e-6, {}, exec);

    Table t{"harnack", {"R", "rho_psi", "rho_planted"}, {}};
    for (std::size_t i = 0; i < R_list.size(); ++i) t.rows.push_back({R_list[i], hp.rho[i], hq.rho[i]});
    const double order = p.order();
    c.report.scalar("psi_slope", hp.exponent_fit);
    c.report.scalar("psi_defect", hp.defect);
    c.report.scalar("planted_slope", hq.exponent_fit);
    c.report.scalar("planted_defect", hq.defect);
    c.report.flag("psi_slope_at_most_N_plus_2s_plus_0.3", hp.flag);
    c.report.flag("planted_saturates", std::abs(hq.exponent_fit - order) <= 0.3 && hq.defect <= 1e-6);
    c.tables.push_back(std::move(t));
    c.summary = "psi slope " + fmt(hp.exponent_fit, 4) + ", planted slope " + fmt(hq.exponent_fit, 4) + " (N+2s = " +
                fmt(order) + ")";
    stamp(c, {{"N", 1}, {"s", 0.5}, {"V", -0.5}, {"R_list", R_list}, {"planted_h", d.h}, {"planted_R", d.R}});
    return c;
}

// 6. supersolution by exhaustion
CriterionOutcome supersolution(Exec exec) {
    CriterionOutcome c = outcome(6, "supersolution construction");
    const SupersolutionResult psi = half_potential_supersolution(exec);
    Table st{"stages", {"R", "h", "u_at_x0", "sup_difference", "solve_residual"}, {}};
    for (const ExhaustionStage& s : psi.stages) st.rows.push_back({s.R, s.h, s.u_at_x0, s.sup_difference, s.solve_residual});
    const DecayFit fit = fit_decay_exponent(psi.psi, 4.0, 32.0);
    Table sh{"shells", {"r_inner", "r_outer", "r_at_max", "max_abs"}, {}};
    for (const DecayShell& s : fit.shells) sh.rows.push_back({s.r_inner, s.r_outer, s.r_at_max, s.max_abs});
    const ExhaustionStage& last = psi.stages.back();
    const int J = static_cast<int>(psi.stages.size()) - 1;
    c.report.scalar("stages", static_cast<double>(psi.stages.size()));
    c.report.scalar("final_sup_difference", last.sup_difference);
    c.report.scalar("min_node_value", psi.min_node_value);
    c.report.scalar("residual", psi.residual);
    c.report.scalar("decay_exponent", fit.exponent);
    c.report.scalar("decay_rms", fit.rms_residual);
    c.report.flag("converged_by_J_6", psi.converged && J <= 6);
    c.report.flag("positive", psi.min_node_value > 0.0);
    c.report.flag("residual_at_most_1e-4", psi.residual <= 1e-4);
    c.report.flag("decay_exponent_in_1.6_2.4", fit.exponent >= 1.6 && fit.exponent <= 2.4);
    if (!psi.diagnostic.empty()) c.report.note("diagnostic", psi.diagnostic);
    c.tables.push_back(std::move(st));
    c.tables.push_back(std::move(sh));
    c.summary = "last stage R=" + fmt(last.R) + " sup-diff " + fmt(last.sup_difference, 3) + ", min " +
                fmt(psi.min_node_value, 4) + ", residual " + fmt(psi.residual, 2) + ", decay exponent " +
                fmt(fit.exponent, 4);
    stamp(c, {{"N", 1}, {"s", 0.5}, {"V", -0.5}, {"radii", ExhaustionPlan{}.radii}, {"h0", ExhaustionPlan{}.h0},
              {"decay_window", {4.0, 32.0}}});
    return c;
}

OperatorSpec random_operator(std::mt19937_64& rng, int which) {
    const Params p{1, 0.5, 0.5, 2.0};
    std::vector<KernelSpec> fam{KernelSpec{p, Modulation::constant(0.7)}, KernelSpec{p, Modulation{1, {0.3}, {2.0, 0.5}}},
                                KernelSpec{p, Modulation::constant(1.6)}};
    (void)rng;
    switch (which % 5) {
        case 0: return fractional_operator();
        case 1: return OperatorSpec::pucci(true, p);
        case 2: return OperatorSpec::pucci(false, p);
        case 3: return OperatorSpec::sup(fam, p);
        default: return OperatorSpec::inf(fam, p);
    }
}

// 7. discrete comparison and strong minimum principles
CriterionOutcome principles(Exec exec) {
    CriterionOutcome c = outcome(7, "maximum/minimum principles");
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    DomainSpec d;
    d.R = 1.0;
    d.h = 1.0 / 32;
    d.R_cut = 2.0;
    SolveOptions opt;
    opt.exec = exec;
    const auto fn = [&](std::function<double(const Point&)> f) { return GridFunction::sample(d, f, TailModel::explicit_fn(f)); };

    int cmp_pass = 0;
    Table tc{"comparison", {"trial", "mode", "passed", "min_gap"}, {}};
    for (int trial = 0; trial < 50; ++trial) {
        const OperatorSpec op = random_operator(rng, trial);
        const double v0 = -U(rng);
        const double a = 4.0 * U(rng) - 2.0, b = 2.0 * U(rng) - 1.0, cx = U(rng) - 0.5;
        const double d0 = U(rng), d1 = U(rng);
        const double e = 2.0 * U(rng) - 1.0, e0 = U(rng) - 0.5, gam = U(rng);
        const auto f2 = [=](const Point& x) { return a * std::exp(-(x[0] - cx) * (x[0] - cx) / 0.25) + b; };
        const auto f1 = [=](const Point& x) { return f2(x) + d0 + d1 * std::max(0.0, 1.0 - x[0] * x[0]); };
        const auto g2 = [=](const Point& x) { return e * std::exp(-x[0] * x[0]) + e0; };
        const auto g1 = [=](const Point& x) { return g2(x) - gam * std::exp(-0.1 * x[0] * x[0]); };
        const GridFunction V = fn([v0](const Point&) { return v0; });
        const DirichletProblem p1{d, op, V, fn(f1), fn(g1), {}};
        const DirichletProblem p2{d, op, V, fn(f2), fn(g2), {}};
        const GridFunction u1 = solve(p1, 1e-11, opt).first;
        const GridFunction u2 = solve(p2, 1e-11, opt).first;
        const ComparisonResult r = comparison_check(p2, u1, u2);
        double gap = INFINITY;
        for (std::size_t k = 0; k < u1.size(); ++k) gap = std::min(gap, u2[k] - u1[k]);
        if (r.flag()) ++cmp_pass;
        tc.rows.push_back({static_cast<double>(trial), static_cast<double>(trial % 5), r.flag() ? 1.0 : 0.0, gap});
    }

    int smp_pass = 0;
    Table ts{"strong_minimum", {"trial", "mode", "min_interior", "max_abs", "passed"}, {}};
    for (int trial = 0; trial < 20; ++trial) {
        const OperatorSpec op = random_operator(rng, trial);
        const bool zero = trial % 5 == 4;
        const double v0 = -U(rng);
        const double a = zero ? 0.0 : U(rng), b = zero ? 0.0 : (trial % 2 ? U(rng) : 0.0);
        const double gc = zero ? 0.0 : U(rng);
        const auto f = [=](const Point& x) { return -(a * std::max(0.0, 1.0 - 4.0 * x[0] * x[0]) + b); };
        const auto g = [=](const Point& x) { return gc * std::exp(-4.0 * (x[0] - 1.5) * (x[0] - 1.5)); };
        const GridFunction V = fn([v0](const Point&) { return v0; });
        const DirichletProblem p{d, op, V, fn(f), fn(g), {}};
        const GridFunction u = solve(p, 1e-11, opt).first;
        double min_in = INFINITY, mx = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            mx = std::max(mx, std::abs(u[k]));
            if (d.contains(d.node(k))) min_in = std::min(min_in, u[k]);
        }
        const bool ok = min_in > 0.0 || mx <= 1e-14;
        if (ok) ++smp_pass;
        ts.rows.push_back({static_cast<double>(trial), static_cast<double>(trial % 5), min_in, mx, ok ? 1.0 : 0.0});
    }
    c.report.scalar("comparison_passed", cmp_pass);
    c.report.scalar("strong_minimum_passed", smp_pass);
    c.report.flag("comparison_50_of_50", cmp_pass == 50);
    c.report.flag("strong_minimum_20_of_20", smp_pass == 20);
    c.tables.push_back(std::move(tc));
    c.tables.push_back(std::move(ts));
    c.summary = std::to_string(cmp_pass) + "/50 comparison tests, " + std::to_string(smp_pass) +
                "/20 strong-minimum checks";
    stamp(c, {{"N", 1}, {"h", d.h}, {"seed", 4242}, {"comparison_trials", 50}, {"strong_minimum_trials", 20}});
    return c;
}

// 8. Landis pipeline gate
CriterionOutcome landis_gate(Exec exec) {
    CriterionOutcome c = outcome(8, "Landis pipeline gate");
    const OperatorSpec op = fractional_operator();
    LandisOptions opt;
    opt.exec = exec;

    DomainSpec dg;
    dg.R = 8.0;
    dg.h = 1.0 / 32;
    dg.R_cut = 16.0;
    FunctionDescriptor gd;
    gd.kind = FunctionKind::gaussian;
    const GridFunction G = GridFunction::sample(dg, gd);
    const LandisReport planted = landis_pipeline(G, GridFunction::sample(dg, FunctionDescriptor{}), op, {1, 2, 4}, opt);

    const Exterior ext = exterior_solution(exec);
    const std::vector<double> R_list{2, 4, 8, 16};
    const LandisReport own = landis_pipeline(ext.u, ext.problem.V, op, R_list, opt);

    const GridFunction zero = GridFunction::sample(ext.problem.domain, FunctionDescriptor{});
    const LandisReport z = landis_pipeline(zero, ext.problem.V, op, R_list, opt);

    Table t{"exterior_inf", {"R", "inf_abs_u", "norm_times_R_pow"}, {}};
    for (std::size_t i = 0; i < own.R.size(); ++i) t.rows.push_back({own.R[i], own.inf_abs[i], own.lower_bound[i]});
    c.report.scalar("planted_residual", planted.residual);
    c.report.scalar("exterior_residual", own.residual);
    c.report.scalar("exterior_inf_exponent", own.inf_exponent);
    c.report.scalar("exterior_C_estimate", own.C_est);
    if (own.kappa) c.report.scalar("exterior_kappa", *own.kappa);
    c.report.note("planted_verdict", to_string(planted.verdict));
    c.report.note("exterior_verdict", to_string(own.verdict));
    c.report.note("zero_verdict", to_string(z.verdict));
    c.report.flag("planted_refused", planted.verdict == Verdict::refused);
    c.report.flag("exterior_lower_bound_respected", own.verdict == Verdict::lower_bound_respected);
    c.report.flag("zero_consistent_with_zero", z.verdict == Verdict::consistent_with_zero);
    c.tables.push_back(std::move(t));
    c.summary = "planted " + to_string(planted.verdict) + ", exterior " + to_string(own.verdict) + " (inf exponent " +
                fmt(own.inf_exponent, 4) + "), zero " + to_string(z.verdict);
    stamp(c, {{"N", 1}, {"s", 0.5}, {"V", -0.5}, {"exterior", {{"R", 64}, {"hole", 1}, {"h", 0.125}}},
              {"R_list", R_list}});
    return c;
}

CriterionOutcome dispatch(int id, Exec exec) {
    switch (id) {
        case 1: return operator_correctness(exec);
        case 2: return pucci_structure(exec);
        case 3: return dirichlet_benchmark(exec);
        case 4: return weight_ratio(exec);
        case 5: return scaled_harnack(exec);
        case 6: return supersolution(exec);
        case 7: return principles(exec);
        case 8: return landis_gate(exec);
        default: throw InputError("no criterion " + std::to_string(id));
    }
}

std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::filesystem::path> tree(const std::filesystem::path& root) {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::recursive_directory_iterator(root))
        if (e.is_regular_file()) out.push_back(std::filesystem::relative(e.path(), root));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::string compare_trees(const std::filesystem::path& a, const std::filesystem::path& b) {
    const auto ta = tree(a), tb = tree(b);
    for (std::size_t i = 0; i < std::max(ta.size(), tb.size()); ++i) {
        if (i >= ta.size()) return tb[i].string();
        if (i >= tb.size() || ta[i] != tb[i]) return ta[i].string();
        if (read_bytes(a / ta[i]) != read_bytes(b / tb[i])) return ta[i].string();
    }
    return {};
}

std::vector<CriterionOutcome> run_corpus(const std::filesystem::path& dir, Exec exec) {
    std::vector<CriterionOutcome> out;
    for (int id = 1; id < kCriteria; ++id) {
        out.push_back(run_criterion(id, exec));
        emit_tables(out.back().report, out.back().tables, dir / ("criterion_" + std::to_string(id)));
    }
    return out;
}

CriterionOutcome run_criterion(int id, Exec exec, const std::filesystem::path& scratch) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome c;
    if (id == kCriteria) {
        c.id = id;
        c.name = "determinism";
        const std::filesystem::path base =
            scratch.empty() ? std::filesystem::temp_directory_path() / "landis_determinism" : scratch;
        std::filesystem::remove_all(base);
        run_corpus(base / "a", exec);
        run_corpus(base / "b", exec);
        const std::string diff = compare_trees(base / "a", base / "b");
        const std::size_t files = tree(base / "a").size();
        std::filesystem::remove_all(base);
        c.report.scalar("files_compared", static_cast<double>(files));
        c.report.flag("byte_identical", diff.empty() && files > 0);
        if (!diff.empty()) c.report.note("first_difference", diff);
        c.summary = diff.empty() ? std::to_string(files) + " artifact files byte-identical across two runs"
                                 : "runs differ at " + diff;
        stamp(c, {{"runs", 2}});
    } else {
        c = dispatch(id, exec);
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.passed = c.report.passed() && (c.limit_seconds == 0.0 || c.seconds <= c.limit_seconds);
    return c;
}

}  // namespace verification
