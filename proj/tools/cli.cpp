#include "landis_cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"

#include "landis/config.hpp"
#include "landis/decay.hpp"
#include "landis/dirichlet.hpp"
#include "landis/grid_io.hpp"
#include "landis/harnack.hpp"
#include "landis/landis.hpp"
#include "landis/nonlocal_eval.hpp"
#include "landis/report.hpp"
#include "landis/supersolution.hpp"
#include "verification/criteria.hpp"

namespace landis::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string subcommand;
    std::string config_path;
    std::string out;
    int threads = 0;
    double tol = 0.0;
    bool has_tol = false;
    std::vector<std::string> overrides;
};

struct Run {
    ExperimentConfig config;
    Json config_json;
    fs::path dir;
    Exec exec = Exec::parallel;
};

struct Output {
    ExperimentReport report;
    std::vector<Table> tables;
    std::vector<std::pair<std::string, GridFunction>> grids;
};

// dotted config path each subcommand's --tol overrides
const char* tol_key(const std::string& sub) {
    if (sub == "evaluate") return "quadrature.tail_tol";
    if (sub == "solve") return "tolerances.solve";
    if (sub == "supersolution") return "tolerances.exhaustion";
    if (sub == "harnack") return "tolerances.defect";
    if (sub == "landis") return "tolerances.residual";
    return nullptr;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path output_dir(const Options& o, const ExperimentConfig* c) {
    if (!o.out.empty()) return o.out;
    if (const char* env = std::getenv(kOutEnv); env && *env) return env;
    if (c && !c->output.empty()) return c->output;
    return "out";
}

Json mesh_json(const DomainSpec& d) {
    return {{"N", d.N}, {"R", d.R}, {"h", d.h}, {"R_cut", d.R_cut}, {"nodes", d.node_count()}};
}

Output start(const std::string& sub, const Run& r) {
    Output o;
    o.report.subcommand = sub;
    o.report.digest = inputs_digest(r.config);
    o.report.config = to_json(r.config);
    o.report.config.erase("output");
    o.report.mesh = mesh_json(r.config.domain);
    return o;
}

DirichletProblem problem_of(const ExperimentConfig& c) {
    return DirichletProblem::from_functions(c.domain, c.op(), c.potential, c.f, c.g, c.quadrature);
}

SolveOptions solve_options(const Run& r) {
    SolveOptions opt;
    opt.exec = r.exec;
    return opt;
}

SupersolutionResult supersolution_of(const Run& r) {
    const ExperimentConfig& c = r.config;
    const GridFunction V = GridFunction::sample(c.domain, c.potential);
    return build_supersolution(c.op(), V, c.exhaustion, c.quadrature, r.exec);
}

GridFunction input_u(const Run& r, Output& o) {
    const ExperimentConfig& c = r.config;
    switch (c.u.kind) {
        case InputSource::Kind::function:
            return GridFunction::sample(c.domain, c.u.function);
        case InputSource::Kind::file: {
            LoadedGrid g = load_grid_csv(c.u.path);
            if (!(g.params == c.params)) throw ConfigError("u.path: grid parameters differ from params");
            o.report.note("input_file_digest", fnv1a_hex(read_file(c.u.path)));
            return g.u;
        }
        case InputSource::Kind::solve: {
            auto [u, rep] = solve(problem_of(c), c.tolerances.solve, solve_options(r));
            o.report.scalar("input_solve_residual", rep.residual_sup);
            o.report.note("input_solve", rep.converged ? "converged" : "not converged");
            return u;
        }
        case InputSource::Kind::supersolution: {
            const SupersolutionResult s = supersolution_of(r);
            o.report.note("input_supersolution", s.converged ? "converged" : "not converged");
            return s.psi;
        }
    }
    throw ConfigError("u: unknown source");
}

void add_point_columns(std::vector<std::string>& cols, int N) {
    cols.push_back("x");
    if (N == 2) cols.push_back("y");
}

std::vector<double> point_row(const Point& x, int N) {
    return N == 2 ? std::vector<double>{x[0], x[1]} : std::vector<double>{x[0]};
}

Output cmd_evaluate(const Run& r) {
    Output o = start("evaluate", r);
    const ExperimentConfig& c = r.config;
    const GridFunction u = input_u(r, o);
    const DomainSpec& d = u.domain();
    o.report.mesh = mesh_json(d);
    const Evaluator ev(c.op(), d.h, d.R_cut, c.quadrature);

    std::vector<Point> pts = c.points;
    if (pts.empty())
        for (std::size_t k = 0; k < d.node_count(); ++k)
            if (ev.evaluable(u, d.node(k))) pts.push_back(d.node(k));
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!ev.evaluable(u, pts[i]))
            throw InputError("points[" + std::to_string(i) + "] lies too close to the edge of the grid box");

    std::vector<double> vals(pts.size());
    for_each_index(pts.size(), r.exec, [&](std::size_t i) { vals[i] = ev.at(u, pts[i]); });

    Table t{"values", {}, {}};
    add_point_columns(t.columns, d.N);
    t.columns.push_back("value");
    if (c.has_reference) t.columns.push_back("reference");
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<double> row = point_row(pts[i], d.N);
        row.push_back(vals[i]);
        if (c.has_reference) {
            const double ref = c.reference(pts[i]);
            row.push_back(ref);
            diff = std::max(diff, std::abs(vals[i] - ref));
            scale = std::max(scale, std::abs(ref));
        }
        t.rows.push_back(std::move(row));
    }
    o.report.scalar("points", static_cast<double>(pts.size()));
    if (c.has_reference) {
        o.report.scalar("max_abs_error", diff);
        if (scale > 0.0) o.report.scalar("relative_error", diff / scale);
    }
    o.tables.push_back(std::move(t));
    return o;
}

Output cmd_solve(const Run& r) {
    Output o = start("solve", r);
    const ExperimentConfig& c = r.config;
    const DirichletProblem p = problem_of(c);
    auto [u, rep] = solve(p, c.tolerances.solve, solve_options(r));
    o.report.scalar("iterations", static_cast<double>(rep.iterations));
    o.report.scalar("policy_switches", static_cast<double>(rep.policy_switches));
    o.report.scalar("residual_sup", rep.residual_sup);
    o.report.note("method", rep.method);
    if (!rep.diagnostic.empty()) o.report.note("diagnostic", rep.diagnostic);
    if (rep.eigenvalues) {
        o.report.scalar("lambda_plus", rep.eigenvalues->lambda_plus);
        o.report.scalar("lambda_minus", rep.eigenvalues->lambda_minus);
    }
    o.report.flag("converged", rep.converged);
    if (c.has_reference) {
        double e = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) e = std::max(e, std::abs(u[k] - c.reference(p.domain.node(k))));
        o.report.scalar("max_node_error", e);
    }
    o.grids.emplace_back("solution", u);
    return o;
}

Output cmd_supersolution(const Run& r) {
    Output o = start("supersolution", r);
    const ExperimentConfig& c = r.config;
    const SupersolutionResult s = supersolution_of(r);
    Table st{"stages", {"R", "h", "unknowns", "u_at_x0", "sup_difference", "solve_residual", "iterations", "shifted"}, {}};
    for (const ExhaustionStage& e : s.stages)
        st.rows.push_back({e.R, e.h, static_cast<double>(e.unknowns), e.u_at_x0, e.sup_difference, e.solve_residual,
                           static_cast<double>(e.iterations), e.shifted ? 1.0 : 0.0});
    o.report.mesh = mesh_json(s.psi.domain());
    o.report.scalar("stages", static_cast<double>(s.stages.size()));
    o.report.scalar("final_sup_difference", s.stages.back().sup_difference);
    o.report.scalar("min_node_value", s.min_node_value);
    o.report.scalar("residual", s.residual);
    o.report.scalar("weighted_norm", s.weighted_norm);
    o.report.note("normalization", to_string(c.exhaustion.normalization));
    if (!s.diagnostic.empty()) o.report.note("diagnostic", s.diagnostic);
    o.report.flag("converged", s.converged);
    o.report.flag("positive", s.min_node_value > 0.0);
    o.report.flag("residual_within_tolerance", s.residual <= c.tolerances.exhaustion);
    o.tables.push_back(std::move(st));
    o.grids.emplace_back("psi", s.psi);
    return o;
}

Output cmd_harnack(const Run& r) {
    Output o = start("harnack", r);
    const ExperimentConfig& c = r.config;
    const GridFunction u = input_u(r, o);
    o.report.mesh = mesh_json(u.domain());
    const GridFunction V = GridFunction::sample(u.domain(), c.potential);
    const ScaledHarnack h = verify_harnack_scaled(u, V, c.C0, c.R_list, c.params, c.slack, c.tolerances.defect,
                                                  c.quadrature, r.exec);
    Table t{"harnack", {"R", "rho"}, {}};
    for (std::size_t i = 0; i < h.R.size(); ++i) t.rows.push_back({h.R[i], h.rho[i]});
    o.report.scalar("exponent_fit", h.exponent_fit);
    o.report.scalar("C_fit", h.C_fit);
    o.report.scalar("defect", h.defect);
    if (!h.diagnostic.empty()) o.report.note("diagnostic", h.diagnostic);
    o.report.flag("scaled_harnack", h.flag);
    o.report.flag("minimum_principle", !h.minimum_principle_violated);

    if (globally_nonnegative(u) && u.domain().contains(Point{0.0, 0.0})) {
        const WeakHarnack w =
            verify_weak_harnack_unit(u, V, c.C0, c.params, c.C_budget, c.tolerances.defect, c.quadrature, r.exec);
        o.report.scalar("unit_norm", w.norm);
        o.report.scalar("unit_inf_half", w.inf_half);
        o.report.scalar("unit_C_fit", w.C_fit);
        o.report.scalar("unit_defect", w.defect);
        o.report.flag("weak_harnack_unit", w.flag);
    } else {
        o.report.note("weak_harnack_unit", "skipped: u takes negative values");
    }
    o.tables.push_back(std::move(t));
    return o;
}

Output cmd_decay(const Run& r) {
    Output o = start("decay", r);
    const ExperimentConfig& c = r.config;
    const GridFunction u = input_u(r, o);
    o.report.mesh = mesh_json(u.domain());
    const DecayFit f = fit_decay_exponent(u, c.decay_R_min, c.decay_R_max);
    Table t{"shells", {"r_inner", "r_outer", "r_at_max", "max_abs"}, {}};
    for (const DecayShell& s : f.shells) t.rows.push_back({s.r_inner, s.r_outer, s.r_at_max, s.max_abs});
    o.report.scalar("exponent", f.exponent);
    o.report.scalar("amplitude", f.amplitude);
    o.report.scalar("rms_residual", f.rms_residual);
    o.report.note("shell_maxima", f.monotone ? "monotone" : "non-monotone");
    if (f.super_polynomial) o.report.note("decay", "faster than any power");
    o.tables.push_back(std::move(t));
    return o;
}

Output cmd_landis(const Run& r) {
    Output o = start("landis", r);
    const ExperimentConfig& c = r.config;
    const GridFunction u = input_u(r, o);
    o.report.mesh = mesh_json(u.domain());
    const GridFunction V = GridFunction::sample(u.domain(), c.potential);
    LandisOptions opt;
    opt.residual_tol = c.tolerances.residual;
    opt.zero_tol = c.tolerances.zero;
    opt.slack = c.slack;
    opt.plan = c.exhaustion;
    opt.quad = c.quadrature;
    opt.exec = r.exec;
    const LandisReport L = landis_pipeline(u, V, c.op(), c.R_list, opt);
    Table t{"landis", {"R", "inf_abs", "lower_bound"}, {}};
    for (std::size_t i = 0; i < L.R.size(); ++i) t.rows.push_back({L.R[i], L.inf_abs[i], L.lower_bound[i]});
    o.report.note("verdict", to_string(L.verdict));
    o.report.scalar("residual", L.residual);
    o.report.scalar("weighted_norm", L.norm);
    o.report.scalar("C_estimate", L.C_est);
    o.report.scalar("inf_exponent", L.inf_exponent);
    if (L.kappa) o.report.scalar("kappa", *L.kappa);
    if (L.w_plus_nonpositive) o.report.flag("w_plus_nonpositive", *L.w_plus_nonpositive);
    if (L.barrier_converged) o.report.note("barrier", *L.barrier_converged ? "converged" : "not converged");
    if (!L.diagnostic.empty()) o.report.note("diagnostic", L.diagnostic);
    o.report.flag("certified", L.verdict != Verdict::refused);
    o.report.flag("hypothesis_consistent", L.verdict != Verdict::hypothesis_violated);
    o.tables.push_back(std::move(t));
    return o;
}

int cmd_corpus(const fs::path& dir, Exec exec, std::ostream& out) {
    const std::vector<verification::CriterionOutcome> first = verification::run_corpus(dir, exec);
    ExperimentReport summary;
    summary.subcommand = "corpus";
    Json inputs = Json::array();
    for (const auto& c : first) {
        out << "criterion " << c.id << ' ' << std::left << std::setw(28) << c.name << (c.passed ? " PASS  " : " FAIL  ")
            << c.summary << '\n';
        summary.flag("criterion_" + std::to_string(c.id), c.passed);
        inputs.push_back(c.report.digest);
    }
    const fs::path again = fs::temp_directory_path() / ("landis_corpus_" + fnv1a_hex(fs::absolute(dir).string()));
    fs::remove_all(again);
    verification::run_corpus(again, exec);
    const std::string diff = verification::compare_trees(dir, again);
    fs::remove_all(again);
    const bool same = diff.empty();
    out << "criterion " << verification::kCriteria << ' ' << std::left << std::setw(28) << "determinism"
        << (same ? " PASS  " : " FAIL  ") << (same ? "rerun byte-identical" : "rerun differs at " + diff) << '\n';
    summary.flag("criterion_" + std::to_string(verification::kCriteria), same);
    summary.digest = fnv1a_hex(inputs.dump());
    summary.config = {{"criteria", inputs}};
    emit_tables(summary, {}, dir);
    return summary.passed() ? kPass : kVerificationFailure;
}

void write_output(const Output& o, const Run& r) {
    emit_tables(o.report, o.tables, r.dir);
    for (const auto& [name, g] : o.grids) save_grid_csv(r.dir / (name + ".csv"), g, r.config.params);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical lab for nonlocal Landis-type operators", "landis"};
    app.require_subcommand(1, 1);
    Options o;
    const std::pair<const char*, const char*> subs[] = {
        {"evaluate", "apply the operator to u at the configured points"},
        {"solve", "solve the Dirichlet problem and write the solution grid"},
        {"supersolution", "build the positive supersolution by exhaustion"},
        {"harnack", "unit and scaled Harnack checks on u"},
        {"decay", "fit the power-law decay exponent of u"},
        {"landis", "certify u and run the Landis dichotomy"},
        {"corpus", "run the regression corpus"},
    };
    for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();
    app.add_option("--config", o.config_path, "experiment config (JSON)");
    app.add_option("--out", o.out, std::string("output directory (default: $") + kOutEnv + ", then config output)");
    app.add_option("--threads", o.threads, "OpenMP threads")->check(CLI::PositiveNumber);
    app.add_option("--tol", o.tol, "main tolerance of the subcommand")->check(CLI::PositiveNumber);
    app.add_option("--override", o.overrides, "config field as key=value (dotted path)")->take_all();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kInputError;
    }
    o.subcommand = app.get_subcommands().front()->get_name();
    o.has_tol = app.count("--tol") > 0;
    if (o.threads > 0) omp_set_num_threads(o.threads);

    const auto t0 = std::chrono::steady_clock::now();
    int code = kPass;
    try {
        if (o.subcommand == "corpus") {
            const fs::path dir = output_dir(o, nullptr);
            code = cmd_corpus(dir, Exec::parallel, out);
            out << "artifacts in " << dir.string() << '\n';
        } else {
            if (o.config_path.empty()) throw ConfigError("--config is required for '" + o.subcommand + "'");
            Run r;
            r.config_json = parse_json_text(read_file(o.config_path), o.config_path);
            for (const std::string& a : o.overrides) apply_override(r.config_json, a);
            if (o.has_tol) {
                const char* key = tol_key(o.subcommand);
                if (!key) throw ConfigError("--tol: '" + o.subcommand + "' has no tolerance");
                std::ostringstream v;
                v << std::setprecision(17) << o.tol;
                apply_override(r.config_json, std::string(key) + "=" + v.str());
            }
            r.config = parse_config(r.config_json);
            r.dir = output_dir(o, &r.config);

            Output res;
            if (o.subcommand == "evaluate") res = cmd_evaluate(r);
            else if (o.subcommand == "solve") res = cmd_solve(r);
            else if (o.subcommand == "supersolution") res = cmd_supersolution(r);
            else if (o.subcommand == "harnack") res = cmd_harnack(r);
            else if (o.subcommand == "decay") res = cmd_decay(r);
            else res = cmd_landis(r);
            write_output(res, r);
            code = res.report.passed() ? kPass : kVerificationFailure;
            for (const auto& [k, v] : res.report.flags) out << (v ? "pass  " : "FAIL  ") << k << '\n';
            for (const auto& [k, v] : res.report.notes) out << k << ": " << v << '\n';
            out << "status " << (code == kPass ? "pass" : "fail") << ", artifacts in " << r.dir.string() << '\n';
        }
    } catch (const InputError& e) {
        err << "landis " << o.subcommand << ": " << e.what() << '\n';
        return kInputError;
    } catch (const fs::filesystem_error& e) {
        err << "landis " << o.subcommand << ": " << e.what() << '\n';
        return kInputError;
    } catch (const EvaluationError& e) {
        err << "landis " << o.subcommand << ": " << e.what() << '\n';
        return kVerificationFailure;
    } catch (const std::runtime_error& e) {
        // IO failures while writing artifacts
        err << "landis " << o.subcommand << ": " << e.what() << '\n';
        return kInputError;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << "wall clock " << std::fixed << std::setprecision(3) << secs << " s\n";
    return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace landis::cli
