#include "landis/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "landis/errors.hpp"
#include "landis/nonlocal_eval.hpp"

namespace landis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sup_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool same_box(const DomainSpec& a, const DomainSpec& b) {
    return a.N == b.N && a.center == b.center && a.R == b.R && a.h == b.h;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

bool HalfEigenvalues::reliable() const { return std::isfinite(plus_error) && std::isfinite(minus_error); }

DirichletProblem DirichletProblem::from_functions(const DomainSpec& domain, const OperatorSpec& op,
                                                  const FunctionDescriptor& V, const FunctionDescriptor& f,
                                                  const FunctionDescriptor& g, const QuadratureSpec& quad) {
    return {domain,
            op,
            GridFunction::sample(domain, V),
            GridFunction::sample(domain, f),
            GridFunction::sample(domain, g),
            quad};
}

DirichletScheme::DirichletScheme(const DirichletProblem& p, Exec exec)
    : problem_(p),
      exec_(exec),
      disc_(p.op, p.domain.h, p.domain.R_cut, p.quad),
      far_(disc_, p.g),
      base_(p.domain, disc_.geometry().reach + 1) {
    const DomainSpec& dom = problem_.domain;
    dom.validate();
    if (problem_.op.params.N != dom.N) throw InputError("dirichlet: operator and domain dimensions differ");
    if (problem_.V.dim() != dom.N || problem_.f.dim() != dom.N || problem_.g.dim() != dom.N)
        throw InputError("dirichlet: V, f, g must have the domain's dimension");

    for (std::size_t k = 0; k < dom.node_count(); ++k)
        if (dom.contains(dom.node(k))) interior_.push_back(k);
    if (interior_.empty()) throw InputError("dirichlet: the domain has no interior nodes");

    const GridFunction& g = problem_.g;
    base_.fill(
        dom, [&](std::size_t k) { return g.evaluate(dom.node(k)); },
        [&](const Point& x) {
            const double v = g.evaluate(x);
            if (!std::isfinite(v)) throw EvaluationError("non-finite exterior data");
            return v;
        });
    flat_ = disc_.flat_offsets(base_.stride);
    unknown_of_.assign(base_.values.size(), -1);
    for (std::size_t i = 0; i < interior_.size(); ++i) {
        const std::size_t c = base_.index_of_node(interior_[i]);
        center_.push_back(c);
        unknown_of_[c] = static_cast<int>(i);
        const Point x = dom.node(interior_[i]);
        x_.push_back(x);
        V_.push_back(problem_.V.evaluate(x));
        f_.push_back(problem_.f.evaluate(x));
    }

    const std::size_t n = interior_.size();
    if (problem_.op.is_pucci()) {
        far_constant_.assign(n, 0);
        far_value_.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0;
            if (far_.constant_at(x_[i], c)) {
                far_constant_[i] = 1;
                far_value_[i] = c;
            }
        }
    } else {
        far_source_.assign(disc_.kernel_count(), std::vector<double>(n, 0.0));
        for (std::size_t k = 0; k < disc_.kernel_count(); ++k)
            for_each_index(n, exec_, [&](std::size_t i) { far_source_[k][i] = far_.linear_source(k, x_[i]); });
    }
}

std::vector<double> DirichletScheme::lattice_with(const std::vector<double>& u) const {
    if (u.size() != interior_.size()) throw InputError("dirichlet: wrong number of unknowns");
    std::vector<double> ext = base_.values;
    for (std::size_t i = 0; i < u.size(); ++i) ext[center_[i]] = u[i];
    return ext;
}

double DirichletScheme::node_operator(const std::vector<double>& ext, std::size_t i, double u_i, int* policy) const {
    const OperatorSpec& op = disc_.spec();
    const std::size_t c = center_[i];
    if (op.is_pucci()) {
        const bool plus = op.mode == OperatorMode::pucci_plus;
        double far = 0.0;
        if (far_constant_[i]) {
            const double d = 2.0 * (far_value_[i] - u_i);
            const double a = (d > 0.0) == plus ? op.params.Lambda : op.params.lambda;
            far = a * d * disc_.far_mass_unit();
        } else {
            far = far_.pucci(plus, x_[i], u_i).first;
        }
        return disc_.local_pucci(plus, ext.data(), c, flat_.data()) + far + V_[i] * u_i;
    }
    int best_k = 0;
    double best = 0.0;
    for (std::size_t k = 0; k < disc_.kernel_count(); ++k) {
        const double v = disc_.local_linear(k, ext.data(), c, flat_.data()) + far_source_[k][i] -
                         2.0 * u_i * disc_.far_mass(k);
        const bool better = k == 0 || (op.mode == OperatorMode::sup ? v > best : v < best);
        if (better) {
            best = v;
            best_k = static_cast<int>(k);
        }
    }
    if (policy) *policy = best_k;
    return best + V_[i] * u_i;
}

std::vector<double> DirichletScheme::operator_values(const std::vector<double>& u) const {
    return operator_values(u, f_);
}

std::vector<double> DirichletScheme::operator_values(const std::vector<double>& u,
                                                     const std::vector<double>& f_values) const {
    const std::vector<double> ext = lattice_with(u);
    std::vector<double> out(u.size());
    for_each_index(u.size(), exec_, [&](std::size_t i) { out[i] = node_operator(ext, i, u[i], nullptr) - f_values[i]; });
    return out;
}

std::vector<double> DirichletScheme::damped_step(const std::vector<double>& u, double theta) const {
    const std::vector<double> F = operator_values(u);
    const double D = diagonal_bound();
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + theta / (D + std::abs(V_[i])) * F[i];
    return out;
}

void DirichletScheme::linearize(const std::vector<double>& u, const std::vector<double>& f_values, RowMatrix& A,
                                Eigen::VectorXd& b, std::vector<std::uint64_t>* signature) const {
    const std::size_t n = interior_.size();
    const std::vector<double> ext = lattice_with(u);
    A.setZero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    b.setZero(static_cast<Eigen::Index>(n));
    if (signature) signature->assign(n, 0);
    const OperatorSpec& op = disc_.spec();
    const bool plus = op.mode == OperatorMode::pucci_plus;
    const double up = plus ? op.params.Lambda : op.params.lambda;
    const double down = plus ? op.params.lambda : op.params.Lambda;

    for_each_index(n, exec_, [&](std::size_t i) {
        const auto row = static_cast<Eigen::Index>(i);
        const std::size_t c = center_[i];
        double diag = V_[i];
        double rhs = -f_values[i];
        const auto add = [&](std::size_t j, double w) {
            const int unk = unknown_of_[j];
            if (unk >= 0) A(row, unk) += w;
            else rhs += w * ext[j];
        };
        std::uint64_t sig = 1469598103934665603ULL;
        if (op.is_pucci()) {
            const auto& w = disc_.unit_weights();
            for (std::size_t e = 0; e < w.size(); ++e) {
                const std::size_t jp = c + flat_[e];
                const std::size_t jm = c - flat_[e];
                const double d = ext[jp] + ext[jm] - 2.0 * ext[c];
                const bool pos = d > 0.0;
                const double we = (pos ? up : down) * w[e];
                add(jp, we);
                add(jm, we);
                diag -= 2.0 * we;
                sig = mix(sig, pos);
            }
            if (far_constant_[i]) {
                const double cv = far_value_[i];
                const double a = (cv - u[i] > 0.0) ? up : down;
                rhs += 2.0 * a * cv * disc_.far_mass_unit();
                diag -= 2.0 * a * disc_.far_mass_unit();
                sig = mix(sig, a == up);
            } else {
                const auto [value, dg] = far_.pucci(plus, x_[i], u[i]);
                rhs += value + dg * u[i];
                diag -= dg;
            }
        } else {
            int k = 0;
            node_operator(ext, i, u[i], &k);
            const auto& w = disc_.weights(static_cast<std::size_t>(k));
            for (std::size_t e = 0; e < w.size(); ++e) {
                add(c + flat_[e], w[e]);
                add(c - flat_[e], w[e]);
                diag -= 2.0 * w[e];
            }
            rhs += far_source_[k][i];
            diag -= 2.0 * disc_.far_mass(static_cast<std::size_t>(k));
            sig = static_cast<std::uint64_t>(k);
        }
        A(row, row) += diag;
        b(row) = rhs;
        if (signature) (*signature)[i] = sig;
    });
}

std::vector<double> DirichletScheme::solve_values(const std::vector<double>& f_values, double tol,
                                                  const SolveOptions& opt, SolveReport& report,
                                                  std::vector<double> start) const {
    const std::size_t n = interior_.size();
    std::vector<double> u = start.empty() ? std::vector<double>(n, 0.0) : std::move(start);
    report.converged = false;
    report.iterations = 0;
    report.policy_switches = 0;

    if (opt.method == SolveMethod::policy_iteration && n <= opt.dense_limit) {
        report.method = "policy_iteration";
        RowMatrix A;
        Eigen::VectorXd b;
        std::vector<std::uint64_t> sig, prev_sig;
        int stalls = 0;
        for (int it = 1; it <= opt.max_policy_iterations; ++it) {
            linearize(u, f_values, A, b, &sig);
            if (!prev_sig.empty())
                for (std::size_t i = 0; i < n; ++i) report.policy_switches += sig[i] != prev_sig[i];
            const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
            const Eigen::VectorXd x = lu.solve(-b);
            if (!x.allFinite()) {
                report.diagnostic = "frozen-policy system is singular";
                break;
            }
            const std::vector<double> next(x.data(), x.data() + n);
            const double res = sup_abs(operator_values(next, f_values));
            report.iterations = it;
            const bool improved = res < report.residual_sup || it == 1;
            u = next;
            report.residual_sup = res;
            if (res <= tol) {
                report.converged = true;
                return u;
            }
            stalls = (!prev_sig.empty() && sig == prev_sig) || !improved ? stalls + 1 : 0;
            if (stalls >= 3) break;
            prev_sig = sig;
        }
        report.method = "policy_iteration+fixed_point";
    } else {
        report.method = "fixed_point";
    }

    const double D = diagonal_bound();
    long sweeps = 0;
    while (true) {
        const std::vector<double> F = operator_values(u, f_values);
        report.residual_sup = sup_abs(F);
        if (report.residual_sup <= tol) {
            report.converged = true;
            break;
        }
        if (sweeps >= opt.max_basic_iterations || !std::isfinite(report.residual_sup)) {
            report.diagnostic = "iteration cap reached without convergence";
            break;
        }
        for (std::size_t i = 0; i < n; ++i) u[i] += opt.theta / (D + std::abs(V_[i])) * F[i];
        ++sweeps;
    }
    report.iterations += sweeps;
    return u;
}

std::vector<double> DirichletScheme::restrict(const GridFunction& u) const {
    std::vector<double> out(interior_.size());
    const bool aligned = same_box(u.domain(), problem_.domain);
    for (std::size_t i = 0; i < interior_.size(); ++i) out[i] = aligned ? u[interior_[i]] : u.evaluate(x_[i]);
    return out;
}

GridFunction DirichletScheme::to_grid(const std::vector<double>& u) const {
    const DomainSpec& dom = problem_.domain;
    const GridFunction& g = problem_.g;
    std::vector<double> values(dom.node_count());
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = g.evaluate(dom.node(k));
    for (std::size_t i = 0; i < interior_.size(); ++i) values[interior_[i]] = u[i];
    TailModel tail = same_box(g.domain(), dom) ? g.tail()
                                               : TailModel::explicit_fn([g](const Point& x) { return g.evaluate(x); });
    return GridFunction(dom, std::move(values), std::move(tail));
}

std::pair<GridFunction, SolveReport> solve(const DirichletProblem& p, double tol, const SolveOptions& opt) {
    if (!(tol > 0.0)) throw InputError("solve: tolerance must be positive");
    p.domain.validate();
    SolveReport report;
    double v_max = -kInf;
    for (std::size_t k = 0; k < p.domain.node_count(); ++k) {
        const Point x = p.domain.node(k);
        if (p.domain.contains(x)) v_max = std::max(v_max, p.V.evaluate(x));
    }
    if (v_max > 0.0 && opt.verify_eigenvalues) {
        const HalfEigenvalues eig = estimate_half_eigenvalues(p.domain, p.op, p.V, p.quad, opt.exec);
        report.eigenvalues = eig;
        if (!(eig.reliable() && eig.lambda_plus > 0.0 && eig.lambda_minus > 0.0)) {
            std::ostringstream msg;
            msg << "V has a positive part (max " << v_max << ") and principal half-eigenvalue positivity "
                << "is not verified: lambda+ = " << eig.lambda_plus << ", lambda- = " << eig.lambda_minus
                << (eig.reliable() ? "" : " (estimate unreliable)");
            throw InputError(msg.str());
        }
    }
    const DirichletScheme scheme(p, opt.exec);
    const std::vector<double> u = scheme.solve_values(scheme.f_values(), tol, opt, report);
    return {scheme.to_grid(u), report};
}

GridFunction residual(const DirichletProblem& p, const GridFunction& u, Exec exec) {
    if (!same_box(u.domain(), p.domain)) throw InputError("residual: u must live on the problem's box");
    const Evaluator ev(p.op, p.domain.h, p.domain.R_cut, p.quad);
    std::vector<std::size_t> interior;
    for (std::size_t k = 0; k < p.domain.node_count(); ++k)
        if (p.domain.contains(p.domain.node(k))) interior.push_back(k);
    const std::vector<double> Iu = ev.apply_nodes(u, interior, exec);
    std::vector<double> out(p.domain.node_count(), 0.0);
    for (std::size_t i = 0; i < interior.size(); ++i) {
        const std::size_t k = interior[i];
        const Point x = p.domain.node(k);
        out[k] = Iu[i] + p.V.evaluate(x) * u[k] - p.f.evaluate(x);
    }
    return GridFunction(p.domain, std::move(out), TailModel::zero());
}

HalfEigenvalues estimate_half_eigenvalues(const DomainSpec& domain, const OperatorSpec& op, const GridFunction& V,
                                          const QuadratureSpec& quad, Exec exec) {
    domain.validate();
    double v_max = 0.0;
    for (std::size_t k = 0; k < domain.node_count(); ++k) {
        const Point x = domain.node(k);
        if (domain.contains(x)) v_max = std::max(v_max, V.evaluate(x));
    }
    const double sigma = v_max + 1.0;
    const GridFunction zero = GridFunction::sample(domain, FunctionDescriptor{});
    const auto shifted_fn = [V, sigma](const Point& x) { return V.evaluate(x) - sigma; };
    const GridFunction shifted = GridFunction::sample(domain, shifted_fn, TailModel::explicit_fn(shifted_fn));
    const DirichletProblem p{domain, op, shifted, zero, zero, quad};
    const DirichletScheme scheme(p, exec);
    const std::size_t n = scheme.unknowns();

    std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> lu;
    if (op.is_linear() && n <= SolveOptions{}.dense_limit) {
        RowMatrix A;
        Eigen::VectorXd b;
        scheme.linearize(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), A, b, nullptr);
        lu.emplace(A);
    }

    HalfEigenvalues out;
    const auto run = [&](double sign, double& lambda, double& error) {
        std::vector<double> u(n, sign);
        std::vector<double> w;
        double mu_prev = kInf;
        lambda = kInf;
        error = kInf;
        for (int it = 1; it <= 500; ++it) {
            std::vector<double> rhs(n);
            for (std::size_t i = 0; i < n; ++i) rhs[i] = -u[i];
            if (lu) {
                const Eigen::Map<const Eigen::VectorXd> r(rhs.data(), static_cast<Eigen::Index>(n));
                const Eigen::VectorXd x = lu->solve(r);
                w.assign(x.data(), x.data() + n);
            } else {
                SolveReport rep;
                SolveOptions opt;
                opt.exec = exec;
                w = scheme.solve_values(rhs, 1e-12, opt, rep, w);
                if (!rep.converged) return;
            }
            const double nw = sup_abs(w);
            if (!(nw > 0.0) || !std::isfinite(nw)) return;
            // the iterate must stay in its cone
            for (double x : w)
                if (sign * x < -1e-9 * nw) return;
            const double mu = 1.0 / nw;
            for (std::size_t i = 0; i < n; ++i) u[i] = w[i] / nw;
            out.iterations = std::max(out.iterations, it);
            lambda = mu - sigma;
            if (std::abs(mu - mu_prev) <= 1e-11 * std::max(1.0, std::abs(mu))) {
                error = std::abs(mu - mu_prev);
                return;
            }
            mu_prev = mu;
        }
    };
    run(1.0, out.lambda_plus, out.plus_error);
    run(-1.0, out.lambda_minus, out.minus_error);
    return out;
}

ComparisonResult comparison_check(const DirichletProblem& p, const GridFunction& u_sub, const GridFunction& u_super,
                                  double sign_tol) {
    ComparisonResult out;
    if (!same_box(u_sub.domain(), p.domain) || !same_box(u_super.domain(), p.domain)) {
        out.diagnostic = "functions do not live on the problem's box";
        return out;
    }
    double scale = 1.0;
    for (std::size_t k = 0; k < u_sub.size(); ++k) scale = std::max({scale, std::abs(u_sub[k]), std::abs(u_super[k])});
    const double eps = 1e-12 * scale;
    const DomainSpec& dom = p.domain;
    for (std::size_t k = 0; k < dom.node_count(); ++k)
        if (!dom.contains(dom.node(k)) && u_sub[k] > u_super[k] + eps) {
            out.diagnostic = "u_sub exceeds u_super at an exterior node";
            return out;
        }
    std::vector<Point> dirs;
    if (dom.N == 1) dirs = {{1.0, 0.0}, {-1.0, 0.0}};
    else
        for (int a = 0; a < 8; ++a) dirs.push_back({std::cos(a * std::numbers::pi / 4), std::sin(a * std::numbers::pi / 4)});
    for (int j = 0; j <= 12; ++j)
        for (const Point& e : dirs) {
            const Point x = dom.center + (dom.R * (1.0 + std::ldexp(1.0, j - 4)) * std::sqrt(2.0)) * e;
            if (u_sub.evaluate(x) > u_super.evaluate(x) + eps) {
                out.diagnostic = "u_sub exceeds u_super in the far field";
                return out;
            }
        }
    const GridFunction r_sub = residual(p, u_sub);
    const GridFunction r_super = residual(p, u_super);
    for (std::size_t k = 0; k < dom.node_count(); ++k) {
        if (r_sub[k] < -sign_tol) {
            out.diagnostic = "u_sub is not a discrete subsolution";
            return out;
        }
        if (r_super[k] > sign_tol) {
            out.diagnostic = "u_super is not a discrete supersolution";
            return out;
        }
    }
    const double tol = 1e-9 * scale;
    for (std::size_t k = 0; k < dom.node_count(); ++k)
        if (u_sub[k] > u_super[k] + tol) {
            out.outcome = Comparison::violated;
            out.diagnostic = "ordering fails at node " + std::to_string(k);
            return out;
        }
    out.outcome = Comparison::holds;
    return out;
}

}  // namespace landis
