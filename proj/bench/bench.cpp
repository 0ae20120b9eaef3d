// Serial reference against the OpenMP sweeps.
#include <benchmark/benchmark.h>

#include "landis/dirichlet.hpp"
#include "landis/nonlocal_eval.hpp"

using namespace landis;

namespace {

const Params kParams{1, 0.5, 0.3183098861837907, 0.3183098861837907};

DomainSpec line(double R, double h, double R_cut) {
    DomainSpec d;
    d.R = R;
    d.h = h;
    d.R_cut = R_cut;
    return d;
}

FunctionDescriptor gaussian() {
    FunctionDescriptor f;
    f.kind = FunctionKind::gaussian;
    f.width = 2.0;
    return f;
}

void apply(benchmark::State& state, Exec exec, OperatorSpec op) {
    const DomainSpec d = line(8.0, 1.0 / static_cast<double>(state.range(0)), 16.0);
    const GridFunction u = GridFunction::sample(d, gaussian());
    const Evaluator ev(op, d.h, d.R_cut);
    for (auto _ : state) benchmark::DoNotOptimize(ev.apply(u, exec));
    state.counters["nodes"] = static_cast<double>(d.node_count());
}

void BM_apply_serial(benchmark::State& s) { apply(s, Exec::serial, OperatorSpec::single(KernelSpec{kParams, Modulation::constant(kParams.lambda)})); }
void BM_apply_parallel(benchmark::State& s) { apply(s, Exec::parallel, OperatorSpec::single(KernelSpec{kParams, Modulation::constant(kParams.lambda)})); }

const Params kPucci{1, 0.5, 0.25, 1.0};
void BM_pucci_serial(benchmark::State& s) { apply(s, Exec::serial, OperatorSpec::pucci(true, kPucci)); }
void BM_pucci_parallel(benchmark::State& s) { apply(s, Exec::parallel, OperatorSpec::pucci(true, kPucci)); }

void solve_bench(benchmark::State& state, Exec exec) {
    const DomainSpec d = line(1.0, 1.0 / static_cast<double>(state.range(0)), 2.0);
    const OperatorSpec op = OperatorSpec::pucci(false, kPucci);
    const DirichletProblem p = DirichletProblem::from_functions(d, op, constant_function(-0.5), constant_function(-1.0),
                                                                FunctionDescriptor{});
    SolveOptions opt;
    opt.exec = exec;
    for (auto _ : state) benchmark::DoNotOptimize(solve(p, 1e-10, opt));
}

void BM_solve_serial(benchmark::State& s) { solve_bench(s, Exec::serial); }
void BM_solve_parallel(benchmark::State& s) { solve_bench(s, Exec::parallel); }

}  // namespace

BENCHMARK(BM_apply_serial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apply_parallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pucci_serial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pucci_parallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_solve_serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_solve_parallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
