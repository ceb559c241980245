// Microbenchmarks for the hot paths: time-dependent operator evaluation,
// pulse-schedule evaluation, state propagation, and fidelity.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "rydsta/fidelity.hpp"
#include "rydsta/gate.hpp"
#include "rydsta/hamiltonian.hpp"
#include "rydsta/hilbert.hpp"
#include "rydsta/propagate.hpp"
#include "rydsta/pulse.hpp"
#include "rydsta/state.hpp"

using namespace rydsta;

namespace {

constexpr double kPi = std::numbers::pi;

DriveParams reference_params(int n) {
  DriveParams p;
  p.n = n;
  p.omega_c = p.omega_p = p.omega_s = 2.0 * kPi * 30.0e6;
  p.delta = (n == 2 ? 15.0 : 10.0) * p.omega_c;
  p.v_pairs.assign(n * (n - 1) / 2, p.delta);
  balance_interaction(p);
  return p;
}

GateProtocol reference_protocol(int n, ModelKind model) {
  GateProtocol proto;
  proto.n = n;
  proto.model = model;
  proto.dissipation = false;
  proto.dressed = true;
  proto.params = reference_params(n);
  proto.tau = 0.2 / proto.omega_eff();
  proto.theta_grid = 21;
  return proto;
}

void bench_operator_eval(benchmark::State& state, int n, DriveForm form) {
  const DriveParams params = reference_params(n);
  const HilbertSpace space = HilbertSpace::rydberg_register(n);
  const TimeDependentOperator h = build_full_hamiltonian(params, StepSpec::of(1), form);
  Eigen::MatrixXcd out(space.dim(), space.dim());
  double t = 0.0;
  const double dt = 1.0e-9;
  for (auto _ : state) {
    h.eval(t, out);
    benchmark::DoNotOptimize(out.data());
    t += dt;
  }
}

void bench_schedule_eval(benchmark::State& state, bool dressed) {
  const double omega_eff = 2.0 * kPi * 1.0e6;
  const VitanovPulseSpec spec = VitanovPulseSpec::with_edge(omega_eff, 0.2 / omega_eff);
  const DressedSchedule sched = dressed_schedule(spec, dressed);
  const double span = spec.duration();
  double s = 0.1;
  for (auto _ : state) {
    const DrivePair d = sched.drives(spec.t_i + s * span);
    benchmark::DoNotOptimize(d.omega_p + d.omega_s);
    s += 0.191;
    if (s > 0.9) s -= 0.8;
  }
}

void bench_step_propagation(benchmark::State& state, int n, ModelKind model) {
  GateProtocol proto = reference_protocol(n, model);
  proto.integrator.samples = 2;
  const HilbertSpace space = proto.space();
  std::vector<std::string> labels(static_cast<std::size_t>(n), "1");
  const QuantumState input = QuantumState::basis_ket(space, labels);
  const DressedSchedule sched = proto.schedule();
  const EffectiveParams eff = proto.effective();
  const TimeDependentOperator h =
      model == ModelKind::effective
          ? build_effective_hamiltonian(eff, StepSpec::of(1), space, sched)
          : build_full_hamiltonian(proto.params, StepSpec::of(1), DriveForm::rotating_wave,
                                   Envelopes::from_schedule(sched), ModelFrame::detuning);
  for (auto _ : state) {
    const Trajectory traj =
        evolve_schrodinger(h, input, sched.base.t_i, sched.base.t_f, proto.integrator);
    benchmark::DoNotOptimize(traj.accepted_steps);
  }
  state.counters["ode_steps"] = benchmark::Counter(
      double(evolve_schrodinger(h, input, sched.base.t_i, sched.base.t_f, proto.integrator)
                 .accepted_steps),
      benchmark::Counter::kDefaults);
}

void bench_lindblad_step(benchmark::State& state) {
  GateProtocol proto = reference_protocol(2, ModelKind::effective);
  proto.dissipation = true;
  proto.params.gamma = 2.0 * kPi * 1.0e3;
  proto.integrator.samples = 2;
  const HilbertSpace space = proto.space();
  const QuantumState input =
      QuantumState::density(space, QuantumState::basis_ket(space, {"1", "1"}).to_density());
  const DressedSchedule sched = proto.schedule();
  const TimeDependentOperator h =
      build_effective_hamiltonian(proto.effective(), StepSpec::of(1), space, sched);
  const std::vector<Operator> jumps = lindblad_ops(proto.params, space);
  for (auto _ : state) {
    const Trajectory traj =
        evolve_lindblad(h, jumps, input, sched.base.t_i, sched.base.t_f, proto.integrator);
    benchmark::DoNotOptimize(traj.accepted_steps);
  }
}

void bench_fidelity(benchmark::State& state) {
  const int dim = 12;
  std::mt19937 rng(77001);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_density = [&] {
    Eigen::MatrixXcd a(dim, dim);
    for (int c = 0; c < dim; ++c)
      for (int r = 0; r < dim; ++r) a(r, c) = std::complex<double>(gauss(rng), gauss(rng));
    Eigen::MatrixXcd rho = a * a.adjoint();
    return Eigen::MatrixXcd(rho / rho.trace().real());
  };
  const Eigen::MatrixXcd rho = random_density();
  const Eigen::MatrixXcd sigma = random_density();
  for (auto _ : state) {
    benchmark::DoNotOptimize(uhlmann_fidelity(rho, sigma));
  }
}

}  // namespace

BENCHMARK_CAPTURE(bench_operator_eval, full_rw_n2, 2, DriveForm::rotating_wave);
BENCHMARK_CAPTURE(bench_operator_eval, full_cosine_n2, 2, DriveForm::cosine);
BENCHMARK_CAPTURE(bench_operator_eval, full_rw_n3, 3, DriveForm::rotating_wave);
BENCHMARK_CAPTURE(bench_schedule_eval, base, false);
BENCHMARK_CAPTURE(bench_schedule_eval, dressed, true);
BENCHMARK_CAPTURE(bench_step_propagation, effective_n2, 2, ModelKind::effective);
BENCHMARK_CAPTURE(bench_step_propagation, effective_n3, 3, ModelKind::effective);
BENCHMARK_CAPTURE(bench_step_propagation, full_rw_n2, 2, ModelKind::full_rotating_wave);
BENCHMARK(bench_lindblad_step);
BENCHMARK(bench_fidelity);

BENCHMARK_MAIN();
