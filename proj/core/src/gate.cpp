#include "rydsta/gate.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "rydsta/parallel.hpp"

namespace rydsta {

namespace {

using std::complex;

constexpr complex<double> kI{0.0, 1.0};

TimeDependentOperator step_hamiltonian(const GateProtocol& proto, const StepSpec& step,
                                       const HilbertSpace& space, const DressedSchedule& sched,
                                       const EffectiveParams& eff, double carrier_offset) {
  switch (proto.model) {
    case ModelKind::effective:
      return build_effective_hamiltonian(eff, step, space, sched);
    case ModelKind::full_rotating_wave:
      // Detuning frame: populations and computational coherences match the
      // lab frame exactly while the integrator only resolves residual
      // detunings instead of the carrier.
      return build_full_hamiltonian(proto.params, step, DriveForm::rotating_wave,
                                    Envelopes::from_schedule(sched), ModelFrame::detuning,
                                    carrier_offset);
    case ModelKind::full_cosine:
      return build_full_hamiltonian(proto.params, step, DriveForm::cosine,
                                    Envelopes::from_schedule(sched), ModelFrame::lab,
                                    carrier_offset);
  }
  throw std::logic_error("step_hamiltonian: unknown model");
}

GateRun run_steps(const GateProtocol& proto, const QuantumState& input,
                  const std::vector<StepSpec>& steps) {
  proto.validate();
  const HilbertSpace space = proto.space();
  if (input.space() != space)
    throw std::invalid_argument("run_gate: input state lives on a different register");

  const DressedSchedule sched = proto.schedule();
  const double t_i = sched.base.t_i;
  const double t_f = sched.base.t_f;
  const double duration = sched.base.duration();
  const EffectiveParams eff = proto.effective();

  const bool dissipative = proto.dissipation && proto.params.gamma > 0.0;
  std::vector<Operator> jumps;
  if (dissipative) jumps = lindblad_ops(proto.params, space);
  const bool density_run = dissipative || !input.is_ket();

  GateRun run{input, {}};
  run.steps.reserve(steps.size());
  QuantumState state = input;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    // Step k occupies global time [k*duration, (k+1)*duration); carriers see
    // global time through the offset, envelopes see local schedule time.
    const double offset = static_cast<double>(k) * duration - t_i;
    const TimeDependentOperator h =
        step_hamiltonian(proto, steps[k], space, sched, eff, offset);
    Trajectory traj = density_run
                          ? evolve_lindblad(h, jumps, state, t_i, t_f, proto.integrator)
                          : evolve_schrodinger(h, state, t_i, t_f, proto.integrator);
    state = traj.final_state();
    run.steps.push_back({steps[k], std::move(traj), static_cast<double>(k) * duration});
  }
  run.final_state = state;
  return run;
}

std::vector<std::string> computational_labels(int n, int mask) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = ((mask >> (n - 1 - i)) & 1) ? "1" : "0";
  return labels;
}

}  // namespace

// ---------------------------------------------------------------------------
// GateProtocol
// ---------------------------------------------------------------------------

double GateProtocol::omega_eff() const {
  return effective_coupling_scale(n, params.omega_c, params.delta) * params.omega_p;
}

VitanovPulseSpec GateProtocol::pulse_spec() const {
  return VitanovPulseSpec::with_edge(omega_eff(), tau, eps_edge);
}

DressedSchedule GateProtocol::schedule() const { return dressed_schedule(pulse_spec(), dressed); }

std::vector<StepSpec> GateProtocol::steps() const {
  return {StepSpec::of(1), StepSpec::of(2), StepSpec::of(3)};
}

void GateProtocol::validate() const {
  if (n < 2) throw std::invalid_argument("GateProtocol: n must be at least 2");
  if (params.n != n)
    throw std::invalid_argument("GateProtocol: drive parameters disagree on register size");
  params.validate();
  const double amp_scale = std::max({params.omega_p, params.omega_s, 1.0});
  if (std::abs(params.omega_p - params.omega_s) > 1e-12 * amp_scale)
    throw std::invalid_argument(
        "GateProtocol: pump and Stokes base amplitudes must match (constant-amplitude schedule)");
  if (!(tau > 0.0)) throw std::invalid_argument("GateProtocol: tau must be positive");
  if (!(eps_edge > 0.0) || !(eps_edge < M_PI / 4.0))
    throw std::invalid_argument("GateProtocol: eps_edge must lie in (0, pi/4)");
  integrator.validate();
  if (theta_grid < 21 || theta_grid % 2 == 0)
    throw std::invalid_argument("GateProtocol: theta_grid must be odd and at least 21");
  if (threads < 0) throw std::invalid_argument("GateProtocol: threads must be >= 0");
}

// ---------------------------------------------------------------------------
// gate runs
// ---------------------------------------------------------------------------

GateRun run_gate(const GateProtocol& proto, const QuantumState& input) {
  return run_steps(proto, input, proto.steps());
}

GateRun adiabatic_reference_run(GateProtocol proto, const QuantumState& input) {
  proto.dressed = false;
  return run_steps(proto, input, {StepSpec::of(1)});
}

int ideal_output_index(const HilbertSpace& space, int input_index) {
  const int n = space.atom_count();
  std::vector<std::string> labels = space.labels_of(input_index);
  bool all_controls_one = true;
  for (int i = 0; i < n; ++i) {
    if (labels[i] != "0" && labels[i] != "1")
      throw std::invalid_argument("ideal_output_index: input is not computational");
    if (i < n - 1 && labels[i] != "1") all_controls_one = false;
  }
  if (all_controls_one) labels[n - 1] = labels[n - 1] == "1" ? "0" : "1";
  return space.index_of_labels(labels);
}

TruthTable truth_table(const GateProtocol& proto) {
  proto.validate();
  const HilbertSpace space = proto.space();
  const int n = proto.n;
  const int n_inputs = 1 << n;

  TruthTable tt;
  tt.inputs.resize(n_inputs);
  tt.ideal_outputs.resize(n_inputs);
  tt.composed = Eigen::MatrixXd::Zero(n_inputs, n_inputs);
  tt.per_step.assign(3, Eigen::MatrixXd::Zero(n_inputs, n_inputs));
  tt.fidelity.resize(n_inputs);
  tt.leakage.resize(n_inputs);

  std::vector<int> comp_index(n_inputs);
  std::vector<int> ideal_index(n_inputs);
  for (int i = 0; i < n_inputs; ++i) {
    const auto labels = computational_labels(n, i);
    comp_index[i] = space.index_of_labels(labels);
    ideal_index[i] = ideal_output_index(space, comp_index[i]);
    tt.inputs[i] = space.basis_label(comp_index[i]);
    tt.ideal_outputs[i] = space.basis_label(ideal_index[i]);
  }

  const bool coherent = !(proto.dissipation && proto.params.gamma > 0.0);
  if (coherent) tt.phase.resize(n_inputs);

  parallel_for(n_inputs, proto.threads, [&](int i) {
    const QuantumState psi0 =
        QuantumState::basis_ket(space, space.labels_of(comp_index[i]));
    const GateRun run = run_gate(proto, psi0);
    for (int s = 0; s < 3; ++s) {
      const QuantumState& after = run.steps[s].trajectory.final_state();
      for (int j = 0; j < n_inputs; ++j)
        tt.per_step[s](i, j) = population(after, comp_index[j]);
    }
    for (int j = 0; j < n_inputs; ++j) tt.composed(i, j) = tt.per_step[2](i, j);
    tt.fidelity[i] = population(run.final_state, ideal_index[i]);
    tt.leakage[i] = 1.0 - tt.composed.row(i).sum();
    if (coherent && run.final_state.is_ket())
      tt.phase[i] = std::arg(run.final_state.vector()(ideal_index[i]));
  });

  return tt;
}

// ---------------------------------------------------------------------------
// average fidelity
// ---------------------------------------------------------------------------

FavResult average_fidelity(const GateProtocol& proto) {
  proto.validate();
  const HilbertSpace space = proto.space();
  const int dim = space.dim();
  const int grid = proto.theta_grid;

  std::vector<std::string> labels_a(proto.n, "1"), labels_b(proto.n, "1");
  labels_a[proto.n - 1] = "0";
  const int idx_a = space.index_of_labels(labels_a);
  const int idx_b = space.index_of_labels(labels_b);

  Eigen::VectorXcd ket_a = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd ket_b = Eigen::VectorXcd::Zero(dim);
  ket_a(idx_a) = 1.0;
  ket_b(idx_b) = 1.0;

  FavResult res;
  res.theta_grid = grid;
  res.theta.resize(grid);
  res.fidelity.resize(grid);
  for (int j = 0; j < grid; ++j)
    res.theta[j] = -M_PI + 2.0 * M_PI * static_cast<double>(j) / (grid - 1);

  // The ideal gate swaps the two branch states: U|a> = |b>, U|b> = |a>.
  auto ideal_ket = [&](double theta) {
    Eigen::VectorXcd u = std::cos(0.5 * theta) * ket_b + std::sin(0.5 * theta) * ket_a;
    return u;
  };

  if (proto.fav_propagation == FavPropagation::linear) {
    // Four generator states reconstruct the channel on the branch qubit.
    std::vector<Eigen::VectorXcd> gen(4);
    gen[0] = ket_a;
    gen[1] = ket_b;
    gen[2] = (ket_a + ket_b) / std::sqrt(2.0);
    gen[3] = (ket_a + kI * ket_b) / std::sqrt(2.0);

    std::vector<Eigen::MatrixXcd> out(4);
    parallel_for(4, proto.threads, [&](int k) {
      const GateRun run = run_gate(proto, QuantumState::ket(space, gen[k]));
      out[k] = run.final_state.to_density();
    });

    const Eigen::MatrixXcd e_ab =
        out[2] + kI * out[3] - 0.5 * (1.0 + kI) * (out[0] + out[1]);
    const Eigen::MatrixXcd e_ba = e_ab.adjoint();

    for (int j = 0; j < grid; ++j) {
      const double c = std::cos(0.5 * res.theta[j]);
      const double s = std::sin(0.5 * res.theta[j]);
      const Eigen::VectorXcd u = ideal_ket(res.theta[j]);
      const Eigen::MatrixXcd rho =
          c * c * out[0] + s * s * out[1] + c * s * (e_ab + e_ba);
      res.fidelity[j] = std::real((u.adjoint() * rho * u)(0, 0));
    }
    res.branch_coherence = (ket_b.adjoint() * e_ab * ket_a)(0, 0);
    res.relative_phase = std::arg(res.branch_coherence);
  } else {
    // One propagation per grid point, plus two generator runs so the branch
    // coherence is still reported.
    std::vector<Eigen::MatrixXcd> finals(grid + 2);
    parallel_for(grid + 2, proto.threads, [&](int j) {
      Eigen::VectorXcd in;
      if (j < grid)
        in = std::cos(0.5 * res.theta[j]) * ket_a + std::sin(0.5 * res.theta[j]) * ket_b;
      else if (j == grid)
        in = (ket_a + ket_b) / std::sqrt(2.0);
      else
        in = (ket_a + kI * ket_b) / std::sqrt(2.0);
      const GateRun run = run_gate(proto, QuantumState::ket(space, in));
      finals[j] = run.final_state.to_density();
    });

    for (int j = 0; j < grid; ++j) {
      const Eigen::VectorXcd u = ideal_ket(res.theta[j]);
      res.fidelity[j] = std::real((u.adjoint() * finals[j] * u)(0, 0));
    }

    // E_aa and E_bb sit on the grid (theta = 0 and theta = -pi).
    const Eigen::MatrixXcd& e_aa = finals[(grid - 1) / 2];
    const Eigen::MatrixXcd& e_bb = finals[0];
    const Eigen::MatrixXcd e_ab =
        finals[grid] + kI * finals[grid + 1] - 0.5 * (1.0 + kI) * (e_aa + e_bb);
    res.branch_coherence = (ket_b.adjoint() * e_ab * ket_a)(0, 0);
    res.relative_phase = std::arg(res.branch_coherence);
  }

  // Trapezoid over one period.
  double sum = 0.5 * (res.fidelity.front() + res.fidelity.back());
  for (int j = 1; j < grid - 1; ++j) sum += res.fidelity[j];
  res.f_av = sum / (grid - 1);
  return res;
}

std::vector<SpherePoint> sphere_path(const StepRun& run, const HilbertSpace& space) {
  const LambdaIndices idx = lambda_indices(space, run.step);
  std::vector<SpherePoint> path;
  path.reserve(run.trajectory.times.size());
  for (std::size_t i = 0; i < run.trajectory.times.size(); ++i) {
    const QuantumState& st = run.trajectory.states[i];
    SpherePoint pt;
    pt.t = run.trajectory.times[i];
    if (st.is_ket()) {
      pt.a = std::abs(st.vector()(idx.in));
      pt.b = std::abs(st.vector()(idx.r));
      pt.c = std::abs(st.vector()(idx.out));
    } else {
      pt.a = std::sqrt(std::max(0.0, std::real(st.matrix()(idx.in, idx.in))));
      pt.b = std::sqrt(std::max(0.0, std::real(st.matrix()(idx.r, idx.r))));
      pt.c = std::sqrt(std::max(0.0, std::real(st.matrix()(idx.out, idx.out))));
    }
    path.push_back(pt);
  }
  return path;
}

}  // namespace rydsta
