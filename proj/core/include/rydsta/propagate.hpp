#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rydsta/hamiltonian.hpp"
#include "rydsta/state.hpp"

namespace rydsta {

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = 0.0;   // 0: derived from the operator's carrier frequency
  double init_step = 0.0;  // 0: automatic
  int samples = 201;       // dense-output samples, >= 2, endpoints included

  void validate() const;
};

// Sampled solution plus conservation bookkeeping. norm_or_trace is logged per
// sample; max_drift tracks every accepted step.
struct Trajectory {
  std::vector<double> times;
  std::vector<QuantumState> states;
  std::vector<double> norm_or_trace;
  double max_drift = 0.0;        // max |norm_or_trace - 1| over accepted steps
  double min_eigenvalue = 0.0;   // density runs: most negative sampled eigenvalue
  long accepted_steps = 0;
  long rejected_steps = 0;
  bool positivity_violated = false;  // min_eigenvalue < -1e-6 at some sample

  const QuantumState& final_state() const { return states.back(); }
};

// i dpsi/dt = H(t) psi, adaptive Dormand–Prince 5(4).
Trajectory evolve_schrodinger(const TimeDependentOperator& h, const QuantumState& psi0,
                              double t0, double t1, const IntegratorConfig& cfg = {});

// drho/dt = i[rho, H] + sum_k (L rho L^† - {L^†L, rho}/2). The state is
// re-symmetrized after every accepted step; spectra are only inspected at
// samples (positivity monitor), never clamped during propagation.
Trajectory evolve_lindblad(const TimeDependentOperator& h, const std::vector<Operator>& jumps,
                           const QuantumState& rho0, double t0, double t1,
                           const IntegratorConfig& cfg = {});

}  // namespace rydsta
