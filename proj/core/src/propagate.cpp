#include "rydsta/propagate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace rydsta {

namespace {

using Eigen::MatrixXcd;
using std::complex;

// Dormand-Prince 5(4) tableau, FSAL.
constexpr double kC[7] = {0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0};
constexpr double kA21 = 0.2;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

using Rhs = std::function<void(double, const MatrixXcd&, MatrixXcd&)>;

double error_norm(const MatrixXcd& err, const MatrixXcd& y0, const MatrixXcd& y1, double atol,
                  double rtol) {
  const complex<double>* e = err.data();
  const complex<double>* a = y0.data();
  const complex<double>* b = y1.data();
  const Eigen::Index n = err.size();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale = atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
    const double q = std::abs(e[i]) / scale;
    acc += q * q;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

void require_hermitian_at_samples(const TimeDependentOperator& h, double t0, double t1) {
  for (double t : {t0, 0.5 * (t0 + t1), t1}) {
    const MatrixXcd m = h.at(t);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
      throw std::invalid_argument("evolve: Hamiltonian is not Hermitian at sampled times");
  }
}

struct StepCounters {
  long accepted = 0;
  long rejected = 0;
  double max_drift = 0.0;
};

// Adaptive integration with exact landings on every sample time. on_accept may
// modify the state in place (re-symmetrization); measure reports norm/trace;
// on_sample stores the state.
void integrate(const Rhs& f, MatrixXcd& y, const std::vector<double>& sample_times,
               const IntegratorConfig& cfg, double step_cap,
               const std::function<void(MatrixXcd&)>& on_accept,
               const std::function<double(const MatrixXcd&)>& measure,
               const std::function<void(std::size_t, double, const MatrixXcd&)>& on_sample,
               StepCounters& counters) {
  const double t0 = sample_times.front();
  const double t1 = sample_times.back();
  const double span = t1 - t0;

  MatrixXcd k1(y.rows(), y.cols()), k2(y.rows(), y.cols()), k3(y.rows(), y.cols()),
      k4(y.rows(), y.cols()), k5(y.rows(), y.cols()), k6(y.rows(), y.cols()),
      k7(y.rows(), y.cols()), ytmp(y.rows(), y.cols()), ynew(y.rows(), y.cols()),
      errv(y.rows(), y.cols());

  double t = t0;
  on_sample(0, t, y);
  std::size_t next_sample = 1;

  double proposal = cfg.init_step > 0.0 ? cfg.init_step : std::min(step_cap, span / 100.0);
  proposal = std::min(proposal, step_cap);

  // PI step-size controller in the classic dopri5 form.
  const double beta = 0.04;
  const double expo1 = 0.2 - beta * 0.75;
  double facold = 1e-4;
  bool last_rejected = false;

  f(t, y, k1);

  while (next_sample < sample_times.size()) {
    double h = std::min({proposal, step_cap, t1 - t});
    bool hit = false;
    const double target = sample_times[next_sample];
    if (t + h >= target - 1e-12 * span) {
      h = target - t;
      hit = true;
    }
    if (h <= span * 1e-15) {
      if (hit) {
        on_sample(next_sample, target, y);
        ++next_sample;
        t = target;
        continue;
      }
      throw std::runtime_error("evolve: integration step size underflow");
    }

    ytmp = y;
    ytmp.noalias() += (h * kA21) * k1;
    f(t + kC[1] * h, ytmp, k2);

    ytmp = y;
    ytmp.noalias() += (h * kA31) * k1;
    ytmp.noalias() += (h * kA32) * k2;
    f(t + kC[2] * h, ytmp, k3);

    ytmp = y;
    ytmp.noalias() += (h * kA41) * k1;
    ytmp.noalias() += (h * kA42) * k2;
    ytmp.noalias() += (h * kA43) * k3;
    f(t + kC[3] * h, ytmp, k4);

    ytmp = y;
    ytmp.noalias() += (h * kA51) * k1;
    ytmp.noalias() += (h * kA52) * k2;
    ytmp.noalias() += (h * kA53) * k3;
    ytmp.noalias() += (h * kA54) * k4;
    f(t + kC[4] * h, ytmp, k5);

    ytmp = y;
    ytmp.noalias() += (h * kA61) * k1;
    ytmp.noalias() += (h * kA62) * k2;
    ytmp.noalias() += (h * kA63) * k3;
    ytmp.noalias() += (h * kA64) * k4;
    ytmp.noalias() += (h * kA65) * k5;
    f(t + kC[5] * h, ytmp, k6);

    ynew = y;
    ynew.noalias() += (h * kB1) * k1;
    ynew.noalias() += (h * kB3) * k3;
    ynew.noalias() += (h * kB4) * k4;
    ynew.noalias() += (h * kB5) * k5;
    ynew.noalias() += (h * kB6) * k6;
    f(t + h, ynew, k7);

    errv = (h * kE1) * k1;
    errv.noalias() += (h * kE3) * k3;
    errv.noalias() += (h * kE4) * k4;
    errv.noalias() += (h * kE5) * k5;
    errv.noalias() += (h * kE6) * k6;
    errv.noalias() += (h * kE7) * k7;

    const double err = error_norm(errv, y, ynew, cfg.abs_tol, cfg.rel_tol);
    const double fac11 = std::pow(std::max(err, 1e-16), expo1);

    if (err <= 1.0) {
      ++counters.accepted;
      const double t_new = hit ? target : t + h;
      y.swap(ynew);
      if (on_accept) on_accept(y);
      counters.max_drift = std::max(counters.max_drift, std::abs(measure(y) - 1.0));
      k1.swap(k7);
      t = t_new;
      if (hit) {
        on_sample(next_sample, t, y);
        ++next_sample;
      }

      const double fac = std::max(0.2, std::min(5.0, fac11 / std::pow(facold, beta) / 0.9));
      facold = std::max(err, 1e-4);
      double h_next = h / fac;
      if (last_rejected) h_next = std::min(h_next, h);
      // A clip to a sample must not throttle later steps.
      proposal = hit ? std::max(h_next, proposal) : h_next;
      last_rejected = false;
    } else {
      ++counters.rejected;
      last_rejected = true;
      proposal = h / std::min(5.0, fac11 / 0.9);
    }
  }
}

StateTolerances trajectory_tolerances() {
  StateTolerances tol = StateTolerances::relaxed(1e4);
  tol.check_spectrum = false;
  return tol;
}

double resolve_step_cap(const TimeDependentOperator& h, const IntegratorConfig& cfg,
                        double span) {
  if (cfg.max_step > 0.0) return cfg.max_step;
  if (h.freq_scale() > 0.0) return (2.0 * M_PI / h.freq_scale()) / 20.0;
  return span / 50.0;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("IntegratorConfig: rel_tol must be positive");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("IntegratorConfig: abs_tol must be positive");
  if (max_step < 0.0) throw std::invalid_argument("IntegratorConfig: max_step must be >= 0");
  if (init_step < 0.0) throw std::invalid_argument("IntegratorConfig: init_step must be >= 0");
  if (samples < 2) throw std::invalid_argument("IntegratorConfig: need at least 2 samples");
}

Trajectory evolve_schrodinger(const TimeDependentOperator& h, const QuantumState& psi0,
                              double t0, double t1, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(t1 > t0)) throw std::invalid_argument("evolve_schrodinger: need t1 > t0");
  if (!psi0.is_ket()) throw std::invalid_argument("evolve_schrodinger: initial state must be a ket");
  if (psi0.space() != h.space())
    throw std::invalid_argument("evolve_schrodinger: state space does not match the Hamiltonian");
  require_hermitian_at_samples(h, t0, t1);

  const int dim = h.dim();
  MatrixXcd y = psi0.vector();
  y.resize(dim, 1);

  MatrixXcd h_t(dim, dim);
  Rhs rhs = [&h, &h_t](double t, const MatrixXcd& state, MatrixXcd& dstate) {
    h.eval(t, h_t);
    dstate.noalias() = h_t * state;
    dstate *= complex<double>(0.0, -1.0);
  };

  std::vector<double> times(cfg.samples);
  for (int i = 0; i < cfg.samples; ++i)
    times[i] = t0 + (t1 - t0) * static_cast<double>(i) / (cfg.samples - 1);
  times.back() = t1;

  Trajectory traj;
  traj.times = times;
  traj.states.reserve(cfg.samples);
  traj.norm_or_trace.reserve(cfg.samples);

  const StateTolerances tol = trajectory_tolerances();
  auto on_sample = [&](std::size_t, double, const MatrixXcd& state) {
    Eigen::VectorXcd v = state.col(0);
    traj.norm_or_trace.push_back(v.norm());
    traj.states.push_back(QuantumState::ket(h.space(), std::move(v), tol));
  };
  auto measure = [](const MatrixXcd& state) { return state.norm(); };

  StepCounters counters;
  integrate(rhs, y, times, cfg, resolve_step_cap(h, cfg, t1 - t0), nullptr, measure, on_sample,
            counters);

  traj.accepted_steps = counters.accepted;
  traj.rejected_steps = counters.rejected;
  traj.max_drift = counters.max_drift;
  traj.min_eigenvalue = 0.0;
  return traj;
}

Trajectory evolve_lindblad(const TimeDependentOperator& h, const std::vector<Operator>& jumps,
                           const QuantumState& rho0, double t0, double t1,
                           const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(t1 > t0)) throw std::invalid_argument("evolve_lindblad: need t1 > t0");
  if (rho0.space() != h.space())
    throw std::invalid_argument("evolve_lindblad: state space does not match the Hamiltonian");
  require_hermitian_at_samples(h, t0, t1);

  const int dim = h.dim();
  for (const Operator& jump : jumps) {
    if (jump.matrix.rows() != dim || jump.matrix.cols() != dim)
      throw std::invalid_argument("evolve_lindblad: jump operator dimension mismatch");
    if (jump.space != h.space())
      throw std::invalid_argument("evolve_lindblad: jump operator space mismatch");
  }

  // Jump channels as nonzero entries; G = sum L^†L applied via its diagonal
  // when possible (always true for single-transition channels).
  struct Entry {
    int row, col;
    complex<double> v;
  };
  std::vector<std::vector<Entry>> channels;
  MatrixXcd gsum = MatrixXcd::Zero(dim, dim);
  for (const Operator& jump : jumps) {
    std::vector<Entry> entries;
    for (int c = 0; c < dim; ++c)
      for (int r = 0; r < dim; ++r)
        if (std::abs(jump.matrix(r, c)) > 0.0) entries.push_back({r, c, jump.matrix(r, c)});
    gsum.noalias() += jump.matrix.adjoint() * jump.matrix;
    channels.push_back(std::move(entries));
  }
  double offdiag = 0.0;
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r)
      if (r != c) offdiag = std::max(offdiag, std::abs(gsum(r, c)));
  const bool g_diagonal = offdiag <= 1e-14 * std::max(1.0, gsum.cwiseAbs().maxCoeff());
  const Eigen::VectorXd gdiag = gsum.diagonal().real();

  MatrixXcd y = rho0.to_density();

  MatrixXcd h_t(dim, dim);
  Rhs rhs = [&](double t, const MatrixXcd& rho, MatrixXcd& drho) {
    h.eval(t, h_t);
    drho.noalias() = h_t * rho;
    drho.noalias() -= rho * h_t;
    drho *= complex<double>(0.0, -1.0);
    for (const auto& entries : channels)
      for (const Entry& a : entries)
        for (const Entry& b : entries)
          drho(a.row, b.row) += a.v * std::conj(b.v) * rho(a.col, b.col);
    if (g_diagonal) {
      for (int c = 0; c < dim; ++c)
        for (int r = 0; r < dim; ++r)
          drho(r, c) -= 0.5 * (gdiag(r) + gdiag(c)) * rho(r, c);
    } else {
      drho.noalias() -= 0.5 * (gsum * rho);
      drho.noalias() -= 0.5 * (rho * gsum);
    }
  };

  std::vector<double> times(cfg.samples);
  for (int i = 0; i < cfg.samples; ++i)
    times[i] = t0 + (t1 - t0) * static_cast<double>(i) / (cfg.samples - 1);
  times.back() = t1;

  Trajectory traj;
  traj.times = times;
  traj.states.reserve(cfg.samples);
  traj.norm_or_trace.reserve(cfg.samples);
  traj.min_eigenvalue = 0.0;

  const StateTolerances tol = trajectory_tolerances();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver;
  auto on_sample = [&](std::size_t, double, const MatrixXcd& state) {
    traj.norm_or_trace.push_back(state.real().trace());
    solver.compute(state, Eigen::EigenvaluesOnly);
    const double min_ev = solver.eigenvalues().minCoeff();
    traj.min_eigenvalue = std::min(traj.min_eigenvalue, min_ev);
    if (min_ev < -1e-6) traj.positivity_violated = true;
    traj.states.push_back(QuantumState::density(h.space(), state, tol));
  };
  auto measure = [](const MatrixXcd& state) { return state.real().trace(); };
  auto resymmetrize = [](MatrixXcd& state) { state = 0.5 * (state + state.adjoint()).eval(); };

  StepCounters counters;
  integrate(rhs, y, times, cfg, resolve_step_cap(h, cfg, t1 - t0), resymmetrize, measure,
            on_sample, counters);

  traj.accepted_steps = counters.accepted;
  traj.rejected_steps = counters.rejected;
  traj.max_drift = counters.max_drift;
  return traj;
}

}  // namespace rydsta
