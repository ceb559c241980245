#include "rydsta/hamiltonian.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace rydsta {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

int pair_count(int n) { return n * (n - 1) / 2; }

}  // namespace

// ---------------------------------------------------------------------------
// DriveParams
// ---------------------------------------------------------------------------

double DriveParams::v_total() const {
  double sum = 0.0;
  for (double v : v_pairs) sum += v;
  return sum;
}

double DriveParams::alpha() const {
  if (delta <= 0.0) throw std::domain_error("DriveParams::alpha: delta must be positive");
  return omega_c / delta;
}

void DriveParams::validate() const {
  if (n < 2) throw std::invalid_argument("DriveParams: n must be at least 2");
  if (static_cast<int>(v_pairs.size()) != pair_count(n))
    throw std::invalid_argument("DriveParams: v_pairs must hold one entry per atom pair");
  for (double v : v_pairs)
    if (!(v >= 0.0)) throw std::invalid_argument("DriveParams: pair couplings must be nonnegative");
  if (!(omega_c >= 0.0) || !(omega_p >= 0.0) || !(omega_s >= 0.0))
    throw std::invalid_argument("DriveParams: drive amplitudes must be nonnegative");
  if (!(delta > 0.0)) throw std::invalid_argument("DriveParams: delta must be positive");
  if (!(gamma >= 0.0)) throw std::invalid_argument("DriveParams: gamma must be nonnegative");
}

std::vector<std::string> DriveParams::diagnostics() const {
  std::vector<std::string> notes;
  const double drive_max = std::max({omega_c, omega_p, omega_s});
  if (delta < 5.0 * drive_max)
    notes.push_back("detuning below 5x the largest drive amplitude; "
                    "second-order elimination loses accuracy");
  return notes;
}

double DriveParams::balanced_v_total() const {
  if (!(delta > 0.0))
    throw std::domain_error("DriveParams::balanced_v_total: delta must be positive");
  // The pump/Stokes pair runs along (-A sin, A cos) with one common amplitude,
  // so omega_p(t)^2 + omega_s(t)^2 stays at A^2 throughout the transfer; with
  // the stored per-leg peaks that is omega_p*omega_s, not the sum of squares.
  const double shift = ((n - 1) * omega_c * omega_c + omega_p * omega_s) / (3.0 * delta);
  return n * delta - shift;
}

void balance_interaction(DriveParams& params) {
  if (params.n < 2) throw std::invalid_argument("balance_interaction: n must be at least 2");
  const double total = params.balanced_v_total();
  if (!(total > 0.0))
    throw std::domain_error("balance_interaction: balanced interaction is not positive");
  params.v_pairs.assign(pair_count(params.n), total / pair_count(params.n));
}

// ---------------------------------------------------------------------------
// steps and effective parameters
// ---------------------------------------------------------------------------

StepSpec StepSpec::of(int index) {
  switch (index) {
    case 1: return {1, "1", "m"};
    case 2: return {2, "0", "1"};
    case 3: return {3, "m", "0"};
    default: throw std::invalid_argument("StepSpec::of: step index must be 1, 2, or 3");
  }
}

double effective_coupling_scale(int n, double omega_c, double delta) {
  if (n < 2) throw std::invalid_argument("effective_coupling_scale: n must be at least 2");
  if (!(delta > 0.0))
    throw std::domain_error("effective_coupling_scale: delta must be positive");
  double scale = 1.0;
  for (int k = 2; k <= n; ++k) scale *= k;  // n!
  scale /= std::pow(2.0, n);
  scale *= std::pow(omega_c / delta, n - 1);
  return scale;
}

EffectiveParams effective_params(const DriveParams& params) {
  params.validate();
  EffectiveParams eff;
  eff.n = params.n;
  eff.alpha = params.alpha();
  const double scale = effective_coupling_scale(params.n, params.omega_c, params.delta);
  eff.omega_p_eff = scale * params.omega_p;
  eff.omega_s_eff = scale * params.omega_s;
  // Drive-pair invariant: omega_p(t)^2 + omega_s(t)^2 equals the common pulse
  // amplitude squared (= omega_p*omega_s at the stored peaks) at every instant.
  eff.delta_eff = params.v_total() - params.n * params.delta +
                  ((params.n - 1) * params.omega_c * params.omega_c +
                   params.omega_p * params.omega_s) /
                      (3.0 * params.delta);
  return eff;
}

double rab_solve(double v_total, double omega_p, double omega_s, double alpha, int n) {
  if (n < 2) throw std::invalid_argument("rab_solve: n must be at least 2");
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("rab_solve: alpha must lie in [0, 1)");
  const double a = 3.0 * n - (n - 1) * alpha * alpha;  // > 0 for alpha < 1
  // Same drive-pair invariant as delta_eff: the sin/cos pulse pair contributes
  // its common amplitude squared.
  const double drive2 = omega_p * omega_s;
  const double disc = 9.0 * v_total * v_total + 4.0 * a * drive2;
  const double root = (3.0 * v_total + std::sqrt(disc)) / (2.0 * a);
  if (!(root > 0.0))
    throw std::domain_error("rab_solve: no positive detuning satisfies the resonance condition");
  return root;
}

// ---------------------------------------------------------------------------
// TimeDependentOperator
// ---------------------------------------------------------------------------

Envelopes Envelopes::from_schedule(const DressedSchedule& sched) {
  const double base = sched.base.omega;
  if (!(base > 0.0))
    throw std::invalid_argument("Envelopes::from_schedule: schedule amplitude must be positive");
  Envelopes env;
  env.p = [sched, base](double t) { return sched.drives(t).omega_p / base; };
  env.s = [sched, base](double t) { return sched.drives(t).omega_s / base; };
  return env;
}

TimeDependentOperator::TimeDependentOperator(HilbertSpace space, Eigen::MatrixXcd static_part)
    : space_(std::move(space)), static_(std::move(static_part)) {
  if (static_.rows() != static_.cols() || static_.rows() != space_.dim())
    throw std::invalid_argument("TimeDependentOperator: static part must be dim x dim");
}

void TimeDependentOperator::add_term(Eigen::MatrixXcd mat,
                                     std::function<std::complex<double>(double)> coeff) {
  if (mat.rows() != static_.rows() || mat.cols() != static_.cols())
    throw std::invalid_argument("TimeDependentOperator::add_term: shape mismatch");
  if (!coeff) throw std::invalid_argument("TimeDependentOperator::add_term: empty coefficient");
  terms_.push_back({std::move(mat), std::move(coeff)});
}

void TimeDependentOperator::eval(double t, Eigen::MatrixXcd& out) const {
  out = static_;
  for (const Term& term : terms_) out.noalias() += term.coeff(t) * term.mat;
}

Eigen::MatrixXcd TimeDependentOperator::at(double t) const {
  Eigen::MatrixXcd out;
  eval(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// full register Hamiltonian
// ---------------------------------------------------------------------------

TimeDependentOperator build_full_hamiltonian(const DriveParams& params, const StepSpec& step,
                                             DriveForm form, const Envelopes& env,
                                             ModelFrame frame, double carrier_time_offset) {
  params.validate();
  if (form == DriveForm::cosine && frame == ModelFrame::detuning)
    throw std::invalid_argument(
        "build_full_hamiltonian: the detuning frame requires the rotating-wave form");

  const HilbertSpace space = HilbertSpace::rydberg_register(params.n);
  const int dim = space.dim();
  const int n = params.n;
  const int target = n - 1;
  const double delta = params.delta;

  // Diagonal: pairwise Rydberg couplings, minus delta per excitation in the
  // detuning frame. Keeping the computational sector at zero energy keeps the
  // dominant amplitudes slow, which is what makes this frame cheap to resolve.
  Eigen::MatrixXcd static_part = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<int> r_level(n);
  for (int a = 0; a < n; ++a) r_level[a] = space.level_index(a, "r");
  std::vector<char> at_r(n);
  for (int b = 0; b < dim; ++b) {
    int n_r = 0;
    for (int a = 0; a < n; ++a) {
      at_r[a] = space.level_of(b, a) == r_level[a];
      n_r += at_r[a];
    }
    double diag = 0.0;
    int pair = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++pair)
        if (at_r[i] && at_r[j]) diag += params.v_pairs[pair];
    if (frame == ModelFrame::detuning) diag -= delta * n_r;
    static_part(b, b) = diag;
  }

  TimeDependentOperator h(space, std::move(static_part));

  struct Leg {
    int atom;
    std::string low;   // ground-side level
    double amp;        // physical Rabi amplitude
    std::function<double(double)> envelope;  // empty means constant 1
  };
  std::vector<Leg> legs;
  for (int a = 0; a < n - 1; ++a) legs.push_back({a, "1", params.omega_c, {}});
  legs.push_back({target, step.in_label, params.omega_p, env.p});
  legs.push_back({target, step.out_label, params.omega_s, env.s});

  Eigen::MatrixXcd static_extra = Eigen::MatrixXcd::Zero(dim, dim);
  bool has_static_extra = false;

  const double shift = carrier_time_offset;
  for (Leg& leg : legs) {
    if (leg.amp == 0.0) continue;
    const Eigen::MatrixXcd raise = transition(space, leg.atom, "r", leg.low).matrix;
    const Eigen::MatrixXcd lower = raise.adjoint();
    auto envelope = leg.envelope;  // copied into coefficient closures

    switch (form) {
      case DriveForm::cosine: {
        Eigen::MatrixXcd mat = leg.amp * (raise + lower);
        if (envelope)
          h.add_term(std::move(mat), [envelope, delta, shift](double t) {
            return std::complex<double>(envelope(t) * std::cos(delta * (t + shift)), 0.0);
          });
        else
          h.add_term(std::move(mat), [delta, shift](double t) {
            return std::complex<double>(std::cos(delta * (t + shift)), 0.0);
          });
        break;
      }
      case DriveForm::rotating_wave: {
        if (frame == ModelFrame::detuning) {
          if (envelope) {
            h.add_term(0.5 * leg.amp * (raise + lower), [envelope](double t) {
              return std::complex<double>(envelope(t), 0.0);
            });
          } else {
            static_extra += 0.5 * leg.amp * (raise + lower);
            has_static_extra = true;
          }
        } else {
          if (envelope) {
            h.add_term(0.5 * leg.amp * raise, [envelope, delta, shift](double t) {
              return envelope(t) * std::exp(-kI * delta * (t + shift));
            });
            h.add_term(0.5 * leg.amp * lower, [envelope, delta, shift](double t) {
              return envelope(t) * std::exp(kI * delta * (t + shift));
            });
          } else {
            h.add_term(0.5 * leg.amp * raise,
                       [delta, shift](double t) { return std::exp(-kI * delta * (t + shift)); });
            h.add_term(0.5 * leg.amp * lower,
                       [delta, shift](double t) { return std::exp(kI * delta * (t + shift)); });
          }
        }
        break;
      }
    }
  }

  if (has_static_extra)
    h.add_term(std::move(static_extra), [](double) { return std::complex<double>(1.0, 0.0); });

  const double v_scale = params.v_total();
  h.set_freq_scale(frame == ModelFrame::detuning ? delta : delta + v_scale);
  return h;
}

// ---------------------------------------------------------------------------
// effective lambda Hamiltonian
// ---------------------------------------------------------------------------

Eigen::MatrixXcd effective_lambda_matrix(double omega_p_eff, double omega_s_eff,
                                         double delta_eff) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
  h(0, 1) = omega_p_eff;
  h(1, 0) = omega_p_eff;
  h(1, 1) = delta_eff;
  h(1, 2) = omega_s_eff;
  h(2, 1) = omega_s_eff;
  return h;
}

LambdaIndices lambda_indices(const HilbertSpace& space, const StepSpec& step) {
  const int n = space.atom_count();
  if (n < 2) throw std::invalid_argument("lambda_indices: register needs at least 2 atoms");
  std::vector<std::string> in_labels(n, "1"), r_labels(n, "r"), out_labels(n, "1");
  in_labels[n - 1] = step.in_label;
  out_labels[n - 1] = step.out_label;
  return {space.index_of_labels(in_labels), space.index_of_labels(r_labels),
          space.index_of_labels(out_labels)};
}

TimeDependentOperator build_effective_hamiltonian(const EffectiveParams& eff,
                                                  const StepSpec& step,
                                                  const HilbertSpace& space,
                                                  const DressedSchedule& sched) {
  const LambdaIndices idx = lambda_indices(space, step);
  const int dim = space.dim();

  Eigen::MatrixXcd static_part = Eigen::MatrixXcd::Zero(dim, dim);
  static_part(idx.r, idx.r) = eff.delta_eff;

  TimeDependentOperator h(space, std::move(static_part));

  Eigen::MatrixXcd pump = Eigen::MatrixXcd::Zero(dim, dim);
  pump(idx.in, idx.r) = 1.0;
  pump(idx.r, idx.in) = 1.0;
  Eigen::MatrixXcd stokes = Eigen::MatrixXcd::Zero(dim, dim);
  stokes(idx.out, idx.r) = 1.0;
  stokes(idx.r, idx.out) = 1.0;

  h.add_term(std::move(pump), [sched](double t) {
    return std::complex<double>(sched.drives(t).omega_p, 0.0);
  });
  h.add_term(std::move(stokes), [sched](double t) {
    return std::complex<double>(sched.drives(t).omega_s, 0.0);
  });

  h.set_freq_scale(10.0 * sched.base.omega + std::abs(eff.delta_eff));
  return h;
}

std::vector<Operator> lindblad_ops(const DriveParams& params, const HilbertSpace& space) {
  params.validate();
  if (space.atom_count() != params.n)
    throw std::invalid_argument("lindblad_ops: space does not match register size");
  std::vector<Operator> ops;
  if (params.gamma == 0.0) return ops;
  const int n = params.n;
  for (int a = 0; a < n - 1; ++a) {
    const double rate = std::sqrt(params.gamma / 2.0);
    for (const char* label : {"0", "1"}) {
      Operator op = transition(space, a, label, "r");
      op.matrix *= rate;
      ops.push_back(std::move(op));
    }
  }
  const double rate = std::sqrt(params.gamma / 3.0);
  for (const char* label : {"0", "1", "m"}) {
    Operator op = transition(space, n - 1, label, "r");
    op.matrix *= rate;
    ops.push_back(std::move(op));
  }
  return ops;
}

// ---------------------------------------------------------------------------
// dressed-frame algebra
// ---------------------------------------------------------------------------

Eigen::Matrix3cd control_hamiltonian(double theta, double g_x, double g_z) {
  const Eigen::Matrix3cd u = adiabatic_frame(theta);
  const Eigen::Matrix3cd gen = g_x * spin1_mx() + g_z * spin1_mz();
  return u.adjoint() * gen * u;
}

Eigen::Matrix3cd dressed_frame_hamiltonian(const DressedFrameInputs& in) {
  const Eigen::Matrix3cd h_ad = in.omega * spin1_mz() + in.theta_dot * spin1_my() +
                                in.g_x * spin1_mx() + in.g_z * spin1_mz();
  const Eigen::Matrix3cd v = dressing_frame(in.mu, in.xi, in.eta);
  const Eigen::Matrix3cd drift =
      dressing_frame_drift(in.mu, in.mu_dot, in.xi, in.xi_dot, in.eta, in.eta_dot);
  return v * h_ad * v.adjoint() + drift;
}

double dressed_diagonal_rate(double theta_dot, double mu, double mu_dot, double xi,
                             double xi_dot) {
  // xi_dot cancels between the g_z correction and the frame drift.
  (void)xi_dot;
  const double numer = mu_dot * std::sin(xi) - theta_dot;
  const double denom = std::sin(mu) * std::cos(xi);
  if (std::abs(denom) < 1e-14) {
    const double scale = std::abs(theta_dot) + std::abs(mu_dot) + 1.0e-300;
    if (std::abs(numer) <= 1e-12 * scale) return 0.0;
    throw ScheduleSingularity("dressed_diagonal_rate: dressing angle vanishes while the "
                              "transfer is still rotating");
  }
  return numer / denom;
}

Eigen::Matrix3cd dressed_evolution_operator(const DressedSchedule& sched, double t_i,
                                            double t_f, int quad_points) {
  if (!sched.dressed)
    throw std::invalid_argument("dressed_evolution_operator: needs a dressed schedule");
  if (!(t_f > t_i))
    throw std::invalid_argument("dressed_evolution_operator: time window is empty");

  int points = std::max(quad_points, 3);
  if (points % 2 == 0) ++points;
  const double h = (t_f - t_i) / (points - 1);

  auto rate_at = [&sched](double t) {
    return dressed_diagonal_rate(sched.angles.theta_dot(t), sched.dressing.mu(t),
                                 sched.dressing.mu_dot(t), sched.dressing.xi(t),
                                 sched.dressing.xi_dot(t));
  };

  double phi = rate_at(t_i) + rate_at(t_f);
  for (int k = 1; k < points - 1; ++k)
    phi += (k % 2 == 1 ? 4.0 : 2.0) * rate_at(t_i + k * h);
  phi *= h / 3.0;

  Eigen::Matrix3cd d = Eigen::Matrix3cd::Zero();
  d(0, 0) = std::exp(-kI * phi);
  d(1, 1) = 1.0;
  d(2, 2) = std::exp(kI * phi);

  const Eigen::Matrix3cd u_i = adiabatic_frame(sched.angles.theta(t_i));
  const Eigen::Matrix3cd u_f = adiabatic_frame(sched.angles.theta(t_f));
  const Eigen::Matrix3cd v_i =
      dressing_frame(sched.dressing.mu(t_i), sched.dressing.xi(t_i), sched.dressing.eta(t_i));
  const Eigen::Matrix3cd v_f =
      dressing_frame(sched.dressing.mu(t_f), sched.dressing.xi(t_f), sched.dressing.eta(t_f));

  return u_f.adjoint() * v_f.adjoint() * d * v_i * u_i;
}

}  // namespace rydsta
