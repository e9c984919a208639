#include "rabsim/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace rabsim {

namespace {

constexpr double kTimeSlack = 1e-9;  // RK4 stages may overshoot T by rounding

// Antiderivative of (1 - cos x)^4; its mean over a period is 35/8.
double quartic_window_integral(double x) {
  const double s = std::sin(x);
  return 35.0 / 8.0 * x - 8.0 * s + 4.0 / 3.0 * s * s * s +
         7.0 / 4.0 * std::sin(2.0 * x) + std::sin(4.0 * x) / 32.0;
}

}  // namespace

TimeOperator::TimeOperator(int dim, Frame frame, Filler fill)
    : dim_(dim), frame_(frame), fill_(std::move(fill)) {}

Mat TimeOperator::at(double t) const {
  Mat out(dim_, dim_);
  fill_(t, out);
  return out;
}

double pulse_amplitude(double t, const SystemParams& p) {
  if (t < -kTimeSlack || t > p.gate_duration + kTimeSlack)
    throw std::out_of_range("pulse_amplitude: t outside [0, gate_duration]");
  switch (p.pulse_shape) {
    case PulseShape::ConstantAmplitude:
      return p.omega0_max;
    case PulseShape::CosineEnvelope:
      return p.omega0_max * (1.0 - std::cos(kTwoPi * t / p.gate_duration)) / 2.0;
  }
  throw std::logic_error("pulse_amplitude: unknown pulse shape");
}

double drive_field(double t, const SystemParams& p) {
  return pulse_amplitude(t, p) * std::cos(p.mod_freq * t);
}

double vdw_strength(const SystemParams& p) {
  if (p.vdw_override) return *p.vdw_override;
  if (p.distance <= 0.0)
    throw std::domain_error("vdw_strength: distance must be positive");
  return p.c6 / std::pow(p.distance, 6);
}

double antiblockade_vdw_target(const SystemParams& p) {
  return 2.0 * p.mod_freq - p.omega0_max * p.omega0_max / (6.0 * p.mod_freq);
}

double broken_vdw_target(const SystemParams& p) {
  return 2.0 * p.mod_freq + p.delta;
}

namespace {
double distance_for_target(double c6, double target) {
  if (target <= 0.0)
    throw std::domain_error("distance_for_target: target strength <= 0");
  return std::pow(c6 / target, 1.0 / 6.0);
}
}  // namespace

double rab_distance(const SystemParams& p) {
  return distance_for_target(p.c6, antiblockade_vdw_target(p));
}

double broken_distance(const SystemParams& p) {
  return distance_for_target(p.c6, broken_vdw_target(p));
}

double effective_rabi(double t, const SystemParams& p) {
  const double env = pulse_amplitude(t, p);
  return env * env / (4.0 * p.mod_freq);
}

double effective_detuning(double t, const SystemParams& p) {
  const double env = pulse_amplitude(t, p);
  return vdw_strength(p) - 2.0 * p.mod_freq + env * env / (6.0 * p.mod_freq);
}

double rabi_period(const SystemParams& p) {
  const double omega_eff = p.omega0_max * p.omega0_max / (4.0 * p.mod_freq);
  return kTwoPi / omega_eff;
}

double accumulated_stark_phase(double t, const SystemParams& p) {
  const double w = p.mod_freq;
  if (p.pulse_shape == PulseShape::ConstantAmplitude) {
    const double omega_eff = p.omega0_max * p.omega0_max / (4.0 * w);
    return omega_eff * omega_eff * t / (4.0 * p.delta);
  }
  // Omega_eff(t)^2 = Omega_m^4 (1 - cos(2 pi t/T))^4 / (256 w^2)
  const double T = p.gate_duration;
  const double pref = std::pow(p.omega0_max, 4) /
                      (256.0 * w * w * 4.0 * p.delta) * (T / kTwoPi);
  return pref * quartic_window_integral(kTwoPi * t / T);
}

double gate_duration_for_phase(double phi, const SystemParams& p) {
  if (phi <= 0.0)
    throw std::domain_error("gate_duration_for_phase: phi must be positive");
  return 8192.0 * phi * p.mod_freq * p.mod_freq * p.delta /
         (35.0 * std::pow(p.omega0_max, 4));
}

TimeOperator full_hamiltonian(const SystemParams& p) {
  // Constant structure: drive matrix and the vdW projector.
  const Mat3 flip = transition(Level::g1, Level::ryd);
  const Mat3 single = flip + flip.adjoint();
  const Mat3 eye = Mat3::Identity();
  Mat drive = (tensor(single, eye) + tensor(eye, single)).eval();
  const double v = vdw_strength(p);
  const int rr = pair_index(Level::ryd, Level::ryd);
  return TimeOperator(kPairDim, Frame::Lab,
                      [p, drive = std::move(drive), v, rr](double t, Mat& out) {
                        out.noalias() = (drive_field(t, p) / 2.0) * drive;
                        out(rr, rr) += v;
                      });
}

TimeOperator sector_hamiltonian(const SystemParams& p) {
  // Basis {|11>, |Psi_m>, |rr>} in the frame rotating |rr> at omega0 = 2w.
  const double v = vdw_strength(p);
  const double w = p.mod_freq;
  const double omega0 = 2.0 * w;
  const double inv_sqrt8 = 1.0 / (2.0 * std::sqrt(2.0));
  return TimeOperator(
      3, Frame::Rotated, [p, v, w, omega0, inv_sqrt8](double t, Mat& out) {
        const double env = pulse_amplitude(t, p);
        const Complex upper =
            env * inv_sqrt8 *
            (std::exp(Complex(0, w * t)) + std::exp(Complex(0, -w * t)));
        const Complex lower =
            env * inv_sqrt8 * (std::exp(Complex(0, (w - omega0) * t)) +
                               std::exp(Complex(0, -(w + omega0) * t)));
        out.setZero();
        out(0, 1) = upper;
        out(1, 0) = std::conj(upper);
        out(1, 2) = lower;
        out(2, 1) = std::conj(lower);
        out(2, 2) = v - omega0;
      });
}

TimeOperator effective_hamiltonian(const SystemParams& p) {
  // Basis {|11>, |rr>}.
  return TimeOperator(2, Frame::Effective, [p](double t, Mat& out) {
    const double half_rabi = effective_rabi(t, p) / 2.0;
    out.setZero();
    out(0, 1) = half_rabi;
    out(1, 0) = half_rabi;
    out(1, 1) = effective_detuning(t, p);
  });
}

TimeOperator final_effective_hamiltonian(const SystemParams& p) {
  // Basis {|11>, |rr>}; only the |11> Stark shift survives.
  return TimeOperator(2, Frame::FinalEffective, [p](double t, Mat& out) {
    const double omega_eff = effective_rabi(t, p);
    out.setZero();
    out(0, 0) = -omega_eff * omega_eff / (4.0 * p.delta);
  });
}

TimeOperator single_atom_hamiltonian(const SystemParams& p) {
  // Basis {|1>, |r>}.
  return TimeOperator(2, Frame::Lab, [p](double t, Mat& out) {
    const double half = drive_field(t, p) / 2.0;
    out.setZero();
    out(0, 1) = half;
    out(1, 0) = half;
  });
}

}  // namespace rabsim
