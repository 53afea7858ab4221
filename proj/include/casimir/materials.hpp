#pragma once

#include <complex>
#include <optional>
#include <string_view>

namespace casimir {

/// Lorentz oscillator response 1 + Omega^2 / (omega0^2 - omega^2 - i gamma omega).
/// All frequencies are SI angular frequencies (rad/s).
struct Oscillator {
  double plasma_freq = 0.0;
  double resonance_freq = 0.0;
  double damping = 0.0;

  std::complex<double> response(std::complex<double> omega) const;
  /// Response at omega = i xi, real by construction.
  double response_imag_axis(double xi) const;
  /// True when the response has a pole at zero frequency (omega0 = 0, Omega > 0).
  bool diverges_at_zero() const { return resonance_freq == 0.0 && plasma_freq > 0.0; }

  bool operator==(const Oscillator&) const = default;
};

enum class MaterialKind { Constant, DrudeLorentz, Plasma, PerfectMirror };

std::string_view to_string(MaterialKind kind);

/// Causal permittivity/permeability pair. Immutable after construction.
class DispersionModel {
 public:
  static DispersionModel vacuum() { return constant(1.0, 1.0); }
  static DispersionModel constant(double eps, double mu = 1.0);
  static DispersionModel drude_lorentz(double plasma_freq, double resonance_freq, double damping,
                                       std::optional<Oscillator> mu_model = std::nullopt);
  /// Lossless free-electron model, omega0 = gamma = 0.
  static DispersionModel plasma(double plasma_freq,
                                std::optional<Oscillator> mu_model = std::nullopt);
  /// Tag for an ideal reflector; has no finite response functions.
  static DispersionModel perfect_mirror();

  MaterialKind kind() const { return kind_; }
  bool is_perfect_mirror() const { return kind_ == MaterialKind::PerfectMirror; }
  double eps_static() const { return eps_static_; }
  double mu_static() const { return mu_static_; }
  const Oscillator& eps_oscillator() const { return eps_; }
  const std::optional<Oscillator>& mu_model() const { return mu_model_; }

  /// mu == 1 identically.
  bool is_nonmagnetic() const;
  /// eps(i xi) or mu(i xi) blows up as xi -> 0 (Drude or plasma pole).
  bool diverges_at_zero_frequency() const;

  /// Fast real-valued evaluation on the imaginary axis, xi >= 0.
  double eps_imag_axis(double xi) const;
  double mu_imag_axis(double xi) const;

  bool operator==(const DispersionModel&) const = default;

 private:
  DispersionModel() = default;

  MaterialKind kind_ = MaterialKind::Constant;
  double eps_static_ = 1.0;
  double mu_static_ = 1.0;
  Oscillator eps_{};
  std::optional<Oscillator> mu_model_{};
};

/// eps(freq) for freq on the real axis or the non-negative imaginary axis.
std::complex<double> eval_eps(const DispersionModel& model, std::complex<double> freq);
std::complex<double> eval_mu(const DispersionModel& model, std::complex<double> freq);
/// n^2 = eps mu.
std::complex<double> refractive_index_sq(const DispersionModel& model, std::complex<double> freq);

}  // namespace casimir
