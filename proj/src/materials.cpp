#include "casimir/materials.hpp"

#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

void check_oscillator(const Oscillator& osc, const char* what) {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!ok(osc.plasma_freq) || !ok(osc.resonance_freq) || !ok(osc.damping)) {
    throw DomainError(std::string(what) +
                      ": plasma, resonance and damping frequencies must be finite and >= 0");
  }
}

enum class Axis { real, imaginary };

Axis classify(std::complex<double> freq) {
  if (freq.imag() == 0.0) return Axis::real;
  if (freq.real() == 0.0 && freq.imag() > 0.0) return Axis::imaginary;
  throw DomainError("frequency must lie on the real axis or the positive imaginary axis");
}

void require_finite_response(const DispersionModel& model) {
  if (model.is_perfect_mirror()) {
    throw DomainError("perfect mirror has no finite response function");
  }
}

}  // namespace

std::complex<double> Oscillator::response(std::complex<double> omega) const {
  const std::complex<double> i{0.0, 1.0};
  return 1.0 + plasma_freq * plasma_freq /
                   (resonance_freq * resonance_freq - omega * omega - i * damping * omega);
}

double Oscillator::response_imag_axis(double xi) const {
  return 1.0 + plasma_freq * plasma_freq /
                   (resonance_freq * resonance_freq + xi * xi + damping * xi);
}

std::string_view to_string(MaterialKind kind) {
  switch (kind) {
    case MaterialKind::Constant: return "constant";
    case MaterialKind::DrudeLorentz: return "drude_lorentz";
    case MaterialKind::Plasma: return "plasma";
    case MaterialKind::PerfectMirror: return "mirror";
  }
  return "unknown";
}

DispersionModel DispersionModel::constant(double eps, double mu) {
  if (!std::isfinite(eps) || eps < 1.0) throw DomainError("constant model: eps_static must be >= 1");
  if (!std::isfinite(mu) || mu <= 0.0) throw DomainError("constant model: mu_static must be > 0");
  DispersionModel m;
  m.kind_ = MaterialKind::Constant;
  m.eps_static_ = eps;
  m.mu_static_ = mu;
  return m;
}

DispersionModel DispersionModel::drude_lorentz(double plasma_freq, double resonance_freq,
                                               double damping,
                                               std::optional<Oscillator> mu_model) {
  DispersionModel m;
  m.kind_ = MaterialKind::DrudeLorentz;
  m.eps_ = Oscillator{plasma_freq, resonance_freq, damping};
  check_oscillator(m.eps_, "permittivity oscillator");
  if (mu_model) check_oscillator(*mu_model, "permeability oscillator");
  m.mu_model_ = mu_model;
  m.eps_static_ = 0.0;
  m.mu_static_ = 0.0;
  return m;
}

DispersionModel DispersionModel::plasma(double plasma_freq, std::optional<Oscillator> mu_model) {
  DispersionModel m = drude_lorentz(plasma_freq, 0.0, 0.0, mu_model);
  m.kind_ = MaterialKind::Plasma;
  return m;
}

DispersionModel DispersionModel::perfect_mirror() {
  DispersionModel m;
  m.kind_ = MaterialKind::PerfectMirror;
  m.eps_static_ = 0.0;
  m.mu_static_ = 0.0;
  return m;
}

bool DispersionModel::is_nonmagnetic() const {
  switch (kind_) {
    case MaterialKind::Constant: return mu_static_ == 1.0;
    case MaterialKind::DrudeLorentz:
    case MaterialKind::Plasma: return !mu_model_ || mu_model_->plasma_freq == 0.0;
    case MaterialKind::PerfectMirror: return false;
  }
  return false;
}

bool DispersionModel::diverges_at_zero_frequency() const {
  if (kind_ != MaterialKind::DrudeLorentz && kind_ != MaterialKind::Plasma) return false;
  return eps_.diverges_at_zero() || (mu_model_ && mu_model_->diverges_at_zero());
}

double DispersionModel::eps_imag_axis(double xi) const {
  require_finite_response(*this);
  if (kind_ == MaterialKind::Constant) return eps_static_;
  return eps_.response_imag_axis(xi);
}

double DispersionModel::mu_imag_axis(double xi) const {
  require_finite_response(*this);
  if (kind_ == MaterialKind::Constant) return mu_static_;
  return mu_model_ ? mu_model_->response_imag_axis(xi) : 1.0;
}

std::complex<double> eval_eps(const DispersionModel& model, std::complex<double> freq) {
  require_finite_response(model);
  const Axis axis = classify(freq);
  if (model.kind() == MaterialKind::Constant) return model.eps_static();
  if (axis == Axis::imaginary) return model.eps_imag_axis(freq.imag());
  return model.eps_oscillator().response(freq);
}

std::complex<double> eval_mu(const DispersionModel& model, std::complex<double> freq) {
  require_finite_response(model);
  const Axis axis = classify(freq);
  if (model.kind() == MaterialKind::Constant) return model.mu_static();
  if (!model.mu_model()) return 1.0;
  if (axis == Axis::imaginary) return model.mu_imag_axis(freq.imag());
  return model.mu_model()->response(freq);
}

std::complex<double> refractive_index_sq(const DispersionModel& model,
                                         std::complex<double> freq) {
  return eval_eps(model, freq) * eval_mu(model, freq);
}

}  // namespace casimir
