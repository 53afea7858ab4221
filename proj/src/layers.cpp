#include "casimir/layers.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

std::string_view to_string(Polarization pol) { return pol == Polarization::s ? "s" : "p"; }

double beta_imag(double n_sq, double xi, double q) {
  if (!(n_sq >= 0.0) || !(xi >= 0.0) || !(q >= 0.0)) {
    throw DomainError("beta_imag: n^2, xi and q must be non-negative");
  }
  if (xi == 0.0 && q == 0.0) throw DomainError("beta_imag: degenerate mode xi = q = 0");
  return std::hypot(q, xi / constants::c * std::sqrt(n_sq));
}

MediumResponse medium_response(const DispersionModel& model, const TransverseMode& mode) {
  MediumResponse m;
  m.eps = model.eps_imag_axis(mode.xi);
  m.mu = model.mu_imag_axis(mode.xi);
  m.kappa = beta_imag(m.eps * m.mu, mode.xi, mode.q);
  m.q = mode.q;
  m.k0 = mode.xi / constants::c;
  return m;
}

InterfaceTerms interface_terms(Polarization pol, const MediumResponse& from, const MediumResponse& to) {
  const bool s_pol = pol == Polarization::s;
  const double wa = s_pol ? to.mu : to.eps;
  const double wb = s_pol ? from.mu : from.eps;
  // Scaled by kappa_a so that huge wavenumbers cannot overflow.
  const double ratio = to.kappa / from.kappa;
  const double sum = wa + wb * ratio;
  if (sum == 0.0 || !std::isfinite(sum)) {
    throw NumericError("fresnel: vanishing denominator (kappa_a = " + std::to_string(from.kappa) +
                       ", kappa_b = " + std::to_string(to.kappa) + ")");
  }
  if (from.q == 0.0 && from.k0 == 0.0) return {wa, wb * ratio, sum, wa - wb * ratio};
  // (wa k_a)^2 - (wb k_b)^2 expanded in q^2 and k0^2: near-matched media stay accurate.
  const double oa = s_pol ? to.eps : to.mu;
  const double ob = s_pol ? from.eps : from.mu;
  const double qs = from.q / from.kappa;
  const double ks = from.k0 / from.kappa;
  const double squares = qs * qs * (wa - wb) * (wa + wb) +
                         ks * ks * wa * wb * std::fma(wa, ob, -wb * oa);
  return {wa, wb * ratio, sum, squares / sum};
}

double InterfaceTerms::one_minus_r_sq() const {
  // (A + B)^2 - (A - B)^2 = 4AB, free of the cancellation when |r| -> 1.
  return 4.0 * a * b / (sum * sum);
}

std::complex<double> fresnel(Polarization pol, const MediumResponse& from, const MediumResponse& to) {
  const InterfaceTerms t = interface_terms(pol, from, to);
  return t.difference / t.sum;
}

std::complex<double> compose_reflection(std::complex<double> r_front, std::complex<double> r_back,
                                        double e) {
  const std::complex<double> round_trip = r_back * e;
  return (r_front + round_trip) / (1.0 + r_front * round_trip);
}

void Layer::validate() const {
  if (!(std::isfinite(thickness) && thickness > 0.0)) {
    throw DomainError("layer thickness must be finite and > 0");
  }
  if (material.is_perfect_mirror()) {
    throw DomainError("a finite layer cannot be a perfect mirror");
  }
}

Wall::Wall(std::vector<Layer> layers, DispersionModel terminator)
    : layers_(std::move(layers)), terminator_(std::move(terminator)) {
  for (const auto& layer : layers_) layer.validate();
}

Wall Wall::perfect_mirror() { return Wall({}, DispersionModel::perfect_mirror()); }

Wall Wall::semi_infinite(DispersionModel material) { return Wall({}, std::move(material)); }

Wall Wall::stack(std::vector<Layer> layers, std::optional<DispersionModel> terminator) {
  if (!terminator) throw ConfigError("wall stack needs a semi-infinite or mirror terminator");
  return Wall(std::move(layers), std::move(*terminator));
}

Wall Wall::behind(const std::vector<Layer>& front) const {
  std::vector<Layer> all = front;
  all.insert(all.end(), layers_.begin(), layers_.end());
  return Wall(std::move(all), terminator_);
}

std::complex<double> wall_reflection(const Wall& wall, const DispersionModel& ambient,
                                     const TransverseMode& mode) {
  const auto& layers = wall.layers();
  const double delta = mirror_sign(mode.pol);
  if (layers.empty() && wall.terminator().is_perfect_mirror()) return delta;

  // Fold from the terminator toward the interspace.
  const DispersionModel& innermost = layers.empty() ? ambient : layers.back().material;
  MediumResponse inside = medium_response(innermost, mode);
  std::complex<double> r = wall.terminator().is_perfect_mirror()
                               ? std::complex<double>(delta)
                               : fresnel(mode.pol, inside, medium_response(wall.terminator(), mode));

  for (std::size_t i = layers.size(); i-- > 0;) {
    const MediumResponse slab = inside;
    inside = medium_response(i == 0 ? ambient : layers[i - 1].material, mode);
    const double e = std::exp(-2.0 * slab.kappa * layers[i].thickness);
    r = compose_reflection(fresnel(mode.pol, inside, slab), r, e);
  }
  return r;
}

PlateCoefficients single_plate_rt(const Layer& plate, const DispersionModel& ambient,
                                  const TransverseMode& mode) {
  plate.validate();
  const MediumResponse outer = medium_response(ambient, mode);
  const MediumResponse inner = medium_response(plate.material, mode);
  const InterfaceTerms terms = interface_terms(mode.pol, outer, inner);
  const double r12 = terms.difference / terms.sum;
  const double transmitted = terms.one_minus_r_sq();
  const double one_way = std::exp(-inner.kappa * plate.thickness);
  const double e = one_way * one_way;
  const double opaque = -std::expm1(-2.0 * inner.kappa * plate.thickness);
  // 1 - r^2 e = (1 - e) + e (1 - r^2)
  const double den = opaque + e * transmitted;
  return {r12 * opaque / den, transmitted * one_way / den};
}

Plate Plate::slab(Layer layer) {
  layer.validate();
  Plate p;
  p.thickness_ = layer.thickness;
  p.layer_ = std::move(layer);
  return p;
}

Plate Plate::perfect_mirror(double thickness) {
  if (!(thickness >= 0.0)) throw DomainError("plate thickness must be >= 0");
  Plate p;
  p.thickness_ = thickness;
  return p;
}

const Layer& Plate::layer() const {
  if (!layer_) throw DomainError("perfect-mirror plate has no finite layer");
  return *layer_;
}

PlateCoefficients plate_coefficients(const Plate& plate, const DispersionModel& ambient,
                                     const TransverseMode& mode) {
  if (plate.is_perfect_mirror()) return {mirror_sign(mode.pol), 0.0};
  return single_plate_rt(plate.layer(), ambient, mode);
}

void CavityConfig::validate() const {
  if (!(gap1.medium == gap3.medium)) {
    throw DomainError("cavity: both gaps must hold the same medium");
  }
  if (gap1.medium.is_perfect_mirror()) throw DomainError("cavity: interspace cannot be a mirror");
  if (!(std::isfinite(gap1.width) && gap1.width > 0.0)) {
    throw DomainError("cavity: left gap width must be finite and > 0");
  }
  if (!(gap3.width > 0.0)) throw DomainError("cavity: right gap width must be > 0");
  if (!plate.is_perfect_mirror()) plate.layer().validate();
}

Wall CavityConfig::left_of_gap3() const {
  if (plate.is_perfect_mirror()) return Wall::perfect_mirror();
  return left_wall.behind({plate.layer(), Layer{gap1.medium, gap1.width}});
}

Wall CavityConfig::right_of_gap1() const {
  if (plate.is_perfect_mirror()) return Wall::perfect_mirror();
  if (!std::isfinite(gap3.width)) return Wall::stack({plate.layer()}, gap3.medium);
  return right_wall.behind({plate.layer(), Layer{gap3.medium, gap3.width}});
}

}  // namespace casimir
