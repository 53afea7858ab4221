#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "casimir/materials.hpp"

namespace casimir {

enum class Polarization { s, p };

inline constexpr std::array<Polarization, 2> kPolarizations{Polarization::s, Polarization::p};

/// Delta_sigma: -1 for s, +1 for p. Equals the perfect-mirror reflection coefficient.
constexpr double mirror_sign(Polarization pol) { return pol == Polarization::p ? 1.0 : -1.0; }

std::string_view to_string(Polarization pol);

/// Point (xi, q, sigma) on the imaginary frequency axis. xi in rad/s, q in rad/m.
struct TransverseMode {
  double xi = 0.0;
  double q = 0.0;
  Polarization pol = Polarization::s;
};

/// Material response seen by one mode: eps(i xi), mu(i xi) and the decay constant kappa.
struct MediumResponse {
  double eps = 1.0;
  double mu = 1.0;
  double kappa = 0.0;
  // Mode data behind kappa; lets interfaces form kappa_a^2 - kappa_b^2 without cancellation.
  double q = 0.0;
  double k0 = 0.0;
};

/// kappa = sqrt(q^2 + xi^2 n^2 / c^2), i.e. beta(i xi, q) = i kappa with Im beta >= 0.
double beta_imag(double n_sq, double xi, double q);

/// Evaluates `model` at the mode's (xi, q). Throws for perfect mirrors.
MediumResponse medium_response(const DispersionModel& model, const TransverseMode& mode);

/// Single-interface amplitude for a wave arriving from medium `from` at medium `to`:
///   r_s = (mu_b k_a - mu_a k_b) / (mu_b k_a + mu_a k_b)
///   r_p = (eps_b k_a - eps_a k_b) / (eps_b k_a + eps_a k_b)
/// The p amplitude refers to the magnetic field, so r -> Delta_sigma for an ideal conductor
/// and r_p = -r_s at normal incidence.
std::complex<double> fresnel(Polarization pol, const MediumResponse& from, const MediumResponse& to);

/// Terms of `fresnel` divided by kappa_a: r = difference / sum, sum = a + b.
struct InterfaceTerms {
  double a;
  double b;
  double sum;
  double difference;
  double one_minus_r_sq() const;
};
InterfaceTerms interface_terms(Polarization pol, const MediumResponse& from, const MediumResponse& to);

/// r_front + r_back e^{-2 kappa d} multiple-reflection sum, e = e^{-2 kappa d}.
std::complex<double> compose_reflection(std::complex<double> r_front, std::complex<double> r_back,
                                        double e);

/// Homogeneous finite slab.
struct Layer {
  DispersionModel material;
  double thickness;

  /// Throws DomainError unless thickness is finite and > 0 and the material is not a mirror.
  void validate() const;

  bool operator==(const Layer&) const = default;
};

/// A wall as seen from an interspace: finite layers ordered from the interspace outward,
/// closed by a semi-infinite terminator (a finite material or a perfect mirror).
class Wall {
 public:
  static Wall perfect_mirror();
  static Wall semi_infinite(DispersionModel material);
  /// Throws ConfigError when `terminator` is missing.
  static Wall stack(std::vector<Layer> layers, std::optional<DispersionModel> terminator);

  const std::vector<Layer>& layers() const { return layers_; }
  const DispersionModel& terminator() const { return terminator_; }
  bool is_perfect_mirror() const { return layers_.empty() && terminator_.is_perfect_mirror(); }

  /// The same wall with extra layers placed in front of it (between it and the interspace).
  Wall behind(const std::vector<Layer>& front) const;

  bool operator==(const Wall&) const = default;

 private:
  Wall(std::vector<Layer> layers, DispersionModel terminator);

  std::vector<Layer> layers_;
  DispersionModel terminator_;
};

/// Reflection coefficient of `wall` for a wave arriving from the `ambient` interspace medium.
std::complex<double> wall_reflection(const Wall& wall, const DispersionModel& ambient,
                                     const TransverseMode& mode);

struct PlateCoefficients {
  std::complex<double> r;
  std::complex<double> t;
};

/// Symmetric slab in a uniform ambient medium: reflection and transmission amplitudes,
/// both referred to the slab faces. r_{1/3} = r_{3/1}, t_{1/3} = t_{3/1}.
PlateCoefficients single_plate_rt(const Layer& plate, const DispersionModel& ambient,
                                  const TransverseMode& mode);

/// Right (+) and left (-) wall reflection coefficients seen from an interspace.
struct ReflectionPair {
  std::complex<double> r_plus;
  std::complex<double> r_minus;
};

/// Plate inside a cavity: a finite slab or an ideal mirror.
class Plate {
 public:
  static Plate slab(Layer layer);
  static Plate perfect_mirror(double thickness = 0.0);

  bool is_perfect_mirror() const { return !layer_; }
  /// Throws DomainError for a mirror plate.
  const Layer& layer() const;
  double thickness() const { return thickness_; }

  bool operator==(const Plate&) const = default;

 private:
  Plate() = default;
  std::optional<Layer> layer_;
  double thickness_ = 0.0;
};

PlateCoefficients plate_coefficients(const Plate& plate, const DispersionModel& ambient,
                                     const TransverseMode& mode);

struct Gap {
  DispersionModel medium;
  double width;  // meters; the right gap of a cavity may be +inf (single-wall limit)
};

/// wall | gap1 | plate | gap3 | wall. Walls are stored as seen from their gap.
struct CavityConfig {
  Wall left_wall;
  Gap gap1;
  Plate plate;
  Gap gap3;
  Wall right_wall;

  /// Throws DomainError when the cavity invariants are violated.
  void validate() const;

  /// Left wall of gap 3: plate + gap 1 + left wall.
  Wall left_of_gap3() const;
  /// Right wall of gap 1: plate + gap 3 + right wall.
  Wall right_of_gap1() const;
};

}  // namespace casimir
