#pragma once

#include "casimir/layers.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// Dispersionless interspace medium.
struct StaticMedium {
  double eps = 1.0;
  double mu = 1.0;

  double n() const;
  void validate() const;
};

/// Constant reflection coefficients per polarization.
struct ConstantCoefficients {
  double s = -1.0;
  double p = 1.0;

  double operator[](Polarization pol) const { return pol == Polarization::s ? s : p; }
  static ConstantCoefficients mirror() { return {-1.0, 1.0}; }
};

/// Plate force with all reflection coefficients frozen (walls seen from the gaps, and the
/// single-interface plate coefficient), integrated numerically. Reduces to
/// casimir_generalized when every coefficient equals Delta_sigma. d3 may be +inf.
IntegralResult approx_plate_force(const StaticMedium& medium, const ConstantCoefficients& r_half,
                                  const ConstantCoefficients& r_left_wall,
                                  const ConstantCoefficients& r_right_wall, double d1, double d3,
                                  const QuadratureSpec& spec);

/// Force between perfect mirrors with a static magnetodielectric in the gaps:
///   (hbar c pi^2 / 240) sqrt(mu/eps) (2/3 + 1/(3 eps mu)) (1/d3^4 - 1/d1^4).
double casimir_generalized(const StaticMedium& medium, double d1, double d3);

/// Minkowski-tensor counterpart, (hbar c pi^2 / 240) eps^{-1/2} (1/d3^4 - 1/d1^4). mu must be 1.
double minkowski_generalized(double eps, double d1, double d3, double mu = 1.0);

/// F^(M) / F for perfect mirrors and mu = 1: 1 / (2/3 + 1/(3 eps)).
double force_ratio(double eps);

}  // namespace casimir
