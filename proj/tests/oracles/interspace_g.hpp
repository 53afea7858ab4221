#pragma once

// g_j(z, i xi, q) written out term by term in complex arithmetic with beta = i kappa,
// without any of the engine's real-valued rewriting.

#include <complex>

#include "casimir/constants.hpp"
#include "casimir/layers.hpp"

namespace oracle {

struct GTerms {
  std::complex<double> s;
  std::complex<double> p;
};

inline GTerms interspace_g(double eps, double mu, double xi, double q, double z, double d,
                           std::complex<double> rs_plus, std::complex<double> rs_minus,
                           std::complex<double> rp_plus, std::complex<double> rp_minus) {
  using cd = std::complex<double>;
  const cd i(0.0, 1.0);
  const cd omega = i * xi;
  const double n2 = eps * mu;
  const cd beta = std::sqrt(omega * omega * n2 / (casimir::constants::c * casimir::constants::c) - q * q);
  // Branch with Im beta >= 0.
  const cd b = beta.imag() < 0.0 ? -beta : beta;
  const cd e_d = std::exp(2.0 * i * b * d);
  const cd e_z = std::exp(2.0 * i * b * z);
  const cd e_dz = std::exp(2.0 * i * b * (d - z));
  const double inv = 1.0 / n2;
  const cd ds = 1.0 - rs_plus * rs_minus * e_d;
  const cd dp = 1.0 - rp_plus * rp_minus * e_d;
  GTerms g;
  g.s = 2.0 * (b * b * (1.0 + inv) - q * q * (1.0 - inv)) / ds * rs_plus * rs_minus * e_d -
        (b * b + q * q) * (1.0 - inv) / ds * (rs_minus * e_z + rs_plus * e_dz);
  g.p = 2.0 * (b * b * (1.0 + inv) + q * q * (1.0 - inv)) / dp * rp_plus * rp_minus * e_d +
        (b * b + q * q) * (1.0 - inv) / dp * (rp_minus * e_z + rp_plus * e_dz);
  return g;
}

}  // namespace oracle
