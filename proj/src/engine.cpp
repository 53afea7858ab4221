#include "casimir/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kLorentzPrefactor = constants::hbar / (8.0 * constants::pi * constants::pi);
constexpr double kMinkowskiPrefactor = constants::hbar / (2.0 * constants::pi * constants::pi);

using SP = detail::Values<2>;  // (s, p) contributions per unit dxi dq

bool wall_has_pole(const Wall& wall) {
  for (const auto& layer : wall.layers()) {
    if (layer.material.diverges_at_zero_frequency()) return true;
  }
  return wall.terminator().diverges_at_zero_frequency();
}

// Coefficients of the interspace stress function for one polarization:
//   a = 2 [beta^2 (1 + 1/n^2) + Delta q^2 (1 - 1/n^2)]
//   b = Delta (beta^2 + q^2) (1 - 1/n^2)
// with beta^2 = -kappa^2 and beta^2 + q^2 = -xi^2 n^2 / c^2 on the imaginary axis.
struct StressCoefficients {
  double a;
  double b;
};

StressCoefficients stress_coefficients(Polarization pol, const MediumResponse& m, double xi,
                                       double q) {
  const double delta = mirror_sign(pol);
  const double n_sq = m.eps * m.mu;
  const double inv = 1.0 / n_sq;
  const double k0 = xi / constants::c;
  const double beta_sq = -m.kappa * m.kappa;
  const double beta_sq_plus_q_sq = -k0 * k0 * n_sq;
  return {2.0 * (beta_sq * (1.0 + inv) + delta * q * q * (1.0 - inv)),
          delta * beta_sq_plus_q_sq * (1.0 - inv)};
}

double g_sigma(const StressCoefficients& c, double r_plus, double r_minus, double kappa,
               double width, double z) {
  const double e_width = std::exp(-2.0 * kappa * width);
  const double d = round_trip_denominator({r_plus, r_minus}, kappa, width);
  const double e_left = std::exp(-2.0 * kappa * z);
  const double e_right = std::exp(-2.0 * kappa * (width - z));
  const double guided = e_width == 0.0 ? 0.0 : c.a * r_plus * r_minus * e_width;
  return (guided + c.b * (r_minus * e_left + r_plus * e_right)) / d;
}

// r+ r- e^{-2 kappa d} / D
double round_trip_ratio(double r_plus, double r_minus, double kappa, double width) {
  const double e = std::exp(-2.0 * kappa * width);
  return r_plus * r_minus * e / round_trip_denominator({r_plus, r_minus}, kappa, width);
}

TransverseMode mode_of(double xi, double q, Polarization pol) { return {xi, q, pol}; }

// Per-mode quantities of a five-region cavity.
class CavityKernel {
 public:
  explicit CavityKernel(const CavityConfig& cavity)
      : cavity_(cavity),
        left_of_gap3_(cavity.left_of_gap3()),
        right_of_gap1_(cavity.right_of_gap1()) {
    cavity_.validate();
  }

  const CavityConfig& cavity() const { return cavity_; }
  const DispersionModel& medium() const { return cavity_.gap1.medium; }

  double exact(const TransverseMode& mode, const MediumResponse& m) const {
    const PlateCoefficients pc = plate_coefficients(cavity_.plate, medium(), mode);
    const double r1m = wall_reflection(cavity_.left_wall, medium(), mode).real();
    const double r3p = right_wall_reflection(mode);
    const double e1 = std::exp(-2.0 * m.kappa * cavity_.gap1.width);
    const double e3 = std::exp(-2.0 * m.kappa * cavity_.gap3.width);
    const double imbalance = r3p * e3 - r1m * e1;
    if (imbalance == 0.0) return 0.0;
    const double n = plate_denominator(pc, r1m, r3p, e1, e3);
    const StressCoefficients c = stress_coefficients(mode.pol, m, mode.xi, mode.q);
    const double r = pc.r.real();
    const double t = pc.t.real();
    return (c.a * r + c.b * (1.0 + r * r - t * t)) * imbalance / n;
  }

  double direct(const TransverseMode& mode, const MediumResponse& m) const {
    const StressCoefficients c = stress_coefficients(mode.pol, m, mode.xi, mode.q);
    const double r1m = wall_reflection(cavity_.left_wall, medium(), mode).real();
    const double r1p = wall_reflection(right_of_gap1_, medium(), mode).real();
    const double r3m = wall_reflection(left_of_gap3_, medium(), mode).real();
    const double r3p = right_wall_reflection(mode);
    const double g1 = g_sigma(c, r1p, r1m, m.kappa, cavity_.gap1.width, cavity_.gap1.width);
    const double g3 = g_sigma(c, r3p, r3m, m.kappa, cavity_.gap3.width, 0.0);
    return g3 - g1;
  }

  // S_3 - S_1 with S_j = r+ r- e_j / D_j.
  double minkowski(const TransverseMode& mode, const MediumResponse& m) const {
    const double r1m = wall_reflection(cavity_.left_wall, medium(), mode).real();
    const double r1p = wall_reflection(right_of_gap1_, medium(), mode).real();
    const double r3m = wall_reflection(left_of_gap3_, medium(), mode).real();
    const double r3p = right_wall_reflection(mode);
    return round_trip_ratio(r3p, r3m, m.kappa, cavity_.gap3.width) -
           round_trip_ratio(r1p, r1m, m.kappa, cavity_.gap1.width);
  }

 private:
  double right_wall_reflection(const TransverseMode& mode) const {
    if (!std::isfinite(cavity_.gap3.width)) return 0.0;
    return wall_reflection(cavity_.right_wall, medium(), mode).real();
  }

  CavityConfig cavity_;
  Wall left_of_gap3_;
  Wall right_of_gap1_;
};

struct ModeIntegral {
  double total = 0.0;
  double s = 0.0;
  double error = 0.0;
  long evaluations = 0;
  bool converged = false;
  std::string diagnostic;
};

void check_temperature(double temperature) {
  if (!(temperature >= 0.0 && std::isfinite(temperature))) {
    throw DomainError("temperature must be finite and >= 0");
  }
}

ZeroTermPolicy resolve_policy(const ThermalOptions& thermal, bool pole) {
  check_temperature(thermal.temperature);
  if (thermal.temperature > 0.0 && pole && !thermal.zero_term_policy) {
    throw DomainError(
        "a material has a zero-frequency (Drude/plasma) pole: the Matsubara zero term is "
        "ambiguous, choose a zero-term policy (half-weight, drop or custom:<value>)");
  }
  return thermal.zero_term_policy.value_or(ZeroTermPolicy::half_weight());
}

// Integrates h(xi, q) -> (s, p) over the quarter plane, or Matsubara-sums the q integral
// at T > 0. Inner integral over q at fixed xi; outer over xi.
template <class H>
ModeIntegral integrate_modes(H&& h, double d_ref, const QuadratureSpec& spec, double temperature,
                             const ZeroTermPolicy& policy) {
  spec.validate();
  const Scaling scale = nondimensionalize(d_ref);
  const double d = scale.length;

  detail::Tolerance inner_tol;
  inner_tol.rel = 0.0;
  inner_tol.rel_of_abs = 0.1 * spec.rel_tol;
  inner_tol.max_subdivisions = spec.max_subdivisions;

  // Slices far below the largest q integral seen so far only need absolute accuracy;
  // the accumulated inner error is still charged against the final tolerance.
  double largest_slice = 0.0;
  bool inner_ok = true;
  double worst_xi = 0.0;
  auto inner = [&](double xi) {
    inner_tol.abs_floor = 0.1 * spec.rel_tol * largest_slice;
    auto f = [&](double v) {
      const SP sp = h(xi, scale.q_from_v(v));
      return detail::Values<2>{(sp[0] + sp[1]) / d, sp[0] / d};
    };
    const detail::AdaptiveResult<2> r =
        spec.q_cutoff ? detail::integrate_finite<2>(f, 0.0, scale.v_from_q(*spec.q_cutoff), inner_tol)
                      : detail::integrate_to_infinity<2>(f, inner_tol);
    largest_slice = std::max(largest_slice, r.abs_value);
    if (!r.converged && inner_ok) {
      inner_ok = false;
      worst_xi = xi;
    }
    detail::TermSample<2> t;
    t.value = r.value;
    t.error = r.error;
    t.evaluations = r.evaluations;
    return t;
  };

  ModeIntegral out;
  if (temperature == 0.0) {
    const double jac = constants::c / d;  // dxi = (c / d) du
    auto outer = [&](double u) {
      const detail::TermSample<2> t = inner(scale.xi_from_u(u));
      out.evaluations += t.evaluations;
      return detail::Values<3>{t.value[0] * jac, t.value[1] * jac, t.error * jac};
    };
    detail::Tolerance outer_tol;
    outer_tol.rel = 0.5 * spec.rel_tol;
    outer_tol.abs_floor = spec.abs_floor;
    outer_tol.max_subdivisions = spec.max_subdivisions;
    const detail::AdaptiveResult<3> r = detail::integrate_to_infinity<3>(outer, outer_tol);
    out.total = r.value[0];
    out.s = r.value[1];
    out.error = r.error + r.value[2];
    if (!r.converged) out.diagnostic = "frequency integral did not reach tolerance";
  } else {
    const double spacing = matsubara_spacing(temperature);
    ZeroTermPolicy scaled = policy;
    if (policy.kind == ZeroTermPolicy::Kind::custom) scaled.custom_value = policy.custom_value / spacing;
    auto tail = [&](double xi_start) {
      const double jac = constants::c / d;
      auto f = [&](double u) { return inner(xi_start + scale.xi_from_u(u)).value[0] * jac; };
      detail::Tolerance tol;
      tol.rel = spec.rel_tol;
      tol.max_subdivisions = spec.max_subdivisions;
      const detail::AdaptiveResult<1> r = detail::integrate_to_infinity<1>(f, tol);
      return IntegralResult{r.value[0], r.error, r.evaluations, r.converged};
    };
    const detail::MatsubaraResult<2> r =
        detail::matsubara_accumulate<2>(inner, spacing, spec, scaled, tail);
    out.total = r.value[0];
    out.s = r.value[1];
    if (policy.kind == ZeroTermPolicy::Kind::custom) out.s += 0.5 * policy.custom_value;
    out.error = r.error;
    out.evaluations += r.evaluations;
    if (!r.converged) {
      out.diagnostic = "Matsubara sum did not reach tolerance after " + std::to_string(r.terms) +
                       " terms";
    }
  }

  if (!inner_ok) {
    if (!out.diagnostic.empty()) out.diagnostic += "; ";
    out.diagnostic += "q integral did not converge (first at xi = " + std::to_string(worst_xi) +
                      " rad/s); close to an interface the q integral diverges, set q_cutoff";
  }
  out.converged = inner_ok && out.diagnostic.empty() &&
                  out.error <= std::max(spec.rel_tol * std::abs(out.total), spec.abs_floor);
  if (inner_ok && out.diagnostic.empty() && !out.converged) {
    out.diagnostic = "accumulated error exceeds tolerance";
  }
  return out;
}

StressValue to_stress(const ModeIntegral& r) {
  return {r.total, r.error, r.converged, r.evaluations, r.diagnostic};
}

ForceResult to_force(const ModeIntegral& r, ForceMethod method, double temperature) {
  ForceResult f;
  f.force_per_area = r.total;
  f.error_estimate = r.error;
  f.per_polarization = {r.s, r.total - r.s};
  f.method = method;
  f.converged = r.converged;
  f.evaluations = r.evaluations;
  f.temperature = temperature;
  f.diagnostic = r.diagnostic;
  return f;
}

double reference_length(const CavityConfig& cavity) {
  return std::isfinite(cavity.gap3.width) ? std::min(cavity.gap1.width, cavity.gap3.width)
                                          : cavity.gap1.width;
}

void require_nonmagnetic(const DispersionModel& medium) {
  if (!medium.is_nonmagnetic()) {
    throw UnsupportedError(
        "Minkowski comparison is only defined for a nonmagnetic interspace (mu = 1)");
  }
}

}  // namespace

InterspaceView::InterspaceView(DispersionModel medium, double width, ReflectionProvider reflections,
                               bool zero_frequency_pole)
    : medium_(std::move(medium)),
      width_(width),
      reflections_(std::move(reflections)),
      zero_frequency_pole_(zero_frequency_pole || medium_.diverges_at_zero_frequency()) {
  if (medium_.is_perfect_mirror()) throw DomainError("interspace medium cannot be a mirror");
  if (!(width_ > 0.0)) throw DomainError("interspace width must be > 0");
  if (!reflections_) throw DomainError("interspace needs a reflection provider");
}

InterspaceView InterspaceView::between(const Wall& left, DispersionModel medium, double width,
                                       const Wall& right) {
  auto provider = [left, right, medium](const TransverseMode& mode) {
    return ReflectionPair{wall_reflection(right, medium, mode),
                          wall_reflection(left, medium, mode)};
  };
  const bool pole = wall_has_pole(left) || wall_has_pole(right);
  return InterspaceView(std::move(medium), width, std::move(provider), pole);
}

double round_trip_denominator(const ReflectionPair& refl, double kappa, double width) {
  // (1 - r+ r-) + r+ r- (1 - e), accurate when r+ r- -> 1 and kappa d -> 0.
  const double rr = (refl.r_plus * refl.r_minus).real();
  const double x = 2.0 * kappa * width;
  // Far from the pole the plain form is exact once e underflows.
  const double d = x < 1.0 ? (1.0 - rr) - rr * std::expm1(-x) : 1.0 - rr * std::exp(-x);
  if (!(d > 0.0)) throw NumericError("round-trip denominator D is not positive (guided-mode pole)");
  return d;
}

double g_fn_closed(const InterspaceView& view, double z, const TransverseMode& mode) {
  if (!(z >= 0.0 && z <= view.width())) throw DomainError("g_fn: z outside the interspace");
  const MediumResponse m = medium_response(view.medium(), mode);
  const ReflectionPair refl = view.reflections(mode);
  const StressCoefficients c = stress_coefficients(mode.pol, m, mode.xi, mode.q);
  return g_sigma(c, refl.r_plus.real(), refl.r_minus.real(), m.kappa, view.width(), z);
}

double g_fn(const InterspaceView& view, double z, const TransverseMode& mode) {
  if (!(z > 0.0 && z < view.width())) {
    throw DomainError(
        "g_fn: z must lie strictly inside the interspace; at the interfaces the q integral of "
        "the stress diverges for a filled gap");
  }
  return g_fn_closed(view, z, mode);
}

StressValue stress_zz(const InterspaceView& view, double z, const QuadratureSpec& spec,
                      const ThermalOptions& thermal) {
  if (!std::isfinite(view.width())) throw DomainError("stress_zz needs a finite interspace");
  if (!(z > 0.0 && z < view.width())) {
    throw DomainError(
        "stress_zz: z must lie strictly inside the interspace (the stress diverges at the "
        "interfaces)");
  }
  const ZeroTermPolicy policy = resolve_policy(thermal, view.has_zero_frequency_pole());
  auto h = [&](double xi, double q) {
    SP out{};
    if (q == 0.0 && xi == 0.0) return out;
    const MediumResponse m = medium_response(view.medium(), mode_of(xi, q, Polarization::s));
    const double weight = -kLorentzPrefactor * q * m.mu / m.kappa;
    for (Polarization pol : kPolarizations) {
      const TransverseMode mode = mode_of(xi, q, pol);
      const ReflectionPair refl = view.reflections(mode);
      const StressCoefficients c = stress_coefficients(pol, m, xi, q);
      out[pol == Polarization::s ? 0 : 1] =
          weight * g_sigma(c, refl.r_plus.real(), refl.r_minus.real(), m.kappa, view.width(), z);
    }
    return out;
  };
  return to_stress(integrate_modes(h, view.width(), spec, thermal.temperature, policy));
}

StressValue minkowski_stress_zz(const InterspaceView& view, const QuadratureSpec& spec,
                                const ThermalOptions& thermal) {
  require_nonmagnetic(view.medium());
  if (!std::isfinite(view.width())) throw DomainError("minkowski_stress_zz needs a finite interspace");
  const ZeroTermPolicy policy = resolve_policy(thermal, view.has_zero_frequency_pole());
  auto h = [&](double xi, double q) {
    SP out{};
    if (q == 0.0 && xi == 0.0) return out;
    const MediumResponse m = medium_response(view.medium(), mode_of(xi, q, Polarization::s));
    for (Polarization pol : kPolarizations) {
      const ReflectionPair refl = view.reflections(mode_of(xi, q, pol));
      out[pol == Polarization::s ? 0 : 1] =
          kMinkowskiPrefactor * q * m.kappa *
          round_trip_ratio(refl.r_plus.real(), refl.r_minus.real(), m.kappa, view.width());
    }
    return out;
  };
  return to_stress(integrate_modes(h, view.width(), spec, thermal.temperature, policy));
}

bool StressProfile::all_converged() const {
  return std::all_of(samples.begin(), samples.end(),
                     [](const StressValue& v) { return v.converged; });
}

std::vector<double> interior_grid(double width, int count) {
  if (count < 2) throw DomainError("stress profile needs at least 2 interior points");
  if (!(width > 0.0 && std::isfinite(width))) throw DomainError("width must be finite and > 0");
  std::vector<double> z(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) z[k] = width * (k + 1) / (count + 1);
  return z;
}

StressProfile stress_profile(const InterspaceView& view, const std::vector<double>& z,
                             const QuadratureSpec& spec, const ThermalOptions& thermal) {
  StressProfile profile;
  profile.z = z;
  profile.spec = spec;
  profile.temperature = thermal.temperature;
  profile.samples.reserve(z.size());
  for (double zk : z) {
    // A failing sample is recorded and the rest of the grid still runs.
    try {
      profile.samples.push_back(stress_zz(view, zk, spec, thermal));
    } catch (const NumericError& e) {
      StressValue bad;
      bad.t_zz = std::numeric_limits<double>::quiet_NaN();
      bad.error_estimate = std::numeric_limits<double>::infinity();
      bad.diagnostic = e.what();
      profile.samples.push_back(bad);
    }
  }
  return profile;
}

std::string_view to_string(ForceMethod method) {
  switch (method) {
    case ForceMethod::exact_difference: return "exact-difference";
    case ForceMethod::direct_difference: return "direct-difference";
    case ForceMethod::minkowski: return "minkowski";
  }
  return "exact-difference";
}

ForceMethod parse_force_method(std::string_view text) {
  if (text == "exact-difference") return ForceMethod::exact_difference;
  if (text == "direct-difference") return ForceMethod::direct_difference;
  if (text == "minkowski") return ForceMethod::minkowski;
  throw DomainError("unknown force method '" + std::string(text) + "'");
}

double plate_denominator(const PlateCoefficients& plate, double r1_minus, double r3_plus,
                         double e1, double e3) {
  const double r = plate.r.real();
  const double t = plate.t.real();
  const double n = 1.0 - r * (r1_minus * e1 + r3_plus * e3) + (r * r - t * t) * r1_minus * r3_plus * e1 * e3;
  if (!(n > 0.0)) throw NumericError("plate denominator N is not positive");
  return n;
}

double g_difference_exact(const CavityConfig& cavity, const TransverseMode& mode) {
  const CavityKernel kernel(cavity);
  return kernel.exact(mode, medium_response(kernel.medium(), mode));
}

double g_difference_direct(const CavityConfig& cavity, const TransverseMode& mode) {
  const CavityKernel kernel(cavity);
  return kernel.direct(mode, medium_response(kernel.medium(), mode));
}

bool has_zero_frequency_pole(const CavityConfig& cavity) {
  if (cavity.gap1.medium.diverges_at_zero_frequency()) return true;
  if (!cavity.plate.is_perfect_mirror() && cavity.plate.layer().material.diverges_at_zero_frequency()) {
    return true;
  }
  return wall_has_pole(cavity.left_wall) || wall_has_pole(cavity.right_wall);
}

ForceResult plate_force(const CavityConfig& cavity, const QuadratureSpec& spec,
                        const ThermalOptions& thermal, ForceMethod method) {
  if (method == ForceMethod::minkowski) return minkowski_plate_force(cavity, spec, thermal);
  const CavityKernel kernel(cavity);
  const ZeroTermPolicy policy = resolve_policy(thermal, has_zero_frequency_pole(cavity));
  auto h = [&](double xi, double q) {
    SP out{};
    if (q == 0.0 && xi == 0.0) return out;
    const MediumResponse m = medium_response(kernel.medium(), mode_of(xi, q, Polarization::s));
    const double weight = -kLorentzPrefactor * q * m.mu / m.kappa;
    for (Polarization pol : kPolarizations) {
      const TransverseMode mode = mode_of(xi, q, pol);
      const double dg = method == ForceMethod::exact_difference ? kernel.exact(mode, m)
                                                                : kernel.direct(mode, m);
      out[pol == Polarization::s ? 0 : 1] = weight * dg;
    }
    return out;
  };
  const ModeIntegral r =
      integrate_modes(h, reference_length(cavity), spec, thermal.temperature, policy);
  return to_force(r, method, thermal.temperature);
}

ForceResult minkowski_plate_force(const CavityConfig& cavity, const QuadratureSpec& spec,
                                  const ThermalOptions& thermal) {
  require_nonmagnetic(cavity.gap1.medium);
  const CavityKernel kernel(cavity);
  const ZeroTermPolicy policy = resolve_policy(thermal, has_zero_frequency_pole(cavity));
  auto h = [&](double xi, double q) {
    SP out{};
    if (q == 0.0 && xi == 0.0) return out;
    const MediumResponse m = medium_response(kernel.medium(), mode_of(xi, q, Polarization::s));
    for (Polarization pol : kPolarizations) {
      out[pol == Polarization::s ? 0 : 1] =
          kMinkowskiPrefactor * q * m.kappa * kernel.minkowski(mode_of(xi, q, pol), m);
    }
    return out;
  };
  const ModeIntegral r =
      integrate_modes(h, reference_length(cavity), spec, thermal.temperature, policy);
  return to_force(r, ForceMethod::minkowski, thermal.temperature);
}

ForceResult cross_checked_plate_force(const CavityConfig& cavity, const QuadratureSpec& spec,
                                      const ThermalOptions& thermal) {
  const ForceResult exact = plate_force(cavity, spec, thermal, ForceMethod::exact_difference);
  const ForceResult direct = plate_force(cavity, spec, thermal, ForceMethod::direct_difference);
  const double gap = std::abs(exact.force_per_area - direct.force_per_area);
  if (gap > exact.error_estimate + direct.error_estimate) {
    throw ConsistencyError("exact-difference and direct-difference plate forces disagree by " +
                           std::to_string(gap) + " N/m^2");
  }
  return exact;
}

}  // namespace casimir
