#include "casimir/quadrature.hpp"

#include <sstream>

#include "casimir/constants.hpp"

namespace casimir {

std::string_view to_string(MatsubaraTail tail) {
  return tail == MatsubaraTail::none ? "none" : "integral-tail-estimate";
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
  if (!(abs_floor >= 0.0)) throw DomainError("abs_floor must be >= 0");
  if (max_subdivisions < 8) throw DomainError("max_subdivisions must be >= 8");
  if (q_cutoff && !(*q_cutoff > 0.0)) throw DomainError("q_cutoff must be > 0");
  if (matsubara_max_terms < 1) throw DomainError("matsubara_max_terms must be >= 1");
}

namespace {

detail::Tolerance tolerance_of(const QuadratureSpec& spec) {
  detail::Tolerance tol;
  tol.rel = spec.rel_tol;
  tol.abs_floor = spec.abs_floor;
  tol.max_subdivisions = spec.max_subdivisions;
  return tol;
}

IntegralResult to_result(const detail::AdaptiveResult<1>& r) {
  return {r.value[0], r.error, r.evaluations, r.converged};
}

}  // namespace

IntegralResult integrate_semi_infinite(const std::function<double(double)>& f,
                                       const QuadratureSpec& spec) {
  spec.validate();
  return to_result(detail::integrate_to_infinity<1>(f, tolerance_of(spec)));
}

IntegralResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureSpec& spec) {
  spec.validate();
  if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("interval bounds must be finite");
  if (a == b) return {0.0, 0.0, 0, true};
  return to_result(detail::integrate_finite<1>(f, a, b, tolerance_of(spec)));
}

double Scaling::u_from_xi(double xi) const { return xi * length / constants::c; }
double Scaling::xi_from_u(double u) const { return u * constants::c / length; }
double Scaling::jacobian() const { return constants::c / (length * length); }

Scaling nondimensionalize(double d_ref) {
  if (!(d_ref > 0.0 && std::isfinite(d_ref))) {
    throw DomainError("reference length must be finite and > 0");
  }
  return Scaling{d_ref};
}

std::string to_string(const ZeroTermPolicy& policy) {
  switch (policy.kind) {
    case ZeroTermPolicy::Kind::half_weight: return "half-weight";
    case ZeroTermPolicy::Kind::drop: return "drop";
    case ZeroTermPolicy::Kind::custom: {
      std::ostringstream os;
      os.precision(17);
      os << "custom:" << policy.custom_value;
      return os.str();
    }
  }
  return "half-weight";
}

ZeroTermPolicy parse_zero_term_policy(std::string_view text) {
  if (text == "half-weight") return ZeroTermPolicy::half_weight();
  if (text == "drop") return ZeroTermPolicy::drop();
  constexpr std::string_view prefix = "custom:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string value(text.substr(prefix.size()));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == value.size() && used > 0 && std::isfinite(v)) return ZeroTermPolicy::custom(v);
  }
  throw DomainError("unknown zero-term policy '" + std::string(text) +
                    "' (expected half-weight, drop or custom:<value>)");
}

double matsubara_spacing(double temperature) {
  return 2.0 * constants::pi * constants::k_B * temperature / constants::hbar;
}

IntegralResult matsubara_sum(const std::function<double(double)>& g, double temperature,
                             const QuadratureSpec& spec, ZeroTermPolicy policy) {
  spec.validate();
  if (!(temperature > 0.0 && std::isfinite(temperature))) {
    throw DomainError("Matsubara sum needs a finite temperature > 0");
  }
  const double spacing = matsubara_spacing(temperature);
  auto term = [&](double xi) {
    detail::TermSample<1> t;
    t.value[0] = g(xi);
    t.evaluations = 1;
    if (!std::isfinite(t.value[0]) && xi > 0.0) {
      throw NonFiniteError("Matsubara term is not finite", xi);
    }
    return t;
  };
  auto tail = [&](double xi_start) {
    QuadratureSpec inner = spec;
    inner.abs_floor = 0.0;
    return integrate_semi_infinite([&](double x) { return g(xi_start + x * spacing) * spacing; },
                                   inner);
  };
  const auto r = detail::matsubara_accumulate<1>(term, spacing, spec, policy, tail);
  return {r.value[0], r.error, r.evaluations, r.converged};
}

}  // namespace casimir
