#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

enum class MatsubaraTail { none, integral_tail_estimate };

std::string_view to_string(MatsubaraTail tail);

struct QuadratureSpec {
  double rel_tol = 1e-8;
  /// Result-unit floor below which relative error is not enforced.
  double abs_floor = 0.0;
  int max_subdivisions = 200;
  /// Sharp transverse-wavenumber cutoff (rad/m), a finite-lateral-size surrogate.
  std::optional<double> q_cutoff;
  int matsubara_max_terms = 200000;
  MatsubaraTail matsubara_tail = MatsubaraTail::none;

  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Integral of f over [0, inf), via x = t / (1 - t) and adaptive Gauss-Kronrod on [0, 1).
IntegralResult integrate_semi_infinite(const std::function<double(double)>& f,
                                       const QuadratureSpec& spec);
/// Integral of f over the finite interval [a, b].
IntegralResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureSpec& spec);

/// Dimensionless variables u = xi d / c, v = q d used by the engine.
struct Scaling {
  double length;  // d_ref, meters

  double u_from_xi(double xi) const;
  double xi_from_u(double u) const;
  double v_from_q(double q) const { return q * length; }
  double q_from_v(double v) const { return v / length; }
  /// dxi dq = jacobian() du dv.
  double jacobian() const;
};

Scaling nondimensionalize(double d_ref);

struct ZeroTermPolicy {
  enum class Kind { half_weight, drop, custom };
  Kind kind = Kind::half_weight;
  /// For `custom`: replaces the weighted zero-frequency term w0 g(0), in units of g.
  double custom_value = 0.0;

  static ZeroTermPolicy half_weight() { return {}; }
  static ZeroTermPolicy drop() { return {Kind::drop, 0.0}; }
  static ZeroTermPolicy custom(double v) { return {Kind::custom, v}; }
};

std::string to_string(const ZeroTermPolicy& policy);
/// Accepts "half-weight", "drop", "custom:<value>".
ZeroTermPolicy parse_zero_term_policy(std::string_view text);

/// Spacing of the Matsubara frequencies, 2 pi k_B T / hbar (rad/s).
double matsubara_spacing(double temperature);

/// (2 pi k_B T / hbar) [w0 g(0) + sum_{m>=1} g(xi_m)], xi_m = 2 pi m k_B T / hbar.
/// The sum approaches the integral of g over [0, inf) as T -> 0.
IntegralResult matsubara_sum(const std::function<double(double)>& g, double temperature,
                             const QuadratureSpec& spec, ZeroTermPolicy policy = {});

namespace detail {

template <std::size_t N>
using Values = std::array<double, N>;

/// Controls when an adaptive integration stops. Component 0 drives error control:
///   error <= max(rel * |value|, abs_floor, rel_of_abs * integral of |f|).
struct Tolerance {
  double rel = 1e-8;
  double abs_floor = 0.0;
  double rel_of_abs = 0.0;
  int max_subdivisions = 200;

  double target(double value, double abs_value) const {
    return std::max({rel * std::abs(value), abs_floor, rel_of_abs * abs_value});
  }
};

enum class Domain { finite, semi_infinite };

template <std::size_t N>
struct AdaptiveResult {
  Values<N> value{};
  double error = 0.0;
  double abs_value = 0.0;
  long evaluations = 0;
  bool converged = false;
};

// Gauss-Kronrod 10/21 nodes and weights on [-1, 1]; index 0 is the centre.
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.0,
    0.148874338981631210884826001129720, 0.294392862701460198131126603103866,
    0.433395394129247190799265943165784, 0.562757134668604683339000099272694,
    0.679409568299024406234327365114874, 0.780817726586416897063717578345042,
    0.865063366688984510732096688423493, 0.930157491355708226001207180059508,
    0.973906528517171720077964012084452, 0.995657163025808080735527280689003};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.149445554002916905664936468389821,
    0.147739104901338491374841515972068, 0.142775938577060080797094273138717,
    0.134709217311473325928054001771707, 0.123491976262065851077958109831074,
    0.109387158802297641899210590325805, 0.093125454583697605535065465083366,
    0.075039674810919952767043140916190, 0.054755896574351996031381300244580,
    0.032558162307964727478818972459390, 0.011694638867371874278064396062192};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, ..., 9).
inline constexpr std::array<double, 5> kGaussWeights = {
    0.295524224714752870173892994651338, 0.269266719309996355091226921569469,
    0.219086362515982043995534934228163, 0.149451349150580593145776339657697,
    0.066671344308688137593568809893332};

template <std::size_t N>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  Values<N> value{};
  double error = 0.0;
  double abs_value = 0.0;
};

template <std::size_t N, class F>
Values<N> sample(F& f, double t, Domain domain) {
  double x = t;
  double jac = 1.0;
  if (domain == Domain::semi_infinite) {
    const double s = 1.0 - t;
    x = t / s;
    jac = 1.0 / (s * s);
  }
  Values<N> y;
  if constexpr (N == 1 && std::is_convertible_v<std::invoke_result_t<F&, double>, double>) {
    y[0] = f(x);
  } else {
    y = f(x);
  }
  for (double& yi : y) {
    if (!std::isfinite(yi)) throw NonFiniteError("integrand is not finite", x);
    yi *= jac;
  }
  return y;
}

template <std::size_t N, class F>
Panel<N> gauss_kronrod21(F& f, double a, double b, Domain domain) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  Values<N> kronrod{};
  double gauss0 = 0.0;
  double abs0 = 0.0;
  std::array<double, 21> f0{};

  const Values<N> yc = sample<N>(f, centre, domain);
  f0[0] = yc[0];
  for (std::size_t c = 0; c < N; ++c) kronrod[c] = kKronrodWeights[0] * yc[c];
  abs0 = kKronrodWeights[0] * std::abs(yc[0]);

  for (std::size_t j = 1; j < kKronrodNodes.size(); ++j) {
    const double dx = half * kKronrodNodes[j];
    const Values<N> yl = sample<N>(f, centre - dx, domain);
    const Values<N> yr = sample<N>(f, centre + dx, domain);
    f0[2 * j - 1] = yl[0];
    f0[2 * j] = yr[0];
    for (std::size_t c = 0; c < N; ++c) kronrod[c] += kKronrodWeights[j] * (yl[c] + yr[c]);
    abs0 += kKronrodWeights[j] * (std::abs(yl[0]) + std::abs(yr[0]));
    if (j % 2 == 1) gauss0 += kGaussWeights[j / 2] * (yl[0] + yr[0]);
  }

  // QUADPACK error heuristic.
  const double mean = 0.5 * kronrod[0];
  double asc = kKronrodWeights[0] * std::abs(f0[0] - mean);
  for (std::size_t j = 1; j < kKronrodNodes.size(); ++j) {
    asc += kKronrodWeights[j] * (std::abs(f0[2 * j - 1] - mean) + std::abs(f0[2 * j] - mean));
  }

  Panel<N> p;
  p.a = a;
  p.b = b;
  for (std::size_t c = 0; c < N; ++c) p.value[c] = kronrod[c] * half;
  p.abs_value = abs0 * std::abs(half);
  asc *= std::abs(half);
  double err = std::abs((kronrod[0] - gauss0) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (p.abs_value > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * p.abs_value, err);
  }
  p.error = err;
  return p;
}

/// Globally adaptive bisection on [a, b] (in the mapped variable for semi-infinite domains,
/// where [a, b] must lie in [0, 1]). Deterministic for a fixed integrand and tolerance.
template <std::size_t N, class F>
AdaptiveResult<N> adaptive_gk21(F&& f, double a, double b, Domain domain, const Tolerance& tol) {
  std::vector<Panel<N>> panels;
  panels.reserve(static_cast<std::size_t>(std::max(tol.max_subdivisions, 1)));
  panels.push_back(gauss_kronrod21<N>(f, a, b, domain));
  long evaluations = 21;

  auto totals = [&](AdaptiveResult<N>& r) {
    r.value = {};
    r.error = 0.0;
    r.abs_value = 0.0;
    std::vector<const Panel<N>*> ordered;
    ordered.reserve(panels.size());
    for (const auto& p : panels) ordered.push_back(&p);
    std::sort(ordered.begin(), ordered.end(),
              [](const Panel<N>* x, const Panel<N>* y) { return x->a < y->a; });
    for (const Panel<N>* p : ordered) {
      for (std::size_t c = 0; c < N; ++c) r.value[c] += p->value[c];
      r.error += p->error;
      r.abs_value += p->abs_value;
    }
  };

  AdaptiveResult<N> result;
  totals(result);
  while (result.error > tol.target(result.value[0], result.abs_value) &&
         static_cast<int>(panels.size()) < tol.max_subdivisions) {
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel<N>& x, const Panel<N>& y) {
                                    return x.error < y.error;
                                  });
    const double lo = worst->a;
    const double hi = worst->b;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;  // panel at machine resolution
    *worst = gauss_kronrod21<N>(f, lo, mid, domain);
    panels.push_back(gauss_kronrod21<N>(f, mid, hi, domain));
    evaluations += 42;
    totals(result);
  }
  result.evaluations = evaluations;
  result.converged = result.error <= tol.target(result.value[0], result.abs_value);
  return result;
}

template <std::size_t N, class F>
AdaptiveResult<N> integrate_to_infinity(F&& f, const Tolerance& tol) {
  return adaptive_gk21<N>(std::forward<F>(f), 0.0, 1.0, Domain::semi_infinite, tol);
}

template <std::size_t N, class F>
AdaptiveResult<N> integrate_finite(F&& f, double a, double b, const Tolerance& tol) {
  return adaptive_gk21<N>(std::forward<F>(f), a, b, Domain::finite, tol);
}

/// One Matsubara term: N integrated components plus the error carried by component 0.
template <std::size_t N>
struct TermSample {
  Values<N> value{};
  double error = 0.0;
  long evaluations = 0;
};

template <std::size_t N>
struct MatsubaraResult {
  Values<N> value{};
  double error = 0.0;
  long evaluations = 0;
  int terms = 0;
  bool converged = false;
};

/// Sums spacing * [w0 g(0) + sum_m g(xi_m)] for a vector-valued term function
/// g(xi) -> TermSample<N>. `tail(xi_start)` returns the integral of g from xi_start to
/// infinity (component 0) for the integral tail policy.
template <std::size_t N, class G, class Tail>
MatsubaraResult<N> matsubara_accumulate(G&& g, double spacing, const QuadratureSpec& spec,
                                        const ZeroTermPolicy& policy, Tail&& tail) {
  MatsubaraResult<N> out;
  Values<N> sum{};
  double err = 0.0;

  switch (policy.kind) {
    case ZeroTermPolicy::Kind::half_weight: {
      const TermSample<N> t0 = g(0.0);
      for (std::size_t c = 0; c < N; ++c) {
        if (!std::isfinite(t0.value[c])) {
          throw DomainError(
              "Matsubara zero-frequency term is not finite (Drude/plasma pole); choose the "
              "'drop' or 'custom:<value>' zero-term policy");
        }
        sum[c] += 0.5 * t0.value[c];
      }
      err += 0.5 * t0.error;
      out.evaluations += t0.evaluations;
      break;
    }
    case ZeroTermPolicy::Kind::drop: break;
    case ZeroTermPolicy::Kind::custom:
      // Applied to component 0 only; callers distribute it over the other components.
      sum[0] += policy.custom_value;
      break;
  }

  const double small = 1e-3 * spec.rel_tol;
  int quiet = 0;
  double last = 0.0;
  double previous = 0.0;
  int m = 1;
  for (; m <= spec.matsubara_max_terms; ++m) {
    const TermSample<N> t = g(spacing * m);
    for (std::size_t c = 0; c < N; ++c) sum[c] += t.value[c];
    err += t.error;
    out.evaluations += t.evaluations;
    previous = last;
    last = t.value[0];
    // A slowly decaying series needs its geometric remainder small, not just its last term.
    double remainder = std::abs(last);
    if (last != 0.0) {
      const double ratio = previous != 0.0 ? std::abs(last / previous) : 1.0;
      remainder = ratio < 1.0 ? std::abs(last) / (1.0 - ratio) : INFINITY;
    }
    quiet = remainder <= small * std::abs(sum[0]) ? quiet + 1 : 0;
    if (quiet >= 3) break;
  }
  out.terms = std::min(m, spec.matsubara_max_terms);
  const bool truncated = quiet < 3;

  // Geometric tail bound from the last two terms.
  double tail_bound = 0.0;
  if (last != 0.0) {
    const double ratio = previous != 0.0 ? std::abs(last / previous) : 1.0;
    tail_bound = ratio < 1.0 ? std::abs(last) * ratio / (1.0 - ratio)
                             : std::abs(last) * spec.matsubara_max_terms;
  }

  if (spec.matsubara_tail == MatsubaraTail::integral_tail_estimate && truncated) {
    const IntegralResult t = tail(spacing * (out.terms + 0.5));
    sum[0] += t.value / spacing;
    err += t.error_estimate / spacing + 0.1 * std::abs(t.value / spacing);
    out.evaluations += t.evaluations;
  } else {
    err += tail_bound;
  }

  for (std::size_t c = 0; c < N; ++c) out.value[c] = spacing * sum[c];
  out.error = spacing * err;
  out.converged = out.error <= std::max(spec.rel_tol * std::abs(out.value[0]), spec.abs_floor);
  return out;
}

}  // namespace detail

}  // namespace casimir
