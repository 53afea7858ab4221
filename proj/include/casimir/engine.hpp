#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/layers.hpp"
#include "casimir/materials.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// Interspace 0 < z < width filled with `medium`, bounded by walls whose reflection
/// coefficients come from `reflections`.
class InterspaceView {
 public:
  using ReflectionProvider = std::function<ReflectionPair(const TransverseMode&)>;

  InterspaceView(DispersionModel medium, double width, ReflectionProvider reflections,
                 bool zero_frequency_pole = false);

  /// Interspace between two walls, each described as seen from the interspace.
  static InterspaceView between(const Wall& left, DispersionModel medium, double width,
                                const Wall& right);

  const DispersionModel& medium() const { return medium_; }
  double width() const { return width_; }
  ReflectionPair reflections(const TransverseMode& mode) const { return reflections_(mode); }
  /// Some material of the structure has eps or mu diverging at xi -> 0.
  bool has_zero_frequency_pole() const { return zero_frequency_pole_; }

 private:
  DispersionModel medium_;
  double width_;
  ReflectionProvider reflections_;
  bool zero_frequency_pole_;
};

/// D = 1 - r+ r- e^{-2 kappa d}; its zeros are the guided modes.
double round_trip_denominator(const ReflectionPair& refl, double kappa, double width);

/// The polarization-`mode.pol` part of g_j(z, i xi, q); summing s and p gives g_j.
/// Requires 0 < z < width: at the interfaces the q integral diverges for a filled gap.
double g_fn(const InterspaceView& view, double z, const TransverseMode& mode);

/// As g_fn, but accepts the interface points z = 0 and z = width.
double g_fn_closed(const InterspaceView& view, double z, const TransverseMode& mode);

/// Value with a quadrature error bar.
struct StressValue {
  double t_zz = 0.0;  // N/m^2
  double error_estimate = 0.0;
  bool converged = false;
  long evaluations = 0;
  std::string diagnostic;
};

/// Options shared by the stress and force computations.
struct ThermalOptions {
  double temperature = 0.0;  // kelvin; 0 selects the imaginary-axis integral
  /// Required at T > 0 when a material has a zero-frequency pole. For `custom`,
  /// custom_value is the zero-frequency contribution in N/m^2.
  std::optional<ZeroTermPolicy> zero_term_policy;
};

/// T_zz at position z of the interspace.
StressValue stress_zz(const InterspaceView& view, double z, const QuadratureSpec& spec,
                      const ThermalOptions& thermal = {});

/// Minkowski-tensor T_zz (position independent). Needs a nonmagnetic interspace.
StressValue minkowski_stress_zz(const InterspaceView& view, const QuadratureSpec& spec,
                                const ThermalOptions& thermal = {});

struct StressProfile {
  std::vector<double> z;
  std::vector<StressValue> samples;
  QuadratureSpec spec;
  double temperature = 0.0;

  bool all_converged() const;
};

/// `count` equally spaced interior points z_k = k d / (count + 1).
std::vector<double> interior_grid(double width, int count);

StressProfile stress_profile(const InterspaceView& view, const std::vector<double>& z,
                             const QuadratureSpec& spec, const ThermalOptions& thermal = {});

enum class ForceMethod { exact_difference, direct_difference, minkowski };

std::string_view to_string(ForceMethod method);
ForceMethod parse_force_method(std::string_view text);

struct PolarizationSplit {
  double s = 0.0;
  double p = 0.0;
};

struct ForceResult {
  double force_per_area = 0.0;  // N/m^2, positive pushes the plate toward +z
  double error_estimate = 0.0;
  PolarizationSplit per_polarization;
  ForceMethod method = ForceMethod::exact_difference;
  bool converged = false;
  long evaluations = 0;
  double temperature = 0.0;
  std::string diagnostic;
};

/// g_3(0) - g_1(d_1) for one polarization via the single-plate (r, t) closed form.
double g_difference_exact(const CavityConfig& cavity, const TransverseMode& mode);
/// g_3(0) - g_1(d_1) for one polarization from the two interface values of g.
double g_difference_direct(const CavityConfig& cavity, const TransverseMode& mode);

/// N = 1 - r (r1- e1 + r3+ e3) + (r^2 - t^2) r1- r3+ e1 e3.
double plate_denominator(const PlateCoefficients& plate, double r1_minus, double r3_plus,
                         double e1, double e3);

/// Force per unit area on the plate of a five-region cavity.
ForceResult plate_force(const CavityConfig& cavity, const QuadratureSpec& spec,
                        const ThermalOptions& thermal = {},
                        ForceMethod method = ForceMethod::exact_difference);

/// Force predicted by the Minkowski tensor, T^(M)_3 - T^(M)_1. Nonmagnetic gaps only.
ForceResult minkowski_plate_force(const CavityConfig& cavity, const QuadratureSpec& spec,
                                  const ThermalOptions& thermal = {});

/// Runs both difference methods; throws ConsistencyError if they disagree beyond
/// their combined error. Returns the exact-difference result.
ForceResult cross_checked_plate_force(const CavityConfig& cavity, const QuadratureSpec& spec,
                                      const ThermalOptions& thermal = {});

/// True when any material of the cavity has a zero-frequency pole.
bool has_zero_frequency_pole(const CavityConfig& cavity);

}  // namespace casimir
