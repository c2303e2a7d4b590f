#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fraclap/params.hpp"
#include "fraclap/profile.hpp"

namespace fraclap {

enum class SignVariant { Phi, PhiTilde };

/// Phi = r^{sigma*}, -log r or -r^{sigma*} depending on the branch; PhiTilde = -Phi.
RadialProfile make_fundamental(const FracParams& p, SignVariant v = SignVariant::Phi);

enum class BarrierId {
  VTilde,       // r0^{-sigma*} |x|^{sigma*} - 1 cut at 2r
  GTilde,       // C~ |x|^{sigma*} on (3r/2, 2r)
  WCheck,       // -log|x| outside B_r
  VCheck,       // log|x| cut at 2r
  GCheck,       // C^ log|x| on (3r/2, 2r)
  PsiHat,       // 1 in B_1, |x|^{sigma*} outside
  GammaTilde,   // indicator of B_1
  Psi,          // 1 - r0^{-sigma*} |x|^{sigma*} cut at 2r
  G,            // plateau C_g on (3r/2, 2r)
  WHat,         // |x|^{sigma*} outside B_r
  GammaHat,     // mu |x|^{sigma*} on [r, 3r/2]
  HHat,         // VTilde + GTilde
  HCheck,       // VCheck + GCheck
  PsiHatGamma,  // PsiHat + (n/s) GammaTilde
  PsiG,         // (Psi + G) / (1 + C_g)
  WGamma        // WHat + GammaHat
};

std::string to_string(BarrierId b);
std::optional<BarrierId> barrier_from_string(std::string_view name);
const std::vector<BarrierId>& all_barriers();
/// Branch of sigma* the barrier is built for.
Branch required_branch(BarrierId b);

/// Free constants of the barrier constructions plus the radii they live on.
struct BarrierConstants {
  double c_tilde_g = 1.0;
  double c_check_g = 1.0;
  double c_g = 1.0;
  double mu = 1.0;
  double r0 = 2.0;
  double r = 20.0;
  /// Operational "sufficiently large" radius; 0 means not determined.
  double R0 = 0.0;

  void validate() const;
  /// Default outer radius 10 r0.
  static BarrierConstants with_radii(double r0, double r = 0.0);
};

RadialProfile make_barrier(BarrierId id, const BarrierConstants& c, const FracParams& p);

/// Weight of the indicator in PsiHatGamma: 2 C_9 / C_gamma = n / s.
double psi_hat_gamma_weight(const FracParams& p);
/// Radius beyond which 1/(|x|-1)^{n+2s} < 2/(|x|+1)^{n+2s}.
double vask_radius(const FracParams& p);

/// Rows "barrier,radius,value" for plotting.
void write_gallery_csv(std::ostream& out, std::span<const RadialProfile> profiles,
                       std::span<const double> radii);

}  // namespace fraclap
