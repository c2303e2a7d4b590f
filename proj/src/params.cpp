#include "fraclap/params.hpp"

#include <cmath>
#include <numbers>

namespace fraclap {

double normalization_constant(int n, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("order s must lie in (0,1)");
  if (n < 1) throw DomainError("dimension n must be a positive integer");
  using std::numbers::pi;
  return std::pow(2.0, 2.0 * s) * std::pow(pi, -0.5 * n) * s *
         std::tgamma(0.5 * (n + 2.0 * s)) / std::tgamma(1.0 - s);
}

FracParams::FracParams(int n, double s)
    : n_(n), s_(s), sigma_star_(-n + 2.0 * s), c_ns_(0.0) {
  if (n < 1 || n > 3) throw DomainError("dimension n must be 1, 2 or 3");
  c_ns_ = normalization_constant(n, s);
}

Branch FracParams::branch() const {
  // sigma* = 0 only for n = 1, s = 1/2; compare with a tolerance so that
  // s read back from text still lands on the log branch.
  if (std::abs(sigma_star_) < 1e-14) return Branch::Log;
  return sigma_star_ < 0.0 ? Branch::PowerNeg : Branch::PowerPos;
}

double FracParams::sphere_area() const {
  using std::numbers::pi;
  switch (n_) {
    case 1: return 2.0;
    case 2: return 2.0 * pi;
    default: return 4.0 * pi;
  }
}

double FracParams::ball_volume() const { return sphere_area() / n_; }

void QuadSpec::validate() const {
  if (!(rel_tol > 0.0 && abs_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (!(near_radius > 0.0 && near_radius < tail_radius))
    throw ConfigError("require 0 < near_radius < tail_radius");
  if (max_subdivisions < 1) throw ConfigError("max_subdivisions must be positive");
  for (std::size_t i = 0; i < kink_radii.size(); ++i) {
    if (!(kink_radii[i] > 0.0)) throw ConfigError("kink radii must be positive");
    if (i > 0 && !(kink_radii[i] > kink_radii[i - 1]))
      throw ConfigError("kink radii must be strictly increasing");
  }
}

QuadSpec QuadSpec::tightened(double factor) const {
  QuadSpec q = *this;
  q.rel_tol *= factor;
  q.abs_tol *= factor;
  return q;
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::PowerNeg: return "POWER_NEG";
    case Branch::Log: return "LOG";
    case Branch::PowerPos: return "POWER_POS";
  }
  return "?";
}

}  // namespace fraclap
