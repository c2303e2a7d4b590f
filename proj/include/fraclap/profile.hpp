#pragma once

#include <string>
#include <vector>

namespace fraclap {

/// One closed-form summand: coef * r^exponent or coef * log r.
struct Term {
  enum class Kind { Power, Log };
  Kind kind = Kind::Power;
  double coef = 0.0;
  double exponent = 0.0;

  static Term power(double coef, double exponent) { return {Kind::Power, coef, exponent}; }
  static Term constant(double coef) { return {Kind::Power, coef, 0.0}; }
  static Term log(double coef) { return {Kind::Log, coef, 0.0}; }

  double operator()(double r) const;
  /// \int_T^\infty term(rho) rho^{-1-q} d rho, finite when q > growth exponent.
  double tail_moment(double T, double q) const;
};

/// Finite sum of terms, valid on one radial interval.
struct Piece {
  std::vector<Term> terms;
  double operator()(double r) const;
  /// Largest power exponent (log counts as 0+); drives admissibility at infinity.
  double growth_exponent() const;
  bool is_zero() const;
};

/// Piecewise closed-form radial function on (0, inf).
///
/// Piece i covers (b_{i-1}, b_i]; the last piece covers (b_last, inf). A value
/// at a breakpoint therefore comes from the piece on its left.
class RadialProfile {
 public:
  RadialProfile() = default;
  RadialProfile(std::vector<double> breakpoints, std::vector<Piece> pieces,
                std::string name = {});

  static RadialProfile single(Piece p, std::string name = {});
  static RadialProfile constant(double c);

  double operator()(double r) const;
  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const Piece& piece_at(double r) const;
  const Piece& outer_piece() const { return pieces_.back(); }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Right limit minus left value at a breakpoint (0 for continuous joins).
  double jump_at(std::size_t breakpoint_index) const;
  std::vector<bool> continuity_flags(double rel_tol = 1e-12) const;

  RadialProfile scaled(double c) const;
  friend RadialProfile operator+(const RadialProfile& a, const RadialProfile& b);

 private:
  std::vector<double> breaks_;
  std::vector<Piece> pieces_;
  std::string name_;
};

}  // namespace fraclap
