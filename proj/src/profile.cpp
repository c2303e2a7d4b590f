#include "fraclap/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fraclap/params.hpp"

namespace fraclap {

double Term::operator()(double r) const {
  if (kind == Kind::Log) return coef * std::log(r);
  if (exponent == 0.0) return coef;
  return coef * std::pow(r, exponent);
}

double Term::tail_moment(double T, double q) const {
  if (coef == 0.0) return 0.0;
  if (kind == Kind::Log) return coef * std::pow(T, -q) * (q * std::log(T) + 1.0) / (q * q);
  if (!(q > exponent)) throw DivergenceError("tail integral diverges for this growth exponent");
  return coef * std::pow(T, exponent - q) / (q - exponent);
}

double Piece::operator()(double r) const {
  double v = 0.0;
  for (const auto& t : terms) v += t(r);
  return v;
}

double Piece::growth_exponent() const {
  double g = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (t.coef == 0.0) continue;
    // log r grows slower than any positive power but faster than constants.
    g = std::max(g, t.kind == Term::Kind::Log ? 1e-300 : t.exponent);
  }
  return g;
}

bool Piece::is_zero() const {
  return std::all_of(terms.begin(), terms.end(), [](const Term& t) { return t.coef == 0.0; });
}

RadialProfile::RadialProfile(std::vector<double> breakpoints, std::vector<Piece> pieces,
                             std::string name)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)), name_(std::move(name)) {
  if (pieces_.size() != breaks_.size() + 1)
    throw ConfigError("profile needs exactly one more piece than breakpoints");
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    if (!(breaks_[i] > 0.0)) throw ConfigError("breakpoints must be positive");
    if (i > 0 && !(breaks_[i] > breaks_[i - 1]))
      throw ConfigError("breakpoints must be strictly increasing");
  }
}

RadialProfile RadialProfile::single(Piece p, std::string name) {
  return RadialProfile({}, {std::move(p)}, std::move(name));
}

RadialProfile RadialProfile::constant(double c) {
  return single(Piece{{Term::constant(c)}}, "constant");
}

const Piece& RadialProfile::piece_at(double r) const {
  // First breakpoint >= r: r in (b_{i-1}, b_i] belongs to piece i.
  const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), r);
  return pieces_[static_cast<std::size_t>(it - breaks_.begin())];
}

double RadialProfile::operator()(double r) const { return piece_at(r)(r); }

double RadialProfile::jump_at(std::size_t i) const {
  const double b = breaks_.at(i);
  return pieces_[i + 1](b) - pieces_[i](b);
}

std::vector<bool> RadialProfile::continuity_flags(double rel_tol) const {
  std::vector<bool> flags(breaks_.size());
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    const double scale = std::max(1.0, std::abs(pieces_[i](breaks_[i])));
    flags[i] = std::abs(jump_at(i)) <= rel_tol * scale;
  }
  return flags;
}

RadialProfile RadialProfile::scaled(double c) const {
  RadialProfile out = *this;
  for (auto& p : out.pieces_)
    for (auto& t : p.terms) t.coef *= c;
  return out;
}

RadialProfile operator+(const RadialProfile& a, const RadialProfile& b) {
  std::vector<double> merged;
  std::set_union(a.breaks_.begin(), a.breaks_.end(), b.breaks_.begin(), b.breaks_.end(),
                 std::back_inserter(merged));
  std::vector<Piece> pieces;
  pieces.reserve(merged.size() + 1);
  for (std::size_t i = 0; i <= merged.size(); ++i) {
    // Any radius strictly inside the merged interval selects the right pieces.
    double probe;
    if (merged.empty()) probe = 1.0;
    else if (i == 0) probe = 0.5 * merged.front();
    else if (i == merged.size()) probe = 2.0 * merged.back();
    else probe = 0.5 * (merged[i - 1] + merged[i]);
    Piece p = a.piece_at(probe);
    const Piece& q = b.piece_at(probe);
    p.terms.insert(p.terms.end(), q.terms.begin(), q.terms.end());
    pieces.push_back(std::move(p));
  }
  std::string name = a.name_.empty() || b.name_.empty() ? a.name_ + b.name_
                                                          : a.name_ + "+" + b.name_;
  return RadialProfile(std::move(merged), std::move(pieces), std::move(name));
}

}  // namespace fraclap
