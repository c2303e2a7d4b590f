#include "fraclap/fundamentals.hpp"

#include <array>
#include <cmath>
#include <ostream>

namespace fraclap {

namespace {

struct Named {
  BarrierId id;
  const char* name;
  Branch branch;
};

constexpr std::array<Named, 16> kBarriers{{
    {BarrierId::VTilde, "v_tilde", Branch::PowerPos},
    {BarrierId::GTilde, "g_tilde", Branch::PowerPos},
    {BarrierId::WCheck, "w_check", Branch::Log},
    {BarrierId::VCheck, "v_check", Branch::Log},
    {BarrierId::GCheck, "g_check", Branch::Log},
    {BarrierId::PsiHat, "psi_hat", Branch::PowerNeg},
    {BarrierId::GammaTilde, "gamma_tilde", Branch::PowerNeg},
    {BarrierId::Psi, "psi", Branch::PowerNeg},
    {BarrierId::G, "g", Branch::PowerNeg},
    {BarrierId::WHat, "w_hat", Branch::PowerNeg},
    {BarrierId::GammaHat, "gamma_hat", Branch::PowerNeg},
    {BarrierId::HHat, "h_hat", Branch::PowerPos},
    {BarrierId::HCheck, "h_check", Branch::Log},
    {BarrierId::PsiHatGamma, "psi_hat_gamma", Branch::PowerNeg},
    {BarrierId::PsiG, "psi_g", Branch::PowerNeg},
    {BarrierId::WGamma, "w_gamma", Branch::PowerNeg},
}};

const Named& lookup(BarrierId id) {
  for (const auto& b : kBarriers)
    if (b.id == id) return b;
  throw ConfigError("unknown barrier");
}

Piece zero() { return Piece{{}}; }
Piece pw(double c, double e) { return Piece{{Term::power(c, e)}}; }

}  // namespace

RadialProfile make_fundamental(const FracParams& p, SignVariant v) {
  const double sign = v == SignVariant::Phi ? 1.0 : -1.0;
  const double sg = p.sigma_star();
  Piece piece;
  switch (p.branch()) {
    case Branch::PowerNeg: piece = pw(sign, sg); break;
    case Branch::Log: piece = Piece{{Term::log(-sign)}}; break;
    case Branch::PowerPos: piece = pw(-sign, sg); break;
  }
  return RadialProfile::single(piece, v == SignVariant::Phi ? "phi" : "phi_tilde");
}

std::string to_string(BarrierId b) { return lookup(b).name; }

std::optional<BarrierId> barrier_from_string(std::string_view name) {
  for (const auto& b : kBarriers)
    if (name == b.name) return b.id;
  return std::nullopt;
}

const std::vector<BarrierId>& all_barriers() {
  static const std::vector<BarrierId> ids = [] {
    std::vector<BarrierId> v;
    for (const auto& b : kBarriers) v.push_back(b.id);
    return v;
  }();
  return ids;
}

Branch required_branch(BarrierId b) { return lookup(b).branch; }

void BarrierConstants::validate() const {
  if (!(c_tilde_g > 0 && c_check_g > 0 && c_g > 0 && mu > 0))
    throw ConfigError("barrier constants must be positive");
  if (!(r0 > 1.0)) throw ConfigError("base radius r0 must exceed 1");
  if (!(r > r0)) throw ConfigError("outer radius r must exceed r0");
  if (R0 < 0.0) throw ConfigError("R0 must be nonnegative");
}

BarrierConstants BarrierConstants::with_radii(double r0, double r) {
  BarrierConstants c;
  c.r0 = r0;
  c.r = r > 0.0 ? r : 10.0 * r0;
  return c;
}

double psi_hat_gamma_weight(const FracParams& p) { return p.n() / p.s(); }

double vask_radius(const FracParams& p) {
  const double q = std::pow(2.0, 1.0 / (p.n() + 2.0 * p.s()));
  return (q + 1.0) / (q - 1.0);
}

RadialProfile make_barrier(BarrierId id, const BarrierConstants& c, const FracParams& p) {
  c.validate();
  if (p.branch() != required_branch(id))
    throw ConfigError(to_string(id) + " needs sigma* branch " + to_string(required_branch(id)) +
                      ", got " + to_string(p.branch()));
  const double sg = p.sigma_star();
  const double r = c.r, r0 = c.r0;
  const double a = std::pow(r0, -sg);
  RadialProfile out;
  switch (id) {
    case BarrierId::VTilde:
      out = RadialProfile({2 * r}, {Piece{{Term::power(a, sg), Term::constant(-1)}}, zero()});
      break;
    case BarrierId::GTilde:
      out = RadialProfile({1.5 * r, 2 * r}, {zero(), pw(c.c_tilde_g, sg), zero()});
      break;
    case BarrierId::WCheck:
      out = RadialProfile({r}, {zero(), Piece{{Term::log(-1)}}});
      break;
    case BarrierId::VCheck:
      out = RadialProfile({2 * r}, {Piece{{Term::log(1)}}, zero()});
      break;
    case BarrierId::GCheck:
      out = RadialProfile({1.5 * r, 2 * r}, {zero(), Piece{{Term::log(c.c_check_g)}}, zero()});
      break;
    case BarrierId::PsiHat:
      out = RadialProfile({1.0}, {Piece{{Term::constant(1)}}, pw(1, sg)});
      break;
    case BarrierId::GammaTilde:
      out = RadialProfile({1.0}, {Piece{{Term::constant(1)}}, zero()});
      break;
    case BarrierId::Psi:
      out = RadialProfile({2 * r}, {Piece{{Term::constant(1), Term::power(-a, sg)}}, zero()});
      break;
    case BarrierId::G:
      out = RadialProfile({1.5 * r, 2 * r}, {zero(), Piece{{Term::constant(c.c_g)}}, zero()});
      break;
    case BarrierId::WHat:
      out = RadialProfile({r}, {zero(), pw(1, sg)});
      break;
    case BarrierId::GammaHat:
      out = RadialProfile({r, 1.5 * r}, {zero(), pw(c.mu, sg), zero()});
      break;
    case BarrierId::HHat:
      out = make_barrier(BarrierId::VTilde, c, p) + make_barrier(BarrierId::GTilde, c, p);
      break;
    case BarrierId::HCheck:
      out = make_barrier(BarrierId::VCheck, c, p) + make_barrier(BarrierId::GCheck, c, p);
      break;
    case BarrierId::PsiHatGamma:
      out = make_barrier(BarrierId::PsiHat, c, p) +
            make_barrier(BarrierId::GammaTilde, c, p).scaled(psi_hat_gamma_weight(p));
      break;
    case BarrierId::PsiG:
      out = (make_barrier(BarrierId::Psi, c, p) + make_barrier(BarrierId::G, c, p))
                .scaled(1.0 / (1.0 + c.c_g));
      break;
    case BarrierId::WGamma:
      out = make_barrier(BarrierId::WHat, c, p) + make_barrier(BarrierId::GammaHat, c, p);
      break;
  }
  out.set_name(to_string(id));
  return out;
}

void write_gallery_csv(std::ostream& out, std::span<const RadialProfile> profiles,
                       std::span<const double> radii) {
  out << "barrier,radius,value\n";
  const auto old = out.precision(17);
  for (const auto& p : profiles)
    for (double r : radii) out << p.name() << ',' << r << ',' << p(r) << '\n';
  out.precision(old);
}

}  // namespace fraclap
