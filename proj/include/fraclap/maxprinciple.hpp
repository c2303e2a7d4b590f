#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "fraclap/frackernel.hpp"
#include "fraclap/fundamentals.hpp"

namespace fraclap {

/// Open interval (a, b); as a "compact" input it stands for [a, b].
struct Interval {
  double a = 0.0;
  double b = 0.0;
  double length() const { return b - a; }
  bool contains_open(double x) const { return x > a && x < b; }
  bool contains_closed(double x) const { return x >= a && x <= b; }
};
using IntervalSet = std::vector<Interval>;

double measure(const IntervalSet& set);
bool contains_open(const IntervalSet& set, double x);
bool contains_closed(const IntervalSet& set, double x);
/// Indicator of the closed set.
std::function<double(double)> indicator(const IntervalSet& set);

enum class Exterior { Zero, PhiStar, Custom };
std::string to_string(Exterior e);

/// Continuous description of a 1D nonlocal Dirichlet problem.
struct DirichletSpec {
  IntervalSet domain;
  double s = 0.5;
  std::function<double(double)> rhs = [](double) { return 0.0; };
  Exterior exterior = Exterior::Zero;
  /// For PhiStar: which fundamental solution supplies the exterior values.
  SignVariant phi_variant = SignVariant::PhiTilde;
  /// For Custom: exterior values; taken as 0 beyond the truncation radius.
  std::function<double(double)> exterior_fn;
  /// Lattice half-width for exterior data; 0 picks 4 max|endpoint| + 2.
  double truncation = 0.0;
  /// delta^s-shaped basis in cells next to the boundary (zero exterior, aligned endpoints).
  bool boundary_correction = true;
};

/// The spec sampled on the lattice x_j = j h.
struct GridProblem {
  DirichletSpec spec;
  double h = 0.0;
  std::vector<long> interior;  // lattice indices of unknowns
  std::vector<double> rhs;     // rhs on interior nodes
  long truncation_index = 0;   // exterior data lives on |j| <= truncation_index

  std::size_t size() const { return interior.size(); }
  double node(std::size_t i) const { return interior[i] * h; }
  double exterior_value(long j) const;
};

GridProblem discretize(const DirichletSpec& spec, double h);

struct DiscreteSolution {
  double h = 0.0;
  std::vector<double> x;
  std::vector<double> value;
  double residual_norm = 0.0;
  double rhs_norm = 0.0;
};

/// Far-field weights w_k (k >= 1) of the lattice operator with h = 1; they sum to 1/(2s).
std::vector<double> lattice_weights(double s, long kmax);

/// Interior block of the operator (an M-matrix; symmetric without the boundary correction).
Eigen::MatrixXd assemble(const GridProblem& g, Exec exec = Exec::Parallel);
/// Contribution of exterior data moved to the right-hand side.
Eigen::VectorXd exterior_load(const GridProblem& g, Exec exec = Exec::Parallel);

DiscreteSolution solve_dirichlet(const GridProblem& g, Exec exec = Exec::Parallel);
DiscreteSolution solve_dirichlet(const DirichletSpec& spec, double h, Exec exec = Exec::Parallel);

/// Discrete operator of the nodal values (with the problem's exterior data).
Eigen::VectorXd apply_operator(const GridProblem& g, const Eigen::VectorXd& u);

struct ComparisonReport {
  double max_violation = 0.0;  // max(v1 - v2)
  bool holds = true;
  bool identical = false;
};
ComparisonReport verify_comparison(const GridProblem& p1, const GridProblem& p2);

struct BatteryReport {
  int cases = 0;
  int violations = 0;
  double worst = 0.0;
};
/// Seeded random ordered pairs (rhs and exterior data ordered nodewise).
BatteryReport comparison_battery(std::uint64_t seed, int pairs, double h = 1.0 / 64);
/// Seeded random nonnegative data; counts negative nodal values.
BatteryReport max_principle_battery(std::uint64_t seed, int cases, double h = 1.0 / 64);

double distance_to_complement(const IntervalSet& domain, double x);

struct HopfReport {
  double min_ratio = 0.0;      // min v / delta^s at h
  double c_omega = 0.0;        // min_ratio / sum(h rhs delta^s) at h
  double c_omega_fine = 0.0;   // same at h / 2
  double stability = 0.0;      // c_omega_fine / c_omega
  bool positive = false;
  bool stable = false;
};
HopfReport verify_hopf_ratio(const DirichletSpec& spec, double h);

struct KslapReport {
  std::vector<double> ratios;  // per battery member
  double c_bar = 0.0;          // minimum of the ratios
  std::vector<std::string> notices;
};
/// Domain B_3 \ closed B_{1/2}; annulus B_2 \ B_1.
IntervalSet kslap_domain();
IntervalSet kslap_annulus();
std::vector<IntervalSet> kslap_battery();
/// For each A: u solves rhs = scale * rhs(x) with rhs = indicator of A when not given.
KslapReport verify_kslap(const std::vector<IntervalSet>& battery, double h, double s,
                         const std::function<double(double)>& rhs = nullptr);

enum class QsmpVariant { I, II };
struct QsmpReport {
  double c0 = 0.0;
  double c0_fine = 0.0;
  double stability = 0.0;
  bool positive = false;
  bool stable = false;
};
QsmpReport verify_qsmp(const IntervalSet& omega, const IntervalSet& K, const IntervalSet& A,
                       QsmpVariant variant, double s, double h);

struct MeasureLemmaReport {
  int k = -1;              // C = 1.25^k
  double c_bar = 0.0;
  bool found = false;
};
/// Smallest C on {1.25^k} with |{u <= C u(x0)} cap annulus| >= nu |annulus| for all sampled x0.
MeasureLemmaReport verify_measure_lemma(const GridProblem& g, const DiscreteSolution& u, double nu);

nlohmann::json to_json(const GridProblem& g);
nlohmann::json to_json(const DiscreteSolution& u);
void write_csv(std::ostream& out, const DiscreteSolution& u);

}  // namespace fraclap
