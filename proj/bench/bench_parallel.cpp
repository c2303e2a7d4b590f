// Serial reference against the OpenMP kernels: same inputs, same outputs, wall time.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "fraclap/frackernel.hpp"
#include "fraclap/fundamentals.hpp"
#include "fraclap/maxprinciple.hpp"

using namespace fraclap;

namespace {

double seconds(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, double diff) {
  std::printf("%-28s %10.4f %10.4f %8.2fx   max|diff| %.2e\n", name, serial, parallel,
              serial / parallel, diff);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial[s]", "omp[s]", "speedup");

  {
    const FracParams p(3, 0.5);
    const RadialEvaluator ev(p);
    const auto u = RadialFunction::generic([](double r) { return 1.0 / (1.0 + r * r); }, {}, "lorentz");
    std::vector<double> radii;
    for (int i = 0; i < 400; ++i) radii.push_back(std::pow(10.0, -1.0 + 3.0 * i / 399.0));
    std::vector<OperatorValue> a, b;
    const double ts = seconds([&] { a = ev.batch(u, radii, Exec::Serial); }, 3);
    const double tp = seconds([&] { b = ev.batch(u, radii, Exec::Parallel); }, 3);
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i].value - b[i].value));
    row("radial batch (400 radii)", ts, tp, d);
  }

  DirichletSpec spec;
  spec.domain = {{-1.0, 1.0}};
  spec.s = 0.5;
  spec.rhs = [](double) { return 1.0; };
  spec.exterior = Exterior::Custom;
  spec.exterior_fn = [](double x) { return std::exp(-x * x); };
  spec.truncation = 40.0;
  const auto g = discretize(spec, 1.0 / 512);
  {
    Eigen::MatrixXd a, b;
    const double ts = seconds([&] { a = assemble(g, Exec::Serial); }, 3);
    const double tp = seconds([&] { b = assemble(g, Exec::Parallel); }, 3);
    row("assemble (1023 nodes)", ts, tp, (a - b).cwiseAbs().maxCoeff());
  }
  {
    Eigen::VectorXd a, b;
    const double ts = seconds([&] { a = exterior_load(g, Exec::Serial); }, 3);
    const double tp = seconds([&] { b = exterior_load(g, Exec::Parallel); }, 3);
    row("exterior load", ts, tp, (a - b).cwiseAbs().maxCoeff());
  }
  return 0;
}
