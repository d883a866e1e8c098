// Finds m with m |a(2^m) - x| <= 6 pi / sin(theta_2) for a few targets x and
// prints the smallest scaled values seen.

#include <fmt/format.h>

#include "modapprox/modapprox.hpp"

int main() {
  using namespace modapprox;
  const CoefficientTable table = build_table(NewformSpec::delta(), 2);
  for (double x : {0.3, -0.7, 1.0}) {
    const auto report = approx::theorem2_search(table, x, 2, 20000);
    fmt::print("x={:+.2f} witnesses={} best m|a(2^m)-x|={:.6f} bound={:.6f}\n", x, report.witnesses.size(),
               report.best_constant, report.threshold);
  }
}
