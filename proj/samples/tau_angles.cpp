// Prints tau(p) and the Sato-Tate angle of the weight-12 level-1 form for
// the first few primes, with the leading continued-fraction quotients of
// theta_p / (2 pi).

#include <fmt/format.h>

#include "modapprox/modapprox.hpp"

int main() {
  using namespace modapprox;
  const CoefficientTable table = build_table(NewformSpec::delta(), 50);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    const AngleRecord rec = angle(table, p);
    const auto cf = contfrac::expand(rec.fraction, 8);
    std::string quotients;
    for (const auto& a : cf.quotients) quotients += " " + a.get_str();
    fmt::print("p={:<3} tau={:<10} theta={:.12f} cf=[{};{} ]\n", p, table.raw(p).get_str(),
               rec.theta_mid().to_double(), cf.a0.get_str(), quotients);
  }
}
