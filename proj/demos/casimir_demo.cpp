// Vacuum energy of a Dirichlet string of length L, read off from the
// small-t expansion of the cylinder trace and compared with -pi/(24 L).

#include <cstdio>
#include <numbers>
#include <vector>

#include "specasym.hpp"

int main() {
  using namespace specasym;
  std::printf("%-10s %-22s %-22s %s\n", "L", "fitted E", "-pi/(24L)", "rel. error");
  for (double length : {1.0, std::numbers::pi, 10.0}) {
    const Spectrum s = interval_spectrum(length, BoundaryCondition::dirichlet);
    const double w1 = std::numbers::pi / length;
    const auto ts = geometric_grid(1e-3 / w1, 1e-1 / w1, 64);
    std::vector<double> ys;
    for (const auto& sample : trace_grid(Kernel::cylinder, s, ts, 1e-12)) ys.push_back(sample.value);
    const FitReport fit = fit_expansion(relative_samples(ts, ys), cylinder_basis(1, 5));
    const double energy = casimir_energy(fit.to_expansion(1));
    const double exact = -std::numbers::pi / (24 * length);
    std::printf("%-10.6g %-22.15g %-22.15g %.2e\n", length, energy, exact, std::abs(energy / exact - 1));
  }
}
