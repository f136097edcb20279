#pragma once

#include <complex>
#include <vector>

namespace blaschke {

// All complex roots of sum_k coeffs[k] z^k (ascending powers, leading
// coefficient nonzero). Aberth-Ehrlich simultaneous iteration; fails with
// SolverDivergence if it does not settle.
std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> coeffs);

} // namespace blaschke
