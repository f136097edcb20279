#include "blaschke/polyroots.hpp"

#include <cmath>
#include <numbers>

#include "blaschke/error.hpp"

namespace blaschke {

namespace {

using cdouble = std::complex<double>;

// p(z) and p'(z) by Horner on ascending coefficients
void horner(const std::vector<cdouble>& c, cdouble z, cdouble& p, cdouble& dp) {
    p = c.back();
    dp = {0.0, 0.0};
    for (int i = int(c.size()) - 2; i >= 0; --i) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
}

} // namespace

std::vector<cdouble> polynomial_roots(std::vector<cdouble> coeffs) {
    while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() <= 1) {
        if (coeffs.empty() || std::abs(coeffs[0]) == 0.0)
            fail("SolverDivergence", "zero polynomial");
        return {};
    }

    std::vector<cdouble> zeros_at_origin;
    while (coeffs.size() > 1 && std::abs(coeffs.front()) == 0.0) {
        zeros_at_origin.push_back({0.0, 0.0});
        coeffs.erase(coeffs.begin());
    }

    const int n = int(coeffs.size()) - 1;
    std::vector<cdouble> z(n);
    if (n > 0) {
        double cauchy = 0.0;
        for (int k = 0; k < n; ++k)
            cauchy = std::max(cauchy, std::abs(coeffs[k] / coeffs[n]));
        double radius = 0.5 + 0.5 * std::min(1.0 + cauchy, 1e6);
        for (int j = 0; j < n; ++j) {
            double th = 2.0 * std::numbers::pi * (double(j) / n) + 0.37;
            z[j] = radius * cdouble{std::cos(th), std::sin(th)};
        }

        bool done = false;
        for (int iter = 0; iter < 200 && !done; ++iter) {
            done = true;
            for (int j = 0; j < n; ++j) {
                cdouble p, dp;
                horner(coeffs, z[j], p, dp);
                if (std::abs(p) == 0.0) continue;
                cdouble w = dp == cdouble{0.0, 0.0} ? cdouble{0.0, 0.0} : p / dp;
                cdouble s{0.0, 0.0};
                for (int k = 0; k < n; ++k)
                    if (k != j) s += 1.0 / (z[j] - z[k]);
                cdouble denom = 1.0 - w * s;
                cdouble corr = denom == cdouble{0.0, 0.0} ? w : w / denom;
                z[j] -= corr;
                if (std::abs(corr) > 1e-14 * (1.0 + std::abs(z[j]))) done = false;
            }
        }
        if (!done) {
            // accept anyway if every residual is tiny relative to coefficients
            double scale = 0.0;
            for (const cdouble& c : coeffs) scale = std::max(scale, std::abs(c));
            for (int j = 0; j < n; ++j) {
                cdouble p, dp;
                horner(coeffs, z[j], p, dp);
                double zn = std::max(1.0, std::abs(z[j]));
                double bound = 1e-9 * scale * std::pow(zn, n);
                if (std::abs(p) > bound) fail("SolverDivergence", "root iteration stalled");
            }
        }
    }

    std::vector<cdouble> out = zeros_at_origin;
    out.insert(out.end(), z.begin(), z.end());
    return out;
}

} // namespace blaschke
