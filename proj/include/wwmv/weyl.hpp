#pragma once

#include <vector>

#include "wwmv/grid.hpp"
#include "wwmv/kernel.hpp"

namespace wwmv {

// Phase-space shift: translation alpha and boost velocity nu; momentum pi = mass * nu.
struct PhaseShift {
    std::vector<double> alpha;
    std::vector<double> nu;

    std::vector<double> pi(double mass) const;
    PhaseShift operator+(const PhaseShift& o) const;
    PhaseShift operator-() const;
};

PhaseShift shift_from_momentum(std::vector<double> alpha, const std::vector<double>& pi,
                               double mass);

// z = (x, y) with x, y in R^n packed as [x..., y...]. Returns y1.x2 - y2.x1.
double symplectic_eval(std::span<const double> z1, std::span<const double> z2);
// Gamma(u1, u2) with u = (alpha, nu): nu1.alpha2 - nu2.alpha1.
double symplectic_eval(const PhaseShift& u1, const PhaseShift& u2);
// Gamma(u2,u3) + Gamma(u3,u1) + Gamma(u1,u2).
double cocycle3(const PhaseShift& u1, const PhaseShift& u2, const PhaseShift& u3);
// Phase accumulated by the ordered product Z(u1) Z(u2) Z(u3):
// Gamma(u1,u2) + Gamma(u1,u3) + Gamma(u2,u3).
double composition_cocycle3(const PhaseShift& u1, const PhaseShift& u2, const PhaseShift& u3);

// (U(alpha) psi)(q) = psi(q - alpha); alpha must be a whole number of grid steps.
WaveFunction translate(const WaveFunction& psi, std::span<const double> alpha);
// (V(nu) psi)(q) = exp(i m nu.q / hbar) psi(q); m nu must sit on the momentum lattice.
WaveFunction boost(const WaveFunction& psi, std::span<const double> nu);
// U(alpha) V(nu) psi
WaveFunction weyl_script(const WaveFunction& psi, const PhaseShift& s);
// exp(i m nu.alpha / 2 hbar) U(alpha) V(nu) psi
WaveFunction weyl_canonical(const WaveFunction& psi, const PhaseShift& s);

// W rho W^-1 for the canonical Weyl operator W of s.
DensityKernel weyl_adjoint(const DensityKernel& rho, const PhaseShift& s);

struct GeneratorReport {
    double translation_residual = 0.0;
    double boost_residual = 0.0;
};

// Residual norms of the first-order expansions of U(eps e_axis) and V(eps e_axis).
GeneratorReport generator_check(const WaveFunction& psi, double eps, int axis = 0);

// (1/i hbar) <psi | [Q_a, P_b] psi> with P spectral and Q multiplicative.
cplx canonical_commutator(const WaveFunction& psi, int a, int b);

}  // namespace wwmv
