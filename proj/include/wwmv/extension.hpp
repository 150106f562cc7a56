#pragma once

#include <map>

#include "wwmv/kernel.hpp"
#include "wwmv/weyl.hpp"

namespace wwmv {

// Element Z{xi; u} of the U(1)-extended phase-space group, xi in [0, 2 pi).
struct ExtendedElement {
    double xi = 0.0;
    PhaseShift u;
};

ExtendedElement make_extended(double xi, PhaseShift u);
// (xi1 + xi2 + (m / 2 hbar) Gamma(u1, u2) mod 2 pi, u1 + u2)
ExtendedElement z_compose(const ExtendedElement& e1, const ExtendedElement& e2, double mass = 1.0,
                          double hbar = 1.0);
ExtendedElement z_inverse(const ExtendedElement& e);

// A(phi, u) = sum_n exp(i n phi) a_n(u). The grid of each a_n reads its q axes as alpha
// and its p axes as nu; outside the grid the functions vanish.
struct ExtendedFunction {
    GridSpec grid;
    std::map<int, PhaseSpaceFunction> sectors;
};

// (a *_{n,Gamma} b)(w) = sum_u exp(-i n (m/2) Gamma(u, w)) a(u) b(w - u) dalpha^n dnu^n.
PhaseSpaceFunction twisted_convolve(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b, int n,
                                    double mass = 1.0);

// Quadrature of (A * B)(psi, w) = int A(phi, u) B(psi - phi - (m/2) Gamma(u, w), w - u) dphi/2pi du
// on equispaced angles, followed by projection of the result onto sectors. Sectors whose
// largest coefficient is not above drop_tol are omitted from the output.
ExtendedFunction extended_convolve(const ExtendedFunction& a, const ExtendedFunction& b,
                                   double mass = 1.0, double drop_tol = 0.0);

// Value of A at angle phi and grid node (j, m).
cplx extended_eval(const ExtendedFunction& a, double phi, std::size_t j, std::size_t m);

}  // namespace wwmv
