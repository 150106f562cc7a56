#pragma once

#include <optional>
#include <vector>

#include "wwmv/kernel.hpp"

namespace wwmv {

// Weyl symbol of a kernel on the periodic grid,
//   A(q, p) = sum_alpha exp(-i p.alpha / hbar) K[q + alpha/2, q - alpha/2] dq^n,
// where the half-step shifts are realized by band-limited interpolation along each
// diagonal of the kernel. Exact inverse of phase_to_kernel.
PhaseSpaceFunction kernel_to_phase(const DensityKernel& k);
DensityKernel phase_to_kernel(const PhaseSpaceFunction& a);

PhaseSpaceFunction wigner_of_pure(const WaveFunction& psi);
// Weyl quantization of A applied to psi.
WaveFunction apply_operator(const PhaseSpaceFunction& a, const WaveFunction& psi);

// Phase-space integrals with measure dq^n dp^n / (2 pi hbar)^n.
cplx integrate(const PhaseSpaceFunction& a);
cplx trace(const PhaseSpaceFunction& a);
cplx hs_inner(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b);
// Intended for pure-state Wigner functions; the mixed-state formula is not provided.
double transition_probability(const PhaseSpaceFunction& rho1, const PhaseSpaceFunction& rho2);
double expectation(const PhaseSpaceFunction& rho, const PhaseSpaceFunction& a);

// Marginals: sum over p with dp/(2 pi hbar), and over q with dq.
std::vector<double> position_marginal(const PhaseSpaceFunction& rho);
std::vector<double> momentum_marginal(const PhaseSpaceFunction& rho);

struct CoherentParams {
    std::vector<double> xi;
    std::vector<double> pi;
    // Row-major n x n SPD matrix a_lm; identity when empty.
    std::vector<double> metric;
};

// 2^n exp(-(a_lm dq^l dq^m + a^lm dp_l dp_m) / hbar), normalized under dq dp/(2 pi hbar)^n.
PhaseSpaceFunction coherent_wigner(const CoherentParams& c, const GridSpec& grid);
// Wave function whose Wigner function is coherent_wigner(c) (identity metric only).
WaveFunction coherent_state(const CoherentParams& c, const GridSpec& grid);

// Husimi smoothing by the coherent-state family with the given metric (identity default).
PhaseSpaceFunction husimi(const PhaseSpaceFunction& rho,
                          const std::vector<double>& metric = {});

double entropy(const DensityKernel& k);

// delta(q - (q1+q2)/2) exp(i p.(q2 - q1)/hbar) with delta weight 1/dq^n.
PhaseSpaceFunction basis_distribution_q(std::span<const double> q1,
                                        std::span<const double> q2, const GridSpec& grid);

// Largest |Im| over all samples.
double max_imag(const PhaseSpaceFunction& a);

}  // namespace wwmv
