#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace wwmv::lca {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using Residues = std::vector<int>;

// G = Z_N1 x ... x Z_Nr. The dual group is labelled by the same residues.
// Elements are stored by flat index with the first factor slowest.
class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<int> orders);

    const std::vector<int>& orders() const { return orders_; }
    std::size_t size() const { return size_; }
    std::size_t index(const Residues& r) const;
    Residues element(std::size_t flat) const;
    std::size_t add(std::size_t a, std::size_t b) const;
    std::size_t sub(std::size_t a, std::size_t b) const;
    std::size_t neg(std::size_t a) const { return sub(0, a); }
    std::size_t scale(std::size_t a, long k) const;
    // <chi | g> = exp(2 pi i sum chi_a g_a / N_a) from a cached table.
    cplx character(std::size_t chi, std::size_t g) const { return table_[chi * size_ + g]; }

    bool operator==(const FiniteAbelianGroup& o) const { return orders_ == o.orders_; }

private:
    std::vector<int> orders_;
    std::size_t size_ = 1;
    std::vector<std::vector<int>> residues_;
    CVec table_;
};

cplx character_eval(const FiniteAbelianGroup& g, const Residues& chi, const Residues& x);

struct GroupFunction {
    FiniteAbelianGroup group;
    CVec values;
};

// Functions on G x Ghat, flat index x * |G| + pi.
struct PhaseFunctionG {
    FiniteAbelianGroup group;
    CVec values;

    cplx& at(std::size_t x, std::size_t pi) { return values[x * group.size() + pi]; }
    cplx at(std::size_t x, std::size_t pi) const { return values[x * group.size() + pi]; }
};

// Counting measure on G, 1/|G| on the dual.
GroupFunction fourier(const GroupFunction& f);
GroupFunction inverse_fourier(const GroupFunction& fhat);
GroupFunction convolve(const GroupFunction& a, const GroupFunction& b);
GroupFunction delta(const FiniteAbelianGroup& g, std::size_t at);
GroupFunction character_function(const FiniteAbelianGroup& g, std::size_t chi);

// zeta((x1,pi1),(x2,pi2)) = <pi1|x2> conj<pi2|x1>
cplx two_character(const FiniteAbelianGroup& g, std::size_t x1, std::size_t pi1, std::size_t x2,
                   std::size_t pi2);

// (U(x) psi)(y) = psi(y - x); (V(pi) psi)(y) = <pi|y> psi(y)
GroupFunction translate_g(const GroupFunction& psi, std::size_t x);
GroupFunction modulate(const GroupFunction& psi, std::size_t pi);

// <pi|x>^p U(x) V(pi); p must be an integer (UnsupportedExponent otherwise).
Eigen::MatrixXcd weyl_wp(const FiniteAbelianGroup& g, std::size_t x, std::size_t pi, double p);

// Fourier transform on G x Ghat, A^(xi, eta) = sum_x (1/|G|) sum_pi A(x,pi) conj(<pi|xi><eta|x>).
PhaseFunctionG phase_fourier(const PhaseFunctionG& a);
PhaseFunctionG phase_inverse_fourier(const PhaseFunctionG& ahat);

// sum_xi (1/|G|) sum_eta A^(xi, eta) W_p(xi, eta)
Eigen::MatrixXcd quantize(const PhaseFunctionG& a, int p);
// Inverse of quantize: A^(xi, eta) = Tr(W_p(xi,eta)^dagger op).
PhaseFunctionG dequantize(const FiniteAbelianGroup& g, const Eigen::MatrixXcd& op, int p);

// K_p on (G x Ghat)^2, entry [(x1,pi1)][(x2,pi2)] at flat (x1*|G|+pi1) * |G|^2 + (x2*|G|+pi2).
struct StarKernel {
    FiniteAbelianGroup group;
    int p = 0;
    CVec values;

    cplx at(std::size_t g1, std::size_t g2) const {
        return values[g1 * group.size() * group.size() + g2];
    }
};

// Cached per (orders, p); safe for concurrent callers.
std::shared_ptr<const StarKernel> star_kernel(const FiniteAbelianGroup& g, int p);
// Same sum without the cache or the factorization, for cross-checks on tiny groups.
StarKernel star_kernel_direct(const FiniteAbelianGroup& g, int p);

// max |sum_h K(g1,h) K(g2-h, g3-h) - sum_h K(g1-h, g2-h) K(h, g3)| over all g1, g2, g3,
// with dh = 1/|G| per element of G x Ghat.
double kernel_associativity_residual(const StarKernel& k);
// Fourier transform of K over (G x Ghat)^2.
CVec kernel_fourier(const StarKernel& k);
// max |Kh(c1, c2+c3) Kh(c2, c3) - Kh(c1, c2) Kh(c1+c2, c3)| over all triples.
double kernel_cocycle_residual(const StarKernel& k);

// (A * B)(g) = sum_{g1,g2} K_p(g1 - g, g2 - g) A(g1) B(g2) / |G|^2
PhaseFunctionG star_g(const PhaseFunctionG& a, const PhaseFunctionG& b, int p);
// Solves U * A = A for all A by least squares; cached.
PhaseFunctionG star_unit(const FiniteAbelianGroup& g, int p);

// delta(x1 + x2 - 2x) <pi | x1 - x>; zero when x1 + x2 has no half.
PhaseFunctionG basis_rho(const FiniteAbelianGroup& g, std::size_t x1, std::size_t x2);
// Rank of the |G|^2 family of basis_rho functions.
int basis_rho_rank(const FiniteAbelianGroup& g);

// RK4 for d rho/dt = (H*rho - rho*H) / (i hbar) with star_g.
PhaseFunctionG von_neumann_evolve_g(const PhaseFunctionG& rho, const PhaseFunctionG& h, double dt,
                                    int steps, int p, double hbar = 1.0);

// kappa1 + kappa2 folded into (-pi, pi].
double umklapp_fold(double kappa1, double kappa2);

struct ConservationReport {
    int steps = 0;
    double max_occupation_drift = 0.0;
    double norm_drift = 0.0;
    // kappa of the most occupied dual label, and kappa1 + kappa2 folded for a sample collision
    double kappa_peak = 0.0;
    double folded_pair = 0.0;
    double unfolded_pair = 0.0;
};

// Nearest-neighbour hopping H = -J (U(1) + U(-1)) on Z_N, evolved with the exact
// propagator exp(-i H dt / hbar); tracks |psi^(chi)|^2 for every chi.
ConservationReport conservation_demo(int n, double hopping, int steps, double dt = 0.05,
                                     double hbar = 1.0);

// Regular representation: op(alpha) = sum_g alpha(g) U(g).
Eigen::MatrixXcd regular_representation(const GroupFunction& alpha);
// Operator of alpha * beta (group convolution) in the regular representation.
Eigen::MatrixXcd group_algebra_product(const GroupFunction& alpha, const GroupFunction& beta);

}  // namespace wwmv::lca
