#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wwmv {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Periodic grid on the box [-L/2, L/2)^n with N points per axis.
// Position nodes q_j = -L/2 + j L/N, momentum nodes p_k = 2 pi hbar k / L for
// k in [-N/2, N/2), stored in monotone order (index m = k + N/2).
struct GridSpec {
    int dim = 1;
    int points = 128;
    double length = 20.0;
    double hbar = 1.0;
    double mass = 1.0;

    void validate() const;

    double dq() const { return length / points; }
    double dp() const;
    // N^n, the number of position (or momentum) nodes.
    std::size_t size() const;
    double q(int j) const { return -0.5 * length + j * dq(); }
    double p(int m) const { return (m - points / 2) * dp(); }
    // dq^n and dp^n / (2 pi hbar)^n
    double position_weight() const;
    double momentum_weight() const;
    // dq^n dp^n / (2 pi hbar)^n == 1 / N^n
    double phase_weight() const;

    bool operator==(const GridSpec& o) const;
};

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where);

// Row-major flat index <-> multi-index with axis 0 slowest.
std::size_t flatten(std::span<const int> idx, int points);
void unflatten(std::size_t flat, int dim, int points, std::span<int> idx);

struct WaveFunction {
    GridSpec grid;
    CVec values;
};

struct MomentumProfile {
    GridSpec grid;
    CVec values;
};

using PositionFn = std::function<cplx(std::span<const double> q)>;

WaveFunction sample_wavefunction(const GridSpec& grid, const PositionFn& f);
// Coordinate array q^axis over the position grid.
std::vector<double> coordinate(const GridSpec& grid, int axis);

MomentumProfile to_momentum(const WaveFunction& psi);
WaveFunction to_position(const MomentumProfile& phi);

cplx inner(const WaveFunction& a, const WaveFunction& b);
double norm_squared(const WaveFunction& psi);

// (hbar/i) d/dq^axis by spectral differentiation; the Nyquist mode is dropped.
WaveFunction momentum_apply(const WaveFunction& psi, int axis);
// d/dq^axis of a periodic complex array sampled on the grid.
CVec spectral_derivative(const GridSpec& grid, const CVec& f, int axis);

WaveFunction free_propagate(const WaveFunction& psi, double t);
WaveFunction split_step_evolve(const WaveFunction& psi, const CVec& potential,
                               double dt, int steps);

}  // namespace wwmv
