#pragma once

#include <functional>
#include <vector>

#include "wwmv/grid.hpp"
#include "wwmv/kernel.hpp"

namespace wwmv {

// Direct quadrature of the integral form of the star product,
//   (A*B)(z) = (pi hbar)^-2n sum A(z') B(z'') exp((2i/hbar)[(q'-q).(p''-p) - (q''-q).(p'-p)]) dz' dz'',
// on the grid refined by two along every axis (inputs are trigonometrically
// interpolated with naive DFTs). Cost grows as N^(4n); meant for N <= 32 in 1D.
PhaseSpaceFunction star_bruteforce(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b);

// Kernel-composition route: kernel_to_phase(K_A K_B dq^n).
PhaseSpaceFunction star(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b);

// (A*B - B*A) / (i hbar)
PhaseSpaceFunction moyal_bracket(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b);

// d/dq^a for axis < n, d/dp_(axis-n) otherwise; spectral, periodic in both directions.
PhaseSpaceFunction phase_derivative(const PhaseSpaceFunction& a, int axis);

// {A, B} = dA/dq . dB/dp - dA/dp . dB/dq, so that {q, p} = 1 and
// (A*B - B*A) / (i hbar) -> {A, B} as hbar -> 0.
PhaseSpaceFunction poisson_bracket(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b);

// sqrt(sum |A|^2 dq^n dp^n)
double l2_norm(const PhaseSpaceFunction& a);

struct SemiclassicalRow {
    double hbar = 0.0;
    double r0 = 0.0;       // |A*B - AB|
    double r1 = 0.0;       // |A*B - AB - (i hbar/2){A,B}|
    double r_bracket = 0.0;  // |{A,B}_quant - {A,B}|
};

struct SemiclassicalReport {
    std::vector<SemiclassicalRow> rows;
    // Least-squares slopes of log r against log hbar.
    double order_r0 = 0.0;
    double order_r1 = 0.0;
    double order_bracket = 0.0;
};

// Least-squares slope of log y against log x.
double fit_order(const std::vector<double>& x, const std::vector<double>& y);

// Samples A and B on grid_for(hbar) for every hbar and measures the residuals.
SemiclassicalReport semiclassical_check(const PhaseFn& a, const PhaseFn& b,
                                        const std::vector<double>& hbars,
                                        const std::function<GridSpec(double)>& grid_for);

// RK4 for d rho/dt = (H*rho - rho*H) / (i hbar), carried out on operator matrices.
PhaseSpaceFunction von_neumann_evolve(const PhaseSpaceFunction& rho, const PhaseSpaceFunction& h,
                                      double dt, int steps);

}  // namespace wwmv
