#pragma once

#include <functional>
#include <vector>

#include "wwmv/kernel.hpp"
#include "wwmv/wigner.hpp"

namespace wwmv {

// psi = sqrt(D) exp(i S / hbar) on a position grid; hbar is grid.hbar.
// action_gradient holds dS/dq^a per axis. When empty it is taken spectrally from
// action, which is only accurate for periodic S.
struct WkbData {
    GridSpec grid;
    std::vector<double> density;
    std::vector<double> action;
    std::vector<std::vector<double>> action_gradient;
};

// One WkbData per hbar; the grid may change with hbar.
using WkbFamily = std::function<WkbData(double hbar)>;

WaveFunction wkb_state(const WkbData& w);

struct ConcentrationRow {
    double hbar = 0.0;
    double moment = 0.0;           // int rho (p - dS/dq)^2 dmu
    double marginal_error = 0.0;   // max |position marginal - D|
};

struct ConcentrationReport {
    std::vector<ConcentrationRow> rows;
    double order = 0.0;
    double max_marginal_error = 0.0;
};

ConcentrationReport lagrangian_concentration(const WkbFamily& family, const std::vector<double>& hbars);

struct ActionRow {
    double hbar = 0.0;
    double residual = 0.0;
};

struct ActionReport {
    std::vector<ActionRow> rows;
    double order = 0.0;
};

// R = |A psi - A(q, dS/dq) psi - (hbar/i)(L_v f) exp(iS/hbar)| in L2(dq) with f = sqrt(D),
// v = dA/dp at p = dS/dq and L_v f = (v.df + d.(v f)) / 2. A is assumed real.
ActionReport first_order_action(const PhaseFn& a, const WkbFamily& family,
                                const std::vector<double>& hbars);

// (hbar/m) Im(conj(psi) d psi/dq^axis)
std::vector<double> quantum_current(const WaveFunction& psi, int axis);

// max |(D(dt) - D(-dt)) / 2dt + div j| for the split-step dynamics with real potential V.
// The backward step evolves conj(psi) forward and conjugates back.
double continuity_residual(const WaveFunction& psi, const CVec& potential, double dt);

struct CoherentMomentRow {
    double hbar = 0.0;
    std::vector<double> mean_q, mean_p, var_q, var_p;
};

struct CoherentLimitReport {
    std::vector<CoherentMomentRow> rows;
    // fitted orders of the axis-averaged variances
    double order_q = 0.0;
    double order_p = 0.0;
};

// Moments of E_(xi,pi) on grid_for(hbar). The hbar -> 0 limit of a ground state is
// formally a point mass; this only tracks the moments.
CoherentLimitReport coherent_limit(const CoherentParams& c, const std::vector<double>& hbars,
                                   const std::function<GridSpec(double)>& grid_for);

struct RotatorReport {
    int n0 = 0;
    double dn = 0.0;
    // peak-normalized sup |rho_circle - rho_line| over phi in [-pi, pi]
    double sup_difference = 0.0;
    // max |c_(n+1) - c_n| / |c_n| over n0 - dn <= n < n0 + dn
    double slow_variation = 0.0;
    // max |(hbar/i) d/dphi e^(in phi) - hbar n e^(in phi)| / (hbar n) on the Fourier side
    double eigenvalue_error = 0.0;
};

// Circle packet sum_n c_n e^(in phi) with c_n = exp(-(n - n0)^2 / 2 dn^2) against the line
// packet int c(k) e^(ik phi) dk with c(k) linear between the integers.
RotatorReport rotator_bridge(int n0 = 200, double dn = 20.0, double hbar = 1.0, int samples = 8192);

}  // namespace wwmv
