#pragma once

#include <Eigen/Dense>

#include "wwmv/grid.hpp"

namespace wwmv {

// Two-point function A[q, q'] on the position grid; row q, column q' (flat indices).
// The operator acts as (A psi)(q) = sum_q' A[q, q'] psi(q') dq^n.
struct DensityKernel {
    GridSpec grid;
    Eigen::MatrixXcd values;
};

// Samples A(q_j, p_m) on the product grid, flat index j * N^n + m with j, m flat
// position and momentum indices.
struct PhaseSpaceFunction {
    GridSpec grid;
    CVec values;

    cplx& at(std::size_t j, std::size_t m) { return values[j * grid.size() + m]; }
    cplx at(std::size_t j, std::size_t m) const { return values[j * grid.size() + m]; }
};

using PhaseFn = std::function<cplx(std::span<const double> q, std::span<const double> p)>;

PhaseSpaceFunction sample_phase(const GridSpec& grid, const PhaseFn& f);
PhaseSpaceFunction constant_phase(const GridSpec& grid, cplx c);

// Kernel of |psi1><psi2|.
DensityKernel outer(const WaveFunction& psi1, const WaveFunction& psi2);
DensityKernel identity_kernel(const GridSpec& grid);
// Matrix of the operator in the grid basis, A dq^n, and its inverse map.
Eigen::MatrixXcd operator_matrix(const DensityKernel& k);
DensityKernel kernel_from_matrix(const GridSpec& grid, const Eigen::MatrixXcd& m);

WaveFunction apply_kernel(const DensityKernel& k, const WaveFunction& psi);

void require_phase_size(const PhaseSpaceFunction& a, const char* where);

}  // namespace wwmv
