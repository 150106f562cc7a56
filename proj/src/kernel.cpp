#include "wwmv/kernel.hpp"

#include "wwmv/errors.hpp"

namespace wwmv {

void require_phase_size(const PhaseSpaceFunction& a, const char* where) {
    if (a.values.size() != a.grid.size() * a.grid.size())
        throw DimensionMismatch(std::string(where) + ": phase-space array has the wrong length");
}

PhaseSpaceFunction sample_phase(const GridSpec& grid, const PhaseFn& f) {
    grid.validate();
    const std::size_t s = grid.size();
    PhaseSpaceFunction out{grid, CVec(s * s)};
    std::vector<int> ji(grid.dim), mi(grid.dim);
    std::vector<double> q(grid.dim), p(grid.dim);
    for (std::size_t j = 0; j < s; ++j) {
        unflatten(j, grid.dim, grid.points, ji);
        for (int a = 0; a < grid.dim; ++a) q[a] = grid.q(ji[a]);
        for (std::size_t m = 0; m < s; ++m) {
            unflatten(m, grid.dim, grid.points, mi);
            for (int a = 0; a < grid.dim; ++a) p[a] = grid.p(mi[a]);
            out.values[j * s + m] = f(q, p);
        }
    }
    return out;
}

PhaseSpaceFunction constant_phase(const GridSpec& grid, cplx c) {
    return PhaseSpaceFunction{grid, CVec(grid.size() * grid.size(), c)};
}

DensityKernel outer(const WaveFunction& psi1, const WaveFunction& psi2) {
    require_same_grid(psi1.grid, psi2.grid, "outer");
    const auto n = static_cast<Eigen::Index>(psi1.grid.size());
    DensityKernel k{psi1.grid, Eigen::MatrixXcd(n, n)};
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            k.values(r, c) = psi1.values[r] * std::conj(psi2.values[c]);
    return k;
}

DensityKernel identity_kernel(const GridSpec& grid) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n) / grid.position_weight();
    return DensityKernel{grid, std::move(m)};
}

Eigen::MatrixXcd operator_matrix(const DensityKernel& k) {
    return k.values * k.grid.position_weight();
}

DensityKernel kernel_from_matrix(const GridSpec& grid, const Eigen::MatrixXcd& m) {
    return DensityKernel{grid, m / grid.position_weight()};
}

WaveFunction apply_kernel(const DensityKernel& k, const WaveFunction& psi) {
    require_same_grid(k.grid, psi.grid, "apply_kernel");
    Eigen::Map<const Eigen::VectorXcd> v(psi.values.data(),
                                         static_cast<Eigen::Index>(psi.values.size()));
    Eigen::VectorXcd r = operator_matrix(k) * v;
    return WaveFunction{psi.grid, CVec(r.data(), r.data() + r.size())};
}

}  // namespace wwmv
