#include "wwmv/weyl.hpp"

#include <cmath>
#include <numbers>

#include "wwmv/errors.hpp"

namespace wwmv {

namespace {

constexpr double kShiftTol = 1e-9;

void require_dim(std::size_t got, int dim, const char* where) {
    if (got != static_cast<std::size_t>(dim))
        throw DimensionMismatch(std::string(where) + ": vector length does not match grid dimension");
}

// Integer number of lattice steps in x / step, or IncommensurateShift.
long lattice_steps(double x, double step, const char* what) {
    double r = x / step;
    double k = std::round(r);
    if (std::abs(r - k) > kShiftTol)
        throw IncommensurateShift(std::string(what) + " is not a whole number of grid steps");
    return static_cast<long>(k);
}

double wrap_mod(long v, int n) {
    long r = v % n;
    return static_cast<double>(r < 0 ? r + n : r);
}

double l2_norm(const GridSpec& g, const CVec& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s * g.position_weight());
}

}  // namespace

std::vector<double> PhaseShift::pi(double mass) const {
    std::vector<double> out(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) out[i] = mass * nu[i];
    return out;
}

PhaseShift PhaseShift::operator+(const PhaseShift& o) const {
    if (alpha.size() != o.alpha.size() || nu.size() != o.nu.size())
        throw DimensionMismatch("PhaseShift: dimension mismatch");
    PhaseShift r = *this;
    for (std::size_t i = 0; i < alpha.size(); ++i) r.alpha[i] += o.alpha[i];
    for (std::size_t i = 0; i < nu.size(); ++i) r.nu[i] += o.nu[i];
    return r;
}

PhaseShift PhaseShift::operator-() const {
    PhaseShift r = *this;
    for (auto& v : r.alpha) v = -v;
    for (auto& v : r.nu) v = -v;
    return r;
}

PhaseShift shift_from_momentum(std::vector<double> alpha, const std::vector<double>& pi,
                               double mass) {
    PhaseShift s{std::move(alpha), pi};
    for (auto& v : s.nu) v /= mass;
    return s;
}

double symplectic_eval(std::span<const double> z1, std::span<const double> z2) {
    if (z1.size() != z2.size() || z1.size() % 2 != 0)
        throw DimensionMismatch("symplectic_eval: arguments must be 2n-vectors of equal n");
    const std::size_t n = z1.size() / 2;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += z1[n + i] * z2[i] - z2[n + i] * z1[i];
    return s;
}

double symplectic_eval(const PhaseShift& u1, const PhaseShift& u2) {
    if (u1.alpha.size() != u2.alpha.size() || u1.nu.size() != u2.nu.size() ||
        u1.alpha.size() != u1.nu.size())
        throw DimensionMismatch("symplectic_eval: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < u1.alpha.size(); ++i)
        s += u1.nu[i] * u2.alpha[i] - u2.nu[i] * u1.alpha[i];
    return s;
}

double cocycle3(const PhaseShift& u1, const PhaseShift& u2, const PhaseShift& u3) {
    return symplectic_eval(u2, u3) + symplectic_eval(u3, u1) + symplectic_eval(u1, u2);
}

double composition_cocycle3(const PhaseShift& u1, const PhaseShift& u2, const PhaseShift& u3) {
    return symplectic_eval(u1, u2) + symplectic_eval(u1, u3) + symplectic_eval(u2, u3);
}

WaveFunction translate(const WaveFunction& psi, std::span<const double> alpha) {
    const GridSpec& g = psi.grid;
    require_dim(alpha.size(), g.dim, "translate");
    std::vector<long> steps(g.dim);
    bool zero = true;
    for (int a = 0; a < g.dim; ++a) {
        steps[a] = lattice_steps(alpha[a], g.dq(), "translation");
        zero = zero && steps[a] == 0;
    }
    if (zero) return psi;
    WaveFunction out{g, CVec(g.size())};
    std::vector<int> idx(g.dim), src(g.dim);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        unflatten(i, g.dim, g.points, idx);
        for (int a = 0; a < g.dim; ++a)
            src[a] = static_cast<int>(wrap_mod(idx[a] - steps[a], g.points));
        out.values[i] = psi.values[flatten(src, g.points)];
    }
    return out;
}

WaveFunction boost(const WaveFunction& psi, std::span<const double> nu) {
    const GridSpec& g = psi.grid;
    require_dim(nu.size(), g.dim, "boost");
    std::vector<long> k(g.dim);
    bool zero = true;
    for (int a = 0; a < g.dim; ++a) {
        k[a] = lattice_steps(g.mass * nu[a], g.dp(), "boost momentum");
        zero = zero && k[a] == 0;
    }
    if (zero) return psi;
    // exp(i p q / hbar) with p = k dp and q = -L/2 + j dq is exp(2 pi i k j / N) (-1)^k,
    // evaluated from reduced integers so the phase is exact to roundoff.
    WaveFunction out{g, CVec(g.size())};
    std::vector<int> idx(g.dim);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        unflatten(i, g.dim, g.points, idx);
        long num = 0;
        long sign = 0;
        for (int a = 0; a < g.dim; ++a) {
            num += static_cast<long>(wrap_mod(k[a] * idx[a], g.points));
            sign += k[a];
        }
        double ang = 2.0 * std::numbers::pi * wrap_mod(num, g.points) / g.points;
        cplx ph = std::polar(1.0, ang);
        if (sign % 2 != 0) ph = -ph;
        out.values[i] = ph * psi.values[i];
    }
    return out;
}

WaveFunction weyl_script(const WaveFunction& psi, const PhaseShift& s) {
    return translate(boost(psi, s.nu), s.alpha);
}

WaveFunction weyl_canonical(const WaveFunction& psi, const PhaseShift& s) {
    WaveFunction out = weyl_script(psi, s);
    double dot = 0.0;
    for (std::size_t i = 0; i < s.alpha.size(); ++i) dot += s.nu[i] * s.alpha[i];
    const cplx ph = std::polar(1.0, psi.grid.mass * dot / (2.0 * psi.grid.hbar));
    for (auto& v : out.values) v *= ph;
    return out;
}

DensityKernel weyl_adjoint(const DensityKernel& rho, const PhaseShift& s) {
    const GridSpec& g = rho.grid;
    const auto n = static_cast<Eigen::Index>(g.size());
    // Columns: W applied to each column; rows: conj(W) applied to each row, i.e. the
    // kernel of W rho W^dagger.
    Eigen::MatrixXcd tmp(n, n);
    WaveFunction col{g, CVec(g.size())};
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) col.values[r] = rho.values(r, c);
        WaveFunction w = weyl_canonical(col, s);
        for (Eigen::Index r = 0; r < n; ++r) tmp(r, c) = w.values[r];
    }
    DensityKernel out{g, Eigen::MatrixXcd(n, n)};
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) col.values[c] = std::conj(tmp(r, c));
        WaveFunction w = weyl_canonical(col, s);
        for (Eigen::Index c = 0; c < n; ++c) out.values(r, c) = std::conj(w.values[c]);
    }
    return out;
}

GeneratorReport generator_check(const WaveFunction& psi, double eps, int axis) {
    const GridSpec& g = psi.grid;
    if (axis < 0 || axis >= g.dim) throw DimensionMismatch("generator_check: bad axis");
    std::vector<double> e(g.dim, 0.0);
    e[axis] = eps;
    const cplx i_over_hbar(0.0, 1.0 / g.hbar);

    GeneratorReport rep;
    WaveFunction shifted = translate(psi, e);
    WaveFunction p_psi = momentum_apply(psi, axis);
    CVec r(g.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = shifted.values[i] - psi.values[i] + eps * i_over_hbar * p_psi.values[i];
    rep.translation_residual = l2_norm(g, r);

    WaveFunction boosted = boost(psi, e);
    auto q = coordinate(g, axis);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = boosted.values[i] - psi.values[i] -
               eps * i_over_hbar * g.mass * q[i] * psi.values[i];
    rep.boost_residual = l2_norm(g, r);
    return rep;
}

cplx canonical_commutator(const WaveFunction& psi, int a, int b) {
    const GridSpec& g = psi.grid;
    auto qa = coordinate(g, a);
    WaveFunction pb = momentum_apply(psi, b);
    WaveFunction qp{g, CVec(g.size())};
    WaveFunction qpsi{g, CVec(g.size())};
    for (std::size_t i = 0; i < qp.values.size(); ++i) {
        qp.values[i] = qa[i] * pb.values[i];
        qpsi.values[i] = qa[i] * psi.values[i];
    }
    WaveFunction pq = momentum_apply(qpsi, b);
    for (std::size_t i = 0; i < qp.values.size(); ++i) qp.values[i] -= pq.values[i];
    return inner(psi, qp) / cplx(0.0, g.hbar);
}

}  // namespace wwmv
