#include "wwmv/grid.hpp"

#include <cmath>
#include <numbers>

#include "wwmv/errors.hpp"
#include "wwmv/fft.hpp"

namespace wwmv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<int> shape_of(const GridSpec& g) { return std::vector<int>(g.dim, g.points); }

// Sum over axes of the signed frequency of FFT slot s, and the monotone slot of each.
int signed_freq(int slot, int n) { return slot < n / 2 ? slot : slot - n; }

void require_size(const GridSpec& g, std::size_t n, const char* where) {
    if (n != g.size())
        throw DimensionMismatch(std::string(where) + ": array length does not match grid");
}

}  // namespace

void GridSpec::validate() const {
    if (dim < 1) throw ValidationError("grid dimension must be positive");
    if (points < 2 || points % 2 != 0)
        throw ValidationError("points per axis must be a positive even integer");
    if (!(length > 0) || !std::isfinite(length)) throw ValidationError("box length must be positive");
    if (!(hbar > 0) || !std::isfinite(hbar)) throw ValidationError("hbar must be positive");
    if (!(mass > 0) || !std::isfinite(mass)) throw ValidationError("mass must be positive");
}

double GridSpec::dp() const { return kTwoPi * hbar / length; }

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int i = 0; i < dim; ++i) s *= static_cast<std::size_t>(points);
    return s;
}

double GridSpec::position_weight() const { return std::pow(dq(), dim); }
double GridSpec::momentum_weight() const { return std::pow(1.0 / length, dim); }
double GridSpec::phase_weight() const { return std::pow(1.0 / points, dim); }

bool GridSpec::operator==(const GridSpec& o) const {
    return dim == o.dim && points == o.points && length == o.length && hbar == o.hbar &&
           mass == o.mass;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
    if (!(a == b)) throw GridMismatch(std::string(where) + ": operands live on different grids");
}

std::size_t flatten(std::span<const int> idx, int points) {
    std::size_t f = 0;
    for (int v : idx) f = f * static_cast<std::size_t>(points) + static_cast<std::size_t>(v);
    return f;
}

void unflatten(std::size_t flat, int dim, int points, std::span<int> idx) {
    for (int a = dim - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % static_cast<std::size_t>(points));
        flat /= static_cast<std::size_t>(points);
    }
}

WaveFunction sample_wavefunction(const GridSpec& grid, const PositionFn& f) {
    grid.validate();
    WaveFunction psi{grid, CVec(grid.size())};
    std::vector<int> idx(grid.dim);
    std::vector<double> q(grid.dim);
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
        unflatten(i, grid.dim, grid.points, idx);
        for (int a = 0; a < grid.dim; ++a) q[a] = grid.q(idx[a]);
        psi.values[i] = f(q);
    }
    return psi;
}

std::vector<double> coordinate(const GridSpec& grid, int axis) {
    std::vector<double> out(grid.size());
    std::vector<int> idx(grid.dim);
    for (std::size_t i = 0; i < out.size(); ++i) {
        unflatten(i, grid.dim, grid.points, idx);
        out[i] = grid.q(idx[axis]);
    }
    return out;
}

MomentumProfile to_momentum(const WaveFunction& psi) {
    const GridSpec& g = psi.grid;
    require_size(g, psi.values.size(), "to_momentum");
    CVec work = psi.values;
    fft::transform_all(work.data(), shape_of(g), -1);
    MomentumProfile out{g, CVec(g.size())};
    const int n = g.points;
    const double w = g.position_weight();
    std::vector<int> slot(g.dim), mono(g.dim);
    for (std::size_t i = 0; i < work.size(); ++i) {
        unflatten(i, g.dim, n, slot);
        int parity = 0;
        for (int a = 0; a < g.dim; ++a) {
            int k = signed_freq(slot[a], n);
            mono[a] = k + n / 2;
            parity += k;
        }
        double sgn = (parity % 2 == 0) ? 1.0 : -1.0;
        out.values[flatten(mono, n)] = sgn * w * work[i];
    }
    return out;
}

WaveFunction to_position(const MomentumProfile& phi) {
    const GridSpec& g = phi.grid;
    require_size(g, phi.values.size(), "to_position");
    const int n = g.points;
    CVec work(g.size());
    std::vector<int> slot(g.dim), mono(g.dim);
    for (std::size_t i = 0; i < work.size(); ++i) {
        unflatten(i, g.dim, n, slot);
        int parity = 0;
        for (int a = 0; a < g.dim; ++a) {
            int k = signed_freq(slot[a], n);
            mono[a] = k + n / 2;
            parity += k;
        }
        double sgn = (parity % 2 == 0) ? 1.0 : -1.0;
        work[i] = sgn * phi.values[flatten(mono, n)];
    }
    fft::transform_all(work.data(), shape_of(g), +1);
    const double w = g.momentum_weight();
    for (auto& v : work) v *= w;
    return WaveFunction{g, std::move(work)};
}

cplx inner(const WaveFunction& a, const WaveFunction& b) {
    require_same_grid(a.grid, b.grid, "inner");
    require_size(a.grid, a.values.size(), "inner");
    require_size(b.grid, b.values.size(), "inner");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += std::conj(a.values[i]) * b.values[i];
    return s * a.grid.position_weight();
}

double norm_squared(const WaveFunction& psi) { return inner(psi, psi).real(); }

CVec spectral_derivative(const GridSpec& g, const CVec& f, int axis) {
    require_size(g, f.size(), "spectral_derivative");
    if (axis < 0 || axis >= g.dim) throw DimensionMismatch("spectral_derivative: bad axis");
    CVec work = f;
    auto shape = shape_of(g);
    fft::transform(work.data(), shape, {axis}, -1);
    const int n = g.points;
    std::vector<int> slot(g.dim);
    for (std::size_t i = 0; i < work.size(); ++i) {
        unflatten(i, g.dim, n, slot);
        int k = signed_freq(slot[axis], n);
        if (k == -n / 2) {
            work[i] = 0.0;
            continue;
        }
        work[i] *= cplx(0.0, kTwoPi * k / g.length) / static_cast<double>(n);
    }
    fft::transform(work.data(), shape, {axis}, +1);
    return work;
}

WaveFunction momentum_apply(const WaveFunction& psi, int axis) {
    CVec d = spectral_derivative(psi.grid, psi.values, axis);
    const cplx factor(0.0, -psi.grid.hbar);
    for (auto& v : d) v *= factor;
    return WaveFunction{psi.grid, std::move(d)};
}

namespace {

// exp(-i t |p|^2 / (2 m hbar)) laid out in FFT slot order.
CVec kinetic_phase(const GridSpec& g, double t) {
    CVec ph(g.size());
    const int n = g.points;
    std::vector<int> slot(g.dim);
    for (std::size_t i = 0; i < ph.size(); ++i) {
        unflatten(i, g.dim, n, slot);
        double p2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            double p = signed_freq(slot[a], n) * g.dp();
            p2 += p * p;
        }
        ph[i] = std::polar(1.0, -t * p2 / (2.0 * g.mass * g.hbar));
    }
    return ph;
}

}  // namespace

WaveFunction free_propagate(const WaveFunction& psi, double t) {
    const GridSpec& g = psi.grid;
    require_size(g, psi.values.size(), "free_propagate");
    if (t == 0.0) return psi;
    CVec work = psi.values;
    auto shape = shape_of(g);
    fft::transform_all(work.data(), shape, -1);
    CVec ph = kinetic_phase(g, t);
    const double inv = 1.0 / static_cast<double>(g.size());
    for (std::size_t i = 0; i < work.size(); ++i) work[i] *= ph[i] * inv;
    fft::transform_all(work.data(), shape, +1);
    return WaveFunction{g, std::move(work)};
}

WaveFunction split_step_evolve(const WaveFunction& psi, const CVec& potential, double dt,
                               int steps) {
    const GridSpec& g = psi.grid;
    require_size(g, psi.values.size(), "split_step_evolve");
    require_size(g, potential.size(), "split_step_evolve");
    if (!(dt > 0)) throw ValidationError("split_step_evolve: dt must be positive");
    if (steps < 0) throw ValidationError("split_step_evolve: negative step count");
    for (const auto& v : potential)
        if (v.imag() != 0.0) throw NonRealPotential("potential has a nonzero imaginary part");

    CVec half(g.size());
    for (std::size_t i = 0; i < half.size(); ++i)
        half[i] = std::polar(1.0, -0.5 * potential[i].real() * dt / g.hbar);
    CVec ph = kinetic_phase(g, dt);
    const double inv = 1.0 / static_cast<double>(g.size());
    auto shape = shape_of(g);

    CVec work = psi.values;
    for (int s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < work.size(); ++i) work[i] *= half[i];
        fft::transform_all(work.data(), shape, -1);
        for (std::size_t i = 0; i < work.size(); ++i) work[i] *= ph[i] * inv;
        fft::transform_all(work.data(), shape, +1);
        for (std::size_t i = 0; i < work.size(); ++i) work[i] *= half[i];
    }
    return WaveFunction{g, std::move(work)};
}

}  // namespace wwmv
