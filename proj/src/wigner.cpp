#include "wwmv/wigner.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "wwmv/errors.hpp"
#include "wwmv/fft.hpp"

namespace wwmv {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<int> axes_range(int from, int count) {
    std::vector<int> v(count);
    for (int i = 0; i < count; ++i) v[i] = from + i;
    return v;
}

// Swap the two n-axis blocks of an (S x S) array.
CVec transpose_blocks(const CVec& in, std::size_t s) {
    CVec out(in.size());
    for (std::size_t r = 0; r < s; ++r)
        for (std::size_t c = 0; c < s; ++c) out[c * s + r] = in[r * s + c];
    return out;
}

// Multiplies T[a][k] by exp(sign i pi k.a / N), a and k both centered.
void half_shift_phase(CVec& t, const GridSpec& g, int sign) {
    const std::size_t s = g.size();
    const int n = g.points;
    std::vector<int> ai(g.dim), ki(g.dim);
    for (std::size_t a = 0; a < s; ++a) {
        unflatten(a, g.dim, n, ai);
        for (std::size_t k = 0; k < s; ++k) {
            unflatten(k, g.dim, n, ki);
            long dot = 0;
            for (int d = 0; d < g.dim; ++d)
                dot += static_cast<long>(ai[d] - n / 2) * (ki[d] - n / 2);
            if (dot == 0) continue;
            // reduce modulo 2N before converting to an angle
            long r = dot % (2L * n);
            t[a * s + k] *= std::polar(1.0, sign * kPi * static_cast<double>(r) / n);
        }
    }
}

// Flat index of (y + a) mod N per axis, with a centered.
std::size_t shifted_index(const std::vector<int>& y, const std::vector<int>& ai, int n,
                          std::vector<int>& tmp) {
    for (std::size_t d = 0; d < y.size(); ++d) {
        int v = (y[d] + ai[d] - n / 2) % n;
        tmp[d] = v < 0 ? v + n : v;
    }
    return flatten(tmp, n);
}

}  // namespace

PhaseSpaceFunction kernel_to_phase(const DensityKernel& k) {
    const GridSpec& g = k.grid;
    const std::size_t s = g.size();
    if (static_cast<std::size_t>(k.values.rows()) != s ||
        static_cast<std::size_t>(k.values.cols()) != s)
        throw DimensionMismatch("kernel_to_phase: kernel shape does not match grid");
    const int n = g.points;
    const double w = g.position_weight();

    CVec t(s * s);
    std::vector<int> ai(g.dim), yi(g.dim), tmp(g.dim);
    for (std::size_t a = 0; a < s; ++a) {
        unflatten(a, g.dim, n, ai);
        for (std::size_t y = 0; y < s; ++y) {
            unflatten(y, g.dim, n, yi);
            std::size_t row = shifted_index(yi, ai, n, tmp);
            t[a * s + y] = k.values(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(y)) * w;
        }
    }
    std::vector<int> shape(2 * g.dim, n);
    auto a_axes = axes_range(0, g.dim);
    auto y_axes = axes_range(g.dim, g.dim);
    fft::centered_transform(t.data(), shape, y_axes, -1, false, true);
    half_shift_phase(t, g, -1);
    fft::centered_transform(t.data(), shape, y_axes, +1, true, false);
    fft::centered_transform(t.data(), shape, a_axes, -1, true, true);
    const double inv = 1.0 / static_cast<double>(s);
    for (auto& v : t) v *= inv;
    return PhaseSpaceFunction{g, transpose_blocks(t, s)};
}

DensityKernel phase_to_kernel(const PhaseSpaceFunction& a) {
    const GridSpec& g = a.grid;
    require_phase_size(a, "phase_to_kernel");
    const std::size_t s = g.size();
    const int n = g.points;

    CVec t = transpose_blocks(a.values, s);
    std::vector<int> shape(2 * g.dim, n);
    auto m_axes = axes_range(0, g.dim);
    auto j_axes = axes_range(g.dim, g.dim);
    fft::centered_transform(t.data(), shape, m_axes, +1, true, true);
    fft::centered_transform(t.data(), shape, j_axes, -1, false, true);
    half_shift_phase(t, g, +1);
    fft::centered_transform(t.data(), shape, j_axes, +1, true, false);
    const double inv = 1.0 / (static_cast<double>(s) * static_cast<double>(s) * g.position_weight());

    const auto ns = static_cast<Eigen::Index>(s);
    DensityKernel k{g, Eigen::MatrixXcd::Zero(ns, ns)};
    std::vector<int> ai(g.dim), yi(g.dim), tmp(g.dim);
    for (std::size_t ia = 0; ia < s; ++ia) {
        unflatten(ia, g.dim, n, ai);
        for (std::size_t y = 0; y < s; ++y) {
            unflatten(y, g.dim, n, yi);
            std::size_t row = shifted_index(yi, ai, n, tmp);
            k.values(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(y)) = t[ia * s + y] * inv;
        }
    }
    return k;
}

PhaseSpaceFunction wigner_of_pure(const WaveFunction& psi) {
    return kernel_to_phase(outer(psi, psi));
}

WaveFunction apply_operator(const PhaseSpaceFunction& a, const WaveFunction& psi) {
    require_same_grid(a.grid, psi.grid, "apply_operator");
    return apply_kernel(phase_to_kernel(a), psi);
}

cplx integrate(const PhaseSpaceFunction& a) {
    require_phase_size(a, "integrate");
    cplx s = 0.0;
    for (const auto& v : a.values) s += v;
    return s * a.grid.phase_weight();
}

cplx trace(const PhaseSpaceFunction& a) { return integrate(a); }

cplx hs_inner(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b) {
    require_same_grid(a.grid, b.grid, "hs_inner");
    require_phase_size(a, "hs_inner");
    require_phase_size(b, "hs_inner");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += std::conj(a.values[i]) * b.values[i];
    return s * a.grid.phase_weight();
}

double transition_probability(const PhaseSpaceFunction& rho1, const PhaseSpaceFunction& rho2) {
    require_same_grid(rho1.grid, rho2.grid, "transition_probability");
    cplx s = 0.0;
    for (std::size_t i = 0; i < rho1.values.size(); ++i) s += rho1.values[i] * rho2.values[i];
    return (s * rho1.grid.phase_weight()).real();
}

double expectation(const PhaseSpaceFunction& rho, const PhaseSpaceFunction& a) {
    require_same_grid(rho.grid, a.grid, "expectation");
    cplx s = 0.0;
    for (std::size_t i = 0; i < rho.values.size(); ++i) s += rho.values[i] * a.values[i];
    return (s * rho.grid.phase_weight()).real();
}

std::vector<double> position_marginal(const PhaseSpaceFunction& rho) {
    require_phase_size(rho, "position_marginal");
    const std::size_t s = rho.grid.size();
    const double w = rho.grid.momentum_weight();
    std::vector<double> out(s, 0.0);
    for (std::size_t j = 0; j < s; ++j) {
        double acc = 0.0;
        for (std::size_t m = 0; m < s; ++m) acc += rho.at(j, m).real();
        out[j] = acc * w;
    }
    return out;
}

std::vector<double> momentum_marginal(const PhaseSpaceFunction& rho) {
    require_phase_size(rho, "momentum_marginal");
    const std::size_t s = rho.grid.size();
    const double w = rho.grid.position_weight();
    std::vector<double> out(s, 0.0);
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t m = 0; m < s; ++m) out[m] += rho.at(j, m).real() * w;
    return out;
}

namespace {

struct Metric {
    Eigen::MatrixXd a;
    Eigen::MatrixXd inv;
    double det = 1.0;
};

Metric make_metric(const std::vector<double>& flat, int dim) {
    Metric m;
    if (flat.empty()) {
        m.a = Eigen::MatrixXd::Identity(dim, dim);
    } else {
        if (flat.size() != static_cast<std::size_t>(dim * dim))
            throw DimensionMismatch("metric must be an n x n matrix");
        m.a = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            flat.data(), dim, dim);
        if ((m.a - m.a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw ValidationError("metric must be symmetric");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(m.a);
    if (llt.info() != Eigen::Success) throw ValidationError("metric must be positive definite");
    m.inv = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
    m.det = m.a.determinant();
    return m;
}

double quad(const Eigen::MatrixXd& a, const std::vector<double>& v) {
    Eigen::Map<const Eigen::VectorXd> x(v.data(), static_cast<Eigen::Index>(v.size()));
    return x.dot(a * x);
}

void require_center(const CoherentParams& c, int dim) {
    if (c.xi.size() != static_cast<std::size_t>(dim) || c.pi.size() != static_cast<std::size_t>(dim))
        throw DimensionMismatch("coherent parameters do not match grid dimension");
}

}  // namespace

PhaseSpaceFunction coherent_wigner(const CoherentParams& c, const GridSpec& grid) {
    require_center(c, grid.dim);
    Metric m = make_metric(c.metric, grid.dim);
    const double pref = std::pow(2.0, grid.dim);
    std::vector<double> dq(grid.dim), dp(grid.dim);
    return sample_phase(grid, [&](std::span<const double> q, std::span<const double> p) {
        for (int a = 0; a < grid.dim; ++a) {
            dq[a] = q[a] - c.xi[a];
            dp[a] = p[a] - c.pi[a];
        }
        return cplx(pref * std::exp(-(quad(m.a, dq) + quad(m.inv, dp)) / grid.hbar), 0.0);
    });
}

WaveFunction coherent_state(const CoherentParams& c, const GridSpec& grid) {
    require_center(c, grid.dim);
    Metric m = make_metric(c.metric, grid.dim);
    const double h = grid.hbar;
    const double norm = std::pow(m.det, 0.25) * std::pow(kPi * h, -0.25 * grid.dim);
    std::vector<double> dq(grid.dim);
    return sample_wavefunction(grid, [&](std::span<const double> q) {
        double phase = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            dq[a] = q[a] - c.xi[a];
            phase += c.pi[a] * dq[a];
        }
        return norm * std::exp(-0.5 * quad(m.a, dq) / h) * std::polar(1.0, phase / h);
    });
}

PhaseSpaceFunction husimi(const PhaseSpaceFunction& rho, const std::vector<double>& metric) {
    require_phase_size(rho, "husimi");
    const GridSpec& g = rho.grid;
    Metric m = make_metric(metric, g.dim);
    const std::size_t s = g.size();
    const int n = g.points;
    const double pref = std::pow(2.0, g.dim);

    // E_z(zeta) = g(zeta - z) with g even, sampled at periodic offsets.
    CVec kern(s * s);
    std::vector<int> ji(g.dim), mi(g.dim);
    std::vector<double> dq(g.dim), dp(g.dim);
    auto centered = [n](int i) { return i < n / 2 ? i : i - n; };
    for (std::size_t j = 0; j < s; ++j) {
        unflatten(j, g.dim, n, ji);
        for (int a = 0; a < g.dim; ++a) dq[a] = centered(ji[a]) * g.dq();
        for (std::size_t mm = 0; mm < s; ++mm) {
            unflatten(mm, g.dim, n, mi);
            for (int a = 0; a < g.dim; ++a) dp[a] = centered(mi[a]) * g.dp();
            kern[j * s + mm] = pref * std::exp(-(quad(m.a, dq) + quad(m.inv, dp)) / g.hbar);
        }
    }
    std::vector<int> shape(2 * g.dim, n);
    CVec work = rho.values;
    fft::transform_all(work.data(), shape, -1);
    fft::transform_all(kern.data(), shape, -1);
    for (std::size_t i = 0; i < work.size(); ++i) work[i] *= kern[i];
    fft::transform_all(work.data(), shape, +1);
    const double scale = g.phase_weight() / static_cast<double>(s * s);
    for (auto& v : work) v *= scale;
    return PhaseSpaceFunction{g, std::move(work)};
}

double entropy(const DensityKernel& k) {
    Eigen::MatrixXcd m = operator_matrix(k);
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw NotDensityMatrix("kernel is not Hermitian");
    if (std::abs(m.trace() - cplx(1.0, 0.0)) > 1e-8)
        throw NotDensityMatrix("kernel trace differs from one");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    double h = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double l = es.eigenvalues()(i);
        if (l < -1e-8) throw NotDensityMatrix("kernel has a negative eigenvalue");
        if (l > 1e-14) h -= l * std::log(l);
    }
    return h;
}

PhaseSpaceFunction basis_distribution_q(std::span<const double> q1, std::span<const double> q2,
                                        const GridSpec& grid) {
    if (q1.size() != static_cast<std::size_t>(grid.dim) ||
        q2.size() != static_cast<std::size_t>(grid.dim))
        throw DimensionMismatch("basis_distribution_q: point dimension");
    const int n = grid.points;
    auto node = [&](double q) {
        double r = (q + 0.5 * grid.length) / grid.dq();
        double k = std::round(r);
        if (std::abs(r - k) > 1e-9 || k < 0 || k >= n)
            throw IncommensurateShift("basis_distribution_q: point is not a grid node");
        return static_cast<long>(k);
    };
    std::vector<int> mid(grid.dim);
    std::vector<long> diff(grid.dim);
    for (int a = 0; a < grid.dim; ++a) {
        long i1 = node(q1[a]);
        long i2 = node(q2[a]);
        if ((i1 + i2) % 2 != 0)
            throw IncommensurateShift("basis_distribution_q: midpoint is not a grid node");
        mid[a] = static_cast<int>((i1 + i2) / 2);
        diff[a] = i2 - i1;
    }
    const std::size_t s = grid.size();
    PhaseSpaceFunction out{grid, CVec(s * s, 0.0)};
    const std::size_t j = flatten(mid, n);
    const double w = 1.0 / grid.position_weight();
    std::vector<int> mi(grid.dim);
    for (std::size_t m = 0; m < s; ++m) {
        unflatten(m, grid.dim, n, mi);
        long num = 0;
        for (int a = 0; a < grid.dim; ++a) num += static_cast<long>(mi[a] - n / 2) * diff[a];
        long r = num % n;
        out.at(j, m) = w * std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / n);
    }
    return out;
}

double max_imag(const PhaseSpaceFunction& a) {
    double m = 0.0;
    for (const auto& v : a.values) m = std::max(m, std::abs(v.imag()));
    return m;
}

}  // namespace wwmv
