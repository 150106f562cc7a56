#include "wwmv/moyal.hpp"

#include <cmath>
#include <numbers>

#include "wwmv/errors.hpp"
#include "wwmv/fft.hpp"
#include "wwmv/wigner.hpp"

namespace wwmv {

namespace {

constexpr double kPi = std::numbers::pi;

// Refines one axis of a row-major array from n to 2n samples by trigonometric
// interpolation, using a naive DFT. The Nyquist coefficient is split evenly
// between +n/2 and -n/2 so real data stays real.
CVec refine_axis(const CVec& in, const std::vector<int>& shape, int axis) {
    const int n = shape[axis];
    const int m = 2 * n;
    std::size_t outer = 1, inner = 1;
    for (int d = 0; d < axis; ++d) outer *= shape[d];
    for (std::size_t d = axis + 1; d < shape.size(); ++d) inner *= shape[d];

    // analysis[k][x] = exp(-2 pi i k x / n) / n, k centered
    std::vector<cplx> analysis(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k)
        for (int x = 0; x < n; ++x) {
            long r = (static_cast<long>(k - n / 2) * x) % n;
            analysis[k * n + x] = std::polar(1.0 / n, -2.0 * kPi * r / n);
        }
    // synthesis[xr][k] = exp(2 pi i k xr / 2n), with the Nyquist row as cos(pi xr / 2)
    std::vector<cplx> synthesis(static_cast<std::size_t>(m) * n);
    for (int xr = 0; xr < m; ++xr)
        for (int k = 0; k < n; ++k) {
            int kc = k - n / 2;
            if (kc == -n / 2) {
                synthesis[xr * n + k] = std::cos(kPi * xr * 0.5);
            } else {
                long r = (static_cast<long>(kc) * xr) % m;
                synthesis[xr * n + k] = std::polar(1.0, 2.0 * kPi * r / m);
            }
        }

    CVec out(outer * m * inner);
    std::vector<cplx> line(n), coef(n);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < inner; ++i) {
            for (int x = 0; x < n; ++x) line[x] = in[(o * n + x) * inner + i];
            for (int k = 0; k < n; ++k) {
                cplx s = 0.0;
                for (int x = 0; x < n; ++x) s += analysis[k * n + x] * line[x];
                coef[k] = s;
            }
            for (int xr = 0; xr < m; ++xr) {
                cplx s = 0.0;
                for (int k = 0; k < n; ++k) s += synthesis[xr * n + k] * coef[k];
                out[(o * m + xr) * inner + i] = s;
            }
        }
    return out;
}

CVec refine(const PhaseSpaceFunction& a) {
    const int axes = 2 * a.grid.dim;
    std::vector<int> shape(axes, a.grid.points);
    CVec v = a.values;
    for (int ax = 0; ax < axes; ++ax) {
        v = refine_axis(v, shape, ax);
        shape[ax] *= 2;
    }
    return v;
}

void require_pair(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b, const char* where) {
    require_same_grid(a.grid, b.grid, where);
    require_phase_size(a, where);
    require_phase_size(b, where);
}

long dot(const std::vector<int>& x, const std::vector<int>& y) {
    long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<long>(x[i]) * y[i];
    return s;
}

}  // namespace

PhaseSpaceFunction star_bruteforce(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b) {
    require_pair(a, b, "star_bruteforce");
    const GridSpec& g = a.grid;
    const int dim = g.dim;
    const int mr = 2 * g.points;
    std::size_t s = 1;
    for (int d = 0; d < dim; ++d) s *= mr;

    const CVec ar = refine(a);
    const CVec br = refine(b);

    // omega^e for e mod mr^... : angles are reduced modulo mr before use.
    std::vector<cplx> root(mr);
    for (int e = 0; e < mr; ++e) root[e] = std::polar(1.0, 2.0 * kPi * e / mr);
    auto omega = [&](long e) {
        long r = e % mr;
        return root[r < 0 ? r + mr : r];
    };

    std::vector<std::vector<int>> idx(s, std::vector<int>(dim));
    for (std::size_t i = 0; i < s; ++i) unflatten(i, dim, mr, idx[i]);
    // difference table: flat index of (x - y) mod mr per axis
    auto diff = [&](std::size_t x, std::size_t y) {
        std::size_t f = 0;
        for (int d = 0; d < dim; ++d) {
            int v = idx[x][d] - idx[y][d];
            if (v < 0) v += mr;
            f = f * mr + v;
        }
        return f;
    };

    // At[j'][d] = sum_m' A(j', m') omega^(-m'.d),  Bt[j''][d] = sum_m'' B(j'', m'') omega^(m''.d)
    CVec at(s * s, 0.0), bt(s * s, 0.0);
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t d = 0; d < s; ++d) {
            cplx sa = 0.0, sb = 0.0;
            for (std::size_t m = 0; m < s; ++m) {
                cplx w = omega(dot(idx[m], idx[d]));
                sa += ar[j * s + m] * std::conj(w);
                sb += br[j * s + m] * w;
            }
            at[j * s + d] = sa;
            bt[j * s + d] = sb;
        }

    const std::size_t sn = g.size();
    PhaseSpaceFunction out{g, CVec(sn * sn, 0.0)};
    const double pref = 1.0 / (static_cast<double>(s) * static_cast<double>(s));
    std::vector<int> jc(dim), mc(dim), tmp(dim);
    // F[e] = sum over j', j'' with j'' - j' = e of Bt(j'', j'-j) At(j', j''-j)
    CVec f(s);
    for (std::size_t jn = 0; jn < sn; ++jn) {
        unflatten(jn, dim, g.points, jc);
        for (int d = 0; d < dim; ++d) tmp[d] = 2 * jc[d];
        const std::size_t j = flatten(tmp, mr);
        std::fill(f.begin(), f.end(), cplx(0.0));
        for (std::size_t j1 = 0; j1 < s; ++j1)
            for (std::size_t j2 = 0; j2 < s; ++j2)
                f[diff(j2, j1)] += bt[j2 * s + diff(j1, j)] * at[j1 * s + diff(j2, j)];
        for (std::size_t mn = 0; mn < sn; ++mn) {
            unflatten(mn, dim, g.points, mc);
            for (int d = 0; d < dim; ++d) tmp[d] = 2 * mc[d];
            cplx acc = 0.0;
            for (std::size_t e = 0; e < s; ++e) acc += omega(dot(tmp, idx[e])) * f[e];
            out.values[jn * sn + mn] = acc * pref;
        }
    }
    return out;
}

PhaseSpaceFunction star(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b) {
    require_pair(a, b, "star");
    DensityKernel ka = phase_to_kernel(a);
    DensityKernel kb = phase_to_kernel(b);
    DensityKernel prod{a.grid, ka.values * kb.values * a.grid.position_weight()};
    return kernel_to_phase(prod);
}

PhaseSpaceFunction moyal_bracket(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b) {
    require_pair(a, b, "moyal_bracket");
    DensityKernel ka = phase_to_kernel(a);
    DensityKernel kb = phase_to_kernel(b);
    const double w = a.grid.position_weight();
    DensityKernel comm{a.grid, (ka.values * kb.values - kb.values * ka.values) * w};
    PhaseSpaceFunction out = kernel_to_phase(comm);
    const cplx inv = 1.0 / cplx(0.0, a.grid.hbar);
    for (auto& v : out.values) v *= inv;
    return out;
}

PhaseSpaceFunction phase_derivative(const PhaseSpaceFunction& a, int axis) {
    const GridSpec& g = a.grid;
    require_phase_size(a, "phase_derivative");
    if (axis < 0 || axis >= 2 * g.dim) throw DimensionMismatch("phase_derivative: bad axis");
    const int n = g.points;
    const double period = axis < g.dim ? g.length : n * g.dp();
    std::vector<int> shape(2 * g.dim, n);
    CVec v = a.values;
    fft::transform(v.data(), shape, {axis}, -1);
    std::size_t inner = 1;
    for (int d = axis + 1; d < 2 * g.dim; ++d) inner *= n;
    const double scale = 2.0 * kPi / period / static_cast<double>(n);
    for (std::size_t i = 0; i < v.size(); ++i) {
        int k = static_cast<int>((i / inner) % n);
        if (k > n / 2) k -= n;
        if (k == n / 2) {
            v[i] = 0.0;
        } else {
            v[i] *= cplx(0.0, scale * k);
        }
    }
    fft::transform(v.data(), shape, {axis}, +1);
    return PhaseSpaceFunction{g, std::move(v)};
}

PhaseSpaceFunction poisson_bracket(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b) {
    require_pair(a, b, "poisson_bracket");
    const GridSpec& g = a.grid;
    PhaseSpaceFunction out{g, CVec(a.values.size(), 0.0)};
    for (int d = 0; d < g.dim; ++d) {
        auto aq = phase_derivative(a, d);
        auto ap = phase_derivative(a, g.dim + d);
        auto bq = phase_derivative(b, d);
        auto bp = phase_derivative(b, g.dim + d);
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] += aq.values[i] * bp.values[i] - ap.values[i] * bq.values[i];
    }
    return out;
}

double l2_norm(const PhaseSpaceFunction& a) {
    double s = 0.0;
    for (const auto& v : a.values) s += std::norm(v);
    return std::sqrt(s * a.grid.position_weight() * std::pow(a.grid.dp(), a.grid.dim));
}

double fit_order(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DimensionMismatch("fit_order: need at least two matching samples");
    double mx = 0.0, my = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]) / n;
        my += std::log(y[i]) / n;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

SemiclassicalReport semiclassical_check(const PhaseFn& a, const PhaseFn& b,
                                        const std::vector<double>& hbars,
                                        const std::function<GridSpec(double)>& grid_for) {
    SemiclassicalReport rep;
    std::vector<double> r0, r1, rb;
    for (double h : hbars) {
        GridSpec g = grid_for(h);
        g.validate();
        auto fa = sample_phase(g, a);
        auto fb = sample_phase(g, b);
        auto ab = star(fa, fb);
        auto pb = poisson_bracket(fa, fb);
        auto qb = moyal_bracket(fa, fb);
        PhaseSpaceFunction d0{g, CVec(ab.values.size())}, d1 = d0, d2 = d0;
        const cplx half(0.0, 0.5 * h);
        for (std::size_t i = 0; i < ab.values.size(); ++i) {
            cplx pw = fa.values[i] * fb.values[i];
            d0.values[i] = ab.values[i] - pw;
            d1.values[i] = d0.values[i] - half * pb.values[i];
            d2.values[i] = qb.values[i] - pb.values[i];
        }
        SemiclassicalRow row{h, l2_norm(d0), l2_norm(d1), l2_norm(d2)};
        rep.rows.push_back(row);
        r0.push_back(row.r0);
        r1.push_back(row.r1);
        rb.push_back(row.r_bracket);
    }
    if (hbars.size() >= 2) {
        rep.order_r0 = fit_order(hbars, r0);
        rep.order_r1 = fit_order(hbars, r1);
        rep.order_bracket = fit_order(hbars, rb);
    }
    return rep;
}

PhaseSpaceFunction von_neumann_evolve(const PhaseSpaceFunction& rho, const PhaseSpaceFunction& h,
                                      double dt, int steps) {
    require_pair(rho, h, "von_neumann_evolve");
    double hmax = 0.0;
    for (const auto& v : h.values) hmax = std::max(hmax, std::abs(v));
    if (max_imag(h) > 1e-12 * std::max(1.0, hmax))
        throw NonRealHamiltonian("von_neumann_evolve: Hamiltonian has an imaginary part");
    if (steps < 0) throw ValidationError("von_neumann_evolve: negative step count");
    const GridSpec& g = rho.grid;
    Eigen::MatrixXcd hm = operator_matrix(phase_to_kernel(h));
    hm = 0.5 * (hm + hm.adjoint()).eval();
    Eigen::MatrixXcd r = operator_matrix(phase_to_kernel(rho));
    const cplx c = 1.0 / cplx(0.0, g.hbar);
    auto rhs = [&](const Eigen::MatrixXcd& x) -> Eigen::MatrixXcd {
        return c * (hm * x - x * hm);
    };
    for (int s = 0; s < steps; ++s) {
        Eigen::MatrixXcd k1 = rhs(r);
        Eigen::MatrixXcd k2 = rhs(r + 0.5 * dt * k1);
        Eigen::MatrixXcd k3 = rhs(r + 0.5 * dt * k2);
        Eigen::MatrixXcd k4 = rhs(r + dt * k3);
        r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return kernel_to_phase(kernel_from_matrix(g, r));
}

}  // namespace wwmv
