#include "wwmv/semiclassics.hpp"

#include <cmath>
#include <numbers>

#include "wwmv/errors.hpp"
#include "wwmv/moyal.hpp"

namespace wwmv {

namespace {

constexpr double kPi = std::numbers::pi;

void check_wkb(const WkbData& w) {
    w.grid.validate();
    const std::size_t s = w.grid.size();
    if (w.density.size() != s || w.action.size() != s)
        throw DimensionMismatch("WkbData: density and action must match the grid");
    if (!w.action_gradient.empty()) {
        if (w.action_gradient.size() != static_cast<std::size_t>(w.grid.dim))
            throw DimensionMismatch("WkbData: one gradient array per axis");
        for (const auto& g : w.action_gradient)
            if (g.size() != s) throw DimensionMismatch("WkbData: gradient size");
    }
    double mass = 0.0;
    for (double d : w.density) {
        if (!(d >= 0.0)) throw ValidationError("WkbData: density must be nonnegative");
        mass += d;
    }
    mass *= w.grid.position_weight();
    if (std::abs(mass - 1.0) > 1e-8) throw ValidationError("WkbData: density is not normalized");
}

std::vector<std::vector<double>> gradient_of(const WkbData& w) {
    if (!w.action_gradient.empty()) return w.action_gradient;
    std::vector<std::vector<double>> out(w.grid.dim);
    CVec s(w.action.begin(), w.action.end());
    for (int a = 0; a < w.grid.dim; ++a) {
        CVec d = spectral_derivative(w.grid, s, a);
        out[a].resize(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) out[a][i] = d[i].real();
    }
    return out;
}

std::vector<double> node(const GridSpec& g, std::size_t flat) {
    std::vector<int> idx(g.dim);
    unflatten(flat, g.dim, g.points, idx);
    std::vector<double> q(g.dim);
    for (int a = 0; a < g.dim; ++a) q[a] = g.q(idx[a]);
    return q;
}

CVec real_derivative(const GridSpec& g, const std::vector<double>& f, int axis) {
    return spectral_derivative(g, CVec(f.begin(), f.end()), axis);
}

// integral over [0, 1] of t^k exp(i a t) for k = 0, 1
void segment_moments(double a, cplx& i0, cplx& i1) {
    const cplx ia(0.0, a);
    if (std::abs(a) < 0.5) {
        i0 = 0.0;
        i1 = 0.0;
        cplx term = 1.0;
        double fact = 1.0;
        for (int k = 0; k < 14; ++k) {
            if (k > 0) {
                term *= ia;
                fact *= k;
            }
            i0 += term / (fact * (k + 1));
            i1 += term / (fact * (k + 2));
        }
        return;
    }
    const cplx e = std::exp(ia);
    i0 = (e - 1.0) / ia;
    i1 = e / ia + (e - 1.0) / (a * a);
}

}  // namespace

WaveFunction wkb_state(const WkbData& w) {
    check_wkb(w);
    WaveFunction psi{w.grid, CVec(w.grid.size())};
    for (std::size_t i = 0; i < psi.values.size(); ++i)
        psi.values[i] = std::polar(std::sqrt(w.density[i]), w.action[i] / w.grid.hbar);
    return psi;
}

ConcentrationReport lagrangian_concentration(const WkbFamily& family, const std::vector<double>& hbars) {
    ConcentrationReport rep;
    std::vector<double> moments;
    for (double h : hbars) {
        WkbData w = family(h);
        if (std::abs(w.grid.hbar - h) > 1e-15 * h)
            throw ValidationError("lagrangian_concentration: family grid has the wrong hbar");
        const GridSpec& g = w.grid;
        const auto rho = wigner_of_pure(wkb_state(w));
        const auto grad = gradient_of(w);
        const std::size_t s = g.size();
        std::vector<int> idx(g.dim);
        double m = 0.0;
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t k = 0; k < s; ++k) {
                unflatten(k, g.dim, g.points, idx);
                double d2 = 0.0;
                for (int a = 0; a < g.dim; ++a) {
                    const double d = g.p(idx[a]) - grad[a][j];
                    d2 += d * d;
                }
                m += rho.at(j, k).real() * d2;
            }
        m *= g.phase_weight();
        const auto marg = position_marginal(rho);
        double err = 0.0;
        for (std::size_t j = 0; j < s; ++j) err = std::max(err, std::abs(marg[j] - w.density[j]));
        rep.rows.push_back({h, m, err});
        rep.max_marginal_error = std::max(rep.max_marginal_error, err);
        moments.push_back(m);
    }
    if (hbars.size() >= 2) rep.order = fit_order(hbars, moments);
    return rep;
}

ActionReport first_order_action(const PhaseFn& a, const WkbFamily& family,
                                const std::vector<double>& hbars) {
    ActionReport rep;
    std::vector<double> res;
    for (double h : hbars) {
        WkbData w = family(h);
        const GridSpec& g = w.grid;
        const WaveFunction psi = wkb_state(w);
        const WaveFunction apsi = apply_operator(sample_phase(g, a), psi);
        const auto grad = gradient_of(w);
        const std::size_t s = g.size();
        std::vector<double> f(s);
        for (std::size_t i = 0; i < s; ++i) f[i] = std::sqrt(w.density[i]);

        std::vector<double> a0(s);
        std::vector<std::vector<double>> v(g.dim, std::vector<double>(s));
        std::vector<double> p(g.dim);
        for (std::size_t i = 0; i < s; ++i) {
            const auto q = node(g, i);
            for (int d = 0; d < g.dim; ++d) p[d] = grad[d][i];
            a0[i] = a(q, p).real();
            for (int d = 0; d < g.dim; ++d) {
                // fourth-order central difference in p_d
                const double step = 1e-3 * std::max(1.0, std::abs(p[d]));
                auto at = [&](double off) {
                    auto pp = p;
                    pp[d] += off;
                    return a(q, pp).real();
                };
                v[d][i] = (8.0 * (at(step) - at(-step)) - (at(2 * step) - at(-2 * step))) / (12.0 * step);
            }
        }
        CVec lie(s, 0.0);
        for (int d = 0; d < g.dim; ++d) {
            const CVec df = real_derivative(g, f, d);
            std::vector<double> vf(s);
            for (std::size_t i = 0; i < s; ++i) vf[i] = v[d][i] * f[i];
            const CVec dvf = real_derivative(g, vf, d);
            for (std::size_t i = 0; i < s; ++i) lie[i] += 0.5 * (v[d][i] * df[i].real() + dvf[i].real());
        }
        double r2 = 0.0;
        const cplx minus_ih(0.0, -h);
        for (std::size_t i = 0; i < s; ++i) {
            const cplx phase = std::polar(1.0, w.action[i] / h);
            const cplx r = apsi.values[i] - a0[i] * psi.values[i] - minus_ih * lie[i] * phase;
            r2 += std::norm(r);
        }
        const double r = std::sqrt(r2 * g.position_weight());
        rep.rows.push_back({h, r});
        res.push_back(r);
    }
    if (hbars.size() >= 2) rep.order = fit_order(hbars, res);
    return rep;
}

std::vector<double> quantum_current(const WaveFunction& psi, int axis) {
    const GridSpec& g = psi.grid;
    if (axis < 0 || axis >= g.dim) throw DimensionMismatch("quantum_current: bad axis");
    const CVec d = spectral_derivative(g, psi.values, axis);
    std::vector<double> j(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        j[i] = g.hbar / g.mass * (std::conj(psi.values[i]) * d[i]).imag();
    return j;
}

double continuity_residual(const WaveFunction& psi, const CVec& potential, double dt) {
    const GridSpec& g = psi.grid;
    if (potential.size() != g.size()) throw DimensionMismatch("continuity_residual: potential size");
    for (const auto& v : potential)
        if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
            throw NonRealPotential("continuity_residual: potential must be real");
    if (!(dt > 0.0)) throw ValidationError("continuity_residual: dt must be positive");
    const WaveFunction fwd = split_step_evolve(psi, potential, dt, 1);
    WaveFunction conj_psi = psi;
    for (auto& x : conj_psi.values) x = std::conj(x);
    const WaveFunction bwd = split_step_evolve(conj_psi, potential, dt, 1);
    const std::size_t s = g.size();
    std::vector<double> resid(s);
    for (std::size_t i = 0; i < s; ++i)
        resid[i] = (std::norm(fwd.values[i]) - std::norm(bwd.values[i])) / (2.0 * dt);
    for (int a = 0; a < g.dim; ++a) {
        const CVec dj = real_derivative(g, quantum_current(psi, a), a);
        for (std::size_t i = 0; i < s; ++i) resid[i] += dj[i].real();
    }
    double m = 0.0;
    for (double r : resid) m = std::max(m, std::abs(r));
    return m;
}

CoherentLimitReport coherent_limit(const CoherentParams& c, const std::vector<double>& hbars,
                                   const std::function<GridSpec(double)>& grid_for) {
    CoherentLimitReport rep;
    std::vector<double> vq, vp;
    for (double h : hbars) {
        const GridSpec g = grid_for(h);
        const auto e = coherent_wigner(c, g);
        const std::size_t s = g.size();
        CoherentMomentRow row;
        row.hbar = h;
        row.mean_q.assign(g.dim, 0.0);
        row.mean_p.assign(g.dim, 0.0);
        row.var_q.assign(g.dim, 0.0);
        row.var_p.assign(g.dim, 0.0);
        std::vector<int> iq(g.dim), ip(g.dim);
        const double w = g.phase_weight();
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < s; ++j) {
                unflatten(j, g.dim, g.points, iq);
                for (std::size_t k = 0; k < s; ++k) {
                    unflatten(k, g.dim, g.points, ip);
                    const double r = e.at(j, k).real() * w;
                    for (int a = 0; a < g.dim; ++a) {
                        const double q = g.q(iq[a]), p = g.p(ip[a]);
                        if (pass == 0) {
                            row.mean_q[a] += r * q;
                            row.mean_p[a] += r * p;
                        } else {
                            row.var_q[a] += r * (q - row.mean_q[a]) * (q - row.mean_q[a]);
                            row.var_p[a] += r * (p - row.mean_p[a]) * (p - row.mean_p[a]);
                        }
                    }
                }
            }
        double sq = 0.0, sp = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            sq += row.var_q[a] / g.dim;
            sp += row.var_p[a] / g.dim;
        }
        vq.push_back(sq);
        vp.push_back(sp);
        rep.rows.push_back(std::move(row));
    }
    if (hbars.size() >= 2) {
        rep.order_q = fit_order(hbars, vq);
        rep.order_p = fit_order(hbars, vp);
    }
    return rep;
}

RotatorReport rotator_bridge(int n0, double dn, double hbar, int samples) {
    if (!(dn > 0.0) || n0 <= 0 || samples < 2 || !(hbar > 0.0))
        throw ValidationError("rotator_bridge: need n0 > 0, dn > 0, hbar > 0, samples >= 2");
    RotatorReport rep;
    rep.n0 = n0;
    rep.dn = dn;
    const int lo = n0 - static_cast<int>(std::ceil(12.0 * dn));
    const int hi = n0 + static_cast<int>(std::ceil(12.0 * dn));
    std::vector<double> c(hi - lo + 1);
    for (int n = lo; n <= hi; ++n) c[n - lo] = std::exp(-(n - n0) * (n - n0) / (2.0 * dn * dn));

    std::vector<double> circle(samples), line(samples);
    double peak = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double phi = -kPi + 2.0 * kPi * i / samples;
        cplx pc = 0.0, pl = 0.0;
        cplx i0, i1;
        segment_moments(phi, i0, i1);
        for (int n = lo; n <= hi; ++n) {
            const cplx e = std::polar(1.0, n * phi);
            pc += c[n - lo] * e;
            if (n < hi) pl += e * (c[n - lo] * i0 + (c[n + 1 - lo] - c[n - lo]) * i1);
        }
        circle[i] = std::norm(pc);
        line[i] = std::norm(pl);
        peak = std::max(peak, circle[i]);
    }
    for (int i = 0; i < samples; ++i)
        rep.sup_difference = std::max(rep.sup_difference, std::abs(circle[i] - line[i]) / peak);

    const int wlo = n0 - static_cast<int>(std::floor(dn));
    const int whi = n0 + static_cast<int>(std::floor(dn));
    for (int n = wlo; n < whi; ++n)
        rep.slow_variation = std::max(rep.slow_variation, std::abs(c[n + 1 - lo] - c[n - lo]) / c[n - lo]);

    // the circle as a periodic grid of length 2 pi: its momentum step is exactly hbar
    GridSpec g;
    g.points = 2 * (hi + 2);
    g.length = 2.0 * kPi;
    g.hbar = hbar;
    g.validate();
    const int step = std::max(1, (whi - wlo) / 8);
    for (int n = wlo; n <= whi; n += step) {
        WaveFunction psi = sample_wavefunction(g, [n](std::span<const double> q) {
            return std::polar(1.0, n * q[0]);
        });
        const WaveFunction lp = momentum_apply(psi, 0);
        double err = 0.0;
        for (std::size_t i = 0; i < lp.values.size(); ++i)
            err = std::max(err, std::abs(lp.values[i] - hbar * n * psi.values[i]));
        rep.eigenvalue_error = std::max(rep.eigenvalue_error, err / (hbar * std::max(1, std::abs(n))));
    }
    return rep;
}

}  // namespace wwmv
