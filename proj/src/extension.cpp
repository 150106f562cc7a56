#include "wwmv/extension.hpp"

#include <cmath>
#include <numbers>

#include "wwmv/errors.hpp"

namespace wwmv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

// Per-node coordinates (alpha from the q axes, nu from the p axes) and multi-indices.
struct Nodes {
    std::vector<std::vector<int>> idx;
    std::vector<std::vector<double>> coord;
};

Nodes position_nodes(const GridSpec& g) {
    Nodes n;
    n.idx.resize(g.size());
    n.coord.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        n.idx[i].resize(g.dim);
        unflatten(i, g.dim, g.points, n.idx[i]);
        for (int d = 0; d < g.dim; ++d) n.coord[i].push_back(g.q(n.idx[i][d]));
    }
    return n;
}

Nodes momentum_nodes(const GridSpec& g) {
    Nodes n;
    n.idx.resize(g.size());
    n.coord.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        n.idx[i].resize(g.dim);
        unflatten(i, g.dim, g.points, n.idx[i]);
        for (int d = 0; d < g.dim; ++d) n.coord[i].push_back(g.p(n.idx[i][d]));
    }
    return n;
}

// Flat index of the node at coordinate w - u, or -1 when it falls off the grid.
long difference_index(const std::vector<int>& w, const std::vector<int>& u, int points) {
    long f = 0;
    for (std::size_t d = 0; d < w.size(); ++d) {
        int v = w[d] - u[d] + points / 2;
        if (v < 0 || v >= points) return -1;
        f = f * points + v;
    }
    return f;
}

// Gamma(u, w) = nu_u . alpha_w - nu_w . alpha_u
double gamma_uw(const std::vector<double>& au, const std::vector<double>& nu,
                const std::vector<double>& aw, const std::vector<double>& nw) {
    double s = 0.0;
    for (std::size_t d = 0; d < au.size(); ++d) s += nu[d] * aw[d] - nw[d] * au[d];
    return s;
}

}  // namespace

ExtendedElement make_extended(double xi, PhaseShift u) {
    if (u.alpha.size() != u.nu.size()) throw DimensionMismatch("make_extended: alpha and nu differ in size");
    return ExtendedElement{reduce_angle(xi), std::move(u)};
}

ExtendedElement z_compose(const ExtendedElement& e1, const ExtendedElement& e2, double mass,
                          double hbar) {
    const double g = symplectic_eval(e1.u, e2.u);
    return ExtendedElement{reduce_angle(e1.xi + e2.xi + mass / (2.0 * hbar) * g), e1.u + e2.u};
}

ExtendedElement z_inverse(const ExtendedElement& e) {
    return ExtendedElement{reduce_angle(-e.xi), -e.u};
}

PhaseSpaceFunction twisted_convolve(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b, int n,
                                    double mass) {
    require_same_grid(a.grid, b.grid, "twisted_convolve");
    require_phase_size(a, "twisted_convolve");
    require_phase_size(b, "twisted_convolve");
    const GridSpec& g = a.grid;
    const std::size_t s = g.size();
    const Nodes qn = position_nodes(g), pn = momentum_nodes(g);
    const double du = g.position_weight() * std::pow(g.dp(), g.dim);
    const double twist = -n * mass / 2.0;
    PhaseSpaceFunction out{g, CVec(s * s, 0.0)};
    for (std::size_t jw = 0; jw < s; ++jw)
        for (std::size_t mw = 0; mw < s; ++mw) {
            cplx acc = 0.0;
            for (std::size_t ju = 0; ju < s; ++ju) {
                const long jd = difference_index(qn.idx[jw], qn.idx[ju], g.points);
                if (jd < 0) continue;
                for (std::size_t mu = 0; mu < s; ++mu) {
                    const cplx av = a.at(ju, mu);
                    if (av == 0.0) continue;
                    const long md = difference_index(pn.idx[mw], pn.idx[mu], g.points);
                    if (md < 0) continue;
                    const double gm = gamma_uw(qn.coord[ju], pn.coord[mu], qn.coord[jw], pn.coord[mw]);
                    acc += std::polar(1.0, twist * gm) * av * b.at(jd, md);
                }
            }
            out.at(jw, mw) = acc * du;
        }
    return out;
}

cplx extended_eval(const ExtendedFunction& a, double phi, std::size_t j, std::size_t m) {
    cplx s = 0.0;
    for (const auto& [k, f] : a.sectors) s += std::polar(1.0, k * phi) * f.at(j, m);
    return s;
}

ExtendedFunction extended_convolve(const ExtendedFunction& a, const ExtendedFunction& b, double mass,
                                   double drop_tol) {
    require_same_grid(a.grid, b.grid, "extended_convolve");
    const GridSpec& g = a.grid;
    for (const auto* f : {&a, &b})
        for (const auto& [k, sec] : f->sectors) {
            require_same_grid(sec.grid, g, "extended_convolve");
            require_phase_size(sec, "extended_convolve");
        }
    ExtendedFunction out{g, {}};
    if (a.sectors.empty() || b.sectors.empty()) return out;
    int kmax = 0;
    for (const auto* f : {&a, &b})
        for (const auto& [k, sec] : f->sectors) kmax = std::max(kmax, std::abs(k));
    // the phi integrand carries frequencies up to 2 kmax; the result up to kmax
    const int nphi = 4 * kmax + 4;
    std::vector<double> phi(nphi);
    for (int i = 0; i < nphi; ++i) phi[i] = kTwoPi * i / nphi;

    const std::size_t s = g.size();
    const Nodes qn = position_nodes(g), pn = momentum_nodes(g);
    const double du = g.position_weight() * std::pow(g.dp(), g.dim);

    // samples of A at every angle and node
    std::vector<CVec> asamp(nphi, CVec(s * s));
    for (int i = 0; i < nphi; ++i)
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t m = 0; m < s; ++m) asamp[i][j * s + m] = extended_eval(a, phi[i], j, m);

    // C(psi_l, w) = sum_u sum_i A(phi_i, u) B(psi_l - phi_i - (m/2) Gamma(u, w), w - u) du / nphi
    std::vector<CVec> c(nphi, CVec(s * s, 0.0));
    std::vector<cplx> bval(nphi);
    for (std::size_t jw = 0; jw < s; ++jw)
        for (std::size_t mw = 0; mw < s; ++mw) {
            const std::size_t w = jw * s + mw;
            for (std::size_t ju = 0; ju < s; ++ju) {
                const long jd = difference_index(qn.idx[jw], qn.idx[ju], g.points);
                if (jd < 0) continue;
                for (std::size_t mu = 0; mu < s; ++mu) {
                    const long md = difference_index(pn.idx[mw], pn.idx[mu], g.points);
                    if (md < 0) continue;
                    const std::size_t u = ju * s + mu;
                    const double shift =
                        mass / 2.0 * gamma_uw(qn.coord[ju], pn.coord[mu], qn.coord[jw], pn.coord[mw]);
                    // B at angle theta_d = phi_d - shift for every grid angle d
                    for (int d = 0; d < nphi; ++d) bval[d] = extended_eval(b, phi[d] - shift, jd, md);
                    for (int l = 0; l < nphi; ++l) {
                        cplx acc = 0.0;
                        for (int i = 0; i < nphi; ++i) {
                            // psi_l - phi_i lands on grid angle (l - i) mod nphi
                            int d = (l - i) % nphi;
                            if (d < 0) d += nphi;
                            acc += asamp[i][u] * bval[d];
                        }
                        c[l][w] += acc;
                    }
                }
            }
        }
    const double w = du / nphi;
    for (int k = -kmax; k <= kmax; ++k) {
        PhaseSpaceFunction sec{g, CVec(s * s, 0.0)};
        double biggest = 0.0;
        for (std::size_t i = 0; i < s * s; ++i) {
            cplx acc = 0.0;
            for (int l = 0; l < nphi; ++l) acc += std::polar(1.0, -k * phi[l]) * c[l][i];
            sec.values[i] = acc * w / static_cast<double>(nphi);
            biggest = std::max(biggest, std::abs(sec.values[i]));
        }
        if (biggest > drop_tol) out.sectors.emplace(k, std::move(sec));
    }
    return out;
}

}  // namespace wwmv
