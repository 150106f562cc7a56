// Acceptance suite: one PASS/FAIL line per check, INFO lines for context.
// Usage: acceptance [criterion]   (all criteria when omitted)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "wwmv/extension.hpp"
#include "wwmv/lca.hpp"
#include "wwmv/moyal.hpp"
#include "wwmv/semiclassics.hpp"
#include "wwmv/weyl.hpp"
#include "wwmv/wigner.hpp"

using namespace wwmv;

namespace {

constexpr double kPi = std::numbers::pi;

namespace tol {
// 1
constexpr double cocycle = 1e-12;
constexpr double commutator = 1e-12;
constexpr double runtime1 = 5.0;
// 2
constexpr double star_oracle = 1e-8;
constexpr double associativity = 1e-8;
constexpr double trace_identity = 1e-8;
constexpr double conjugation = 1e-10;
constexpr double qp_exact = 1e-9;
constexpr double runtime2 = 60.0;
// 3
constexpr double marginal = 1e-10;
constexpr double trace = 1e-10;
constexpr double husimi_floor = -1e-12;
constexpr double runtime3 = 10.0;
// 4
constexpr double idempotence = 1e-8;
constexpr double transition = 1e-6;
// 5
constexpr double order = 0.3;
constexpr double runtime5 = 120.0;
// 6
constexpr double fourier_roundtrip = 1e-13;
constexpr double plancherel = 1e-12;
constexpr double commutation = 1e-13;
constexpr double kernel_equations = 1e-10;
constexpr double quantize_loop = 1e-10;
constexpr double runtime6 = 60.0;
// 7
constexpr double sector = 1e-10;
constexpr double plain_sector = 1e-12;
// 8
constexpr double dynamics = 1e-6;
constexpr double trace_drift = 1e-8;
constexpr double occupation_drift = 1e-12;
// 9
constexpr double rotator = 1e-3;
constexpr double halving = 0.05;
}  // namespace tol

int g_failures = 0;

void check(int crit, const char* name, double value, double limit) {
    const bool ok = value < limit;
    if (!ok) ++g_failures;
    std::printf("[%d] %s %-36s %.3e  (< %.1e)\n", crit, ok ? "PASS" : "FAIL", name, value, limit);
}

void check_true(int crit, const char* name, bool ok, const std::string& detail) {
    if (!ok) ++g_failures;
    std::printf("[%d] %s %-36s %s\n", crit, ok ? "PASS" : "FAIL", name, detail.c_str());
}

template <class... Args>
void info(int crit, const char* fmt, Args... args) {
    std::printf("[%d] INFO ", crit);
    std::printf(fmt, args...);
    std::printf("\n");
}

double max_diff(const CVec& a, const CVec& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const CVec& a) {
    double m = 0;
    for (auto v : a) m = std::max(m, std::abs(v));
    return m;
}

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

GridSpec grid1(int n, double l, double hbar = 1.0) {
    GridSpec g;
    g.points = n;
    g.length = l;
    g.hbar = hbar;
    return g;
}

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// 1. Weyl cocycle and group commutator
void criterion1() {
    Timer t;
    GridSpec g = grid1(128, 20.0);
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> step(-40, 40);
    std::normal_distribution<double> nd;
    auto psi = coherent_state(CoherentParams{{0.8}, {-0.6}, {}}, g);
    // a generic superposition, not just a Gaussian
    auto psi2 = coherent_state(CoherentParams{{-2.0}, {1.5}, {}}, g);
    for (std::size_t i = 0; i < psi.values.size(); ++i) psi.values[i] += cplx(0.3, -0.7) * psi2.values[i];

    double cocycle = 0, commutator = 0;
    for (int trial = 0; trial < 20; ++trial) {
        PhaseShift s1{{step(rng) * g.dq()}, {step(rng) * g.dp() / g.mass}};
        PhaseShift s2{{step(rng) * g.dq()}, {step(rng) * g.dp() / g.mass}};
        const double gam = symplectic_eval(s1, s2);
        auto lhs = weyl_canonical(weyl_canonical(psi, s2), s1);
        auto rhs = weyl_canonical(psi, s1 + s2);
        const cplx ph = std::polar(1.0, g.mass * gam / (2 * g.hbar));
        for (std::size_t i = 0; i < lhs.values.size(); ++i)
            cocycle = std::max(cocycle, std::abs(lhs.values[i] - ph * rhs.values[i]));
        // W(s1) W(s2) W(-s1) W(-s2) = exp(i m Gamma / hbar)
        auto c = weyl_canonical(weyl_canonical(weyl_canonical(weyl_canonical(psi, -s2), -s1), s2), s1);
        const cplx cph = std::polar(1.0, g.mass * gam / g.hbar);
        for (std::size_t i = 0; i < c.values.size(); ++i)
            commutator = std::max(commutator, std::abs(c.values[i] - cph * psi.values[i]));
    }
    check(1, "cocycle max-norm (20 pairs)", cocycle, tol::cocycle);
    check(1, "group commutator phase", commutator, tol::commutator);
    check(1, "runtime [s]", t.seconds(), tol::runtime1);
}

// Random trigonometric polynomial on a 1D grid, all frequencies below k_max, max-norm 1.
PhaseSpaceFunction trig_poly(const GridSpec& g, std::mt19937& rng, int k_max) {
    std::normal_distribution<double> nd;
    const int n = g.points;
    PhaseSpaceFunction f{g, CVec(n * n, 0.0)};
    for (int kq = -k_max; kq <= k_max; ++kq)
        for (int kp = -k_max; kp <= k_max; ++kp) {
            cplx c(nd(rng), nd(rng));
            for (int j = 0; j < n; ++j)
                for (int m = 0; m < n; ++m)
                    f.at(j, m) += c * std::polar(1.0, 2 * kPi * ((kq * j + kp * m) % n) / n);
        }
    const double s = max_abs(f.values);
    for (auto& v : f.values) v /= s;
    return f;
}

PhaseSpaceFunction conj(const PhaseSpaceFunction& a) {
    PhaseSpaceFunction r = a;
    for (auto& v : r.values) v = std::conj(v);
    return r;
}

// 2. Star-product algebra
void criterion2() {
    Timer t;
    GridSpec g = grid1(32, 8.0);
    std::mt19937 rng(202);
    double oracle = 0, assoc = 0, tr = 0, cj = 0;
    for (int trial = 0; trial < 3; ++trial) {
        auto a = trig_poly(g, rng, 7), b = trig_poly(g, rng, 7), c = trig_poly(g, rng, 7);
        auto ab = star(a, b);
        auto ab_oracle = star_bruteforce(a, b);
        oracle = std::max(oracle, max_diff(ab.values, ab_oracle.values) / max_abs(ab_oracle.values));
        auto left = star(ab, c), right = star(a, star(b, c));
        assoc = std::max(assoc, max_diff(left.values, right.values) / max_abs(left.values));
        PhaseSpaceFunction pw{g, CVec(ab.values.size())};
        for (std::size_t i = 0; i < pw.values.size(); ++i) pw.values[i] = a.values[i] * b.values[i];
        tr = std::max(tr, std::abs(integrate(ab) - integrate(pw)) / std::max(1.0, std::abs(integrate(pw))));
        auto lhs = conj(ab_oracle);
        auto rhs = star_bruteforce(conj(b), conj(a));
        cj = std::max(cj, max_diff(lhs.values, rhs.values) / max_abs(lhs.values));
    }
    check(2, "fast star vs oracle (relative)", oracle, tol::star_oracle);
    check(2, "associativity (relative)", assoc, tol::associativity);
    check(2, "trace identity", tr, tol::trace_identity);
    check(2, "conjugation rule (oracle)", cj, tol::conjugation);

    // q * p = qp + i hbar / 2 at every node, with the sampled coordinate symbols
    auto q = sample_phase(g, [](auto x, auto) { return cplx(x[0], 0.0); });
    auto p = sample_phase(g, [](auto, auto y) { return cplx(y[0], 0.0); });
    auto qp = star_bruteforce(q, p);
    double lit = 0;
    for (int j = 0; j < g.points; ++j)
        for (int m = 0; m < g.points; ++m)
            lit = std::max(lit, std::abs(qp.at(j, m) - cplx(g.q(j) * g.p(m), 0.5 * g.hbar)));
    check(2, "q*p = qp + i hbar/2 at every node", lit, tol::qp_exact);
    cplx mean = 0.0;
    for (int j = 0; j < g.points; ++j)
        for (int m = 0; m < g.points; ++m) mean += (qp.at(j, m) - g.q(j) * g.p(m)) / double(g.points * g.points);
    info(2, "node average of q*p - qp is %.3e%+.3ei; the identity needs %.3ei (trace obstruction)", mean.real(),
         mean.imag(), 0.5 * g.hbar);

    // localized forms on a box where the symbol decays
    GridSpec w = grid1(64, 20.0);
    auto bump = sample_phase(w, [](auto x, auto y) {
        return cplx(std::exp(-((x[0] - 0.4) * (x[0] - 0.4) + y[0] * y[0]) / 2) * (1 + 0.3 * y[0]));
    });
    auto qw = sample_phase(w, [](auto x, auto) { return cplx(x[0], 0.0); });
    auto pw = sample_phase(w, [](auto, auto y) { return cplx(y[0], 0.0); });
    auto dq = phase_derivative(bump, 0), dp = phase_derivative(bump, 1);
    auto qa = star(qw, bump), pa = star(pw, bump);
    double eq_q = 0, eq_p = 0;
    const cplx half(0.0, 0.5 * w.hbar);
    for (std::size_t i = 0; i < bump.values.size(); ++i) {
        eq_q = std::max(eq_q, std::abs(qa.values[i] - (qw.values[i] * bump.values[i] + half * dp.values[i])));
        eq_p = std::max(eq_p, std::abs(pa.values[i] - (pw.values[i] * bump.values[i] - half * dq.values[i])));
    }
    info(2, "localized q*A = qA + (i hbar/2) dA/dp residual %.3e", eq_q);
    info(2, "localized p*A = pA - (i hbar/2) dA/dq residual %.3e", eq_p);
    check(2, "runtime [s]", t.seconds(), tol::runtime2);
}

// 3. Wigner marginals and traces
void criterion3() {
    Timer t;
    GridSpec g = grid1(128, 20.0);
    auto coherent = coherent_state(CoherentParams{{0.7}, {-0.4}, {}}, g);
    auto excited = sample_wavefunction(g, [](std::span<const double> q) {
        return cplx(std::sqrt(2.0) * q[0] * std::exp(-q[0] * q[0] / 2) / std::pow(kPi, 0.25), 0.0);
    });
    double marg = 0, tr = 0;
    PhaseSpaceFunction excited_rho;
    for (const auto* psi : {&coherent, &excited}) {
        auto rho = wigner_of_pure(*psi);
        auto pm = position_marginal(rho);
        auto mm = momentum_marginal(rho);
        auto phi = to_momentum(*psi);
        for (int i = 0; i < g.points; ++i) {
            marg = std::max(marg, std::abs(pm[i] - std::norm(psi->values[i])));
            marg = std::max(marg, std::abs(mm[i] - std::norm(phi.values[i])));
        }
        tr = std::max(tr, std::abs(trace(rho) - 1.0));
        if (psi == &excited) excited_rho = rho;
    }
    check(3, "position and momentum marginals", marg, tol::marginal);
    check(3, "Tr rho = 1", tr, tol::trace);
    double wmin = 1e300;
    for (auto v : excited_rho.values) wmin = std::min(wmin, v.real());
    check(3, "first-excited Wigner minimum < 0", wmin, 0.0);
    auto hu = husimi(excited_rho);
    double hmin = 1e300;
    for (auto v : hu.values) hmin = std::min(hmin, v.real());
    check(3, "Husimi floor (negated minimum)", -hmin, -tol::husimi_floor);
    info(3, "first-excited Wigner minimum %.6f (continuum value -2 in this measure)", wmin);
    check(3, "runtime [s]", t.seconds(), tol::runtime3);
}

// 4. Coherent idempotence and transition probabilities
void criterion4() {
    GridSpec g = grid1(128, 20.0);
    auto e = coherent_wigner(CoherentParams{{0.5}, {-0.8}, {}}, g);
    auto ee = star(e, e);
    check(4, "E*E = E", max_diff(ee.values, e.values), tol::idempotence);

    double worst = 0;
    const std::vector<std::pair<double, double>> centers{{0.0, 0.0}, {1.0, 0.5}, {-0.7, 1.3}, {2.0, -1.0}};
    for (const auto& [x1, p1] : centers)
        for (const auto& [x2, p2] : centers) {
            auto r1 = coherent_wigner(CoherentParams{{x1}, {p1}, {}}, g);
            auto r2 = coherent_wigner(CoherentParams{{x2}, {p2}, {}}, g);
            const double d2 = (x1 - x2) * (x1 - x2) + (p1 - p2) * (p1 - p2);
            const double oracle = std::exp(-d2 / (2 * g.hbar));
            worst = std::max(worst, std::abs(transition_probability(r1, r2) - oracle));
        }
    check(4, "transition probability vs overlap", worst, tol::transition);
}

GridSpec sweep_grid(double h) { return grid1(static_cast<int>(std::lround(64 / h)), 20.0, h); }

WkbData gaussian_wkb(const GridSpec& g, double var, double c, double p0) {
    WkbData w{g, {}, {}, {{}}};
    for (double x : coordinate(g, 0)) {
        w.density.push_back(std::exp(-x * x / (2 * var)) / std::sqrt(2 * kPi * var));
        w.action.push_back(0.5 * c * x * x + p0 * x);
        w.action_gradient[0].push_back(c * x + p0);
    }
    return w;
}

// 5. Semiclassical orders
void criterion5() {
    Timer t;
    const std::vector<double> hb{1.0, 0.5, 0.25, 0.125};
    auto fa = [](std::span<const double> q, std::span<const double> p) {
        return cplx(std::exp(-(q[0] * q[0] + p[0] * p[0]) / 2.8) * (1 + 0.5 * q[0]));
    };
    auto fb = [](std::span<const double> q, std::span<const double> p) {
        double x = q[0] - 0.7, y = p[0] + 0.3;
        return cplx(std::exp(-(x * x + y * y) / 2.8) * (1 + 0.5 * p[0]));
    };
    auto sc = semiclassical_check(fa, fb, hb, sweep_grid);
    for (const auto& r : sc.rows)
        info(5, "hbar %.4g  |A*B-AB| %.4e  |A*B-AB-(i hbar/2){A,B}| %.4e  bracket %.4e", r.hbar, r.r0, r.r1,
             r.r_bracket);
    check(5, "A*B -> AB order 1 (|fit-1|)", std::abs(sc.order_r0 - 1.0), tol::order);
    check(5, "first-order star remainder order 2", std::abs(sc.order_r1 - 2.0), tol::order);
    info(5, "quantum bracket -> Poisson bracket fitted order %.4f", sc.order_bracket);

    auto act = first_order_action(
        [](std::span<const double>, std::span<const double> p) { return cplx(0.5 * p[0] * p[0], 0.0); },
        [](double h) { return gaussian_wkb(sweep_grid(h), 1.0, 0.5, 0.0); }, hb);
    for (const auto& r : act.rows) info(5, "hbar %.4g  first-order action remainder %.4e", r.hbar, r.residual);
    check(5, "first-order action remainder order 2", std::abs(act.order - 2.0), tol::order);

    const double p0 = 3 * 2 * kPi / 20;
    auto lc = lagrangian_concentration([&](double h) { return gaussian_wkb(sweep_grid(h), h / 2, 0.0, p0); }, hb);
    for (const auto& r : lc.rows) info(5, "hbar %.4g  M %.6e  marginal error %.2e", r.hbar, r.moment, r.marginal_error);
    check(5, "Lagrangian moment M order 1", std::abs(lc.order - 1.0), tol::order);
    check(5, "WKB position marginal = D", lc.max_marginal_error, tol::marginal);
    auto fixed = lagrangian_concentration([](double h) { return gaussian_wkb(sweep_grid(h), 0.5, 0.5, 0.0); }, hb);
    info(5, "M with hbar-independent D fits order %.4f (exactly hbar^2 int |d sqrt D|^2)", fixed.order);
    check(5, "runtime [s]", t.seconds(), tol::runtime5);
}

lca::GroupFunction random_fn(const lca::FiniteAbelianGroup& g, std::mt19937& rng) {
    std::normal_distribution<double> nd;
    lca::GroupFunction f{g, CVec(g.size())};
    for (auto& v : f.values) v = cplx(nd(rng), nd(rng));
    return f;
}

lca::PhaseFunctionG random_phase(const lca::FiniteAbelianGroup& g, std::mt19937& rng) {
    std::normal_distribution<double> nd;
    lca::PhaseFunctionG f{g, CVec(g.size() * g.size())};
    for (auto& v : f.values) v = cplx(nd(rng), nd(rng));
    return f;
}

// 6. Finite-group exactness
void criterion6() {
    Timer t;
    std::mt19937 rng(606);
    double rt = 0, planch = 0, comm = 0, keq = 0, loop = 0;
    for (auto orders : {std::vector<int>{5}, std::vector<int>{3, 4}}) {
        lca::FiniteAbelianGroup g(orders);
        const std::size_t s = g.size();
        for (int trial = 0; trial < 5; ++trial) {
            auto f = random_fn(g, rng);
            auto fh = lca::fourier(f);
            rt = std::max(rt, max_diff(lca::inverse_fourier(fh).values, f.values));
            double n1 = 0, n2 = 0;
            for (auto v : f.values) n1 += std::norm(v);
            for (auto v : fh.values) n2 += std::norm(v) / static_cast<double>(s);
            planch = std::max(planch, std::abs(n1 - n2) / n1);
        }
        for (std::size_t x = 0; x < s; ++x)
            for (std::size_t pi = 0; pi < s; ++pi) {
                Eigen::MatrixXcd u = lca::weyl_wp(g, x, 0, 0), v = lca::weyl_wp(g, 0, pi, 0);
                Eigen::MatrixXcd ui = lca::weyl_wp(g, g.neg(x), 0, 0), vi = lca::weyl_wp(g, 0, g.neg(pi), 0);
                Eigen::MatrixXcd want = std::conj(g.character(pi, x)) * Eigen::MatrixXcd::Identity(s, s);
                comm = std::max(comm, max_diff(u * v * ui * vi, want));
            }
        for (int p : {0, 1}) {
            auto k = lca::star_kernel(g, p);
            keq = std::max(keq, lca::kernel_associativity_residual(*k));
            keq = std::max(keq, lca::kernel_cocycle_residual(*k));
            auto a = random_phase(g, rng), b = random_phase(g, rng);
            auto ab = lca::star_g(a, b, p);
            Eigen::MatrixXcd prod = lca::quantize(a, p) * lca::quantize(b, p);
            loop = std::max(loop, max_diff(lca::quantize(ab, p), prod));
            loop = std::max(loop, max_diff(lca::dequantize(g, prod, p).values, ab.values));
            loop = std::max(loop, max_diff(lca::dequantize(g, lca::quantize(a, p), p).values, a.values));
        }
    }
    check(6, "Fourier round trip", rt, tol::fourier_roundtrip);
    check(6, "Plancherel (relative)", planch, tol::plancherel);
    check(6, "U V U^-1 V^-1 = conj<pi|x>, all pairs", comm, tol::commutation);
    check(6, "K_p associativity and cocycle", keq, tol::kernel_equations);
    check(6, "quantize / star_g loop", loop, tol::quantize_loop);

    lca::FiniteAbelianGroup z4({4});
    bool zero_set_ok = true;
    for (std::size_t x1 = 0; x1 < 4; ++x1)
        for (std::size_t x2 = 0; x2 < 4; ++x2) {
            const bool zero = max_abs(lca::basis_rho(z4, x1, x2).values) == 0.0;
            zero_set_ok = zero_set_ok && (zero == ((x1 + x2) % 2 == 1));
        }
    check_true(6, "Z4 superselection zero set", zero_set_ok, "zero exactly when x1+x2 is odd");
    lca::FiniteAbelianGroup z5({5});
    const int rank = lca::basis_rho_rank(z5);
    check_true(6, "Z5 rho basis rank", rank == 25, std::to_string(rank) + " of 25");
    info(6, "Z4 rho family rank %d of 16", lca::basis_rho_rank(z4));
    check(6, "runtime [s]", t.seconds(), tol::runtime6);
}

// 7. Twisted convolution
void criterion7() {
    std::mt19937 rng(707);
    std::normal_distribution<double> nd;
    GridSpec g = grid1(12, 4.0, 0.5);
    auto compact = [&](int radius) {
        PhaseSpaceFunction f{g, CVec(g.size() * g.size(), 0.0)};
        const int c = g.points / 2;
        for (int j = c - radius; j <= c + radius; ++j)
            for (int m = c - radius; m <= c + radius; ++m) f.at(j, m) = cplx(nd(rng), nd(rng));
        return f;
    };
    const double mass = 0.8;
    double worst = 0;
    for (int trial = 0; trial < 2; ++trial) {
        ExtendedFunction a{g, {}}, b{g, {}};
        for (int k : {1, -2}) {
            a.sectors.emplace(k, compact(3));
            b.sectors.emplace(k, compact(3));
        }
        auto c = extended_convolve(a, b, mass);
        for (int k : {1, -2}) {
            auto want = twisted_convolve(a.sectors.at(k), b.sectors.at(k), k, mass);
            worst = std::max(worst, max_diff(c.sectors.at(k).values, want.values) / std::max(1.0, max_abs(want.values)));
        }
        for (const auto& [k, sec] : c.sectors)
            if (k != 1 && k != -2) worst = std::max(worst, max_abs(sec.values));
    }
    check(7, "sector restriction = twisted product", worst, tol::sector);

    auto a0 = compact(3), b0 = compact(3);
    ExtendedFunction za{g, {{0, a0}}}, zb{g, {{0, b0}}};
    auto zc = extended_convolve(za, zb, mass);
    auto plain = twisted_convolve(a0, b0, 0, mass);
    // direct plain convolution
    PhaseSpaceFunction direct{g, CVec(g.size() * g.size(), 0.0)};
    const int n = g.points;
    for (int jw = 0; jw < n; ++jw)
        for (int mw = 0; mw < n; ++mw)
            for (int ju = 0; ju < n; ++ju)
                for (int mu = 0; mu < n; ++mu) {
                    int jd = jw - ju + n / 2, md = mw - mu + n / 2;
                    if (jd < 0 || jd >= n || md < 0 || md >= n) continue;
                    direct.at(jw, mw) += a0.at(ju, mu) * b0.at(jd, md) * g.dq() * g.dp();
                }
    check(7, "n=0 sector = plain convolution", std::max(max_diff(zc.sectors.at(0).values, direct.values),
                                                        max_diff(plain.values, direct.values)),
          tol::plain_sector);
}

// 8. Dynamics consistency
void criterion8() {
    GridSpec g = grid1(96, 30.0);
    CoherentParams c{{-1.0}, {1.0}, {}};
    auto psi = coherent_state(c, g);
    auto rho = wigner_of_pure(psi);
    auto h = sample_phase(g, [](auto, auto p) { return cplx(0.5 * p[0] * p[0], 0.0); });
    auto evolved = von_neumann_evolve(rho, h, 1e-3, 1000);
    auto wave = wigner_of_pure(free_propagate(psi, 1.0));
    check(8, "von Neumann vs wave pipeline at t=1", max_diff(evolved.values, wave.values), tol::dynamics);
    check(8, "trace drift", std::abs(trace(evolved) - trace(rho)), tol::trace_drift);
    auto demo = lca::conservation_demo(16, 1.0, 1000);
    check(8, "Umklapp occupation drift, Z16, 1000 steps", demo.max_occupation_drift, tol::occupation_drift);
    info(8, "Umklapp: kappa1+kappa2 = %.6f folds to %.6f", demo.unfolded_pair, demo.folded_pair);
}

// 9. Rotator bridge
void criterion9() {
    auto r = rotator_bridge(200, 20.0);
    check(9, "circle vs line sup-difference", r.sup_difference, tol::rotator);
    auto r2 = rotator_bridge(400, 20.0 * std::sqrt(2.0));
    const double ratio = r2.sup_difference / r.sup_difference;
    check(9, "n0 doubled (dn^2 = 2 n0): |ratio - 1/2|", std::abs(ratio - 0.5), tol::halving);
    auto fixed = rotator_bridge(400, 20.0);
    info(9, "n0 doubled with dn fixed: ratio %.4f (discrepancy depends on dn only)",
         fixed.sup_difference / r.sup_difference);
    info(9, "slow variation max|c_(n+1)-c_n|/|c_n| = %.4f", r.slow_variation);
    info(9, "(hbar/i) d/dphi e^(in phi) = hbar n e^(in phi): relative error %.2e", r.eigenvalue_error);
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                 criterion6, criterion7, criterion8, criterion9};
    if (argc > 1) {
        const int c = std::atoi(argv[1]);
        if (c < 1 || c > 9) {
            std::fprintf(stderr, "criterion must be 1..9\n");
            return 2;
        }
        all[c - 1]();
    } else {
        for (const auto& f : all) f();
    }
    return g_failures == 0 ? 0 : 1;
}
