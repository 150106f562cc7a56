#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wwmv/errors.hpp"
#include "wwmv/weyl.hpp"
#include "wwmv/wigner.hpp"

using namespace wwmv;

namespace {

GridSpec grid1(int n = 128, double l = 20.0) {
    GridSpec g;
    g.points = n;
    g.length = l;
    return g;
}

WaveFunction random_state(const GridSpec& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    WaveFunction psi{g, CVec(g.size())};
    for (auto& v : psi.values) v = {nd(rng), nd(rng)};
    return psi;
}

double max_diff(const CVec& a, const CVec& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

PhaseShift lattice_shift(const GridSpec& g, int a, int k) {
    return PhaseShift{{a * g.dq()}, {k * g.dp() / g.mass}};
}

}  // namespace

TEST_CASE("symplectic form on basis vectors") {
    std::vector<double> z1{1.0, 0.0}, z2{0.0, 1.0};
    CHECK(symplectic_eval(z1, z2) == -1.0);
    CHECK(symplectic_eval(z2, z1) == 1.0);
    std::vector<double> z{0.3, -1.2};
    CHECK(symplectic_eval(z, z) == 0.0);
    std::vector<double> bad{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(symplectic_eval(z1, bad), DimensionMismatch);
}

TEST_CASE("cyclic cocycle matches its defining sum") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int t = 0; t < 20; ++t) {
        PhaseShift a{{u(rng)}, {u(rng)}}, b{{u(rng)}, {u(rng)}}, c{{u(rng)}, {u(rng)}};
        double direct = symplectic_eval(b, c) + symplectic_eval(c, a) + symplectic_eval(a, b);
        CHECK(std::abs(cocycle3(a, b, c) - direct) < 1e-14);
        // phase of the ordered triple product
        double ordered = symplectic_eval(a, b) + symplectic_eval(a + b, c);
        CHECK(std::abs(composition_cocycle3(a, b, c) - ordered) < 1e-12);
    }
}

TEST_CASE("translations and boosts compose and preserve the norm") {
    GridSpec g = grid1();
    auto psi = random_state(g, 2);
    std::vector<double> zero{0.0};
    CHECK(translate(psi, zero).values == psi.values);
    CHECK(boost(psi, zero).values == psi.values);
    std::vector<double> a1{3 * g.dq()}, a2{-7 * g.dq()}, a12{-4 * g.dq()};
    CHECK(translate(translate(psi, a2), a1).values == translate(psi, a12).values);
    CHECK(norm_squared(translate(psi, a1)) == doctest::Approx(norm_squared(psi)).epsilon(1e-14));
    std::vector<double> n1{2 * g.dp()}, n2{5 * g.dp()}, n12{7 * g.dp()};
    CHECK(max_diff(boost(boost(psi, n2), n1).values, boost(psi, n12).values) < 1e-12);
    CHECK(std::abs(norm_squared(boost(psi, n1)) - norm_squared(psi)) < 1e-10);
    std::vector<double> off{0.37 * g.dq()};
    CHECK_THROWS_AS(translate(psi, off), IncommensurateShift);
    CHECK_THROWS_AS(boost(psi, off), IncommensurateShift);
}

TEST_CASE("boost shifts the momentum profile") {
    GridSpec g = grid1();
    auto psi = sample_wavefunction(g, [](std::span<const double> q) { return std::exp(-q[0] * q[0] / 2); });
    const int k = 6;
    std::vector<double> nu{k * g.dp()};
    auto a = to_momentum(boost(psi, nu));
    auto b = to_momentum(psi);
    for (int m = 0; m + k < g.points; ++m) CHECK(std::abs(a.values[m + k] - b.values[m]) < 1e-12);
}

TEST_CASE("script and canonical Weyl operators") {
    GridSpec g = grid1();
    auto psi = random_state(g, 4);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int t = 0; t < 10; ++t) {
        PhaseShift s1 = lattice_shift(g, d(rng), d(rng)), s2 = lattice_shift(g, d(rng), d(rng));
        auto lhs = weyl_script(weyl_script(psi, s2), s1);
        auto rhs = weyl_script(psi, s1 + s2);
        cplx f = std::polar(1.0, g.mass * s1.nu[0] * s2.alpha[0] / g.hbar);
        for (auto& v : rhs.values) v *= f;
        CHECK(max_diff(lhs.values, rhs.values) < 1e-10);
        // inverse: W(s)^-1 = exp(i m nu.alpha / hbar) W(-s)
        auto inv = weyl_script(weyl_script(psi, s1), -s1);
        cplx g1 = std::polar(1.0, g.mass * s1.nu[0] * s1.alpha[0] / g.hbar);
        for (auto& v : inv.values) v *= g1;
        CHECK(max_diff(inv.values, psi.values) < 1e-10);
        auto back = weyl_canonical(weyl_canonical(psi, s1), -s1);
        CHECK(max_diff(back.values, psi.values) < 1e-12);
        double f12 = symplectic_eval(s1, s2), f21 = symplectic_eval(s2, s1);
        CHECK(std::abs(f12 + f21) < 1e-12);
    }
    PhaseShift zero{{0.0}, {0.0}};
    CHECK(weyl_script(psi, zero).values == psi.values);
}

TEST_CASE("adjoint actions of two Weyl operators commute") {
    GridSpec g = grid1(32, 10.0);
    auto a = random_state(g, 8), b = random_state(g, 9);
    DensityKernel rho = outer(a, b);
    PhaseShift s1 = lattice_shift(g, 3, -2), s2 = lattice_shift(g, -5, 4);
    auto x = weyl_adjoint(weyl_adjoint(rho, s1), s2);
    auto y = weyl_adjoint(weyl_adjoint(rho, s2), s1);
    CHECK((x.values - y.values).cwiseAbs().maxCoeff() < 1e-12 * rho.values.cwiseAbs().maxCoeff());
}

TEST_CASE("generators are first order in the parameter") {
    // dq == dp: L^2 = 2 pi hbar N / m
    GridSpec g;
    g.points = 256;
    g.length = std::sqrt(2 * std::numbers::pi * 256);
    auto psi = sample_wavefunction(g, [](std::span<const double> q) {
        return std::exp(-(q[0] - 0.5) * (q[0] - 0.5) / 2) * std::polar(1.0, 0.8 * q[0]);
    });
    CHECK(std::abs(g.dq() - g.dp()) < 1e-12);
    auto r1 = generator_check(psi, 2 * g.dq());
    auto r2 = generator_check(psi, g.dq());
    double t = r1.translation_residual / r2.translation_residual;
    double b = r1.boost_residual / r2.boost_residual;
    CHECK(t > 3.5);
    CHECK(t < 4.5);
    CHECK(b > 3.5);
    CHECK(b < 4.5);

    WaveFunction flat{g, CVec(g.size(), cplx(1.0, 0.0))};
    CHECK(generator_check(flat, g.dq()).translation_residual < 1e-12);

    GridSpec g2;
    g2.dim = 2;
    g2.points = 48;
    auto gauss = sample_wavefunction(g2, [](std::span<const double> q) {
        return std::exp(-(q[0] * q[0] + q[1] * q[1]) / 2) * std::polar(1.0, 0.4 * q[0] - 0.2 * q[1]);
    });
    double nrm = norm_squared(gauss);
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) {
            cplx v = canonical_commutator(gauss, a, c) / nrm;
            CHECK(std::abs(v - cplx(a == c ? 1.0 : 0.0, 0.0)) < 1e-8);
        }
}
