#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wwmv/errors.hpp"
#include "wwmv/extension.hpp"
#include "wwmv/io.hpp"
#include "wwmv/lca.hpp"
#include "wwmv/moyal.hpp"
#include "wwmv/semiclassics.hpp"
#include "wwmv/weyl.hpp"
#include "wwmv/wigner.hpp"

using namespace wwmv;

namespace {

constexpr double kPi = std::numbers::pi;

struct RunConfig {
    std::string in, out, a, b;
    std::string grid = "1,128,20";
    double hbar = 1.0;
    double mass = 1.0;
    std::string orders = "5";
    int p = 0;
    double dt = 1e-3;
    int steps = 1000;
    double tol = 1e-10;
    unsigned seed = 1;
    int twisted = 0;
    bool has_twisted = false;
    double omega = 0.0;
    std::vector<double> xi, pi;
};

std::vector<int> int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError(std::string(what) + ": cannot read '" + tok + "'");
        }
    }
    if (out.empty()) throw ParseError(std::string(what) + ": empty list");
    return out;
}

GridSpec parse_grid(const RunConfig& c) {
    std::vector<std::string> parts;
    std::stringstream ss(c.grid);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(tok);
    if (parts.size() != 3) throw ParseError("--grid expects n,N,L");
    GridSpec g;
    try {
        g.dim = std::stoi(parts[0]);
        g.points = std::stoi(parts[1]);
        g.length = std::stod(parts[2]);
    } catch (const std::exception&) {
        throw ParseError("--grid expects n,N,L");
    }
    g.hbar = c.hbar;
    g.mass = c.mass;
    g.validate();
    return g;
}

FieldFile phase_file(const PhaseSpaceFunction& f) {
    return FieldFile{FieldKind::phase2d, f.grid, {}, f.values};
}

PhaseSpaceFunction read_phase(const std::string& path) {
    if (path.empty()) throw ValidationError("missing input path");
    FieldFile f = read_field_file(path);
    if (f.kind != FieldKind::phase2d) throw ValidationError(path + ": expected a phase2d field");
    return PhaseSpaceFunction{f.grid, f.values};
}

void emit(const RunConfig& c, const FieldFile& f) {
    if (c.out.empty() || c.out == "-")
        write_field(std::cout, f);
    else
        write_field_file(c.out, f);
}

int cmd_wigner(const RunConfig& c) {
    WaveFunction psi;
    if (!c.in.empty()) {
        FieldFile f = read_field_file(c.in);
        if (f.kind != FieldKind::wavefunction) throw ValidationError(c.in + ": expected a wavefunction field");
        psi = WaveFunction{f.grid, f.values};
    } else {
        GridSpec g = parse_grid(c);
        CoherentParams cp{c.xi, c.pi, {}};
        cp.xi.resize(g.dim, 0.0);
        cp.pi.resize(g.dim, 0.0);
        psi = coherent_state(cp, g);
    }
    auto rho = wigner_of_pure(psi);
    std::fprintf(stderr, "trace\t%.17g\n", trace(rho).real());
    emit(c, phase_file(rho));
    return 0;
}

int cmd_husimi(const RunConfig& c) {
    emit(c, phase_file(husimi(read_phase(c.in))));
    return 0;
}

int cmd_star(const RunConfig& c) {
    auto a = read_phase(c.a);
    auto b = read_phase(c.b);
    PhaseSpaceFunction r = c.has_twisted ? twisted_convolve(a, b, c.twisted, c.mass) : star(a, b);
    if (!c.out.empty()) write_field_file(c.out, phase_file(r));
    cplx t = trace(r);
    std::printf("# columns: quantity re im\ntrace\t%.17g\t%.17g\n", t.real(), t.imag());
    return 0;
}

int cmd_evolve(const RunConfig& c) {
    auto rho = read_phase(c.in);
    const double m = rho.grid.mass, w = c.omega;
    auto h = sample_phase(rho.grid, [m, w](std::span<const double> q, std::span<const double> p) {
        double e = 0;
        for (std::size_t a = 0; a < q.size(); ++a) e += p[a] * p[a] / (2 * m) + 0.5 * m * w * w * q[a] * q[a];
        return cplx(e, 0.0);
    });
    const double t0 = trace(rho).real();
    auto out = von_neumann_evolve(rho, h, c.dt, c.steps);
    std::fprintf(stderr, "time\t%.17g\ntrace_drift\t%.3e\n", c.dt * c.steps, std::abs(trace(out).real() - t0));
    emit(c, phase_file(out));
    return 0;
}

int cmd_lca(const RunConfig& c) {
    lca::FiniteAbelianGroup g(int_list(c.orders, "--orders"));
    if (!c.in.empty()) {
        FieldFile f = read_field_file(c.in);
        if (f.kind != FieldKind::groupfn || f.orders != g.orders())
            throw ValidationError(c.in + ": expected a groupfn field on the given orders");
        auto hat = lca::fourier(lca::GroupFunction{g, f.values});
        emit(c, FieldFile{FieldKind::groupfn, {}, g.orders(), hat.values});
        return 0;
    }
    auto k = lca::star_kernel(g, c.p);
    auto unit = lca::star_unit(g, c.p);
    double unit_dev = 0;
    for (auto v : unit.values) unit_dev = std::max(unit_dev, std::abs(v - 1.0));
    std::printf("# columns: quantity value\n");
    std::printf("order\t%zu\n", g.size());
    std::printf("p\t%d\n", c.p);
    std::printf("kernel_associativity\t%.3e\n", lca::kernel_associativity_residual(*k));
    std::printf("kernel_cocycle\t%.3e\n", lca::kernel_cocycle_residual(*k));
    std::printf("unit_deviation\t%.3e\n", unit_dev);
    std::printf("rho_rank\t%d\n", lca::basis_rho_rank(g));
    return 0;
}

int cmd_umklapp(const RunConfig& c) {
    auto ord = int_list(c.orders, "--orders");
    if (ord.size() != 1) throw ValidationError("umklapp runs on a single cyclic group");
    auto r = lca::conservation_demo(ord[0], 1.0, c.steps, 0.05, c.hbar);
    std::printf("# columns: quantity value\n");
    std::printf("steps\t%d\n", r.steps);
    std::printf("occupation_drift\t%.3e\n", r.max_occupation_drift);
    std::printf("norm_drift\t%.3e\n", r.norm_drift);
    std::printf("kappa_peak\t%.17g\n", r.kappa_peak);
    std::printf("unfolded_pair\t%.17g\n", r.unfolded_pair);
    std::printf("folded_pair\t%.17g\n", r.folded_pair);
    return 0;
}

GridSpec sweep_grid(double h) {
    GridSpec g;
    g.points = static_cast<int>(std::lround(64 / h));
    g.length = 20.0;
    g.hbar = h;
    return g;
}

WkbData gaussian_wkb(const GridSpec& g, double var, double c, double p0) {
    WkbData w{g, {}, {}, {{}}};
    for (double x : coordinate(g, 0)) {
        w.density.push_back(std::exp(-x * x / (2 * var)) / std::sqrt(2 * kPi * var));
        w.action.push_back(0.5 * c * x * x + p0 * x);
        w.action_gradient[0].push_back(c * x + p0);
    }
    return w;
}

cplx symbol_a(std::span<const double> q, std::span<const double> p) {
    return std::exp(-(q[0] * q[0] + p[0] * p[0]) / 2.8) * (1 + 0.5 * q[0]);
}

cplx symbol_b(std::span<const double> q, std::span<const double> p) {
    double x = q[0] - 0.7, y = p[0] + 0.3;
    return std::exp(-(x * x + y * y) / 2.8) * (1 + 0.5 * p[0]);
}

int cmd_semiclassical(const RunConfig&) {
    const std::vector<double> hb{1.0, 0.5, 0.25, 0.125};
    auto sc = semiclassical_check(symbol_a, symbol_b, hb, sweep_grid);
    std::printf("# star product residuals\n# columns: hbar r0 r1 r_bracket\n");
    for (const auto& r : sc.rows) std::printf("%.17g\t%.6e\t%.6e\t%.6e\n", r.hbar, r.r0, r.r1, r.r_bracket);
    std::printf("# order\t%.4f\t%.4f\t%.4f\n", sc.order_r0, sc.order_r1, sc.order_bracket);

    auto fa = first_order_action(
        [](std::span<const double>, std::span<const double> p) { return cplx(0.5 * p[0] * p[0], 0.0); },
        [](double h) { return gaussian_wkb(sweep_grid(h), 1.0, 0.5, 0.0); }, hb);
    std::printf("# first-order action, A = p^2/2\n# columns: hbar residual\n");
    for (const auto& r : fa.rows) std::printf("%.17g\t%.6e\n", r.hbar, r.residual);
    std::printf("# order\t%.4f\n", fa.order);

    const double p0 = 3 * 2 * kPi / 20;
    auto lc = lagrangian_concentration([&](double h) { return gaussian_wkb(sweep_grid(h), h / 2, 0.0, p0); }, hb);
    std::printf("# Lagrangian moment, minimum-uncertainty packet\n# columns: hbar moment marginal_error\n");
    for (const auto& r : lc.rows) std::printf("%.17g\t%.6e\t%.3e\n", r.hbar, r.moment, r.marginal_error);
    std::printf("# order\t%.4f\n", lc.order);

    auto cl = coherent_limit(CoherentParams{{0.0}, {0.0}, {}}, hb, sweep_grid);
    std::printf("# coherent moments\n# columns: hbar var_q var_p\n");
    for (const auto& r : cl.rows) std::printf("%.17g\t%.6e\t%.6e\n", r.hbar, r.var_q[0], r.var_p[0]);
    std::printf("# order\t%.4f\t%.4f\n", cl.order_q, cl.order_p);

    std::printf("# rotator bridge\n# columns: n0 dn sup_difference slow_variation eigenvalue_error\n");
    for (auto [n0, dn] : {std::pair{200, 20.0}, std::pair{400, 20.0 * std::sqrt(2.0)}}) {
        auto r = rotator_bridge(n0, dn);
        std::printf("%d\t%.6g\t%.6e\t%.6e\t%.3e\n", r.n0, r.dn, r.sup_difference, r.slow_variation,
                    r.eigenvalue_error);
    }
    return 0;
}

// Quick invariant suite; each line is one property.
int cmd_selftest(const RunConfig& c) {
    int failures = 0;
    auto report = [&](const char* name, double value, double limit) {
        bool ok = value < limit;
        if (!ok) ++failures;
        std::printf("%s %-28s %.3e (limit %.1e)\n", ok ? "PASS" : "FAIL", name, value, limit);
    };
    std::mt19937 rng(c.seed);

    GridSpec g;
    g.points = 128;
    g.length = 20.0;
    {
        auto psi = coherent_state(CoherentParams{{0.3}, {-0.5}, {}}, g);
        std::uniform_int_distribution<int> step(-12, 12);
        double worst = 0;
        for (int t = 0; t < 5; ++t) {
            PhaseShift s1{{step(rng) * g.dq()}, {step(rng) * g.dp()}};
            PhaseShift s2{{step(rng) * g.dq()}, {step(rng) * g.dp()}};
            auto lhs = weyl_canonical(weyl_canonical(psi, s2), s1);
            auto rhs = weyl_canonical(psi, s1 + s2);
            cplx ph = std::polar(1.0, g.mass / (2 * g.hbar) * symplectic_eval(s1, s2));
            for (std::size_t i = 0; i < lhs.values.size(); ++i)
                worst = std::max(worst, std::abs(lhs.values[i] - ph * rhs.values[i]));
        }
        report("weyl_cocycle", worst, c.tol);
    }
    {
        GridSpec s;
        s.points = 16;
        s.length = 6.0;
        std::normal_distribution<double> nd;
        PhaseSpaceFunction a{s, CVec(256, 0.0)}, b = a;
        for (int ka = -2; ka <= 2; ++ka)
            for (int kb = -2; kb <= 2; ++kb) {
                cplx ca(nd(rng), nd(rng)), cb(nd(rng), nd(rng));
                for (int j = 0; j < 16; ++j)
                    for (int m = 0; m < 16; ++m) {
                        cplx e = std::polar(1.0, 2 * kPi * (ka * j + kb * m) / 16.0);
                        a.at(j, m) += ca * e;
                        b.at(j, m) += cb * std::conj(e);
                    }
            }
        auto f = star(a, b), o = star_bruteforce(a, b);
        double d = 0;
        for (std::size_t i = 0; i < f.values.size(); ++i) d = std::max(d, std::abs(f.values[i] - o.values[i]));
        report("star_vs_oracle", d, 1e-8);
    }
    {
        auto e = coherent_wigner(CoherentParams{{0.4}, {0.2}, {}}, g);
        report("coherent_trace", std::abs(trace(e) - 1.0), c.tol);
        auto ee = star(e, e);
        double d = 0;
        for (std::size_t i = 0; i < e.values.size(); ++i) d = std::max(d, std::abs(ee.values[i] - e.values[i]));
        report("coherent_idempotent", d, 1e-8);
        auto psi = coherent_state(CoherentParams{{0.4}, {0.2}, {}}, g);
        auto marg = position_marginal(e);
        double dm = 0;
        for (std::size_t j = 0; j < marg.size(); ++j) dm = std::max(dm, std::abs(marg[j] - std::norm(psi.values[j])));
        report("position_marginal", dm, c.tol);
    }
    {
        lca::FiniteAbelianGroup z5({5});
        std::normal_distribution<double> nd;
        lca::GroupFunction f{z5, CVec(5)};
        for (auto& v : f.values) v = cplx(nd(rng), nd(rng));
        auto back = lca::inverse_fourier(lca::fourier(f));
        double d = 0;
        for (int i = 0; i < 5; ++i) d = std::max(d, std::abs(back.values[i] - f.values[i]));
        report("lca_fourier_roundtrip", d, 1e-13);
        report("lca_kernel_cocycle", lca::kernel_cocycle_residual(*lca::star_kernel(z5, 0)), c.tol);
    }
    {
        GridSpec s;
        s.points = 8;
        s.length = 4.0;
        std::normal_distribution<double> nd;
        PhaseSpaceFunction a{s, CVec(64, 0.0)}, b = a;
        for (int j = 3; j <= 5; ++j)
            for (int m = 3; m <= 5; ++m) {
                a.at(j, m) = cplx(nd(rng), nd(rng));
                b.at(j, m) = cplx(nd(rng), nd(rng));
            }
        ExtendedFunction ea{s, {{0, a}}}, eb{s, {{0, b}}};
        auto ec = extended_convolve(ea, eb, 1.0, 1e-13);
        auto plain = twisted_convolve(a, b, 0);
        double d = ec.sectors.count(0) ? 0.0 : 1.0;
        if (ec.sectors.count(0))
            for (std::size_t i = 0; i < plain.values.size(); ++i)
                d = std::max(d, std::abs(ec.sectors.at(0).values[i] - plain.values[i]));
        report("extended_n0_sector", d, 1e-12);
    }
    report("umklapp_drift", lca::conservation_demo(16, 1.0, 200).max_occupation_drift, 1e-12);
    {
        auto sc = semiclassical_check(symbol_a, symbol_b, {1.0, 0.5, 0.25}, sweep_grid);
        report("order_star_r0", std::abs(sc.order_r0 - 1.0), 0.3);
        report("order_star_r1", std::abs(sc.order_r1 - 2.0), 0.3);
    }
    report("rotator_sup_difference", rotator_bridge(200, 20.0).sup_difference, 1e-3);
    {
        auto e = coherent_wigner(CoherentParams{{0.1}, {0.0}, {}}, g);
        std::stringstream ss;
        write_field(ss, phase_file(e));
        auto back = read_field(ss);
        double d = 0;
        for (std::size_t i = 0; i < e.values.size(); ++i) d = std::max(d, std::abs(back.values[i] - e.values[i]));
        report("field_roundtrip", d, 1e-300);
    }
    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weyl-Wigner-Moyal phase-space toolkit"};
    app.require_subcommand(1);
    RunConfig c;

    auto grid_opts = [&](CLI::App* s) {
        s->add_option("--grid", c.grid, "n,N,L")->capture_default_str();
        s->add_option("--hbar", c.hbar)->capture_default_str();
        s->add_option("--mass", c.mass)->capture_default_str();
    };

    auto* wig = app.add_subcommand("wigner", "Wigner function of a wave function (coherent state if no --in)");
    wig->add_option("--in", c.in);
    wig->add_option("--out", c.out);
    wig->add_option("--xi", c.xi);
    wig->add_option("--pi", c.pi);
    grid_opts(wig);

    auto* hus = app.add_subcommand("husimi", "Husimi smoothing of a phase2d field");
    hus->add_option("--in", c.in)->required();
    hus->add_option("--out", c.out);

    auto* st = app.add_subcommand("star", "star product (or twisted convolution) of two phase2d fields");
    st->add_option("--a", c.a)->required();
    st->add_option("--b", c.b)->required();
    st->add_option("--out", c.out);
    st->add_option("--mass", c.mass)->capture_default_str();
    auto* tw = st->add_option("--twisted", c.twisted, "sector n of the twisted convolution");

    auto* ev = app.add_subcommand("evolve", "von Neumann evolution under p^2/2m + m w^2 q^2/2");
    ev->add_option("--in", c.in)->required();
    ev->add_option("--out", c.out);
    ev->add_option("--dt", c.dt)->capture_default_str();
    ev->add_option("--steps", c.steps)->capture_default_str();
    ev->add_option("--omega", c.omega)->capture_default_str();

    auto* lc = app.add_subcommand("lca", "finite-group star-kernel checks, or Fourier transform of --in");
    lc->add_option("--orders", c.orders)->capture_default_str();
    lc->add_option("--p", c.p)->check(CLI::IsMember({0, 1}))->capture_default_str();
    lc->add_option("--in", c.in);
    lc->add_option("--out", c.out);

    auto* um = app.add_subcommand("umklapp", "conserved dual labels on Z_N under hopping");
    um->add_option("--orders", c.orders)->capture_default_str();
    um->add_option("--steps", c.steps)->capture_default_str();
    um->add_option("--hbar", c.hbar)->capture_default_str();

    auto* sc = app.add_subcommand("semiclassical", "order-fit tables for the hbar sweep");

    auto* self = app.add_subcommand("selftest", "quick invariant suite");
    self->add_option("--tol", c.tol, "tolerance for exact identities")->capture_default_str();
    self->add_option("--seed", c.seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    c.has_twisted = tw->count() > 0;
    if (c.steps < 0 || !(c.dt > 0) || !(c.tol > 0)) {
        std::fprintf(stderr, "ValidationError: --steps, --dt and --tol must be positive\n");
        return 2;
    }

    try {
        if (*wig) return cmd_wigner(c);
        if (*hus) return cmd_husimi(c);
        if (*st) return cmd_star(c);
        if (*ev) return cmd_evolve(c);
        if (*lc) return cmd_lca(c);
        if (*um) return cmd_umklapp(c);
        if (*sc) return cmd_semiclassical(c);
        if (*self) return cmd_selftest(c);
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }
    return 2;
}
