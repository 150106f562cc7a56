#include "wwmv/lca.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "wwmv/errors.hpp"

namespace wwmv::lca {

namespace {

constexpr double kPi = std::numbers::pi;

void require_group(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b, const char* where) {
    if (!(a == b)) throw GridMismatch(std::string(where) + ": functions live on different groups");
}

void require_size(std::size_t got, std::size_t want, const char* where) {
    if (got != want) throw DimensionMismatch(std::string(where) + ": wrong number of values");
}

// <chi|g>^k
cplx char_pow(const FiniteAbelianGroup& g, std::size_t chi, std::size_t x, long k) {
    return g.character(g.scale(chi, k), x);
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> orders) : orders_(std::move(orders)) {
    if (orders_.empty()) throw ValidationError("FiniteAbelianGroup: need at least one factor");
    for (int n : orders_) {
        if (n < 1) throw ValidationError("FiniteAbelianGroup: orders must be positive");
        size_ *= static_cast<std::size_t>(n);
    }
    residues_.resize(size_);
    for (std::size_t i = 0; i < size_; ++i) {
        Residues r(orders_.size());
        std::size_t rem = i;
        for (std::size_t a = orders_.size(); a-- > 0;) {
            r[a] = static_cast<int>(rem % orders_[a]);
            rem /= orders_[a];
        }
        residues_[i] = std::move(r);
    }
    // exp(2 pi i sum chi_a g_a / N_a) written over the common denominator lcm(N_a)
    long l = 1;
    for (int n : orders_) l = std::lcm(l, static_cast<long>(n));
    CVec roots(l);
    for (long k = 0; k < l; ++k) roots[k] = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / l);
    table_.resize(size_ * size_);
    for (std::size_t c = 0; c < size_; ++c)
        for (std::size_t x = 0; x < size_; ++x) {
            long num = 0;
            for (std::size_t a = 0; a < orders_.size(); ++a)
                num += static_cast<long>(residues_[c][a]) * residues_[x][a] % orders_[a] *
                       (l / orders_[a]);
            table_[c * size_ + x] = roots[num % l];
        }
}

std::size_t FiniteAbelianGroup::index(const Residues& r) const {
    if (r.size() != orders_.size())
        throw DimensionMismatch("FiniteAbelianGroup: residue tuple has the wrong length");
    std::size_t f = 0;
    for (std::size_t a = 0; a < orders_.size(); ++a) {
        int v = r[a] % orders_[a];
        if (v < 0) v += orders_[a];
        f = f * orders_[a] + v;
    }
    return f;
}

Residues FiniteAbelianGroup::element(std::size_t flat) const { return residues_.at(flat); }

std::size_t FiniteAbelianGroup::add(std::size_t a, std::size_t b) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i)
        f = f * orders_[i] + (residues_[a][i] + residues_[b][i]) % orders_[i];
    return f;
}

std::size_t FiniteAbelianGroup::sub(std::size_t a, std::size_t b) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i)
        f = f * orders_[i] + (residues_[a][i] - residues_[b][i] + orders_[i]) % orders_[i];
    return f;
}

std::size_t FiniteAbelianGroup::scale(std::size_t a, long k) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        long v = (k % orders_[i]) * residues_[a][i] % orders_[i];
        if (v < 0) v += orders_[i];
        f = f * orders_[i] + static_cast<std::size_t>(v);
    }
    return f;
}

cplx character_eval(const FiniteAbelianGroup& g, const Residues& chi, const Residues& x) {
    return g.character(g.index(chi), g.index(x));
}

GroupFunction fourier(const GroupFunction& f) {
    const auto& g = f.group;
    require_size(f.values.size(), g.size(), "fourier");
    GroupFunction out{g, CVec(g.size(), 0.0)};
    for (std::size_t c = 0; c < g.size(); ++c) {
        cplx s = 0.0;
        for (std::size_t x = 0; x < g.size(); ++x) s += std::conj(g.character(c, x)) * f.values[x];
        out.values[c] = s;
    }
    return out;
}

GroupFunction inverse_fourier(const GroupFunction& fhat) {
    const auto& g = fhat.group;
    require_size(fhat.values.size(), g.size(), "inverse_fourier");
    GroupFunction out{g, CVec(g.size(), 0.0)};
    const double w = 1.0 / static_cast<double>(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < g.size(); ++c) s += g.character(c, x) * fhat.values[c];
        out.values[x] = s * w;
    }
    return out;
}

GroupFunction convolve(const GroupFunction& a, const GroupFunction& b) {
    require_group(a.group, b.group, "convolve");
    const auto& g = a.group;
    require_size(a.values.size(), g.size(), "convolve");
    require_size(b.values.size(), g.size(), "convolve");
    GroupFunction out{g, CVec(g.size(), 0.0)};
    for (std::size_t x = 0; x < g.size(); ++x) {
        cplx s = 0.0;
        for (std::size_t h = 0; h < g.size(); ++h) s += a.values[h] * b.values[g.sub(x, h)];
        out.values[x] = s;
    }
    return out;
}

GroupFunction delta(const FiniteAbelianGroup& g, std::size_t at) {
    GroupFunction f{g, CVec(g.size(), 0.0)};
    f.values.at(at) = 1.0;
    return f;
}

GroupFunction character_function(const FiniteAbelianGroup& g, std::size_t chi) {
    GroupFunction f{g, CVec(g.size())};
    for (std::size_t x = 0; x < g.size(); ++x) f.values[x] = g.character(chi, x);
    return f;
}

cplx two_character(const FiniteAbelianGroup& g, std::size_t x1, std::size_t pi1, std::size_t x2,
                   std::size_t pi2) {
    return g.character(pi1, x2) * std::conj(g.character(pi2, x1));
}

GroupFunction translate_g(const GroupFunction& psi, std::size_t x) {
    const auto& g = psi.group;
    GroupFunction out{g, CVec(g.size())};
    for (std::size_t y = 0; y < g.size(); ++y) out.values[y] = psi.values[g.sub(y, x)];
    return out;
}

GroupFunction modulate(const GroupFunction& psi, std::size_t pi) {
    const auto& g = psi.group;
    GroupFunction out{g, CVec(g.size())};
    for (std::size_t y = 0; y < g.size(); ++y) out.values[y] = g.character(pi, y) * psi.values[y];
    return out;
}

Eigen::MatrixXcd weyl_wp(const FiniteAbelianGroup& g, std::size_t x, std::size_t pi, double p) {
    if (std::abs(p - std::round(p)) > 0.0)
        throw UnsupportedExponent("weyl_wp: only integer powers of the character are defined");
    const long k = static_cast<long>(std::round(p));
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
    const cplx pre = char_pow(g, pi, x, k);
    // (U(x) V(pi) psi)(y) = <pi | y - x> psi(y - x)
    for (std::size_t y = 0; y < g.size(); ++y) {
        std::size_t src = g.sub(y, x);
        w(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(src)) = pre * g.character(pi, src);
    }
    return w;
}

PhaseFunctionG phase_fourier(const PhaseFunctionG& a) {
    const auto& g = a.group;
    const std::size_t s = g.size();
    require_size(a.values.size(), s * s, "phase_fourier");
    // separable: over pi -> xi, then over x -> eta
    CVec t(s * s, 0.0);
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t xi = 0; xi < s; ++xi) {
            cplx acc = 0.0;
            for (std::size_t pi = 0; pi < s; ++pi) acc += std::conj(g.character(pi, xi)) * a.at(x, pi);
            t[x * s + xi] = acc;
        }
    PhaseFunctionG out{g, CVec(s * s, 0.0)};
    const double w = 1.0 / static_cast<double>(s);
    for (std::size_t xi = 0; xi < s; ++xi)
        for (std::size_t eta = 0; eta < s; ++eta) {
            cplx acc = 0.0;
            for (std::size_t x = 0; x < s; ++x) acc += std::conj(g.character(eta, x)) * t[x * s + xi];
            out.at(xi, eta) = acc * w;
        }
    return out;
}

PhaseFunctionG phase_inverse_fourier(const PhaseFunctionG& ahat) {
    const auto& g = ahat.group;
    const std::size_t s = g.size();
    require_size(ahat.values.size(), s * s, "phase_inverse_fourier");
    CVec t(s * s, 0.0);
    for (std::size_t xi = 0; xi < s; ++xi)
        for (std::size_t x = 0; x < s; ++x) {
            cplx acc = 0.0;
            for (std::size_t eta = 0; eta < s; ++eta) acc += g.character(eta, x) * ahat.at(xi, eta);
            t[xi * s + x] = acc;
        }
    PhaseFunctionG out{g, CVec(s * s, 0.0)};
    const double w = 1.0 / static_cast<double>(s);
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t pi = 0; pi < s; ++pi) {
            cplx acc = 0.0;
            for (std::size_t xi = 0; xi < s; ++xi) acc += g.character(pi, xi) * t[xi * s + x];
            out.at(x, pi) = acc * w;
        }
    return out;
}

Eigen::MatrixXcd quantize(const PhaseFunctionG& a, int p) {
    const auto& g = a.group;
    const std::size_t s = g.size();
    PhaseFunctionG ahat = phase_fourier(a);
    const auto n = static_cast<Eigen::Index>(s);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(n, n);
    const double w = 1.0 / static_cast<double>(s);
    for (std::size_t xi = 0; xi < s; ++xi)
        for (std::size_t eta = 0; eta < s; ++eta) {
            const cplx c = ahat.at(xi, eta) * w * char_pow(g, eta, xi, p);
            if (c == 0.0) continue;
            for (std::size_t y = 0; y < s; ++y) {
                std::size_t src = g.sub(y, xi);
                op(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(src)) += c * g.character(eta, src);
            }
        }
    return op;
}

PhaseFunctionG dequantize(const FiniteAbelianGroup& g, const Eigen::MatrixXcd& op, int p) {
    const std::size_t s = g.size();
    if (static_cast<std::size_t>(op.rows()) != s || static_cast<std::size_t>(op.cols()) != s)
        throw DimensionMismatch("dequantize: operator size does not match the group");
    PhaseFunctionG ahat{g, CVec(s * s, 0.0)};
    for (std::size_t xi = 0; xi < s; ++xi)
        for (std::size_t eta = 0; eta < s; ++eta) {
            const cplx pre = char_pow(g, eta, xi, p);
            cplx acc = 0.0;
            for (std::size_t y = 0; y < s; ++y) {
                std::size_t src = g.sub(y, xi);
                acc += std::conj(pre * g.character(eta, src)) *
                       op(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(src));
            }
            ahat.at(xi, eta) = acc;
        }
    return phase_inverse_fourier(ahat);
}

StarKernel star_kernel_direct(const FiniteAbelianGroup& g, int p) {
    const std::size_t s = g.size();
    const std::size_t ss = s * s;
    StarKernel k{g, p, CVec(ss * ss, 0.0)};
    const double w = 1.0 / (static_cast<double>(s) * static_cast<double>(s));
    for (std::size_t x1 = 0; x1 < s; ++x1)
        for (std::size_t p1 = 0; p1 < s; ++p1)
            for (std::size_t x2 = 0; x2 < s; ++x2)
                for (std::size_t p2 = 0; p2 < s; ++p2) {
                    cplx acc = 0.0;
                    for (std::size_t xi = 0; xi < s; ++xi)
                        for (std::size_t eta = 0; eta < s; ++eta)
                            for (std::size_t zeta = 0; zeta < s; ++zeta)
                                for (std::size_t theta = 0; theta < s; ++theta)
                                    acc += g.character(p1, xi) * g.character(eta, x1) *
                                           g.character(p2, zeta) * g.character(theta, x2) *
                                           char_pow(g, eta, zeta, 1 - p) * char_pow(g, theta, xi, -p);
                    k.values[(x1 * s + p1) * ss + x2 * s + p2] = acc * w;
                }
    return k;
}

namespace {

StarKernel build_star_kernel(const FiniteAbelianGroup& g, int p) {
    const std::size_t s = g.size();
    const std::size_t ss = s * s;
    const double w = 1.0 / static_cast<double>(s);
    // The eta and theta sums only couple (x1, zeta) and (x2, xi):
    //   te(x1, zeta) = (1/|G|) sum_eta <eta|x1> <eta|zeta>^(1-p)
    //   tt(x2, xi)   = (1/|G|) sum_theta <theta|x2> <theta|xi>^(-p)
    CVec te(ss, 0.0), tt(ss, 0.0);
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = 0; y < s; ++y) {
            cplx a = 0.0, b = 0.0;
            for (std::size_t c = 0; c < s; ++c) {
                a += g.character(c, x) * char_pow(g, c, y, 1 - p);
                b += g.character(c, x) * char_pow(g, c, y, -p);
            }
            te[x * s + y] = a * w;
            tt[x * s + y] = b * w;
        }
    // left(pi1, x2) = sum_xi <pi1|xi> tt(x2, xi); right(pi2, x1) = sum_zeta <pi2|zeta> te(x1, zeta)
    CVec left(ss, 0.0), right(ss, 0.0);
    for (std::size_t c = 0; c < s; ++c)
        for (std::size_t x = 0; x < s; ++x) {
            cplx a = 0.0, b = 0.0;
            for (std::size_t y = 0; y < s; ++y) {
                a += g.character(c, y) * tt[x * s + y];
                b += g.character(c, y) * te[x * s + y];
            }
            left[c * s + x] = a;
            right[c * s + x] = b;
        }
    StarKernel k{g, p, CVec(ss * ss)};
    for (std::size_t x1 = 0; x1 < s; ++x1)
        for (std::size_t p1 = 0; p1 < s; ++p1)
            for (std::size_t x2 = 0; x2 < s; ++x2)
                for (std::size_t p2 = 0; p2 < s; ++p2)
                    k.values[(x1 * s + p1) * ss + x2 * s + p2] = left[p1 * s + x2] * right[p2 * s + x1];
    return k;
}

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

std::shared_ptr<const StarKernel> star_kernel(const FiniteAbelianGroup& g, int p) {
    static std::map<std::pair<std::vector<int>, int>, std::shared_ptr<const StarKernel>> cache;
    const auto key = std::make_pair(g.orders(), p);
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto built = std::make_shared<const StarKernel>(build_star_kernel(g, p));
    std::lock_guard<std::mutex> lock(cache_mutex());
    return cache.emplace(key, built).first->second;
}

double kernel_associativity_residual(const StarKernel& k) {
    const auto& g = k.group;
    const std::size_t s = g.size();
    const std::size_t ss = s * s;
    auto diff = [&](std::size_t u, std::size_t v) {
        return g.sub(u / s, v / s) * s + g.sub(u % s, v % s);
    };
    const double w = 1.0 / static_cast<double>(s);
    // difference table over G x Ghat
    std::vector<std::size_t> d(ss * ss);
    for (std::size_t u = 0; u < ss; ++u)
        for (std::size_t v = 0; v < ss; ++v) d[u * ss + v] = diff(u, v);
    double worst = 0.0;
    for (std::size_t g1 = 0; g1 < ss; ++g1)
        for (std::size_t g2 = 0; g2 < ss; ++g2)
            for (std::size_t g3 = 0; g3 < ss; ++g3) {
                cplx lhs = 0.0, rhs = 0.0;
                for (std::size_t h = 0; h < ss; ++h) {
                    lhs += k.at(g1, h) * k.at(d[g2 * ss + h], d[g3 * ss + h]);
                    rhs += k.at(d[g1 * ss + h], d[g2 * ss + h]) * k.at(h, g3);
                }
                worst = std::max(worst, std::abs(lhs - rhs) * w);
            }
    return worst;
}

CVec kernel_fourier(const StarKernel& k) {
    const auto& g = k.group;
    const std::size_t s = g.size();
    const std::size_t ss = s * s;
    // pairing of (xi, eta) with (x, pi) is <pi|xi><eta|x>; measure 1/|G| per element
    CVec pair(ss * ss);
    for (std::size_t c = 0; c < ss; ++c)
        for (std::size_t z = 0; z < ss; ++z)
            pair[c * ss + z] = std::conj(g.character(z % s, c / s) * g.character(c % s, z / s));
    const double w = 1.0 / static_cast<double>(s);
    CVec t(ss * ss, 0.0);
    for (std::size_t z1 = 0; z1 < ss; ++z1)
        for (std::size_t c2 = 0; c2 < ss; ++c2) {
            cplx acc = 0.0;
            for (std::size_t z2 = 0; z2 < ss; ++z2) acc += pair[c2 * ss + z2] * k.at(z1, z2);
            t[z1 * ss + c2] = acc * w;
        }
    CVec out(ss * ss, 0.0);
    for (std::size_t c1 = 0; c1 < ss; ++c1)
        for (std::size_t c2 = 0; c2 < ss; ++c2) {
            cplx acc = 0.0;
            for (std::size_t z1 = 0; z1 < ss; ++z1) acc += pair[c1 * ss + z1] * t[z1 * ss + c2];
            out[c1 * ss + c2] = acc * w;
        }
    return out;
}

double kernel_cocycle_residual(const StarKernel& k) {
    const auto& g = k.group;
    const std::size_t s = g.size();
    const std::size_t ss = s * s;
    const CVec kh = kernel_fourier(k);
    auto sum = [&](std::size_t u, std::size_t v) {
        return g.add(u / s, v / s) * s + g.add(u % s, v % s);
    };
    double worst = 0.0;
    for (std::size_t c1 = 0; c1 < ss; ++c1)
        for (std::size_t c2 = 0; c2 < ss; ++c2)
            for (std::size_t c3 = 0; c3 < ss; ++c3) {
                cplx lhs = kh[c1 * ss + sum(c2, c3)] * kh[c2 * ss + c3];
                cplx rhs = kh[c1 * ss + c2] * kh[sum(c1, c2) * ss + c3];
                worst = std::max(worst, std::abs(lhs - rhs));
            }
    return worst;
}

PhaseFunctionG star_g(const PhaseFunctionG& a, const PhaseFunctionG& b, int p) {
    require_group(a.group, b.group, "star_g");
    const auto& g = a.group;
    const std::size_t s = g.size();
    const std::size_t ss = s * s;
    require_size(a.values.size(), ss, "star_g");
    require_size(b.values.size(), ss, "star_g");
    auto k = star_kernel(g, p);
    const double w = 1.0 / (static_cast<double>(s) * static_cast<double>(s));
    // element of G x Ghat: flat x * s + pi; difference taken per component
    auto diff = [&](std::size_t u, std::size_t v) {
        return g.sub(u / s, v / s) * s + g.sub(u % s, v % s);
    };
    PhaseFunctionG out{g, CVec(ss, 0.0)};
    CVec row(ss);
    for (std::size_t z = 0; z < ss; ++z) {
        // row(g1) = sum_g2 K(g1 - z, g2 - z) B(g2)
        for (std::size_t g1 = 0; g1 < ss; ++g1) {
            const std::size_t d1 = diff(g1, z);
            cplx acc = 0.0;
            for (std::size_t g2 = 0; g2 < ss; ++g2) acc += k->at(d1, diff(g2, z)) * b.values[g2];
            row[g1] = acc;
        }
        cplx acc = 0.0;
        for (std::size_t g1 = 0; g1 < ss; ++g1) acc += a.values[g1] * row[g1];
        out.values[z] = acc * w;
    }
    return out;
}

PhaseFunctionG star_unit(const FiniteAbelianGroup& g, int p) {
    static std::map<std::pair<std::vector<int>, int>, PhaseFunctionG> cache;
    const auto key = std::make_pair(g.orders(), p);
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const std::size_t s = g.size();
    const std::size_t ss = s * s;
    auto k = star_kernel(g, p);
    auto diff = [&](std::size_t u, std::size_t v) {
        return g.sub(u / s, v / s) * s + g.sub(u % s, v % s);
    };
    // sum_g1 K(g1 - z, g2 - z) U(g1) / |G|^2 = delta(z, g2) for all z, g2
    const double w = 1.0 / (static_cast<double>(s) * static_cast<double>(s));
    const auto rows = static_cast<Eigen::Index>(ss * ss);
    Eigen::MatrixXcd m(rows, static_cast<Eigen::Index>(ss));
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(rows);
    for (std::size_t z = 0; z < ss; ++z)
        for (std::size_t g2 = 0; g2 < ss; ++g2) {
            const auto r = static_cast<Eigen::Index>(z * ss + g2);
            for (std::size_t g1 = 0; g1 < ss; ++g1)
                m(r, static_cast<Eigen::Index>(g1)) = k->at(diff(g1, z), diff(g2, z)) * w;
            if (z == g2) rhs(r) = 1.0;
        }
    Eigen::VectorXcd u = m.colPivHouseholderQr().solve(rhs);
    PhaseFunctionG unit{g, CVec(u.data(), u.data() + u.size())};
    std::lock_guard<std::mutex> lock(cache_mutex());
    return cache.emplace(key, unit).first->second;
}

PhaseFunctionG basis_rho(const FiniteAbelianGroup& g, std::size_t x1, std::size_t x2) {
    const std::size_t s = g.size();
    PhaseFunctionG out{g, CVec(s * s, 0.0)};
    const std::size_t sum = g.add(x1, x2);
    for (std::size_t x = 0; x < s; ++x) {
        if (g.scale(x, 2) != sum) continue;
        const std::size_t d = g.sub(x1, x);
        for (std::size_t pi = 0; pi < s; ++pi) out.at(x, pi) += g.character(pi, d);
    }
    return out;
}

int basis_rho_rank(const FiniteAbelianGroup& g) {
    const std::size_t s = g.size();
    const auto ss = static_cast<Eigen::Index>(s * s);
    Eigen::MatrixXcd m(ss, ss);
    for (std::size_t x1 = 0; x1 < s; ++x1)
        for (std::size_t x2 = 0; x2 < s; ++x2) {
            auto r = basis_rho(g, x1, x2);
            const auto col = static_cast<Eigen::Index>(x1 * s + x2);
            for (Eigen::Index i = 0; i < ss; ++i) m(i, col) = r.values[i];
        }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    lu.setThreshold(1e-10);
    return static_cast<int>(lu.rank());
}

PhaseFunctionG von_neumann_evolve_g(const PhaseFunctionG& rho, const PhaseFunctionG& h, double dt,
                                    int steps, int p, double hbar) {
    require_group(rho.group, h.group, "von_neumann_evolve_g");
    if (steps < 0) throw ValidationError("von_neumann_evolve_g: negative step count");
    const cplx c = 1.0 / cplx(0.0, hbar);
    auto rhs = [&](const PhaseFunctionG& x) {
        auto a = star_g(h, x, p);
        auto b = star_g(x, h, p);
        for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] = c * (a.values[i] - b.values[i]);
        return a;
    };
    auto axpy = [](const PhaseFunctionG& x, double t, const PhaseFunctionG& y) {
        PhaseFunctionG r = x;
        for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += t * y.values[i];
        return r;
    };
    PhaseFunctionG r = rho;
    for (int s = 0; s < steps; ++s) {
        auto k1 = rhs(r);
        auto k2 = rhs(axpy(r, 0.5 * dt, k1));
        auto k3 = rhs(axpy(r, 0.5 * dt, k2));
        auto k4 = rhs(axpy(r, dt, k3));
        for (std::size_t i = 0; i < r.values.size(); ++i)
            r.values[i] += dt / 6.0 *
                           (k1.values[i] + 2.0 * k2.values[i] + 2.0 * k3.values[i] + k4.values[i]);
    }
    return r;
}

double umklapp_fold(double kappa1, double kappa2) {
    double k = std::remainder(kappa1 + kappa2, 2.0 * kPi);
    if (k <= -kPi) k += 2.0 * kPi;
    return k;
}

ConservationReport conservation_demo(int n, double hopping, int steps, double dt, double hbar) {
    if (n < 2) throw ValidationError("conservation_demo: need at least two sites");
    if (steps < 0) throw ValidationError("conservation_demo: negative step count");
    FiniteAbelianGroup g({n});
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd h = -hopping * (weyl_wp(g, g.index({1}), 0, 0) + weyl_wp(g, g.index({-1}), 0, 0));
    // H is diagonal in the character basis; its energies are the Rayleigh quotients
    // <chi|H|chi> / |G| and the propagator is assembled from the characters themselves.
    Eigen::MatrixXcd chars(nn, nn);
    for (int c = 0; c < n; ++c)
        for (int x = 0; x < n; ++x) chars(x, c) = g.character(c, x);
    Eigen::MatrixXcd prop = Eigen::MatrixXcd::Zero(nn, nn);
    for (int c = 0; c < n; ++c) {
        const double e = (chars.col(c).adjoint() * h * chars.col(c))(0, 0).real() / n;
        prop += std::polar(1.0 / n, -e * dt / hbar) * chars.col(c) * chars.col(c).adjoint();
    }

    // a wave packet centred on quasi-momentum label n/4 with a spread of labels
    GroupFunction psi{g, CVec(n)};
    for (int x = 0; x < n; ++x) {
        double d = x - n / 2.0;
        psi.values[x] = std::exp(-d * d / (0.1 * n * n)) * g.character(g.index({n / 4}), x);
    }
    double nrm = 0.0;
    for (auto v : psi.values) nrm += std::norm(v);
    for (auto& v : psi.values) v /= std::sqrt(nrm);
    auto occupation = [&](const GroupFunction& f) {
        auto fh = fourier(f);
        std::vector<double> o(n);
        for (int c = 0; c < n; ++c) o[c] = std::norm(fh.values[c]) / n;
        return o;
    };
    const auto start = occupation(psi);
    double norm0 = 0.0;
    for (double v : start) norm0 += v;

    ConservationReport rep;
    rep.steps = steps;
    Eigen::VectorXcd v = Eigen::Map<Eigen::VectorXcd>(psi.values.data(), nn);
    for (int s = 0; s < steps; ++s) {
        v = prop * v;
        GroupFunction cur{g, CVec(v.data(), v.data() + nn)};
        auto occ = occupation(cur);
        double total = 0.0;
        for (int c = 0; c < n; ++c) {
            rep.max_occupation_drift = std::max(rep.max_occupation_drift, std::abs(occ[c] - start[c]));
            total += occ[c];
        }
        rep.norm_drift = std::max(rep.norm_drift, std::abs(total - norm0));
    }
    int peak = 0;
    for (int c = 1; c < n; ++c)
        if (start[c] > start[peak]) peak = c;
    auto kappa = [&](int c) { return umklapp_fold(2.0 * kPi * c / n, 0.0); };
    rep.kappa_peak = kappa(peak);
    // two labels whose kappas add past pi: the sum is conserved only mod 2 pi
    const double k1 = kappa(n / 2 - 1), k2 = kappa(n / 4);
    rep.unfolded_pair = k1 + k2;
    rep.folded_pair = umklapp_fold(k1, k2);
    return rep;
}

Eigen::MatrixXcd regular_representation(const GroupFunction& alpha) {
    const auto& g = alpha.group;
    require_size(alpha.values.size(), g.size(), "regular_representation");
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = 0; y < g.size(); ++y)
            op(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(g.sub(y, x))) += alpha.values[x];
    return op;
}

Eigen::MatrixXcd group_algebra_product(const GroupFunction& alpha, const GroupFunction& beta) {
    return regular_representation(convolve(alpha, beta));
}

}  // namespace wwmv::lca
