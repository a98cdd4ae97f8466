#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace coxpander {

using Int = boost::multiprecision::cpp_int;

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Edge label infinity. Finite labels are >= 1.
constexpr int kInfLabel = 0;

/// Z[theta], theta = 2cos(pi/L), as Z[x]/(minpoly).
struct Ring {
    int conductor = 1;         // L
    int degree = 1;            // d
    std::vector<Int> minpoly;  // monic, ascending coefficients, size degree+1
    double theta_numeric = 0.0;
};

/// Element in the power basis 1, theta, ..., theta^{d-1}.
using RingElem = std::vector<Int>;

namespace detail {

inline std::vector<Int> poly_divexact(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> q(num.size() - den.size() + 1, Int(0));
    const Int lead = den.back();
    for (int k = int(q.size()) - 1; k >= 0; --k) {
        Int c = num[k + den.size() - 1] / lead;
        q[k] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    return q;
}

// nth cyclotomic polynomial over Z, ascending coefficients.
inline std::vector<Int> cyclotomic(int n) {
    std::vector<Int> num(n + 1, Int(0));
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) num = poly_divexact(std::move(num), cyclotomic(d));
    return num;
}

}  // namespace detail

inline RingElem ring_zero(const Ring& R) { return RingElem(R.degree, Int(0)); }

inline RingElem ring_from_int(const Ring& R, long long c) {
    RingElem e(R.degree, Int(0));
    e[0] = c;
    return e;
}

inline RingElem ring_theta(const Ring& R) {
    RingElem e(R.degree, Int(0));
    if (R.degree == 1)
        e[0] = -R.minpoly[0];  // minpoly = x - theta
    else
        e[1] = 1;
    return e;
}

inline bool ring_is_zero(const RingElem& a) {
    for (const auto& c : a)
        if (c != 0) return false;
    return true;
}

inline RingElem ring_add(const RingElem& a, const RingElem& b) {
    RingElem out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline RingElem ring_sub(const RingElem& a, const RingElem& b) {
    RingElem out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline RingElem ring_neg(const RingElem& a) {
    RingElem out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

inline RingElem ring_mul(const Ring& R, const RingElem& a, const RingElem& b) {
    const int d = R.degree;
    if (d == 1) return {a[0] * b[0]};
    std::vector<Int> prod(2 * d - 1, Int(0));
    for (int i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < d; ++j)
            if (b[j] != 0) prod[i + j] += a[i] * b[j];
    }
    for (int k = 2 * d - 2; k >= d; --k) {
        const Int c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (int j = 0; j < d; ++j) prod[k - d + j] -= c * R.minpoly[j];
    }
    prod.resize(d);
    return prod;
}

inline double ring_numeric(const Ring& R, const RingElem& a) {
    double acc = 0.0;
    for (int i = R.degree - 1; i >= 0; --i) acc = acc * R.theta_numeric + a[i].convert_to<double>();
    return acc;
}

namespace detail {

template <unsigned Digits>
inline int sign_attempt(const Ring& R, const RingElem& a) {
    using BF = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;
    const BF theta = 2 * cos(boost::math::constants::pi<BF>() / R.conductor);
    BF acc = 0;
    BF scale = 0;
    for (int i = R.degree - 1; i >= 0; --i) {
        acc = acc * theta + BF(a[i].str());
        scale += abs(BF(a[i].str()));
    }
    // generous error envelope: |theta| < 2, Horner depth d, ~Digits-10 good digits
    BF eps = scale * pow(BF(4), R.degree + 1) * pow(BF(10), -int(Digits) + 10);
    if (acc > eps) return 1;
    if (acc < -eps) return -1;
    return 2;  // undecided at this precision
}

}  // namespace detail

/// Certified sign of the real value of a (theta -> 2cos(pi/L)).
/// Exact zero test first, then escalating-precision interval evaluation.
inline int ring_sign(const Ring& R, const RingElem& a) {
    if (ring_is_zero(a)) return 0;
    {
        double v = ring_numeric(R, a);
        double scale = 0.0;
        for (const auto& c : a) scale += std::abs(c.convert_to<double>());
        if (std::isfinite(v) && std::isfinite(scale) &&
            std::abs(v) > 1e-9 * std::max(1.0, scale) * std::pow(4.0, R.degree))
            return v > 0 ? 1 : -1;
    }
    int s = detail::sign_attempt<60>(R, a);
    if (s != 2) return s;
    s = detail::sign_attempt<200>(R, a);
    if (s != 2) return s;
    s = detail::sign_attempt<800>(R, a);
    if (s != 2) return s;
    throw DomainError("ring_sign: could not certify sign of a nonzero element");
}

/// 2cos(k*pi/L): V_0 = 2, V_1 = theta, V_{n+1} = theta V_n - V_{n-1}.
inline RingElem ring_vieta(const Ring& R, int k) {
    if (k == 0) return ring_from_int(R, 2);
    RingElem prev = ring_from_int(R, 2);
    RingElem cur = ring_theta(R);
    const RingElem th = ring_theta(R);
    for (int i = 1; i < k; ++i) {
        RingElem next = ring_sub(ring_mul(R, th, cur), prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Ring of 2cos(pi/L): minimal polynomial from the folded cyclotomic Phi_{2L}.
inline Ring make_ring(int L) {
    if (L < 1) throw DomainError("make_ring: conductor must be >= 1");
    Ring R;
    R.conductor = L;
    R.theta_numeric = 2.0 * std::cos(M_PI / L);
    if (L == 1) {
        R.degree = 1;
        R.minpoly = {Int(2), Int(1)};
    } else if (L == 2) {
        R.degree = 1;
        R.minpoly = {Int(0), Int(1)};
    } else {
        std::vector<Int> phi = detail::cyclotomic(2 * L);
        const int d = (int(phi.size()) - 1) / 2;
        // Phi(x)/x^d = c_d + sum_k c_{d+k} (x^k + x^{-k}), and x^k + x^{-k} = V_k(y)
        std::vector<Int> psi(d + 1, Int(0));
        psi[0] = phi[d];
        std::vector<Int> vprev = {Int(2)};
        std::vector<Int> vcur = {Int(0), Int(1)};
        for (int k = 1; k <= d; ++k) {
            for (size_t j = 0; j < vcur.size(); ++j) psi[j] += phi[d + k] * vcur[j];
            if (k < d) {
                std::vector<Int> vnext(vcur.size() + 1, Int(0));
                for (size_t j = 0; j < vcur.size(); ++j) vnext[j + 1] += vcur[j];
                for (size_t j = 0; j < vprev.size(); ++j) vnext[j] -= vprev[j];
                vprev = std::move(vcur);
                vcur = std::move(vnext);
            }
        }
        R.degree = d;
        R.minpoly = std::move(psi);
    }
    double acc = 0.0;
    for (int i = R.degree; i >= 0; --i) acc = acc * R.theta_numeric + R.minpoly[i].convert_to<double>();
    if (std::abs(acc) > 1e-10)
        throw DomainError("make_ring: minimal polynomial failed numeric root check");
    return R;
}

/// Exact 2cos(pi/m). Labels 1,2,3 and infinity have integer cosines;
/// any other finite m must divide the conductor.
inline RingElem embed_label(const Ring& R, int m) {
    if (m == kInfLabel) return ring_from_int(R, 2);
    if (m == 1) return ring_from_int(R, -2);
    if (m == 2) return ring_from_int(R, 0);
    if (m == 3) return ring_from_int(R, 1);
    if (m < 1 || R.conductor % m != 0)
        throw DomainError("embed_label: label " + std::to_string(m) +
                          " does not divide conductor " + std::to_string(R.conductor));
    return ring_vieta(R, R.conductor / m);
}

// ---------------------------------------------------------------------------
// Reduction modulo a rational prime p: either the full quotient Z[theta]/p or
// the residue field at a chosen prime over p (smallest-degree, lexicographically
// least irreducible factor of the minimal polynomial mod p).
// ---------------------------------------------------------------------------

struct ModRing {
    uint32_t p = 0;
    std::vector<uint32_t> modulus;  // monic, ascending, size degree+1
    int degree = 1;
    bool is_field = false;
};

using ModElem = std::vector<uint32_t>;

namespace modp {

inline uint32_t add(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint32_t sub(uint32_t a, uint32_t b, uint32_t p) { return a >= b ? a - b : a + p - b; }
inline uint32_t mul(uint32_t a, uint32_t b, uint32_t p) {
    return uint32_t((uint64_t(a) * b) % p);
}
inline uint32_t pw(uint32_t a, uint64_t e, uint32_t p) {
    uint32_t r = 1 % p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}
inline uint32_t inv(uint32_t a, uint32_t p) { return pw(a, p - 2, p); }

using Poly = std::vector<uint32_t>;  // ascending, trimmed; zero poly = {}

inline Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

inline Poly mulp(const Poly& a, const Poly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = uint32_t((out[i + j] + uint64_t(a[i]) * b[j]) % p);
    }
    return trim(std::move(out));
}

inline Poly modp_(Poly a, const Poly& m, uint32_t p) {
    const uint32_t linv = inv(m.back(), p);
    while (a.size() >= m.size()) {
        const uint32_t c = mul(a.back(), linv, p);
        const size_t off = a.size() - m.size();
        if (c)
            for (size_t j = 0; j + 1 < m.size(); ++j)
                a[off + j] = sub(a[off + j], mul(c, m[j], p), p);
        a.pop_back();
        a = trim(std::move(a));
    }
    return a;
}

inline Poly gcd(Poly a, Poly b, uint32_t p) {
    while (!b.empty()) {
        Poly r = modp_(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const uint32_t linv = inv(a.back(), p);
        for (auto& c : a) c = mul(c, linv, p);
    }
    return a;
}

inline Poly powmod(Poly base, uint64_t e, const Poly& m, uint32_t p) {
    Poly r = {1};
    base = modp_(std::move(base), m, p);
    while (e) {
        if (e & 1) r = modp_(mulp(r, base, p), m, p);
        base = modp_(mulp(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

inline Poly deriv(const Poly& f, uint32_t p) {
    Poly out;
    for (size_t i = 1; i < f.size(); ++i) out.push_back(uint32_t((uint64_t(f[i]) * i) % p));
    return trim(std::move(out));
}

inline Poly divexact(const Poly& num, const Poly& den, uint32_t p) {
    Poly n = num;
    Poly q(n.size() - den.size() + 1, 0);
    const uint32_t linv = inv(den.back(), p);
    for (int k = int(q.size()) - 1; k >= 0; --k) {
        const uint32_t c = mul(n[k + den.size() - 1], linv, p);
        q[k] = c;
        if (!c) continue;
        for (size_t j = 0; j < den.size(); ++j)
            n[k + j] = sub(n[k + j], mul(c, den[j], p), p);
    }
    return q;
}

/// Distinct monic irreducible factors of f mod p (odd p), square parts collapsed.
inline std::vector<Poly> factor(Poly f, uint32_t p) {
    f = trim(std::move(f));
    {
        Poly d = deriv(f, p);
        if (d.empty()) {
            // f = h(x^p): same distinct factors as h
            Poly h((f.size() - 1) / p + 1, 0);
            for (size_t i = 0; i < h.size(); ++i) h[i] = f[i * p];
            return factor(h, p);
        }
        Poly g = gcd(f, d, p);
        if (g.size() > 1) {
            std::vector<Poly> a = factor(divexact(f, g, p), p);
            std::vector<Poly> b = factor(g, p);
            for (auto& fb : b)
                if (std::find(a.begin(), a.end(), fb) == a.end()) a.push_back(fb);
            std::sort(a.begin(), a.end(), [](const Poly& x, const Poly& y) {
                if (x.size() != y.size()) return x.size() < y.size();
                return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
            });
            return a;
        }
    }
    const uint32_t linv = inv(f.back(), p);
    for (auto& c : f) c = mul(c, linv, p);

    uint64_t rng = 0x9e3779b97f4a7c15ull ^ (uint64_t(p) << 20) ^ f.size();
    auto next_rand = [&rng]() {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        return rng;
    };

    std::vector<Poly> out;
    std::vector<std::pair<Poly, int>> stack;
    // distinct-degree splitting
    {
        Poly h = {0, 1};
        Poly rem = f;
        for (int d = 1; rem.size() > 1 && 2 * size_t(d) <= rem.size() - 1; ++d) {
            h = powmod(std::move(h), p, rem, p);
            Poly hx = h;
            if (hx.size() < 2) hx.resize(2, 0);
            hx[1] = sub(hx[1], 1, p);
            hx = trim(std::move(hx));
            Poly g = gcd(rem, hx, p);  // gcd with 0 yields rem itself (fully split here)
            if (g.size() > 1) {
                stack.push_back({g, d});
                rem = divexact(rem, g, p);
                h = modp_(std::move(h), rem, p);
            }
        }
        if (rem.size() > 1) stack.push_back({rem, int(rem.size()) - 1});
    }
    // equal-degree splitting (Cantor-Zassenhaus)
    while (!stack.empty()) {
        auto [g, d] = stack.back();
        stack.pop_back();
        if (int(g.size()) - 1 == d) {
            out.push_back(g);
            continue;
        }
        for (;;) {
            Poly r(size_t(2 * d) + 1, 0);
            for (auto& c : r) c = uint32_t(next_rand() % p);
            r = trim(std::move(r));
            if (r.size() <= 1) continue;
            uint64_t e = 1;
            for (int i = 0; i < d; ++i) e *= p;
            Poly b = powmod(r, (e - 1) / 2, g, p);
            if (b.empty()) continue;
            b.resize(std::max<size_t>(b.size(), 1));
            b[0] = sub(b[0], 1, p);
            b = trim(std::move(b));
            if (b.empty()) continue;
            Poly h = gcd(g, b, p);
            if (h.size() > 1 && h.size() < g.size()) {
                stack.push_back({h, d});
                stack.push_back({divexact(g, h, p), d});
                break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Poly& x, const Poly& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    });
    return out;
}

}  // namespace modp

inline bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

enum class ModMode { ResidueField, FullRing };

inline ModRing make_mod_ring(const Ring& R, uint32_t p, ModMode mode = ModMode::ResidueField) {
    if (!is_prime_u32(p)) throw DomainError("modulus must be prime");
    if (p < 3) throw DomainError("p = 2 is rejected (degenerate bilinear form mod 2)");
    modp::Poly psi(R.degree + 1);
    for (int i = 0; i <= R.degree; ++i) {
        Int c = R.minpoly[i] % p;
        if (c < 0) c += p;
        psi[i] = c.convert_to<uint32_t>();
    }
    ModRing M;
    M.p = p;
    auto facs = modp::factor(psi, p);
    if (mode == ModMode::FullRing) {
        M.modulus = psi;
        M.degree = R.degree;
        M.is_field = (facs.size() == 1 && facs[0].size() == psi.size());
    } else {
        M.modulus = facs.front();
        M.degree = int(M.modulus.size()) - 1;
        M.is_field = true;
    }
    return M;
}

inline ModElem mod_zero(const ModRing& M) { return ModElem(M.degree, 0); }

inline ModElem mod_one(const ModRing& M) {
    ModElem e(M.degree, 0);
    e[0] = 1;
    return e;
}

inline ModElem mod_add(const ModRing& M, const ModElem& a, const ModElem& b) {
    ModElem out(M.degree);
    for (int i = 0; i < M.degree; ++i) out[i] = modp::add(a[i], b[i], M.p);
    return out;
}

inline ModElem mod_sub(const ModRing& M, const ModElem& a, const ModElem& b) {
    ModElem out(M.degree);
    for (int i = 0; i < M.degree; ++i) out[i] = modp::sub(a[i], b[i], M.p);
    return out;
}

inline ModElem mod_neg(const ModRing& M, const ModElem& a) {
    ModElem out(M.degree);
    for (int i = 0; i < M.degree; ++i) out[i] = a[i] ? M.p - a[i] : 0;
    return out;
}

inline ModElem mod_mul(const ModRing& M, const ModElem& a, const ModElem& b) {
    const int d = M.degree;
    const uint32_t p = M.p;
    if (d == 1) return {modp::mul(a[0], b[0], p)};
    std::vector<uint32_t> prod(2 * d - 1, 0);
    for (int i = 0; i < d; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < d; ++j)
            prod[i + j] = uint32_t((prod[i + j] + uint64_t(a[i]) * b[j]) % p);
    }
    for (int k = 2 * d - 2; k >= d; --k) {
        const uint32_t c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        for (int j = 0; j < d; ++j)
            prod[k - d + j] = modp::sub(prod[k - d + j], modp::mul(c, M.modulus[j], p), p);
    }
    prod.resize(d);
    return prod;
}

inline bool mod_is_zero(const ModElem& a) {
    for (uint32_t c : a)
        if (c) return false;
    return true;
}

/// Ring homomorphism Z[theta] -> ModRing: theta maps to the class of x
/// (for a linear modulus, to its root).
inline ModElem reduce_mod(const Ring& R, const ModRing& M, const RingElem& a) {
    ModElem x(M.degree, 0);
    if (M.degree >= 2)
        x[1] = 1;
    else
        x[0] = M.modulus[0] ? M.p - M.modulus[0] : 0;
    ModElem acc = mod_zero(M);
    for (int i = R.degree - 1; i >= 0; --i) {
        acc = mod_mul(M, acc, x);
        Int c = a[i] % M.p;
        if (c < 0) c += M.p;
        acc[0] = modp::add(acc[0], c.convert_to<uint32_t>(), M.p);
    }
    return acc;
}

}  // namespace coxpander
