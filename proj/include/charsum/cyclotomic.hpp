// SPDX-License-Identifier: Apache-2.0
//
// Exact arithmetic in Q(zeta_m): every character-sum value in the library is
// a CycNum, a rational vector over the power basis 1, zeta, ..., zeta^{phi(m)-1}
// reduced modulo the m-th cyclotomic polynomial. The representation is
// canonical, so identity checks are structural equality with zero rounding.

#pragma once

#include "charsum/rational.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace charsum {

inline long euler_phi(long m) {
    long result = m, n = m;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            result -= result / d;
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

/// The m-th cyclotomic polynomial with exact integer coefficients
/// (c_0 ... c_phi, little-endian, monic).
struct CycPoly {
    long m = 1;
    std::vector<Int> coeffs;
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

namespace detail {

inline std::vector<Int> int_poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// Exact division by a monic divisor; throws if a remainder survives.
inline std::vector<Int> int_poly_divexact(std::vector<Int> num, const std::vector<Int>& den) {
    const long dn = static_cast<long>(num.size()) - 1;
    const long dd = static_cast<long>(den.size()) - 1;
    std::vector<Int> quot(dn - dd + 1);
    for (long t = dn; t >= dd; --t) {
        Int c = num[t];
        if (c == 0) continue;
        quot[t - dd] = c;
        for (long j = 0; j <= dd; ++j) num[t - dd + j] -= c * den[j];
    }
    for (const Int& c : num)
        if (c != 0) throw std::logic_error("int_poly_divexact: inexact division");
    return quot;
}

} // namespace detail

/// Phi_m, computed by exact division of x^m - 1 by the product of Phi_d over
/// proper divisors d of m. Memoized; safe for concurrent lookup.
inline const CycPoly& cyclotomic_poly(long m) {
    if (m < 1) throw std::invalid_argument("cyclotomic_poly: m must be >= 1");
    static std::map<long, std::unique_ptr<CycPoly>> memo;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto it = memo.find(m);
    if (it != memo.end()) return *it->second;

    std::function<const CycPoly&(long)> get = [&](long mm) -> const CycPoly& {
        auto hit = memo.find(mm);
        if (hit != memo.end()) return *hit->second;
        std::vector<Int> num(mm + 1);
        num[0] = -1;
        num[mm] = 1;
        std::vector<Int> den{1};
        for (long d = 1; d < mm; ++d)
            if (mm % d == 0) den = detail::int_poly_mul(den, get(d).coeffs);
        auto poly = std::make_unique<CycPoly>();
        poly->m = mm;
        poly->coeffs = detail::int_poly_divexact(std::move(num), den);
        return *memo.emplace(mm, std::move(poly)).first->second;
    };
    return get(m);
}

namespace detail {

// Per-m reduction data: rows[t - phi] holds x^t mod Phi_m (length phi) for
// t in [phi, max(m-1, 2*phi-2)], fully reduced, so both products and direct
// zeta exponents reduce in a single pass.
struct CycContext {
    long m = 1;
    long phi = 1;
    std::vector<std::vector<Int>> rows;
};

inline std::shared_ptr<const CycContext> cyc_context(long m) {
    static std::map<long, std::shared_ptr<const CycContext>> memo;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;

    auto ctx = std::make_shared<CycContext>();
    ctx->m = m;
    ctx->phi = euler_phi(m);
    const auto& cp = cyclotomic_poly(m).coeffs;
    const long phi = ctx->phi;
    const long tmax = std::max(m - 1, 2 * phi - 2);
    if (tmax >= phi) {
        ctx->rows.resize(tmax - phi + 1);
        std::vector<Int> base(phi);            // x^phi = -(c_0 + ... + c_{phi-1} x^{phi-1})
        for (long j = 0; j < phi; ++j) base[j] = -cp[j];
        ctx->rows[0] = base;
        for (long t = phi + 1; t <= tmax; ++t) {
            const auto& prev = ctx->rows[t - 1 - phi];
            std::vector<Int> row(phi);
            for (long j = 0; j + 1 < phi; ++j) row[j + 1] = prev[j];
            const Int& top = prev[phi - 1];    // overflow into x^phi
            if (top != 0)
                for (long j = 0; j < phi; ++j) row[j] += top * base[j];
            ctx->rows[t - phi] = std::move(row);
        }
    }
    memo.emplace(m, ctx);
    return ctx;
}

} // namespace detail

/// An exact element of Q(zeta_m). Two CycNum with the same m represent the
/// same complex number iff their coefficient vectors are equal; mixed-m
/// operands are lifted to the lcm order first.
class CycNum {
public:
    CycNum() : m_(1), c_(1) {}
    explicit CycNum(Rational r) : m_(1), c_{std::move(r)} {}
    CycNum(long m, std::vector<Rational> coeffs) : m_(m), c_(std::move(coeffs)) {
        if (static_cast<long>(c_.size()) != euler_phi(m_))
            throw std::invalid_argument("CycNum: coefficient length must be phi(m)");
    }

    static CycNum zero() { return CycNum(); }
    static CycNum one() { return CycNum(Rational(1)); }
    static CycNum from_int(const Int& v) { return CycNum(Rational(v)); }

    long order() const { return m_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    /// True when the value lies in Q (only the zeta^0 coordinate survives).
    bool is_rational() const {
        for (std::size_t j = 1; j < c_.size(); ++j)
            if (c_[j] != 0) return false;
        return true;
    }

    Rational rational_part() const { return c_[0]; }

    /// Canonical image in Q(zeta_M); requires m | M.
    CycNum lifted(long M) const;

    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    CycNum& operator*=(const Rational& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
    friend CycNum operator*(CycNum a, const Rational& s) { return a *= s; }
    friend CycNum operator*(const Rational& s, CycNum a) { return a *= s; }
    friend CycNum operator-(CycNum a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }

    friend bool operator==(const CycNum& a, const CycNum& b) {
        if (a.m_ == b.m_) return a.c_ == b.c_;
        const long M = std::lcm(a.m_, b.m_);
        return a.lifted(M).c_ == b.lifted(M).c_;
    }
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    CycNum pow(unsigned e) const {
        CycNum r = one();
        CycNum base = *this;
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    std::complex<double> to_complex() const {
        std::complex<double> acc{0.0, 0.0};
        const double theta = 8.0 * std::atan(1.0) / static_cast<double>(m_);
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            acc += to_double(c_[j]) * std::polar(1.0, theta * static_cast<double>(j));
        }
        return acc;
    }

    /// Canonical text form "m; c_0, c_1, ..." with exact rational entries.
    std::string str() const {
        std::string s = std::to_string(m_) + ";";
        for (std::size_t j = 0; j < c_.size(); ++j)
            s += (j ? ", " : " ") + charsum::to_string(c_[j]);
        return s;
    }

private:
    long m_;
    std::vector<Rational> c_;
};

/// zeta_m^e in canonical form (e taken mod m).
inline CycNum zeta(long m, long e) {
    if (m < 1) throw std::invalid_argument("zeta: m must be >= 1");
    e %= m;
    if (e < 0) e += m;
    auto ctx = detail::cyc_context(m);
    std::vector<Rational> c(ctx->phi);
    if (e < ctx->phi) {
        c[e] = 1;
    } else {
        const auto& row = ctx->rows[e - ctx->phi];
        for (long j = 0; j < ctx->phi; ++j) c[j] = Rational(row[j]);
    }
    return CycNum(m, std::move(c));
}

inline CycNum CycNum::lifted(long M) const {
    if (M == m_) return *this;
    if (M % m_ != 0) throw std::invalid_argument("CycNum::lifted: target order not a multiple");
    const long scale = M / m_;
    CycNum acc(M, std::vector<Rational>(euler_phi(M)));
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        acc += zeta(M, static_cast<long>(j) * scale) * c_[j];
    }
    return acc;
}

inline CycNum& CycNum::operator+=(const CycNum& o) {
    if (m_ != o.m_) {
        const long M = std::lcm(m_, o.m_);
        *this = lifted(M);
        return *this += o.lifted(M);
    }
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
    return *this;
}

inline CycNum& CycNum::operator-=(const CycNum& o) {
    if (m_ != o.m_) {
        const long M = std::lcm(m_, o.m_);
        *this = lifted(M);
        return *this -= o.lifted(M);
    }
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
    return *this;
}

inline CycNum& CycNum::operator*=(const CycNum& o) {
    if (m_ != o.m_) {
        const long M = std::lcm(m_, o.m_);
        *this = lifted(M);
        return *this *= o.lifted(M);
    }
    auto ctx = detail::cyc_context(m_);
    const long phi = ctx->phi;
    std::vector<Rational> conv(2 * phi - 1);
    for (long i = 0; i < phi; ++i) {
        if (c_[i] == 0) continue;
        for (long j = 0; j < phi; ++j) {
            if (o.c_[j] == 0) continue;
            conv[i + j] += c_[i] * o.c_[j];
        }
    }
    for (long t = 2 * phi - 2; t >= phi; --t) {
        if (conv[t] == 0) continue;
        const auto& row = ctx->rows[t - phi];
        for (long j = 0; j < phi; ++j)
            if (row[j] != 0) conv[j] += conv[t] * Rational(row[j]);
    }
    conv.resize(phi);
    c_ = std::move(conv);
    return *this;
}

/// Complex conjugation, the automorphism zeta_m -> zeta_m^{m-1}.
inline CycNum conj(const CycNum& a) {
    const long m = a.order();
    CycNum acc = CycNum(a.coeffs()[0]).lifted(m);
    for (std::size_t j = 1; j < a.coeffs().size(); ++j) {
        if (a.coeffs()[j] == 0) continue;
        acc += zeta(m, m - static_cast<long>(j)) * a.coeffs()[j];
    }
    return acc;
}

inline std::complex<double> to_complex(const CycNum& a) { return a.to_complex(); }

} // namespace charsum
