// SPDX-License-Identifier: Apache-2.0
//
// Polynomial-side machinery behind the generating-function identities:
// monic/irreducible enumeration over F_q, the coefficient-reversal involution
// on polynomials with nonzero constant term, truncated Euler-factor sums, and
// exact coefficient extraction for the infinite products
//   prod_{i>=1} (1 + u G/q^i),
//   prod_{i>=1} (1 + u K/q^i + q u^2/q^{2i}),
//   prod_{i>=1} (1 + (-1)^{i+1} u G1/q^i + u^2 G2/q^{2i}).
// The products are never truncated at finite i: coefficients come from the
// self-similarity under u -> u/q, which yields exact recurrences.

#pragma once

#include "charsum/characters.hpp"
#include "charsum/cyclotomic.hpp"
#include "charsum/ffield.hpp"
#include "charsum/rational.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace charsum {

constexpr long long kMonicEnumerationCap = 10'000'000;

/// The first N+1 coefficients of a power series in u; the currency of all
/// generating-function checks.
struct SeriesPrefix {
    long N = 0;
    std::vector<CycNum> c;

    SeriesPrefix() : c(1) {}
    explicit SeriesPrefix(long trunc) : N(trunc), c(trunc + 1) {}

    static SeriesPrefix one(long trunc) {
        SeriesPrefix s(trunc);
        s.c[0] = CycNum::one();
        return s;
    }

    SeriesPrefix& operator+=(const SeriesPrefix& o) {
        if (N != o.N) throw std::invalid_argument("SeriesPrefix: truncation mismatch");
        for (long i = 0; i <= N; ++i) c[i] += o.c[i];
        return *this;
    }

    friend SeriesPrefix operator*(const SeriesPrefix& a, const SeriesPrefix& b) {
        if (a.N != b.N) throw std::invalid_argument("SeriesPrefix: truncation mismatch");
        SeriesPrefix r(a.N);
        for (long i = 0; i <= a.N; ++i) {
            if (a.c[i].is_zero()) continue;
            for (long j = 0; i + j <= a.N; ++j) {
                if (b.c[j].is_zero()) continue;
                r.c[i + j] += a.c[i] * b.c[j];
            }
        }
        return r;
    }

    friend bool operator==(const SeriesPrefix& a, const SeriesPrefix& b) {
        if (a.N != b.N) return false;
        for (long i = 0; i <= a.N; ++i)
            if (a.c[i] != b.c[i]) return false;
        return true;
    }
    friend bool operator!=(const SeriesPrefix& a, const SeriesPrefix& b) { return !(a == b); }

    std::string str() const {
        std::string s = "[";
        for (long i = 0; i <= N; ++i) s += (i ? " | " : "") + c[i].str();
        return s + "]";
    }
};

/// Visits all q^d monic degree-d polynomials, or the q^{d-1}(q-1) ones with
/// nonzero constant term when flagged. Degree 0 yields the constant 1.
template <class Fn>
void for_each_monic(const Field& F, long d, bool exclude_zero_constant, Fn&& fn) {
    if (d < 0) throw std::invalid_argument("for_each_monic: negative degree");
    if (std::pow(static_cast<double>(F.q()), static_cast<double>(d)) >
        static_cast<double>(kMonicEnumerationCap))
        throw std::invalid_argument("for_each_monic: q^d exceeds the cap");
    if (d == 0) {
        fn(MonicPoly(F, {}));
        return;
    }
    const long q = F.q();
    std::vector<Field::code_t> c(d, 0);
    if (exclude_zero_constant) c[0] = 1;
    for (;;) {
        fn(MonicPoly(F, c));
        long i = 0;
        while (i < d) {
            if (static_cast<long>(++c[i]) < q) break;
            c[i] = (i == 0 && exclude_zero_constant) ? 1 : 0;
            ++i;
        }
        if (i == d) return;
    }
}

namespace detail {

// Remainder of (monic) P by monic divisor D, as raw little-endian coefficients
// including leading entries; result has length deg(D).
inline bool monic_divisible(const MonicPoly& P, const MonicPoly& D) {
    const Field& F = *P.f;
    const long dp = P.degree(), dd = D.degree();
    if (dd > dp) return false;
    std::vector<Field::code_t> r(P.c);
    r.push_back(1);
    for (long t = dp; t >= dd; --t) {
        const Field::code_t c = r[t];
        if (c == 0) continue;
        r[t] = 0;
        for (long j = 0; j < dd; ++j) r[t - dd + j] = F.sub(r[t - dd + j], F.mul(c, D.c[j]));
    }
    for (long j = 0; j < dd; ++j)
        if (r[j] != 0) return false;
    return true;
}

} // namespace detail

/// Exact quotient of P by a monic divisor D; throws when D does not divide P.
inline MonicPoly monic_divexact(const MonicPoly& P, const MonicPoly& D) {
    const Field& F = *P.f;
    const long dp = P.degree(), dd = D.degree();
    if (dd > dp) throw std::invalid_argument("monic_divexact: divisor degree too large");
    std::vector<Field::code_t> r(P.c), quot(dp - dd + 1, 0);
    r.push_back(1);
    for (long t = dp; t >= dd; --t) {
        const Field::code_t c = r[t];
        if (c == 0) continue;
        quot[t - dd] = c;
        r[t] = 0;
        for (long j = 0; j < dd; ++j) r[t - dd + j] = F.sub(r[t - dd + j], F.mul(c, D.c[j]));
    }
    for (long j = 0; j < dd; ++j)
        if (r[j] != 0) throw std::invalid_argument("monic_divexact: not divisible");
    quot.pop_back();  // drop the leading 1
    return MonicPoly(F, std::move(quot));
}

inline long moebius(long n) {
    long mu = 1;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

/// Count of monic irreducible degree-d polynomials over F_q:
/// (1/d) sum_{e|d} mu(e) q^{d/e}.
inline Int irreducible_count(long q, long d) {
    Int acc = 0;
    for (long e = 1; e <= d; ++e)
        if (d % e == 0) acc += moebius(e) * ipow(Int(q), static_cast<unsigned>(d / e));
    return acc / d;
}

/// Per-degree lists of monic irreducibles up to degree D, sorted by
/// coefficient sequence (low-degree coefficient first). by_degree[d] holds
/// degree d; index 0 is unused.
struct IrreduciblesTable {
    const Field* f = nullptr;
    long D = 0;
    std::vector<std::vector<MonicPoly>> by_degree;
};

namespace detail {

inline bool irreducible_against(const MonicPoly& P, const IrreduciblesTable& table) {
    const long d = P.degree();
    for (long dd = 1; 2 * dd <= d; ++dd)
        for (const auto& phi : table.by_degree[dd])
            if (monic_divisible(P, phi)) return false;
    return true;
}

inline void sort_canonical(std::vector<MonicPoly>& list) {
    std::sort(list.begin(), list.end(),
              [](const MonicPoly& a, const MonicPoly& b) { return a.c < b.c; });
}

inline std::string irreducibles_cache_name(const Field& F, long D) {
    return "irr_p" + std::to_string(F.p()) + "_k" + std::to_string(F.k()) + "_D" +
           std::to_string(D) + ".txt";
}

// Cache lines are "d c_0 ... c_{d-1}" per irreducible; a load is accepted
// only when every per-degree count matches the necklace formula.
inline bool irreducibles_cache_load(const Field& F, long D, IrreduciblesTable& out) {
    auto dir = cache_dir();
    if (dir.empty()) return false;
    std::ifstream in(dir / irreducibles_cache_name(F, D));
    if (!in) return false;
    IrreduciblesTable table{&F, D, std::vector<std::vector<MonicPoly>>(D + 1)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        long d;
        if (!(ss >> d) || d < 1 || d > D) return false;
        std::vector<Field::code_t> coeffs;
        long c;
        while (ss >> c) {
            if (c < 0 || c >= F.q()) return false;
            coeffs.push_back(static_cast<Field::code_t>(c));
        }
        if (static_cast<long>(coeffs.size()) != d) return false;
        table.by_degree[d].emplace_back(F, std::move(coeffs));
    }
    for (long d = 1; d <= D; ++d)
        if (Int(table.by_degree[d].size()) != irreducible_count(F.q(), d)) return false;
    for (long d = 1; d <= D; ++d) sort_canonical(table.by_degree[d]);
    out = std::move(table);
    return true;
}

inline void irreducibles_cache_store(const Field& F, const IrreduciblesTable& table) {
    auto dir = cache_dir();
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(dir / irreducibles_cache_name(F, table.D));
    if (!out) return;
    for (long d = 1; d <= table.D; ++d)
        for (const auto& phi : table.by_degree[d]) {
            out << d;
            for (auto c : phi.c) out << " " << c;
            out << "\n";
        }
}

} // namespace detail

/// Sieve of all monic irreducibles of degree <= D (z included at degree 1);
/// per-degree counts are checked against the necklace formula.
inline IrreduciblesTable irreducibles_table(const Field& F, long D) {
    IrreduciblesTable cached;
    if (detail::irreducibles_cache_load(F, D, cached)) return cached;

    IrreduciblesTable table{&F, D, std::vector<std::vector<MonicPoly>>(D + 1)};
    for (long d = 1; d <= D; ++d) {
        auto& list = table.by_degree[d];
        for_each_monic(F, d, false, [&](const MonicPoly& P) {
            if (d == 1 || detail::irreducible_against(P, table)) list.push_back(P);
        });
        detail::sort_canonical(list);
        if (Int(list.size()) != irreducible_count(F.q(), d))
            throw std::logic_error("irreducibles_table: sieve count mismatch");
    }
    detail::irreducibles_cache_store(F, table);
    return table;
}

/// True iff P has no monic factor of degree in [1, deg/2]; trial division
/// against the irreducibles of lower degree. Degree-1 polynomials are
/// always irreducible.
inline bool is_irreducible(const MonicPoly& P) {
    const long d = P.degree();
    if (d < 1) throw std::invalid_argument("is_irreducible: degree must be >= 1");
    if (d == 1) return true;
    const auto table = irreducibles_table(*P.f, d / 2);
    return detail::irreducible_against(P, table);
}

/// The coefficient-reversal involution on polynomials over F_{q^2} with
/// nonzero constant term: coefficient i of the image is
/// (alpha_{m-i} / alpha_0)^q with alpha_m = 1. Multiplicative and involutive.
inline MonicPoly poly_involution(const MonicPoly& P) {
    const Field& F2 = *P.f;
    const long m = P.degree();
    if (P.constant_term() == 0)
        throw std::invalid_argument("poly_involution: constant term must be nonzero");
    if (m == 0) return P;
    const Field::code_t c0inv = F2.inv(P.c[0]);
    std::vector<Field::code_t> img(m);
    img[0] = F2.frobenius_q(c0inv);
    for (long i = 1; i < m; ++i) img[i] = F2.frobenius_q(F2.mul(P.c[m - i], c0inv));
    return MonicPoly(F2, std::move(img));
}

/// Exhaustive count of monic degree-m P over F_{q^2} with P(0) != 0 fixed by
/// the involution; the closed form is q^m + q^{m-1}.
inline long long count_invariant(const Field& F2, long m) {
    long long count = 0;
    for_each_monic(F2, m, true, [&](const MonicPoly& P) {
        if (poly_involution(P) == P) ++count;
    });
    return count;
}

/// Degrees <= D at which involution-invariant irreducibles exist (only odd
/// degrees can appear).
inline std::set<long> invariant_irreducible_degrees(const Field& F2, long D) {
    std::set<long> degrees;
    const auto table = irreducibles_table(F2, D);
    for (long d = 1; d <= D; ++d)
        for (const auto& phi : table.by_degree[d]) {
            if (phi.constant_term() == 0) continue;  // skip z
            if (poly_involution(phi) == phi) {
                degrees.insert(d);
                break;
            }
        }
    return degrees;
}

/// Truncated Euler factor for the GL generating function at level i:
/// sum over monic P with P(0) != 0 of chi(P) lambda(P) u^{deg P} / q^{i deg P}.
/// Lemma: equals (1-u/q^i)/(1-u/q^{i-1}) (both trivial), 1 (lambda trivial,
/// chi nontrivial), or 1 + u G(chi,lambda)/q^i (lambda nontrivial).
inline SeriesPrefix euler_factor_gl(const MultChar& chi, const AddChar& lam, long i, long N) {
    if (&chi.field() != &lam.field()) throw std::invalid_argument("euler_factor_gl: field mismatch");
    const Field& F = chi.field();
    const long q = F.q();
    SeriesPrefix s = SeriesPrefix::one(N);
    for (long d = 1; d <= N; ++d) {
        // chi(P) lambda(P) depends only on (c_0, c_{d-1}); count those pairs.
        std::vector<long long> counts(q * q, 0);
        for_each_monic(F, d, true,
                       [&](const MonicPoly& P) { ++counts[P.c[0] * q + P.c[d - 1]]; });
        CycNum coeff = CycNum::zero();
        for (long c0 = 1; c0 < q; ++c0)
            for (long ct = 0; ct < q; ++ct) {
                const long long cnt = counts[c0 * q + ct];
                if (cnt == 0) continue;
                Field::code_t arg = static_cast<Field::code_t>(c0);
                if (d % 2 != 0) arg = F.neg(arg);
                coeff += chi(arg) * lam(F.neg(static_cast<Field::code_t>(ct))) * Rational(cnt);
            }
        s.c[d] = coeff * Rational(Int(1), ipow(Int(q), static_cast<unsigned>(i * d)));
    }
    return s;
}

/// Truncated Euler factor for the GL Kloosterman generating function:
/// sum over monic P with P(0) != 0 of tau(P) u^{deg P} / q^{i deg P}.
/// Lemma: equals 1 + u K_lambda(x,y)/q^i + q u^2/q^{2i} exactly.
inline SeriesPrefix euler_factor_kloost(const AddChar& lam, Field::code_t x, Field::code_t y,
                                        long i, long N) {
    if (x == 0 || y == 0) throw std::invalid_argument("euler_factor_kloost: x, y must be nonzero");
    const Field& F = lam.field();
    SeriesPrefix s = SeriesPrefix::one(N);
    for (long d = 1; d <= N; ++d) {
        CycNum acc = CycNum::zero();
        for_each_monic(F, d, true, [&](const MonicPoly& P) { acc += tau_of_poly(lam, x, y, P); });
        s.c[d] = acc * Rational(Int(1), ipow(Int(F.q()), static_cast<unsigned>(i * d)));
    }
    return s;
}

enum class Sign { plus, minus };

/// Truncated Euler factor for the unitary generating function: sum over
/// involution-invariant monic P over F_{q^2} with P(0) != 0 of
/// chi(P) lambda(P) (+-u)^{deg P} / q^{i deg P}.
/// Lemma: equals 1 +- u G1/q^i + u^2 G2/q^{2i} exactly.
inline SeriesPrefix euler_factor_unitary(const MultChar& chi, const AddChar& lam, long i, long N,
                                         Sign sign) {
    if (&chi.field() != &lam.field())
        throw std::invalid_argument("euler_factor_unitary: field mismatch");
    const Field& F2 = chi.field();
    const long qsub = F2.subfield_order();
    SeriesPrefix s = SeriesPrefix::one(N);
    for (long d = 1; d <= N; ++d) {
        CycNum acc = CycNum::zero();
        for_each_monic(F2, d, true, [&](const MonicPoly& P) {
            if (poly_involution(P) != P) return;
            acc += chi_of_poly(chi, P) * lambda_of_poly(lam, P);
        });
        Rational scale(Int(1), ipow(Int(qsub), static_cast<unsigned>(i * d)));
        if (sign == Sign::minus && d % 2 != 0) scale = -scale;
        s.c[d] = acc * scale;
    }
    return s;
}

namespace detail {

// 1/(1 - w u^d) truncated at N.
inline SeriesPrefix geometric_factor(long N, long d, const CycNum& w) {
    SeriesPrefix s = SeriesPrefix::one(N);
    CycNum pw = CycNum::one();
    for (long t = 1; t * d <= N; ++t) {
        pw *= w;
        s.c[t * d] = pw;
    }
    return s;
}

} // namespace detail

/// Truncated product over irreducibles phi != z of degree <= N of
/// 1/(1 - chi(phi) lambda(phi) u^{deg phi} / q^{i deg phi}); agrees with
/// euler_factor_gl coefficient-by-coefficient up to u^N.
inline SeriesPrefix euler_product_gl(const MultChar& chi, const AddChar& lam, long i, long N,
                                     const IrreduciblesTable& table) {
    const Field& F = chi.field();
    SeriesPrefix prod = SeriesPrefix::one(N);
    for (long d = 1; d <= std::min(N, table.D); ++d)
        for (const auto& phi : table.by_degree[d]) {
            if (phi.constant_term() == 0) continue;
            const CycNum w = chi_of_poly(chi, phi) * lambda_of_poly(lam, phi) *
                             Rational(Int(1), ipow(Int(F.q()), static_cast<unsigned>(i * d)));
            prod = prod * detail::geometric_factor(N, d, w);
        }
    return prod;
}

/// Same truncated product with tau(phi) weights.
inline SeriesPrefix euler_product_kloost(const AddChar& lam, Field::code_t x, Field::code_t y,
                                         long i, long N, const IrreduciblesTable& table) {
    const Field& F = lam.field();
    SeriesPrefix prod = SeriesPrefix::one(N);
    for (long d = 1; d <= std::min(N, table.D); ++d)
        for (const auto& phi : table.by_degree[d]) {
            if (phi.constant_term() == 0) continue;
            const CycNum w = tau_of_poly(lam, x, y, phi) *
                             Rational(Int(1), ipow(Int(F.q()), static_cast<unsigned>(i * d)));
            prod = prod * detail::geometric_factor(N, d, w);
        }
    return prod;
}

/// Truncated two-sided product over invariant irreducibles and unordered
/// pairs {phi, tilde(phi)}; matches euler_factor_unitary up to u^N.
inline SeriesPrefix euler_product_unitary(const MultChar& chi, const AddChar& lam, long i, long N,
                                          Sign sign, const IrreduciblesTable& table) {
    const Field& F2 = chi.field();
    const long qsub = F2.subfield_order();
    SeriesPrefix prod = SeriesPrefix::one(N);
    for (long d = 1; d <= std::min(N, table.D); ++d)
        for (const auto& phi : table.by_degree[d]) {
            if (phi.constant_term() == 0) continue;
            const MonicPoly psi = poly_involution(phi);
            if (psi == phi) {
                CycNum w = chi_of_poly(chi, phi) * lambda_of_poly(lam, phi) *
                           Rational(Int(1), ipow(Int(qsub), static_cast<unsigned>(i * d)));
                if (sign == Sign::minus && d % 2 != 0) w = -w;
                prod = prod * detail::geometric_factor(N, d, w);
            } else if (phi.c < psi.c) {
                // count each unordered pair once; the sign never enters since
                // the pair contributes at even powers of u
                const CycNum w = chi_of_poly(chi, phi) * chi_of_poly(chi, psi) *
                                 lambda_of_poly(lam, phi) * lambda_of_poly(lam, psi) *
                                 Rational(Int(1), ipow(Int(qsub), static_cast<unsigned>(2 * i * d)));
                prod = prod * detail::geometric_factor(N, 2 * d, w);
            }
        }
    return prod;
}

/// Exact coefficients of prod_{i>=1} (1 + u G/q^i) via the functional
/// equation P(u) = (1 + u G/q) P(u/q): p_n = G p_{n-1} / (q^n - 1).
inline SeriesPrefix product_coeffs_gl(const CycNum& G, long q, long N) {
    SeriesPrefix s = SeriesPrefix::one(N);
    for (long n = 1; n <= N; ++n)
        s.c[n] = s.c[n - 1] * G * Rational(Int(1), ipow(Int(q), static_cast<unsigned>(n)) - 1);
    return s;
}

/// Exact coefficients of prod_{i>=1} (1 + u K/q^i + q u^2/q^{2i}) via
/// S(u) = (1 + u K/q + u^2/q) S(u/q):
/// s_n (1 - q^{-n}) = K q^{-n} s_{n-1} + q^{-(n-1)} s_{n-2}.
inline SeriesPrefix product_coeffs_kloost(const CycNum& K, long q, long N) {
    SeriesPrefix s = SeriesPrefix::one(N);
    const Int qi(q);
    for (long n = 1; n <= N; ++n) {
        const Int qn = ipow(qi, static_cast<unsigned>(n));
        CycNum acc = s.c[n - 1] * K * Rational(Int(1), qn);
        if (n >= 2) acc += s.c[n - 2] * Rational(qi, qn);  // q^{-(n-1)}
        s.c[n] = acc * Rational(qn, qn - 1);               // divide by 1 - q^{-n}
    }
    return s;
}

/// Exact coefficients of Q(u) = prod_{i>=1} (1 + (-1)^{i+1} u G1/q^i
/// + u^2 G2/q^{2i}) via the coupled system
///   Q(u) = (1 + u G1/q + u^2 G2/q^2) R(u/q),
///   R(u) = (1 - u G1/q + u^2 G2/q^2) Q(u/q),
/// where R flips every odd-level sign; each degree n solves a 2x2 system
/// with determinant 1 - q^{-2n} != 0.
inline SeriesPrefix product_coeffs_unitary(const CycNum& G1, const CycNum& G2, long q, long N) {
    SeriesPrefix Q = SeriesPrefix::one(N), R = SeriesPrefix::one(N);
    const Int qi(q);
    for (long n = 1; n <= N; ++n) {
        const Int qn = ipow(qi, static_cast<unsigned>(n));
        const Rational qinv(Int(1), qn);
        CycNum A = G1 * R.c[n - 1] * qinv;
        CycNum B = (-G1) * Q.c[n - 1] * qinv;
        if (n >= 2) {
            A += G2 * R.c[n - 2] * qinv;
            B += G2 * Q.c[n - 2] * qinv;
        }
        const Rational scale(qn * qn, qn * qn - 1);  // 1/(1 - q^{-2n})
        Q.c[n] = (A + B * qinv) * scale;
        R.c[n] = (B + A * qinv) * scale;
    }
    return Q;
}

/// Checks Euler's identity prod_{i>=1} (1 +- u/q^i) =
/// sum_n (+-u)^n / ((q^n - 1) ... (q - 1)) for n <= N: the recurrence-
/// extracted coefficients must equal the closed-form terms exactly.
inline bool euler_identity_check(long q, long N, Sign sign) {
    const CycNum G(Rational(sign == Sign::plus ? 1 : -1));
    const SeriesPrefix s = product_coeffs_gl(G, q, N);
    Int denom = 1;
    for (long n = 0; n <= N; ++n) {
        if (n >= 1) denom *= ipow(Int(q), static_cast<unsigned>(n)) - 1;
        Rational expect(Int(1), denom);
        if (sign == Sign::minus && n % 2 != 0) expect = -expect;
        if (s.c[n] != CycNum(expect)) return false;
    }
    return true;
}

} // namespace charsum
