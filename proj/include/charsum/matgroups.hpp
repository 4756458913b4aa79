// SPDX-License-Identifier: Apache-2.0
//
// Enumeration of GL(n,q) and U(n,q) at desk scale, with joint histograms of
// (det, tr) and (tr g, tr g^{-1}). One enumeration pass per (n,q) serves all
// character sweeps: a full (q-1) x q character grid against a 10^6-element
// group would otherwise multiply the enumeration cost a thousandfold.
// Histogram counts are arbitrary-precision integers.

#pragma once

#include "charsum/characters.hpp"
#include "charsum/cyclotomic.hpp"
#include "charsum/ffield.hpp"
#include "charsum/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace charsum {

constexpr long long kEnumerationCap = 20'000'000;

/// n x n matrix over a field, row-major codes.
struct SquareMatrix {
    const Field* f = nullptr;
    long n = 0;
    std::vector<Field::code_t> a;

    SquareMatrix() = default;
    SquareMatrix(const Field& field, long dim)
        : f(&field), n(dim), a(static_cast<std::size_t>(dim * dim), 0) {}
    SquareMatrix(const Field& field, long dim, std::vector<Field::code_t> entries)
        : f(&field), n(dim), a(std::move(entries)) {
        if (static_cast<long>(a.size()) != n * n)
            throw std::invalid_argument("SquareMatrix: entry count must be n^2");
    }

    Field::code_t& at(long i, long j) { return a[i * n + j]; }
    Field::code_t at(long i, long j) const { return a[i * n + j]; }

    static SquareMatrix identity(const Field& field, long dim) {
        SquareMatrix m(field, dim);
        for (long i = 0; i < dim; ++i) m.at(i, i) = 1;
        return m;
    }

    friend bool operator==(const SquareMatrix& x, const SquareMatrix& y) {
        return x.f == y.f && x.n == y.n && x.a == y.a;
    }
};

inline SquareMatrix mat_mul(const SquareMatrix& x, const SquareMatrix& y) {
    if (x.f != y.f || x.n != y.n) throw std::invalid_argument("mat_mul: shape/field mismatch");
    const Field& F = *x.f;
    SquareMatrix r(F, x.n);
    for (long i = 0; i < x.n; ++i)
        for (long k = 0; k < x.n; ++k) {
            const Field::code_t v = x.at(i, k);
            if (v == 0) continue;
            for (long j = 0; j < x.n; ++j)
                r.at(i, j) = F.add(r.at(i, j), F.mul(v, y.at(k, j)));
        }
    return r;
}

inline Field::code_t mat_trace(const SquareMatrix& m) {
    Field::code_t t = 0;
    for (long i = 0; i < m.n; ++i) t = m.f->add(t, m.at(i, i));
    return t;
}

namespace detail {

// Determinant by Gaussian elimination on a scratch copy; 0 when singular.
inline Field::code_t det_code(const Field& F, long n, const Field::code_t* a,
                              std::vector<Field::code_t>& scratch) {
    scratch.assign(a, a + n * n);
    Field::code_t* m = scratch.data();
    Field::code_t det = 1;
    for (long col = 0; col < n; ++col) {
        long piv = -1;
        for (long r = col; r < n; ++r)
            if (m[r * n + col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            for (long j = col; j < n; ++j) std::swap(m[piv * n + j], m[col * n + j]);
            det = F.neg(det);
        }
        const Field::code_t pv = m[col * n + col];
        det = F.mul(det, pv);
        const Field::code_t pinv = F.inv(pv);
        for (long r = col + 1; r < n; ++r) {
            const Field::code_t factor = F.mul(m[r * n + col], pinv);
            if (factor == 0) continue;
            for (long j = col; j < n; ++j)
                m[r * n + j] = F.sub(m[r * n + j], F.mul(factor, m[col * n + j]));
        }
    }
    return det;
}

// Gauss-Jordan inverse with determinant; returns false when singular.
inline bool invert_code(const Field& F, long n, const Field::code_t* a, Field::code_t* inv,
                        Field::code_t& det, std::vector<Field::code_t>& scratch) {
    scratch.assign(a, a + n * n);
    Field::code_t* m = scratch.data();
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) inv[i * n + j] = (i == j) ? 1 : 0;
    det = 1;
    for (long col = 0; col < n; ++col) {
        long piv = -1;
        for (long r = col; r < n; ++r)
            if (m[r * n + col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return false;
        if (piv != col) {
            for (long j = 0; j < n; ++j) {
                std::swap(m[piv * n + j], m[col * n + j]);
                std::swap(inv[piv * n + j], inv[col * n + j]);
            }
            det = F.neg(det);
        }
        const Field::code_t pv = m[col * n + col];
        det = F.mul(det, pv);
        const Field::code_t pinv = F.inv(pv);
        for (long j = 0; j < n; ++j) {
            m[col * n + j] = F.mul(m[col * n + j], pinv);
            inv[col * n + j] = F.mul(inv[col * n + j], pinv);
        }
        for (long r = 0; r < n; ++r) {
            if (r == col) continue;
            const Field::code_t factor = m[r * n + col];
            if (factor == 0) continue;
            for (long j = 0; j < n; ++j) {
                m[r * n + j] = F.sub(m[r * n + j], F.mul(factor, m[col * n + j]));
                inv[r * n + j] = F.sub(inv[r * n + j], F.mul(factor, inv[col * n + j]));
            }
        }
    }
    return true;
}

inline void check_enumeration_cap(long q, long n) {
    double total = std::pow(static_cast<double>(q), static_cast<double>(n * n));
    if (total > static_cast<double>(kEnumerationCap))
        throw std::invalid_argument("matrix enumeration: q^(n^2) exceeds the cap");
}

// Advances a base-q odometer; returns false once the space is exhausted.
inline bool next_matrix(std::vector<Field::code_t>& a, long q) {
    for (auto& digit : a) {
        if (static_cast<long>(++digit) < q) return true;
        digit = 0;
    }
    return false;
}

} // namespace detail

inline Field::code_t mat_det(const SquareMatrix& m) {
    std::vector<Field::code_t> scratch;
    return detail::det_code(*m.f, m.n, m.a.data(), scratch);
}

inline SquareMatrix mat_inverse(const SquareMatrix& m) {
    SquareMatrix r(*m.f, m.n);
    Field::code_t det = 0;
    std::vector<Field::code_t> scratch;
    if (!detail::invert_code(*m.f, m.n, m.a.data(), r.a.data(), det, scratch))
        throw std::invalid_argument("mat_inverse: singular matrix");
    return r;
}

/// Conjugate transpose on a field of square order: (g*)_{ij} = (g_{ji})^q.
inline SquareMatrix mat_conj_transpose(const SquareMatrix& m) {
    SquareMatrix r(*m.f, m.n);
    for (long i = 0; i < m.n; ++i)
        for (long j = 0; j < m.n; ++j) r.at(i, j) = m.f->frobenius_q(m.at(j, i));
    return r;
}

/// Visits every invertible n x n matrix over F; cap q^{n^2} <= 2*10^7.
template <class Fn>
void for_each_gl(long n, const Field& F, Fn&& fn) {
    detail::check_enumeration_cap(F.q(), n);
    const long q = F.q();
    std::vector<Field::code_t> a(n * n, 0), scratch;
    do {
        if (detail::det_code(F, n, a.data(), scratch) != 0)
            fn(SquareMatrix(F, n, a));
    } while (detail::next_matrix(a, q));
}

/// Visits every g with g J g* = J over a field of order q^2 (J defaults to
/// the identity Gram matrix); cap (q^2)^{n^2} <= 2*10^7.
template <class Fn>
void for_each_u(long n, const Field& F2, Fn&& fn, const SquareMatrix* gram = nullptr) {
    detail::check_enumeration_cap(F2.q(), n);
    const long q2 = F2.q();
    SquareMatrix J = gram ? *gram : SquareMatrix::identity(F2, n);
    std::vector<Field::code_t> a(n * n, 0);
    do {
        SquareMatrix g(F2, n, a);
        if (mat_mul(mat_mul(g, J), mat_conj_transpose(g)) == J) fn(g);
    } while (detail::next_matrix(a, q2));
}

/// Joint counts of (det g, tr g) over a group enumeration; index det*q + tr.
struct DetTraceHistogram {
    const Field* f = nullptr;
    long n = 0;
    std::vector<Int> counts;
    Int total = 0;

    const Int& at(Field::code_t det, Field::code_t tr) const { return counts[det * f->q() + tr]; }
};

/// Joint counts of (tr g, tr g^{-1}) over GL(n,q); index tr1*q + tr2.
struct TraceInvHistogram {
    const Field* f = nullptr;
    long n = 0;
    std::vector<Int> counts;
    Int total = 0;

    const Int& at(Field::code_t t1, Field::code_t t2) const { return counts[t1 * f->q() + t2]; }
};

/// One pass over GL(n,q) filling both histograms.
inline std::pair<DetTraceHistogram, TraceInvHistogram> gl_histograms(long n, const Field& F) {
    detail::check_enumeration_cap(F.q(), n);
    const long q = F.q();
    DetTraceHistogram h1{&F, n, std::vector<Int>(q * q), 0};
    TraceInvHistogram h2{&F, n, std::vector<Int>(q * q), 0};
    std::vector<Field::code_t> a(n * n, 0), inv(n * n), scratch;
    do {
        Field::code_t det = 0;
        if (!detail::invert_code(F, n, a.data(), inv.data(), det, scratch)) continue;
        Field::code_t t1 = 0, t2 = 0;
        for (long i = 0; i < n; ++i) {
            t1 = F.add(t1, a[i * n + i]);
            t2 = F.add(t2, inv[i * n + i]);
        }
        ++h1.counts[det * q + t1];
        ++h2.counts[t1 * q + t2];
        ++h1.total;
        ++h2.total;
    } while (detail::next_matrix(a, q));
    return {std::move(h1), std::move(h2)};
}

/// Det/trace histogram only (skips the inverse pass; useful at the largest
/// enumerations where tr g^{-1} is not needed).
inline DetTraceHistogram gl_det_trace_histogram(long n, const Field& F) {
    detail::check_enumeration_cap(F.q(), n);
    const long q = F.q();
    DetTraceHistogram h{&F, n, std::vector<Int>(q * q), 0};
    std::vector<Field::code_t> a(n * n, 0), scratch;
    do {
        const Field::code_t det = detail::det_code(F, n, a.data(), scratch);
        if (det == 0) continue;
        Field::code_t tr = 0;
        for (long i = 0; i < n; ++i) tr = F.add(tr, a[i * n + i]);
        ++h.counts[det * q + tr];
        ++h.total;
    } while (detail::next_matrix(a, q));
    return h;
}

/// Det/trace histogram over U(n,q) inside GL(n,q^2).
inline DetTraceHistogram u_det_trace_histogram(long n, const Field& F2,
                                               const SquareMatrix* gram = nullptr) {
    const long q2 = F2.q();
    DetTraceHistogram h{&F2, n, std::vector<Int>(q2 * q2), 0};
    std::vector<Field::code_t> scratch;
    for_each_u(
        n, F2,
        [&](const SquareMatrix& g) {
            const Field::code_t det = detail::det_code(F2, n, g.a.data(), scratch);
            Field::code_t tr = 0;
            for (long i = 0; i < n; ++i) tr = F2.add(tr, g.at(i, i));
            ++h.counts[det * q2 + tr];
            ++h.total;
        },
        gram);
    return h;
}

/// Sum of count * chi(det) * lambda(tr) over a (det, tr) histogram.
inline CycNum char_sum_over(const DetTraceHistogram& h, const MultChar& chi, const AddChar& lam) {
    const Field& F = *h.f;
    if (&chi.field() != &F || &lam.field() != &F)
        throw std::invalid_argument("char_sum_over: field mismatch");
    CycNum acc = CycNum::zero();
    for (long d = 0; d < F.q(); ++d)
        for (long t = 0; t < F.q(); ++t) {
            const Int& cnt = h.counts[d * F.q() + t];
            if (cnt == 0) continue;
            acc += chi(static_cast<Field::code_t>(d)) * lam(static_cast<Field::code_t>(t)) *
                   Rational(cnt);
        }
    return acc;
}

/// Theorem-1 sum over GL(n,q) from a precomputed histogram.
inline CycNum gl_char_sum(const DetTraceHistogram& h, const MultChar& chi, const AddChar& lam) {
    return char_sum_over(h, chi, lam);
}

/// Theorem-1 sum over GL(n,q); builds the histogram internally.
inline CycNum gl_char_sum(long n, const Field& F, const MultChar& chi, const AddChar& lam) {
    return char_sum_over(gl_det_trace_histogram(n, F), chi, lam);
}

/// Theorem-3 sum over U(n,q) from a precomputed histogram.
inline CycNum u_char_sum(const DetTraceHistogram& h, const MultChar& chi, const AddChar& lam) {
    return char_sum_over(h, chi, lam);
}

/// Theorem-3 sum over U(n,q); builds the histogram internally.
inline CycNum u_char_sum(long n, const Field& F2, const MultChar& chi, const AddChar& lam) {
    return char_sum_over(u_det_trace_histogram(n, F2), chi, lam);
}

/// Sum of lambda(tr g) over the determinant fiber det(g) = x.
inline CycNum gl_det_fiber_sum(const DetTraceHistogram& h, Field::code_t x, const AddChar& lam) {
    if (x == 0) throw std::invalid_argument("gl_det_fiber_sum: x must be nonzero");
    const Field& F = *h.f;
    CycNum acc = CycNum::zero();
    for (long t = 0; t < F.q(); ++t) {
        const Int& cnt = h.counts[x * F.q() + t];
        if (cnt == 0) continue;
        acc += lam(static_cast<Field::code_t>(t)) * Rational(cnt);
    }
    return acc;
}

inline CycNum gl_det_fiber_sum(long n, const Field& F, Field::code_t x, const AddChar& lam) {
    return gl_det_fiber_sum(gl_det_trace_histogram(n, F), x, lam);
}

/// Theorem-2 sum: lambda(x tr g + y tr g^{-1}) over GL(n,q).
inline CycNum gl_kloosterman_sum(const TraceInvHistogram& h, const AddChar& lam, Field::code_t x,
                                 Field::code_t y) {
    if (x == 0 || y == 0) throw std::invalid_argument("gl_kloosterman_sum: x, y must be nonzero");
    const Field& F = *h.f;
    CycNum acc = CycNum::zero();
    for (long t1 = 0; t1 < F.q(); ++t1)
        for (long t2 = 0; t2 < F.q(); ++t2) {
            const Int& cnt = h.counts[t1 * F.q() + t2];
            if (cnt == 0) continue;
            const Field::code_t arg =
                F.add(F.mul(x, static_cast<Field::code_t>(t1)), F.mul(y, static_cast<Field::code_t>(t2)));
            acc += lam(arg) * Rational(cnt);
        }
    return acc;
}

inline CycNum gl_kloosterman_sum(long n, const Field& F, const AddChar& lam, Field::code_t x,
                                 Field::code_t y) {
    return gl_kloosterman_sum(gl_histograms(n, F).second, lam, x, y);
}

/// |GL(n,q)| = q^{n(n-1)/2} prod_{i=1..n} (q^i - 1).
inline Int gl_order(long n, long q) {
    Int r = ipow(Int(q), static_cast<unsigned>(n * (n - 1) / 2));
    for (long i = 1; i <= n; ++i) r *= ipow(Int(q), static_cast<unsigned>(i)) - 1;
    return r;
}

/// |U(n,q)| = q^{n(n-1)/2} prod_{i=1..n} (q^i - (-1)^i).
inline Int u_order(long n, long q) {
    Int r = ipow(Int(q), static_cast<unsigned>(n * (n - 1) / 2));
    for (long i = 1; i <= n; ++i) {
        Int f = ipow(Int(q), static_cast<unsigned>(i));
        r *= (i % 2 == 1) ? Int(f + 1) : Int(f - 1);
    }
    return r;
}

/// CSV export "det,tr,count" with canonical field-element strings.
inline std::string histogram_csv(const DetTraceHistogram& h) {
    const Field& F = *h.f;
    std::string out = "det,tr,count\n";
    for (long d = 0; d < F.q(); ++d)
        for (long t = 0; t < F.q(); ++t) {
            const Int& cnt = h.counts[d * F.q() + t];
            if (cnt == 0) continue;
            out += F.code_str(static_cast<Field::code_t>(d)) + "," +
                   F.code_str(static_cast<Field::code_t>(t)) + "," + cnt.str() + "\n";
        }
    return out;
}

} // namespace charsum
