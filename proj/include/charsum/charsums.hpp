// SPDX-License-Identifier: Apache-2.0
//
// Scalar exponential sums: Gauss sums G(chi,lambda), Kloosterman sums
// K_lambda(x,y), hyper-Kloosterman sums f_lambda(x) (brute force and via
// Fourier inversion over the multiplicative character group), the unitary
// sums G_1/G_2 over the norm-1 subgroup of F_{q^2}, and the two bounds
//   deligne(n,q) = n q^{(n-1)/2}
//   fulman(n,q)  = (1 - 1/(q-1)) q^{n/2} + 1/(q-1).
// Identities are checked in exact cyclotomic arithmetic; doubles appear only
// in bound comparisons.

#pragma once

#include "charsum/characters.hpp"
#include "charsum/cyclotomic.hpp"
#include "charsum/ffield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace charsum {

constexpr long long kHyperKloostermanTermCap = 10'000'000;

/// G(chi,lambda) = sum over x in F_q^* of chi(x) lambda(x).
inline CycNum gauss_sum(const MultChar& chi, const AddChar& lam) {
    if (&chi.field() != &lam.field()) throw std::invalid_argument("gauss_sum: field mismatch");
    const Field& F = chi.field();
    CycNum acc = CycNum::zero();
    for (long e = 0; e < F.q() - 1; ++e) {
        const Field::code_t x = F.exp(e);
        acc += chi(x) * lam(x);
    }
    return acc;
}

/// K_lambda(x,y) = sum over alpha in F_q^* of lambda(x alpha + y/alpha).
inline CycNum kloosterman(const AddChar& lam, Field::code_t x, Field::code_t y) {
    if (x == 0 || y == 0) throw std::invalid_argument("kloosterman: x and y must be nonzero");
    const Field& F = lam.field();
    std::vector<long long> counts(F.p(), 0);
    for (Field::code_t a = 1; a < static_cast<Field::code_t>(F.q()); ++a) {
        const Field::code_t arg = F.add(F.mul(x, a), F.div(y, a));
        ++counts[F.trace_to_prime(F.mul(lam.scale(), arg))];
    }
    CycNum acc = CycNum::zero();
    for (long t = 0; t < F.p(); ++t)
        if (counts[t]) acc += zeta(F.p(), t) * Rational(counts[t]);
    return acc;
}

/// f_lambda(x): the (n-1)-fold hyper-Kloosterman sum
/// sum over alpha_1..alpha_{n-1} in F_q^* of
/// lambda(alpha_1 + ... + alpha_{n-1} + x / (alpha_1 ... alpha_{n-1})).
/// For n = 1 the empty-product convention yields lambda(x).
inline CycNum hyper_kloosterman(const AddChar& lam, Field::code_t x, long n) {
    if (x == 0) throw std::invalid_argument("hyper_kloosterman: x must be nonzero");
    if (lam.is_trivial()) throw std::invalid_argument("hyper_kloosterman: lambda must be nontrivial");
    if (n < 1) throw std::invalid_argument("hyper_kloosterman: n must be >= 1");
    const Field& F = lam.field();
    double terms = std::pow(static_cast<double>(F.q() - 1), static_cast<double>(n - 1));
    if (terms > static_cast<double>(kHyperKloostermanTermCap))
        throw std::invalid_argument("hyper_kloosterman: (q-1)^(n-1) exceeds the term cap");

    std::vector<long long> counts(F.p(), 0);
    // Depth-first over the (n-1)-tuple, carrying the partial sum and product.
    auto rec = [&](auto&& self, long depth, Field::code_t sum, Field::code_t prod) -> void {
        if (depth == n - 1) {
            const Field::code_t arg = F.add(sum, F.mul(x, F.inv(prod)));
            ++counts[F.trace_to_prime(F.mul(lam.scale(), arg))];
            return;
        }
        for (Field::code_t a = 1; a < static_cast<Field::code_t>(F.q()); ++a)
            self(self, depth + 1, F.add(sum, a), F.mul(prod, a));
    };
    rec(rec, 0, 0, 1);

    CycNum acc = CycNum::zero();
    for (long t = 0; t < F.p(); ++t)
        if (counts[t]) acc += zeta(F.p(), t) * Rational(counts[t]);
    return acc;
}

/// Fourier-inversion route: f_lambda(x) = (1/(q-1)) sum over all chi of
/// conj(chi)(x) G(lambda,chi)^n. Must equal hyper_kloosterman exactly.
inline CycNum hyper_kloosterman_fourier(const AddChar& lam, Field::code_t x, long n) {
    if (x == 0) throw std::invalid_argument("hyper_kloosterman_fourier: x must be nonzero");
    if (lam.is_trivial())
        throw std::invalid_argument("hyper_kloosterman_fourier: lambda must be nontrivial");
    if (n < 1) throw std::invalid_argument("hyper_kloosterman_fourier: n must be >= 1");
    const Field& F = lam.field();
    CycNum acc = CycNum::zero();
    for (long j = 0; j < F.q() - 1; ++j) {
        const MultChar chi(F, j);
        acc += conj(chi(x)) * gauss_sum(chi, lam).pow(static_cast<unsigned>(n));
    }
    return acc * Rational(1, F.q() - 1);
}

/// Deligne's bound n q^{(n-1)/2} on |f_lambda(x)|.
inline double deligne_bound(long n, long q) {
    if (n < 2) throw std::invalid_argument("deligne_bound: n must be >= 2");
    return static_cast<double>(n) *
           std::pow(static_cast<double>(q), (static_cast<double>(n) - 1.0) / 2.0);
}

/// The Fourier-analytic bound (1 - 1/(q-1)) q^{n/2} + 1/(q-1); the rational
/// parts are exact, combined with q^{n/2} in double precision.
inline double fulman_bound(long n, long q) {
    if (n < 2) throw std::invalid_argument("fulman_bound: n must be >= 2");
    if (q < 2) throw std::invalid_argument("fulman_bound: q must be >= 2");
    const Rational coeff = Rational(q - 2, q - 1);
    const Rational tail = Rational(1, q - 1);
    return to_double(coeff) * std::pow(static_cast<double>(q), static_cast<double>(n) / 2.0) +
           to_double(tail);
}

namespace detail {

// Codes of the norm-1 subgroup {alpha : alpha^{q+1} = 1} of a field of order
// q^2: the powers g^{(q-1)t}, t = 0..q.
inline std::vector<Field::code_t> norm_one_subgroup(const Field& F2) {
    const long qsub = F2.subfield_order();
    std::vector<Field::code_t> r;
    r.reserve(qsub + 1);
    for (long t = 0; t <= qsub; ++t) r.push_back(F2.exp((qsub - 1) * t));
    return r;
}

} // namespace detail

/// G_1(chi,lambda) = sum over alpha^{q+1} = 1 of chi(-alpha) lambda(-alpha),
/// a (q+1)-term sum over the norm-1 subgroup of F_{q^2}.
inline CycNum g1(const MultChar& chi, const AddChar& lam) {
    if (&chi.field() != &lam.field()) throw std::invalid_argument("g1: field mismatch");
    const Field& F2 = chi.field();
    CycNum acc = CycNum::zero();
    for (Field::code_t alpha : detail::norm_one_subgroup(F2)) {
        const Field::code_t na = F2.neg(alpha);
        acc += chi(na) * lam(na);
    }
    return acc;
}

/// G_2(chi,lambda) = sum over alpha^{q+1} = 1 of chi(alpha) times the sum of
/// lambda(-beta) over beta with beta^{q-1} = alpha^q or beta = 0. The inner
/// fiber has exactly q elements for every alpha.
inline CycNum g2(const MultChar& chi, const AddChar& lam) {
    if (&chi.field() != &lam.field()) throw std::invalid_argument("g2: field mismatch");
    const Field& F2 = chi.field();
    const long qsub = F2.subfield_order();
    CycNum acc = CycNum::zero();
    for (Field::code_t alpha : detail::norm_one_subgroup(F2)) {
        const Field::code_t target = F2.pow(alpha, qsub);
        CycNum inner = CycNum::one();  // beta = 0 contributes lambda(0) = 1
        long fiber = 1;
        for (Field::code_t beta = 1; beta < static_cast<Field::code_t>(F2.q()); ++beta) {
            if (F2.pow(beta, qsub - 1) != target) continue;
            inner += lam(F2.neg(beta));
            ++fiber;
        }
        if (fiber != qsub + 1) throw std::logic_error("g2: inner fiber is not of size q");
        acc += chi(alpha) * inner;
    }
    return acc;
}

/// One row of the bound comparison: both bounds and the observed maximum of
/// |f_lambda(x)| over x in F_q^*, with the maximizing x.
struct BoundRow {
    long n = 0;
    long q = 0;
    double deligne = 0.0;
    double fulman = 0.0;
    double max_actual = 0.0;
    Field::code_t argmax_x = 0;
    std::string argmax_str;
};

/// Materializes the bound comparison for the canonical nontrivial lambda,
/// rows sorted by (q, n).
inline std::vector<BoundRow> bound_table(std::vector<long> n_set, std::vector<long> q_set) {
    std::sort(n_set.begin(), n_set.end());
    std::sort(q_set.begin(), q_set.end());
    std::vector<BoundRow> rows;
    for (long q : q_set) {
        auto F = make_field_q(q);
        const AddChar lam(*F, 1);
        for (long n : n_set) {
            BoundRow row;
            row.n = n;
            row.q = q;
            row.deligne = deligne_bound(n, q);
            row.fulman = fulman_bound(n, q);
            for (Field::code_t x = 1; x < static_cast<Field::code_t>(q); ++x) {
                const double v = std::abs(to_complex(hyper_kloosterman(lam, x, n)));
                if (v > row.max_actual) {
                    row.max_actual = v;
                    row.argmax_x = x;
                }
            }
            row.argmax_str = F->code_str(row.argmax_x);
            rows.push_back(row);
        }
    }
    return rows;
}

namespace detail {

inline std::string format_double(double v) {
    std::ostringstream ss;
    ss.precision(10);
    ss << v;
    return ss.str();
}

} // namespace detail

inline std::string bound_table_csv(const std::vector<BoundRow>& rows) {
    std::string out = "n,q,deligne,fulman,max_actual,argmax_x\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + "," + std::to_string(r.q) + "," +
               detail::format_double(r.deligne) + "," + detail::format_double(r.fulman) + "," +
               detail::format_double(r.max_actual) + "," + r.argmax_str + "\n";
    }
    return out;
}

inline std::string bound_table_json(const std::vector<BoundRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"n", r.n},
                       {"q", r.q},
                       {"deligne", r.deligne},
                       {"fulman", r.fulman},
                       {"max_actual", r.max_actual},
                       {"argmax_x", r.argmax_str}});
    }
    return arr.dump();
}

} // namespace charsum
