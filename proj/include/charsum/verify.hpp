// SPDX-License-Identifier: Apache-2.0
//
// Verification drivers: each check computes a group-side quantity by direct
// enumeration and an independent prediction (closed form, product-coefficient
// recurrence, or Euler-factor expansion), then reports exact equality.
// Reports carry both canonical values so a failure is diagnosable from the
// output alone.

#pragma once

#include "charsum/charsums.hpp"
#include "charsum/cyclotomic.hpp"
#include "charsum/ffield.hpp"
#include "charsum/matgroups.hpp"
#include "charsum/polyseries.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace charsum {

struct VerificationReport {
    std::string check;
    std::map<std::string, std::string> params;  // canonical (alphabetical) order
    bool pass = false;
    std::string lhs;
    std::string rhs;
    double elapsed_ms = 0.0;

    std::string human() const {
        std::string s = pass ? "PASS " : "FAIL ";
        s += check;
        for (const auto& [k, v] : params) s += " " + k + "=" + v;
        s += " | lhs=" + lhs + " rhs=" + rhs;
        char buf[32];
        std::snprintf(buf, sizeof(buf), " | %.2f ms", elapsed_ms);
        return s + buf;
    }

    nlohmann::json json() const {
        nlohmann::json j;
        j["check"] = check;
        j["params"] = params;
        j["status"] = pass ? "pass" : "fail";
        j["lhs"] = lhs;
        j["rhs"] = rhs;
        j["elapsed_ms"] = elapsed_ms;
        return j;
    }

    std::string json_line() const { return json().dump(); }
};

inline bool all_pass(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

namespace detail {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

using Params = std::map<std::string, std::string>;

inline VerificationReport report(std::string check, Params params, bool pass, std::string lhs,
                                 std::string rhs, double ms) {
    return VerificationReport{std::move(check), std::move(params), pass,
                              std::move(lhs),   std::move(rhs),    ms};
}

// Theorem 1 for one character pair: enumeration sum vs closed form vs
// |GL| times the product-recurrence coefficient.
inline VerificationReport check_exp_gl(const DetTraceHistogram& hist, const Int& order, long n,
                                       long q, long j, long a) {
    Stopwatch sw;
    const Field& F = *hist.f;
    const MultChar chi(F, j);
    const AddChar lam(F, static_cast<Field::code_t>(a));
    const CycNum lhs = gl_char_sum(hist, chi, lam);
    CycNum closed, series;
    if (lam.is_trivial() && chi.is_trivial()) {
        closed = CycNum::from_int(order);
        series = closed;
    } else if (lam.is_trivial()) {
        closed = CycNum::zero();
        series = closed;
    } else {
        const CycNum G = gauss_sum(chi, lam);
        closed = G.pow(static_cast<unsigned>(n)) *
                 Rational(ipow(Int(q), static_cast<unsigned>(n * (n - 1) / 2)));
        series = product_coeffs_gl(G, q, n).c[n] * Rational(order);
    }
    const bool pass = (lhs == closed) && (lhs == series);
    return report("expGL",
                  {{"n", std::to_string(n)},
                   {"q", std::to_string(q)},
                   {"chi", std::to_string(j)},
                   {"lam", std::to_string(a)}},
                  pass, lhs.str(), closed.str(), sw.ms());
}

// Theorem 2 for one (x,y): enumeration sum vs |GL| s_n.
inline VerificationReport check_kloost_gl(const TraceInvHistogram& hist, const Int& order, long n,
                                          long q, Field::code_t x, Field::code_t y) {
    Stopwatch sw;
    const Field& F = *hist.f;
    const AddChar lam(F, 1);
    const CycNum lhs = gl_kloosterman_sum(hist, lam, x, y);
    const CycNum K = kloosterman(lam, x, y);
    const CycNum rhs = product_coeffs_kloost(K, q, n).c[n] * Rational(order);
    return report("kloostGL",
                  {{"n", std::to_string(n)},
                   {"q", std::to_string(q)},
                   {"x", F.code_str(x)},
                   {"y", F.code_str(y)}},
                  lhs == rhs, lhs.str(), rhs.str(), sw.ms());
}

// Theorem 3 for one character pair: enumeration sum vs |U| q_n.
inline VerificationReport check_produ(const DetTraceHistogram& hist, const Int& order, long n,
                                      long q, long j, long a) {
    Stopwatch sw;
    const Field& F2 = *hist.f;
    const MultChar chi(F2, j);
    const AddChar lam(F2, static_cast<Field::code_t>(a));
    const CycNum lhs = u_char_sum(hist, chi, lam);
    const CycNum G1 = g1(chi, lam), G2 = g2(chi, lam);
    const CycNum rhs = product_coeffs_unitary(G1, G2, q, n).c[n] * Rational(order);
    return report("produ",
                  {{"n", std::to_string(n)},
                   {"q", std::to_string(q)},
                   {"chi", std::to_string(j)},
                   {"lam", std::to_string(a)}},
                  lhs == rhs, lhs.str(), rhs.str(), sw.ms());
}

} // namespace detail

/// Theorem 1 sweep over every character pair of F_q, preceded by the
/// enumeration-vs-formula order check.
inline std::vector<VerificationReport> verify_gl(long n, long q) {
    std::vector<VerificationReport> out;
    detail::Stopwatch sw;
    auto F = make_field_q(q);
    const auto hist = gl_det_trace_histogram(n, *F);
    const Int order = gl_order(n, q);
    out.push_back(detail::report("glOrder", {{"n", std::to_string(n)}, {"q", std::to_string(q)}},
                                 hist.total == order, hist.total.str(), order.str(), sw.ms()));
    for (long j = 0; j < q - 1; ++j)
        for (long a = 0; a < q; ++a) out.push_back(detail::check_exp_gl(hist, order, n, q, j, a));
    return out;
}

/// Kim's relation, Fourier inversion, and the headline bound for the
/// canonical nontrivial lambda, sweeping x over F_q^*.
inline std::vector<VerificationReport> verify_kim(long n, long q) {
    std::vector<VerificationReport> out;
    auto Fp = make_field_q(q);
    const Field& F = *Fp;
    const AddChar lam(F, 1);
    const auto hist = gl_det_trace_histogram(n, F);
    const Rational qpow(ipow(Int(q), static_cast<unsigned>(n * (n - 1) / 2)));
    double max_actual = 0.0;
    for (Field::code_t x = 1; x < static_cast<Field::code_t>(q); ++x) {
        detail::Stopwatch sw;
        const CycNum f = hyper_kloosterman(lam, x, n);
        const CycNum lhs = f * qpow;
        const CycNum rhs = gl_det_fiber_sum(hist, x, lam);
        out.push_back(detail::report(
            "kimRelation",
            {{"n", std::to_string(n)}, {"q", std::to_string(q)}, {"x", F.code_str(x)}},
            lhs == rhs, lhs.str(), rhs.str(), sw.ms()));

        detail::Stopwatch sw2;
        const CycNum ff = hyper_kloosterman_fourier(lam, x, n);
        out.push_back(detail::report(
            "fourierInversion",
            {{"n", std::to_string(n)}, {"q", std::to_string(q)}, {"x", F.code_str(x)}},
            f == ff, f.str(), ff.str(), sw2.ms()));

        max_actual = std::max(max_actual, std::abs(to_complex(f)));
    }
    detail::Stopwatch sw3;
    const double bound = fulman_bound(n, q);
    out.push_back(detail::report("headlineBound",
                                 {{"n", std::to_string(n)}, {"q", std::to_string(q)}},
                                 max_actual <= bound + 1e-9, detail::format_double(max_actual),
                                 detail::format_double(bound), sw3.ms()));
    return out;
}

/// Theorem 2 sweep over all (x, y) in (F_q^*)^2 for the canonical lambda.
inline std::vector<VerificationReport> verify_kloost_gl(long n, long q) {
    std::vector<VerificationReport> out;
    auto F = make_field_q(q);
    const auto hists = gl_histograms(n, *F);
    const Int order = gl_order(n, q);
    for (Field::code_t x = 1; x < static_cast<Field::code_t>(q); ++x)
        for (Field::code_t y = 1; y < static_cast<Field::code_t>(q); ++y)
            out.push_back(detail::check_kloost_gl(hists.second, order, n, q, x, y));
    return out;
}

/// Theorem 3 sweep over all chi and all nontrivial lambda of F_{q^2}
/// (the theorem's hypothesis), preceded by the order check.
inline std::vector<VerificationReport> verify_unitary(long n, long q) {
    std::vector<VerificationReport> out;
    detail::Stopwatch sw;
    auto F2 = make_field_q(q * q);
    const auto hist = u_det_trace_histogram(n, *F2);
    const Int order = u_order(n, q);
    out.push_back(detail::report("uOrder", {{"n", std::to_string(n)}, {"q", std::to_string(q)}},
                                 hist.total == order, hist.total.str(), order.str(), sw.ms()));
    const long q2 = q * q;
    for (long j = 0; j < q2 - 1; ++j)
        for (long a = 1; a < q2; ++a) out.push_back(detail::check_produ(hist, order, n, q, j, a));
    return out;
}

/// |G(chi,lambda)|^2 = q for every nontrivial pair over F_q.
inline std::vector<VerificationReport> verify_gauss_modulus(long q) {
    std::vector<VerificationReport> out;
    auto Fp = make_field_q(q);
    const Field& F = *Fp;
    const CycNum expect = CycNum(Rational(q));
    for (long j = 1; j < q - 1; ++j)
        for (long a = 1; a < q; ++a) {
            detail::Stopwatch sw;
            const MultChar chi(F, j);
            const AddChar lam(F, static_cast<Field::code_t>(a));
            const CycNum G = gauss_sum(chi, lam);
            const CycNum lhs = G * conj(G);
            out.push_back(detail::report(
                "gaussModulus",
                {{"q", std::to_string(q)}, {"chi", std::to_string(j)}, {"lam", std::to_string(a)}},
                lhs == expect, lhs.str(), expect.str(), sw.ms()));
        }
    return out;
}

/// Lemma 1 sweep: every character pair and level i in {1,2,3}, Euler factor
/// against the three closed forms, coefficients u^2..u^N forced to zero in
/// the nontrivial-lambda case.
inline std::vector<VerificationReport> verify_lemma1(long q, long N) {
    std::vector<VerificationReport> out;
    auto Fp = make_field_q(q);
    const Field& F = *Fp;
    for (long i = 1; i <= 3; ++i)
        for (long j = 0; j < q - 1; ++j)
            for (long a = 0; a < q; ++a) {
                detail::Stopwatch sw;
                const MultChar chi(F, j);
                const AddChar lam(F, static_cast<Field::code_t>(a));
                const SeriesPrefix lhs = euler_factor_gl(chi, lam, i, N);
                SeriesPrefix expect = SeriesPrefix::one(N);
                if (lam.is_trivial() && chi.is_trivial()) {
                    // (1 - u/q^i) / (1 - u/q^{i-1})
                    SeriesPrefix num = SeriesPrefix::one(N);
                    num.c[1] = CycNum(-Rational(Int(1), ipow(Int(q), static_cast<unsigned>(i))));
                    const CycNum ratio(Rational(Int(1), ipow(Int(q), static_cast<unsigned>(i - 1))));
                    expect = num * detail::geometric_factor(N, 1, ratio);
                } else if (!lam.is_trivial()) {
                    expect.c[1] = gauss_sum(chi, lam) *
                                  Rational(Int(1), ipow(Int(q), static_cast<unsigned>(i)));
                }
                out.push_back(detail::report("lemma1",
                                             {{"q", std::to_string(q)},
                                              {"i", std::to_string(i)},
                                              {"chi", std::to_string(j)},
                                              {"lam", std::to_string(a)}},
                                             lhs == expect, lhs.str(), expect.str(), sw.ms()));
            }
    return out;
}

/// Lemma 2 sweep: levels i in {1,2}, (x,y) over (F_q^*)^2, canonical lambda;
/// the factor must equal [1, K/q^i, q/q^{2i}, 0, ..., 0].
inline std::vector<VerificationReport> verify_lemma2(long q, long N) {
    std::vector<VerificationReport> out;
    auto Fp = make_field_q(q);
    const Field& F = *Fp;
    const AddChar lam(F, 1);
    for (long i = 1; i <= 2; ++i)
        for (Field::code_t x = 1; x < static_cast<Field::code_t>(q); ++x)
            for (Field::code_t y = 1; y < static_cast<Field::code_t>(q); ++y) {
                detail::Stopwatch sw;
                const SeriesPrefix lhs = euler_factor_kloost(lam, x, y, i, N);
                SeriesPrefix expect = SeriesPrefix::one(N);
                expect.c[1] = kloosterman(lam, x, y) *
                              Rational(Int(1), ipow(Int(q), static_cast<unsigned>(i)));
                expect.c[2] = CycNum(Rational(Int(q), ipow(Int(q), static_cast<unsigned>(2 * i))));
                out.push_back(detail::report("lemma2",
                                             {{"q", std::to_string(q)},
                                              {"i", std::to_string(i)},
                                              {"x", F.code_str(x)},
                                              {"y", F.code_str(y)}},
                                             lhs == expect, lhs.str(), expect.str(), sw.ms()));
            }
    return out;
}

/// Lemma 3 sweep: levels i in {1,2}, all chi and nontrivial lambda over
/// F_{q^2}, both signs; the factor must equal [1, +-G1/q^i, G2/q^{2i}, 0...].
inline std::vector<VerificationReport> verify_lemma3(long q, long N) {
    std::vector<VerificationReport> out;
    auto F2p = make_field_q(q * q);
    const Field& F2 = *F2p;
    const long q2 = q * q;
    for (long i = 1; i <= 2; ++i)
        for (long j = 0; j < q2 - 1; ++j)
            for (long a = 1; a < q2; ++a) {
                const MultChar chi(F2, j);
                const AddChar lam(F2, static_cast<Field::code_t>(a));
                const CycNum G1 = g1(chi, lam), G2 = g2(chi, lam);
                for (Sign sign : {Sign::plus, Sign::minus}) {
                    detail::Stopwatch sw;
                    const SeriesPrefix lhs = euler_factor_unitary(chi, lam, i, N, sign);
                    SeriesPrefix expect = SeriesPrefix::one(N);
                    CycNum c1 = G1 * Rational(Int(1), ipow(Int(q), static_cast<unsigned>(i)));
                    if (sign == Sign::minus) c1 = -c1;
                    expect.c[1] = c1;
                    expect.c[2] = G2 * Rational(Int(1), ipow(Int(q), static_cast<unsigned>(2 * i)));
                    out.push_back(detail::report(
                        "lemma3",
                        {{"q", std::to_string(q)},
                         {"i", std::to_string(i)},
                         {"chi", std::to_string(j)},
                         {"lam", std::to_string(a)},
                         {"sign", sign == Sign::plus ? "plus" : "minus"}},
                        lhs == expect, lhs.str(), expect.str(), sw.ms()));
                }
            }
    return out;
}

/// Invariant-polynomial combinatorics over F_{q^2}: exhaustive counts
/// q^m + q^{m-1}, and no invariant irreducible of even degree.
inline std::vector<VerificationReport> verify_invariants(long q, long mmax) {
    std::vector<VerificationReport> out;
    auto F2p = make_field_q(q * q);
    const Field& F2 = *F2p;
    for (long m = 1; m <= mmax; ++m) {
        detail::Stopwatch sw;
        const long long counted = count_invariant(F2, m);
        const Int expect = ipow(Int(q), static_cast<unsigned>(m)) +
                           ipow(Int(q), static_cast<unsigned>(m - 1));
        out.push_back(detail::report("invariantCount",
                                     {{"q", std::to_string(q)}, {"m", std::to_string(m)}},
                                     Int(counted) == expect, std::to_string(counted), expect.str(),
                                     sw.ms()));
    }
    detail::Stopwatch sw;
    const auto degrees = invariant_irreducible_degrees(F2, mmax);
    bool odd_only = true;
    std::string got;
    for (long d : degrees) {
        if (d % 2 == 0) odd_only = false;
        got += (got.empty() ? "" : ",") + std::to_string(d);
    }
    out.push_back(detail::report("invariantOddDegree",
                                 {{"q", std::to_string(q)}, {"D", std::to_string(mmax)}},
                                 odd_only, "{" + got + "}", "odd degrees only", sw.ms()));
    return out;
}

/// Euler's identity in both sign variants up to u^N.
inline std::vector<VerificationReport> verify_euler(long q, long N) {
    std::vector<VerificationReport> out;
    for (Sign sign : {Sign::plus, Sign::minus}) {
        detail::Stopwatch sw;
        const bool ok = euler_identity_check(q, N, sign);
        out.push_back(detail::report(
            "eulerIdentity",
            {{"q", std::to_string(q)},
             {"N", std::to_string(N)},
             {"sign", sign == Sign::plus ? "plus" : "minus"}},
            ok, ok ? "coefficients match" : "mismatch", "closed form", sw.ms()));
    }
    return out;
}

/// Lemmas 1-3 plus the invariant combinatorics for one q.
inline std::vector<VerificationReport> verify_lemmas(long q, long N) {
    std::vector<VerificationReport> out = verify_lemma1(q, N);
    auto l2 = verify_lemma2(q, std::min<long>(N, 4));
    out.insert(out.end(), l2.begin(), l2.end());
    auto l3 = verify_lemma3(q, std::min<long>(N, 4));
    out.insert(out.end(), l3.begin(), l3.end());
    auto inv = verify_invariants(q, 4);
    out.insert(out.end(), inv.begin(), inv.end());
    return out;
}

enum class TheoremKind { expGL, kloostGL, produ };

/// Single theorem check: both sides computed independently, exact-equality
/// verdict with both canonical values in the report.
inline VerificationReport theorem_check(TheoremKind which, long n, long q, long chi_index = 0,
                                        long lam_index = 1, Field::code_t x = 1,
                                        Field::code_t y = 1) {
    switch (which) {
        case TheoremKind::expGL: {
            auto F = make_field_q(q);
            const auto hist = gl_det_trace_histogram(n, *F);
            return detail::check_exp_gl(hist, gl_order(n, q), n, q, chi_index, lam_index);
        }
        case TheoremKind::kloostGL: {
            auto F = make_field_q(q);
            const auto hists = gl_histograms(n, *F);
            return detail::check_kloost_gl(hists.second, gl_order(n, q), n, q, x, y);
        }
        case TheoremKind::produ: {
            auto F2 = make_field_q(q * q);
            const auto hist = u_det_trace_histogram(n, *F2);
            return detail::check_produ(hist, u_order(n, q), n, q, chi_index, lam_index);
        }
    }
    throw std::invalid_argument("theorem_check: unknown kind");
}

} // namespace charsum
