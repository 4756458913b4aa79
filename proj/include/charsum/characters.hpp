// SPDX-License-Identifier: Apache-2.0
//
// Additive and multiplicative characters of F_q with canonical indexing, and
// the character-of-polynomial functionals on monic polynomials:
//   chi(P) = chi((-1)^n c_0), lambda(P) = lambda(-c_{n-1}),
//   tau(P) = lambda(x tr(P) + y tr(P^{-1})).
// All values are exact CycNum roots of unity (or 0 for chi at 0).

#pragma once

#include "charsum/cyclotomic.hpp"
#include "charsum/ffield.hpp"

#include <stdexcept>
#include <vector>

namespace charsum {

/// lambda_a(x) = zeta_p^{tr(a x)}; trivial iff a = 0; the canonical
/// nontrivial character is a = 1.
class AddChar {
public:
    AddChar(const Field& f, Field::code_t a) : f_(&f), a_(a) {}

    const Field& field() const { return *f_; }
    Field::code_t scale() const { return a_; }
    bool is_trivial() const { return a_ == 0; }

    CycNum operator()(Field::code_t x) const {
        return zeta(f_->p(), f_->trace_to_prime(f_->mul(a_, x)));
    }
    CycNum operator()(const FieldElement& x) const {
        if (&x.field() != f_) throw std::invalid_argument("AddChar: field mismatch");
        return (*this)(x.code());
    }

private:
    const Field* f_;
    Field::code_t a_;
};

/// chi_j(g^e) = zeta_{q-1}^{j e} for the canonical generator g; trivial iff
/// j = 0 mod q-1; chi(0) = 0 by convention.
class MultChar {
public:
    MultChar(const Field& f, long j) : f_(&f), j_(((j % (f.q() - 1)) + (f.q() - 1)) % (f.q() - 1)) {}

    const Field& field() const { return *f_; }
    long index() const { return j_; }
    bool is_trivial() const { return j_ == 0; }

    CycNum operator()(Field::code_t x) const {
        if (x == 0) return CycNum::zero();
        const long n = f_->q() - 1;
        return zeta(n, (j_ * f_->dlog(x)) % n);
    }
    CycNum operator()(const FieldElement& x) const {
        if (&x.field() != f_) throw std::invalid_argument("MultChar: field mismatch");
        return (*this)(x.code());
    }

private:
    const Field* f_;
    long j_;
};

/// Monic polynomial z^n + c_{n-1} z^{n-1} + ... + c_0 over a field; the
/// leading 1 is implicit and degree 0 means the constant polynomial 1.
struct MonicPoly {
    const Field* f = nullptr;
    std::vector<Field::code_t> c;  // c[i] = coefficient of z^i, size = degree

    MonicPoly() = default;
    MonicPoly(const Field& field, std::vector<Field::code_t> coeffs)
        : f(&field), c(std::move(coeffs)) {}

    long degree() const { return static_cast<long>(c.size()); }
    Field::code_t constant_term() const { return degree() == 0 ? 1 : c[0]; }

    friend bool operator==(const MonicPoly& a, const MonicPoly& b) {
        return a.f == b.f && a.c == b.c;
    }

    std::string str() const {
        std::string s = "z^" + std::to_string(degree());
        for (long i = degree() - 1; i >= 0; --i)
            if (c[i] != 0) s += " + " + f->code_str(c[i]) + (i ? "*z^" + std::to_string(i) : "");
        return s;
    }
};

inline MonicPoly monic_mul(const MonicPoly& a, const MonicPoly& b) {
    if (a.f != b.f) throw std::invalid_argument("monic_mul: mixed fields");
    const Field& F = *a.f;
    const long da = a.degree(), db = b.degree();
    // Work with explicit leading coefficients, then drop the final 1.
    std::vector<Field::code_t> pa(a.c), pb(b.c), r(da + db + 1, 0);
    pa.push_back(1);
    pb.push_back(1);
    for (long i = 0; i <= da; ++i) {
        if (pa[i] == 0) continue;
        for (long j = 0; j <= db; ++j)
            r[i + j] = F.add(r[i + j], F.mul(pa[i], pb[j]));
    }
    r.pop_back();  // leading coefficient is 1
    return MonicPoly(F, std::move(r));
}

/// chi(P) = chi((-1)^n c_0); exactly 0 when c_0 = 0.
inline CycNum chi_of_poly(const MultChar& chi, const MonicPoly& P) {
    if (P.degree() < 1) throw std::invalid_argument("chi_of_poly: degree must be >= 1");
    const Field& F = chi.field();
    Field::code_t arg = P.c[0];
    if (P.degree() % 2 != 0) arg = F.neg(arg);
    return chi(arg);
}

/// lambda(P) = lambda(-c_{n-1}).
inline CycNum lambda_of_poly(const AddChar& lam, const MonicPoly& P) {
    if (P.degree() < 1) throw std::invalid_argument("lambda_of_poly: degree must be >= 1");
    const Field& F = lam.field();
    return lam(F.neg(P.c[P.degree() - 1]));
}

/// tau(P) = lambda(-x c_{n-1} - y c_1/c_0) for deg >= 2, and
/// lambda(-x c_0 - y/c_0) for deg = 1; requires P(0) != 0.
inline CycNum tau_of_poly(const AddChar& lam, Field::code_t x, Field::code_t y,
                          const MonicPoly& P) {
    if (P.degree() < 1) throw std::invalid_argument("tau_of_poly: degree must be >= 1");
    if (x == 0 || y == 0) throw std::invalid_argument("tau_of_poly: x and y must be nonzero");
    const Field& F = lam.field();
    const Field::code_t c0 = P.c[0];
    if (c0 == 0) throw std::invalid_argument("tau_of_poly: constant term must be nonzero");
    Field::code_t arg;
    if (P.degree() == 1) {
        arg = F.neg(F.add(F.mul(x, c0), F.div(y, c0)));
    } else {
        const Field::code_t ctop = P.c[P.degree() - 1];
        arg = F.neg(F.add(F.mul(x, ctop), F.mul(y, F.div(P.c[1], c0))));
    }
    return lam(arg);
}

} // namespace charsum
