// SPDX-License-Identifier: Apache-2.0

#include "charsum/cyclotomic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

using namespace charsum;

namespace {

// Deterministic random CycNum: a small rational combination of roots of unity.
CycNum random_cyc(std::mt19937& rng, long m) {
    std::uniform_int_distribution<long> exp_dist(0, m - 1);
    std::uniform_int_distribution<int> num_dist(-3, 3);
    std::uniform_int_distribution<int> den_dist(1, 4);
    CycNum acc = CycNum::zero();
    for (int t = 0; t < 3; ++t)
        acc += zeta(m, exp_dist(rng)) * Rational(num_dist(rng), den_dist(rng));
    return acc;
}

} // namespace

TEST_CASE("cyclotomic polynomials at small orders") {
    CHECK(cyclotomic_poly(1).coeffs == std::vector<Int>{-1, 1});
    CHECK(cyclotomic_poly(2).coeffs == std::vector<Int>{1, 1});
    CHECK(cyclotomic_poly(6).coeffs == std::vector<Int>{1, -1, 1});
    CHECK(cyclotomic_poly(8).coeffs == std::vector<Int>{1, 0, 0, 0, 1});
    CHECK(cyclotomic_poly(12).coeffs == std::vector<Int>{1, 0, -1, 0, 1});
    // Phi_m divides x^m - 1 exactly: verified by construction, spot-check degree.
    CHECK(cyclotomic_poly(24).degree() == euler_phi(24));
    CHECK(cyclotomic_poly(105).degree() == euler_phi(105));
}

TEST_CASE("zeta constructor basics") {
    CHECK(zeta(7, 0) == CycNum::one());
    CHECK(zeta(1, 0) == CycNum::one());
    CHECK(zeta(4, 2) == CycNum(Rational(-1)));
    CHECK(zeta(2, 1) == CycNum(Rational(-1)));
    // All nontrivial 5th roots sum to -1.
    CycNum s = zeta(5, 1) + zeta(5, 2) + zeta(5, 3) + zeta(5, 4);
    CHECK(s == CycNum(Rational(-1)));
    // Exponents reduce mod m.
    CHECK(zeta(5, 7) == zeta(5, 2));
    CHECK(zeta(5, -1) == zeta(5, 4));
}

TEST_CASE("exact ring operations") {
    CHECK(zeta(5, 3) * zeta(5, 4) == zeta(5, 2));
    CHECK(zeta(8, 1) * zeta(8, 7) == CycNum::one());
    CHECK(CycNum(Rational(4)) * Rational(1, 4) == CycNum::one());

    std::mt19937 rng(42);
    for (long m : {5L, 8L, 9L, 12L}) {
        std::uniform_int_distribution<long> exp_dist(0, 3 * m);
        for (int t = 0; t < 20; ++t) {
            const long e1 = exp_dist(rng), e2 = exp_dist(rng);
            CHECK(zeta(m, e1) * zeta(m, e2) == zeta(m, e1 + e2));
        }
    }
}

TEST_CASE("canonical form soundness: rebuilt roots equal the constructor") {
    // zeta(m,e) assembled through arithmetic paths must equal the direct form.
    for (long m : {5L, 8L, 12L, 20L, 24L}) {
        for (long e = 0; e < m; ++e) {
            CycNum product = CycNum::one();
            for (long t = 0; t < e; ++t) product *= zeta(m, 1);
            CHECK(product == zeta(m, e));
        }
    }
}

TEST_CASE("ring laws on randomized triples") {
    std::mt19937 rng(7);
    for (long m : {8L, 12L}) {
        for (int t = 0; t < 15; ++t) {
            const CycNum a = random_cyc(rng, m), b = random_cyc(rng, m), c = random_cyc(rng, m);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(a + b == b + a);
        }
    }
}

TEST_CASE("conjugation") {
    CHECK(conj(zeta(8, 3)) == zeta(8, 5));
    CHECK(conj(CycNum(Rational(3, 7))) == CycNum(Rational(3, 7)));
    std::mt19937 rng(11);
    for (int t = 0; t < 10; ++t) {
        const CycNum a = random_cyc(rng, 12);
        CHECK(conj(conj(a)) == a);
        // conj is a ring automorphism
        const CycNum b = random_cyc(rng, 12);
        CHECK(conj(a * b) == conj(a) * conj(b));
    }
}

TEST_CASE("complex evaluation") {
    using std::abs;
    CHECK(abs(to_complex(zeta(4, 1)) - std::complex<double>(0, 1)) < 1e-12);
    CHECK(abs(to_complex(CycNum(Rational(-1))) - std::complex<double>(-1, 0)) < 1e-12);
    // zeta(5,1) + zeta(5,4) = 2 cos(2 pi / 5) = 0.618034...
    const double golden = 2.0 * std::cos(8.0 * std::atan(1.0) / 5.0);
    CHECK(abs(to_complex(zeta(5, 1) + zeta(5, 4)).real() - golden) < 1e-12);
    CHECK(abs(to_complex(zeta(5, 1) + zeta(5, 4)).real() - 0.618034) < 1e-6);
    // |zeta^e| = 1 within 1e-12
    for (long e = 0; e < 24; ++e) CHECK(abs(abs(to_complex(zeta(24, e))) - 1.0) < 1e-12);
}

TEST_CASE("to_complex is a ring homomorphism within 1e-9") {
    std::mt19937 rng(23);
    for (int t = 0; t < 20; ++t) {
        const CycNum a = random_cyc(rng, 20), b = random_cyc(rng, 20);
        CHECK(std::abs(to_complex(a * b) - to_complex(a) * to_complex(b)) < 1e-9);
        CHECK(std::abs(to_complex(a + b) - (to_complex(a) + to_complex(b))) < 1e-9);
    }
}

TEST_CASE("mixed-order arithmetic lifts to the lcm") {
    CHECK(zeta(2, 1) == zeta(6, 3));
    CHECK(zeta(3, 1) + zeta(3, 2) == CycNum(Rational(-1)));
    CHECK(zeta(4, 1) * zeta(3, 1) == zeta(12, 7));  // i * zeta_3 = zeta_12^{3+4}
    const CycNum mixed = zeta(4, 1) + zeta(6, 1);
    CHECK(mixed.order() == 12);
    CHECK(std::abs(to_complex(mixed) - (to_complex(zeta(4, 1)) + to_complex(zeta(6, 1)))) < 1e-12);
}

TEST_CASE("canonical string form") {
    CHECK(CycNum(Rational(1, 2)).str() == "1; 1/2");
    CHECK(zeta(4, 1).str() == "4; 0, 1");
}
