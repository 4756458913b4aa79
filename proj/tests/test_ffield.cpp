// SPDX-License-Identifier: Apache-2.0

#include "charsum/ffield.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

using namespace charsum;

namespace {

// Brute-force oracle: the lex-smallest (c_0 compared first) monic irreducible
// quadratic over F_p, testing irreducibility by root enumeration.
std::vector<long> smallest_irreducible_quadratic(long p) {
    for (long c0 = 0; c0 < p; ++c0)
        for (long c1 = 0; c1 < p; ++c1) {
            bool has_root = false;
            for (long x = 0; x < p && !has_root; ++x)
                if ((x * x + c1 * x + c0) % p == 0) has_root = true;
            if (!has_root) return {c0, c1, 1};
        }
    return {};
}

} // namespace

TEST_CASE("make_field picks the lex-smallest irreducible modulus") {
    CHECK(make_field(2, 2)->modulus() == std::vector<long>{1, 1, 1});  // z^2+z+1, unique
    CHECK(make_field(5, 1)->modulus() == std::vector<long>{0, 1});     // residues mod 5
    CHECK(make_field(3, 2)->modulus() == smallest_irreducible_quadratic(3));
    CHECK(make_field(3, 2)->modulus() == std::vector<long>{1, 0, 1});  // z^2+1
    CHECK(make_field(5, 2)->modulus() == smallest_irreducible_quadratic(5));
    CHECK(make_field(7, 2)->modulus() == smallest_irreducible_quadratic(7));
    CHECK(make_field(2, 3)->q() == 8);
    // deterministic across calls
    CHECK(make_field(3, 2)->modulus() == make_field(3, 2)->modulus());
}

TEST_CASE("make_field rejects bad parameters") {
    CHECK_THROWS_AS(make_field(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_field(2, 25), std::invalid_argument);
    CHECK_THROWS_AS(make_field(1031, 2), std::invalid_argument);  // 1031^2 > 2^20
}

TEST_CASE("field arithmetic matches hand values") {
    auto F5 = make_field(5, 1);
    CHECK(F5->inv(2) == 3);
    CHECK(F5->mul(3, 4) == 2);
    CHECK(F5->add(3, 4) == 2);
    CHECK(F5->neg(2) == 3);

    auto F4 = make_field(2, 2);
    const Field::code_t omega = F4->encode({0, 1});
    CHECK(F4->mul(omega, omega) == F4->encode({1, 1}));  // z^2 = z+1 mod z^2+z+1

    for (Field::code_t x = 1; x < 4; ++x) CHECK(F4->pow(x, 0) == 1);
    CHECK_THROWS_AS(F5->inv(0), std::invalid_argument);
    CHECK_THROWS_AS(F5->div(1, 0), std::invalid_argument);
}

TEST_CASE("FieldElement operators and mixed-field detection") {
    auto F4 = make_field(2, 2);
    auto F5 = make_field(5, 1);
    const FieldElement a(*F4, 2), b(*F4, 3), c(*F5, 2);
    CHECK((a * b).code() == F4->mul(2, 3));
    CHECK((a + b).code() == 1);
    CHECK_THROWS_AS(a + c, std::invalid_argument);
    CHECK(a.inv() * a == FieldElement(*F4, 1));
    CHECK(a.str() == "0:1");
}

TEST_CASE("generator is the lex-smallest primitive element") {
    CHECK(make_field(5, 1)->generator_code() == 2);
    CHECK(make_field(2, 1)->generator_code() == 1);
    auto F4 = make_field(2, 2);
    CHECK(F4->generator_code() == F4->encode({0, 1}));  // omega itself
    auto F9 = make_field(3, 2);
    CHECK(F9->generator_code() == F9->encode({1, 1}));  // 1 + z has order 8
}

TEST_CASE("dlog table") {
    auto F5 = make_field(5, 1);
    CHECK(F5->dlog(1) == 0);
    CHECK(F5->dlog(4) == 2);  // 2^2 = 4
    CHECK(F5->dlog(3) == 3);  // 2^3 = 3
    CHECK_THROWS_AS(F5->dlog(0), std::invalid_argument);

    for (long q : {4L, 5L, 8L, 9L, 25L}) {
        auto F = make_field_q(q);
        for (long e = 0; e < q - 1; ++e) CHECK(F->dlog(F->exp(e)) == e);
        std::set<Field::code_t> image;
        for (long e = 0; e < q - 1; ++e) image.insert(F->exp(e));
        CHECK(static_cast<long>(image.size()) == q - 1);  // bijection on F_q^*
    }
}

TEST_CASE("multiplicative order of every nonzero element divides q-1") {
    for (long q : {4L, 5L, 7L, 8L, 9L}) {
        auto F = make_field_q(q);
        for (Field::code_t x = 1; x < static_cast<Field::code_t>(q); ++x)
            CHECK(F->pow(x, q - 1) == 1);
    }
}

TEST_CASE("trace to the prime field") {
    auto F5 = make_field(5, 1);
    for (Field::code_t x = 0; x < 5; ++x) CHECK(F5->trace_to_prime(x) == static_cast<long>(x));

    auto F4 = make_field(2, 2);
    CHECK(F4->trace_to_prime(F4->encode({0, 1})) == 1);  // tr(omega) = omega + omega^2 = 1
    CHECK(F4->trace_to_prime(0) == 0);

    // F_p-linearity and surjectivity, exhaustively on small extensions.
    for (long q : {4L, 8L, 9L, 25L}) {
        auto F = make_field_q(q);
        const long p = F->p();
        std::set<long> image;
        for (Field::code_t x = 0; x < static_cast<Field::code_t>(q); ++x) {
            image.insert(F->trace_to_prime(x));
            for (Field::code_t y = 0; y < static_cast<Field::code_t>(q); ++y)
                CHECK((F->trace_to_prime(x) + F->trace_to_prime(y)) % p ==
                      F->trace_to_prime(F->add(x, y)));
        }
        CHECK(static_cast<long>(image.size()) == p);
    }
}

TEST_CASE("frobenius x -> x^q on quadratic extensions") {
    auto F9 = make_field(3, 2);
    const Field::code_t z = F9->encode({0, 1});
    CHECK(F9->frobenius_q(z) == F9->encode({0, 2}));  // z^3 = -z under z^2+1

    // Subfield elements are fixed; the map is an involutive automorphism.
    for (long q2 : {4L, 9L, 25L, 49L}) {
        auto F = make_field_q(q2);
        const long p = F->p();
        for (long c = 0; c < p; ++c)
            CHECK(F->frobenius_q(F->encode({c, 0})) == F->encode({c, 0}));
        for (Field::code_t x = 0; x < static_cast<Field::code_t>(q2); ++x) {
            CHECK(F->frobenius_q(F->frobenius_q(x)) == x);
            for (Field::code_t y = 0; y < static_cast<Field::code_t>(q2); ++y) {
                CHECK(F->frobenius_q(F->add(x, y)) == F->add(F->frobenius_q(x), F->frobenius_q(y)));
                CHECK(F->frobenius_q(F->mul(x, y)) == F->mul(F->frobenius_q(x), F->frobenius_q(y)));
            }
        }
    }
    CHECK_THROWS_AS(make_field(5, 1)->frobenius_q(2), std::invalid_argument);
}

TEST_CASE("factor_prime_power") {
    CHECK(factor_prime_power(9) == std::make_pair(3L, 2L));
    CHECK(factor_prime_power(8) == std::make_pair(2L, 3L));
    CHECK(factor_prime_power(7) == std::make_pair(7L, 1L));
    CHECK_THROWS_AS(factor_prime_power(6), std::invalid_argument);
    CHECK_THROWS_AS(factor_prime_power(1), std::invalid_argument);
}

TEST_CASE("modulus cache round trip") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "charsum_cache_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    setenv("CHARSUM_CACHE_DIR", dir.c_str(), 1);

    const auto computed = detail::find_min_modulus(7, 2);
    detail::modulus_cache_store(7, 2, computed);
    std::vector<long> loaded;
    REQUIRE(detail::modulus_cache_lookup(7, 2, loaded));
    CHECK(loaded == computed);

    // A corrupt (reducible) cached entry is ignored.
    {
        std::ofstream out(dir / "moduli.txt", std::ios::trunc);
        out << "7 2 0 0 1\n";  // z^2, reducible
    }
    std::vector<long> rejected;
    CHECK_FALSE(detail::modulus_cache_lookup(7, 2, rejected));

    unsetenv("CHARSUM_CACHE_DIR");
    fs::remove_all(dir);
}
