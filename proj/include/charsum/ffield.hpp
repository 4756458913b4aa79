// SPDX-License-Identifier: Apache-2.0
//
// Finite fields F_{p^k} at desk scale (p^k <= 2^20). Elements are stored as
// dense codes c_0 + c_1 p + ... + c_{k-1} p^{k-1} over the coefficient vector
// in the modulus root; multiplication runs through full exp/log tables, so
// discrete logs (and hence multiplicative characters) are O(1) lookups.
//
// Determinism contract: the modulus is the lexicographically smallest monic
// irreducible polynomial of degree k (coefficients compared low-degree
// first), and the generator is the lex-smallest element of multiplicative
// order q-1. Both choices are reproducible across runs with no external
// tables.

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace charsum {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

inline bool is_prime_u64(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense little-endian coefficient vectors over F_p, used only to bootstrap
// field construction (modulus search, generator search, exp table).
inline void poly_trim(std::vector<long>& a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
}

inline std::vector<long> poly_mul_mod_p(const std::vector<long>& a, const std::vector<long>& b,
                                        long p) {
    std::vector<long> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    poly_trim(r);
    return r;
}

// Remainder of a by monic divisor d over F_p.
inline std::vector<long> poly_rem_monic(std::vector<long> a, const std::vector<long>& d, long p) {
    const long dd = static_cast<long>(d.size()) - 1;
    for (long t = static_cast<long>(a.size()) - 1; t >= dd; --t) {
        const long c = a[t];
        if (c == 0) continue;
        for (long j = 0; j <= dd; ++j) {
            long& v = a[t - dd + j];
            v = (v - c * d[j]) % p;
            if (v < 0) v += p;
        }
    }
    a.resize(std::max<long>(dd, 1));
    poly_trim(a);
    return a;
}

// Irreducibility by trial division: a monic polynomial of degree k >= 2 is
// reducible iff some monic polynomial of degree in [1, k/2] divides it.
inline bool poly_irreducible_mod_p(const std::vector<long>& f, long p) {
    const long k = static_cast<long>(f.size()) - 1;
    if (k <= 1) return k == 1;
    for (long d = 1; 2 * d <= k; ++d) {
        std::vector<long> div(d + 1, 0);
        div[d] = 1;
        long total = 1;
        for (long i = 0; i < d; ++i) total *= p;
        for (long t = 0; t < total; ++t) {
            long v = t;
            for (long i = 0; i < d; ++i) {
                div[i] = v % p;
                v /= p;
            }
            auto rem = poly_rem_monic(f, div, p);
            if (rem.size() == 1 && rem[0] == 0) return false;
        }
    }
    return true;
}

} // namespace detail

/// A finite field F_{p^k} together with its exp/log tables. Immutable after
/// construction and safely shareable across threads; all operations are pure.
class Field {
public:
    using code_t = std::uint32_t;

    static constexpr long kMaxOrder = 1 << 20;
    static constexpr long kMaxDegree = 8;

    /// Builds the field from an explicit monic irreducible modulus
    /// (c_0 ... c_k, little-endian, c_k = 1). For k = 1 the modulus is the
    /// placeholder z, and elements are residues mod p.
    Field(long p, long k, std::vector<long> modulus) : p_(p), k_(k), modulus_(std::move(modulus)) {
        if (!detail::is_prime_u64(p_)) throw std::invalid_argument("Field: p must be prime");
        if (k_ < 1 || k_ > kMaxDegree) throw std::invalid_argument("Field: k out of range");
        q_ = 1;
        for (long i = 0; i < k_; ++i) {
            q_ *= p_;
            if (q_ > kMaxOrder) throw std::invalid_argument("Field: p^k exceeds 2^20");
        }
        if (static_cast<long>(modulus_.size()) != k_ + 1 || modulus_.back() != 1)
            throw std::invalid_argument("Field: modulus must be monic of degree k");
        for (long c : modulus_)
            if (c < 0 || c >= p_) throw std::invalid_argument("Field: modulus coefficients out of range");
        if (k_ > 1 && !detail::poly_irreducible_mod_p(modulus_, p_))
            throw std::invalid_argument("Field: modulus is reducible");
        build_tables();
    }

    long p() const { return p_; }
    long k() const { return k_; }
    long q() const { return q_; }
    const std::vector<long>& modulus() const { return modulus_; }

    // --- code-level arithmetic (the fast path used by enumeration loops) ---

    code_t add(code_t a, code_t b) const {
        if (k_ == 1) {
            long s = static_cast<long>(a) + b;
            if (s >= p_) s -= p_;
            return static_cast<code_t>(s);
        }
        code_t r = 0, mult = 1;
        for (long i = 0; i < k_; ++i) {
            long da = (a / mult) % p_, db = (b / mult) % p_;
            long s = da + db;
            if (s >= p_) s -= p_;
            r += static_cast<code_t>(s) * mult;
            mult *= static_cast<code_t>(p_);
        }
        return r;
    }

    code_t neg(code_t a) const {
        if (k_ == 1) return a == 0 ? 0 : static_cast<code_t>(p_ - a);
        code_t r = 0, mult = 1;
        for (long i = 0; i < k_; ++i) {
            long da = (a / mult) % p_;
            r += static_cast<code_t>(da == 0 ? 0 : p_ - da) * mult;
            mult *= static_cast<code_t>(p_);
        }
        return r;
    }

    code_t sub(code_t a, code_t b) const { return add(a, neg(b)); }

    code_t mul(code_t a, code_t b) const {
        if (a == 0 || b == 0) return 0;
        long e = log_[a] + log_[b];
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }

    code_t inv(code_t a) const {
        if (a == 0) throw std::invalid_argument("Field: inverse of zero");
        long e = (q_ - 1 - log_[a]) % (q_ - 1);
        return exp_[e];
    }

    code_t div(code_t a, code_t b) const { return mul(a, inv(b)); }

    code_t pow(code_t a, long e) const {
        if (a == 0) {
            if (e < 0) throw std::invalid_argument("Field: inverse of zero");
            return e == 0 ? 1 : 0;
        }
        const long n = q_ - 1;
        long r = (log_[a] * (e % n)) % n;
        if (r < 0) r += n;
        return exp_[r];
    }

    /// Exponent of x in the fixed generator, in [0, q-2].
    long dlog(code_t x) const {
        if (x == 0) throw std::invalid_argument("Field: dlog of zero");
        return log_[x];
    }

    code_t generator_code() const { return gen_; }
    code_t exp(long e) const {
        long n = q_ - 1;
        e %= n;
        if (e < 0) e += n;
        return exp_[e];
    }

    /// Trace to the prime field: sum of x^{p^i}, i = 0..k-1, as a residue mod p.
    long trace_to_prime(code_t x) const {
        code_t acc = x, y = x;
        for (long i = 1; i < k_; ++i) {
            y = pow(y, p_);
            acc = add(acc, y);
        }
        assert(acc < static_cast<code_t>(p_));
        return static_cast<long>(acc);
    }

    /// x -> x^q on a field of order q^2 (k even); an involutive automorphism
    /// fixing the index-2 subfield.
    code_t frobenius_q(code_t x) const {
        if (k_ % 2 != 0) throw std::invalid_argument("Field: frobenius_q needs even degree");
        long qsub = 1;
        for (long i = 0; i < k_ / 2; ++i) qsub *= p_;
        return pow(x, qsub);
    }

    /// Order of the index-2 subfield (sqrt of q); only for even k.
    long subfield_order() const {
        if (k_ % 2 != 0) throw std::invalid_argument("Field: order is not a square");
        long qsub = 1;
        for (long i = 0; i < k_ / 2; ++i) qsub *= p_;
        return qsub;
    }

    std::vector<long> decode(code_t a) const {
        std::vector<long> c(k_);
        for (long i = 0; i < k_; ++i) {
            c[i] = a % p_;
            a /= static_cast<code_t>(p_);
        }
        return c;
    }

    code_t encode(const std::vector<long>& coeffs) const {
        if (static_cast<long>(coeffs.size()) != k_)
            throw std::invalid_argument("Field: coefficient vector must have length k");
        code_t a = 0, mult = 1;
        for (long i = 0; i < k_; ++i) {
            long c = coeffs[i] % p_;
            if (c < 0) c += p_;
            a += static_cast<code_t>(c) * mult;
            mult *= static_cast<code_t>(p_);
        }
        return a;
    }

    /// Canonical text form "c0:c1:...:c{k-1}".
    std::string code_str(code_t a) const {
        auto c = decode(a);
        std::string s;
        for (long i = 0; i < k_; ++i) s += (i ? ":" : "") + std::to_string(c[i]);
        return s;
    }

private:
    void build_tables();

    long p_, k_, q_;
    std::vector<long> modulus_;
    std::vector<code_t> exp_;   // size q-1
    std::vector<long> log_;     // size q, -1 at 0
    code_t gen_ = 0;
};

/// An element of a particular Field; value semantics, cheap to copy.
/// The Field must outlive its elements.
class FieldElement {
public:
    FieldElement() : f_(nullptr), code_(0) {}
    FieldElement(const Field& f, Field::code_t code) : f_(&f), code_(code) {}

    const Field& field() const { return *f_; }
    Field::code_t code() const { return code_; }
    std::vector<long> coeffs() const { return f_->decode(code_); }
    bool is_zero() const { return code_ == 0; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {*a.f_, a.f_->add(a.code_, b.code_)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {*a.f_, a.f_->sub(a.code_, b.code_)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {*a.f_, a.f_->mul(a.code_, b.code_)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {*a.f_, a.f_->div(a.code_, b.code_)};
    }
    friend FieldElement operator-(const FieldElement& a) { return {*a.f_, a.f_->neg(a.code_)}; }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return a.code_ == b.code_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    FieldElement inv() const { return {*f_, f_->inv(code_)}; }
    FieldElement pow(long e) const { return {*f_, f_->pow(code_, e)}; }

    std::string str() const { return f_->code_str(code_); }

private:
    void check(const FieldElement& o) const {
        if (f_ != o.f_) throw std::invalid_argument("FieldElement: mixed fields");
    }

    const Field* f_;
    Field::code_t code_;
};

inline void Field::build_tables() {
    // Bootstrap multiplication on coefficient vectors, used until exp/log exist.
    auto raw_mul = [&](code_t a, code_t b) -> code_t {
        if (k_ == 1) return static_cast<code_t>((static_cast<long>(a) * b) % p_);
        auto pa = decode(a), pb = decode(b);
        auto prod = detail::poly_mul_mod_p(pa, pb, p_);
        auto rem = detail::poly_rem_monic(std::move(prod), modulus_, p_);
        rem.resize(k_, 0);
        return encode(rem);
    };
    auto raw_pow = [&](code_t a, long e) -> code_t {
        code_t r = 1;
        while (e) {
            if (e & 1) r = raw_mul(r, a);
            a = raw_mul(a, a);
            e >>= 1;
        }
        return r;
    };

    const long n = q_ - 1;
    std::vector<long> prime_factors;
    {
        long v = n;
        for (long d = 2; d * d <= v; ++d)
            if (v % d == 0) {
                prime_factors.push_back(d);
                while (v % d == 0) v /= d;
            }
        if (v > 1) prime_factors.push_back(v);
    }

    // Generator: the lex-smallest element (coefficients compared low-degree
    // first) of multiplicative order exactly q-1.
    gen_ = 1;  // q = 2 only
    if (n > 1) {
        bool found = false;
        std::vector<long> tuple(k_, 0);
        for (long t = 0; t < q_ && !found; ++t) {
            long v = t;
            for (long i = k_ - 1; i >= 0; --i) {  // c_0 is the most significant digit
                tuple[i] = v % p_;
                v /= p_;
            }
            const code_t cand = encode(tuple);
            if (cand == 0) continue;
            bool primitive = true;
            for (long ell : prime_factors)
                if (raw_pow(cand, n / ell) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                gen_ = cand;
                found = true;
            }
        }
        assert(found);
    }

    exp_.resize(n);
    log_.assign(q_, -1);
    code_t x = 1;
    for (long e = 0; e < n; ++e) {
        exp_[e] = x;
        log_[x] = e;
        x = raw_mul(x, gen_);
    }
    assert(x == 1);  // generator order is exactly q-1
}

namespace detail {

inline std::vector<long> find_min_modulus(long p, long k) {
    if (k == 1) return {0, 1};  // placeholder z; residues mod p
    std::vector<long> f(k + 1, 0);
    f[k] = 1;
    long total = 1;
    for (long i = 0; i < k; ++i) total *= p;
    // Tuples (c_0, ..., c_{k-1}) in lexicographic order, c_0 compared first.
    for (long t = 0; t < total; ++t) {
        long v = t;
        for (long i = k - 1; i >= 0; --i) {
            f[i] = v % p;
            v /= p;
        }
        if (poly_irreducible_mod_p(f, p)) return f;
    }
    throw std::logic_error("find_min_modulus: no irreducible polynomial found");
}

inline std::filesystem::path cache_dir() {
    const char* env = std::getenv("CHARSUM_CACHE_DIR");
    return env ? std::filesystem::path(env) : std::filesystem::path();
}

// One modulus per line: "p k c_0 c_1 ... c_k". A cached entry is trusted only
// after re-validation (monic, degree k, irreducible); absence of the cache
// does not change results.
inline bool modulus_cache_lookup(long p, long k, std::vector<long>& out) {
    auto dir = cache_dir();
    if (dir.empty()) return false;
    std::ifstream in(dir / "moduli.txt");
    if (!in) return false;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        long fp, fk;
        if (!(ss >> fp >> fk) || fp != p || fk != k) continue;
        std::vector<long> coeffs;
        long c;
        while (ss >> c) coeffs.push_back(c);
        if (static_cast<long>(coeffs.size()) != k + 1 || coeffs.back() != 1) continue;
        bool in_range = true;
        for (long ci : coeffs)
            if (ci < 0 || ci >= p) in_range = false;
        if (!in_range) continue;
        if (k > 1 && !poly_irreducible_mod_p(coeffs, p)) continue;
        out = std::move(coeffs);
        return true;
    }
    return false;
}

inline void modulus_cache_store(long p, long k, const std::vector<long>& coeffs) {
    auto dir = cache_dir();
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(dir / "moduli.txt", std::ios::app);
    if (!out) return;
    out << p << " " << k;
    for (long c : coeffs) out << " " << c;
    out << "\n";
}

} // namespace detail

/// Factors a prime power q = p^k; throws if q is not one.
inline std::pair<long, long> factor_prime_power(long q) {
    if (q < 2) throw std::invalid_argument("factor_prime_power: q must be >= 2");
    long p = q;
    for (long d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    long k = 0, v = q;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    if (v != 1) throw std::invalid_argument("factor_prime_power: q is not a prime power");
    return {p, k};
}

/// Constructs (and memoizes) F_{p^k} with the canonical lex-smallest modulus.
/// Preconditions: p prime, 1 <= k <= 8, p^k <= 2^20.
inline FieldPtr make_field(long p, long k) {
    static std::map<std::pair<long, long>, FieldPtr> memo;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto key = std::make_pair(p, k);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    if (!detail::is_prime_u64(p)) throw std::invalid_argument("make_field: p must be prime");
    if (k < 1 || k > Field::kMaxDegree) throw std::invalid_argument("make_field: k out of range");
    long q = 1;
    for (long i = 0; i < k; ++i) {
        q *= p;
        if (q > Field::kMaxOrder) throw std::invalid_argument("make_field: p^k exceeds 2^20");
    }

    std::vector<long> modulus;
    if (!detail::modulus_cache_lookup(p, k, modulus)) {
        modulus = detail::find_min_modulus(p, k);
        detail::modulus_cache_store(p, k, modulus);
    }
    auto f = std::make_shared<const Field>(p, k, std::move(modulus));
    memo.emplace(key, f);
    return f;
}

/// make_field for an order given as a prime power.
inline FieldPtr make_field_q(long q) {
    auto [p, k] = factor_prime_power(q);
    return make_field(p, k);
}

} // namespace charsum
