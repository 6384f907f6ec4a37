// Small exact-arithmetic helpers shared across the library: primes,
// factorizations, valuations, and residues in Q/Z.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace semichar {

using boost::multiprecision::cpp_int;

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Exponent of the prime l in n. n must be nonzero.
inline std::int64_t valuation(std::int64_t n, std::int64_t l) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    std::int64_t v = 0;
    while (n % l == 0) {
        n /= l;
        ++v;
    }
    return v;
}

inline bool is_power_of(std::int64_t n, std::int64_t l) {
    if (n < 1) return false;
    while (n % l == 0) n /= l;
    return n == 1;
}

inline std::int64_t ipow(std::int64_t base, std::int64_t exp) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < exp; ++i) r *= base;
    return r;
}

// x^-1 mod m for gcd(x, m) = 1, m >= 1.
inline std::int64_t mod_inverse(std::int64_t x, std::int64_t m) {
    std::int64_t a = ((x % m) + m) % m, b = m;
    std::int64_t u0 = 1, u1 = 0;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = u0 - q * u1;
        u0 = u1;
        u1 = t;
    }
    if (a != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    return ((u0 % m) + m) % m;
}

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline std::int64_t factorial(std::int64_t n) {
    std::int64_t r = 1;
    for (std::int64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

// A positive integer kept as a prime factorization. Orders of semicharacter
// groups overflow any fixed-width integer, so they are carried factored.
class Factored {
public:
    Factored() = default;

    static Factored one() { return Factored{}; }

    static Factored of(std::int64_t n) {
        if (n <= 0) throw std::invalid_argument("Factored::of needs a positive integer");
        Factored f;
        for (std::int64_t p = 2; p * p <= n; ++p) {
            while (n % p == 0) {
                f.exps_[p] += 1;
                n /= p;
            }
        }
        if (n > 1) f.exps_[n] += 1;
        return f;
    }

    void multiply_by(const Factored& other) {
        for (const auto& [p, e] : other.exps_) exps_[p] += e;
    }

    void multiply_by(std::int64_t n) { multiply_by(Factored::of(n)); }

    std::int64_t val(std::int64_t l) const {
        auto it = exps_.find(l);
        return it == exps_.end() ? 0 : it->second;
    }

    bool divides(const Factored& other) const {
        for (const auto& [p, e] : exps_)
            if (other.val(p) < e) return false;
        return true;
    }

    bool is_one() const { return exps_.empty(); }

    bool operator==(const Factored& other) const { return exps_ == other.exps_; }

    const std::map<std::int64_t, std::int64_t>& exponents() const { return exps_; }

    std::vector<std::int64_t> primes() const {
        std::vector<std::int64_t> ps;
        for (const auto& [p, e] : exps_) ps.push_back(p);
        return ps;
    }

    cpp_int value() const {
        cpp_int v = 1;
        for (const auto& [p, e] : exps_)
            for (std::int64_t i = 0; i < e; ++i) v *= p;
        return v;
    }

    std::string str() const {
        if (exps_.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& [p, e] : exps_) {
            if (!first) os << " * ";
            first = false;
            os << p;
            if (e > 1) os << "^" << e;
        }
        return os.str();
    }

private:
    std::map<std::int64_t, std::int64_t> exps_;
};

// An element of Q/Z, stored as the reduced representative num/den in [0, 1).
// This is the additive avatar of a root of unity; its order in Q/Z is den.
class Residue {
public:
    Residue() : num_(0), den_(1) {}

    Residue(std::int64_t num, std::int64_t den) {
        if (den <= 0) throw std::invalid_argument("Residue: denominator must be positive");
        num %= den;
        if (num < 0) num += den;
        const std::int64_t g = std::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    // Order as an element of Q/Z.
    std::int64_t order() const { return den_; }

    Residue operator+(const Residue& o) const {
        return Residue(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    Residue operator-(const Residue& o) const {
        return Residue(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }

    Residue operator-() const { return Residue(-num_, den_); }

    Residue times(std::int64_t k) const {
        const std::int64_t kk = ((k % den_) + den_) % den_;
        return Residue(num_ * kk, den_);
    }

    bool operator==(const Residue& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Residue& o) const { return !(*this == o); }
    bool operator<(const Residue& o) const {
        return num_ * o.den_ < o.num_ * den_;
    }

    std::string str() const {
        if (num_ == 0) return "0";
        std::ostringstream os;
        os << num_ << "/" << den_;
        return os.str();
    }

private:
    std::int64_t num_;
    std::int64_t den_;
};

// Errors that should surface as "infeasible at this scale", distinct from
// malformed input or a genuine mathematical failure.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace semichar
