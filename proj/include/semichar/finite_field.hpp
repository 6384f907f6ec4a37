// Exact arithmetic in GF(p^e), e <= 4, at desk scale.
//
// Elements are encoded as integers in [0, q): the base-p digits of the code,
// low digit first, are the coefficients of the residue polynomial modulo the
// field modulus. All arithmetic is table-driven; tables are built once at
// construction. The modulus is chosen deterministically (lexicographically
// smallest monic irreducible, coefficients compared low-to-high) so element
// encodings agree across runs and across serialized files.
#pragma once

#include "semichar/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace semichar {

namespace poly {

// Dense polynomials over Z/p, coefficient of x^i at index i.
using Poly = std::vector<int>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<int>((c[i + j] + static_cast<std::int64_t>(a[i]) * b[j]) % p);
    trim(c);
    return c;
}

inline Poly add(const Poly& a, const Poly& b, int p) {
    Poly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        int v = 0;
        if (i < a.size()) v += a[i];
        if (i < b.size()) v += b[i];
        c[i] = v % p;
    }
    trim(c);
    return c;
}

// Remainder of a modulo the monic polynomial m.
inline Poly mod(Poly a, const Poly& m, int p) {
    trim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dm) {
        const int shift = static_cast<int>(a.size()) - 1 - dm;
        const int lead = a.back();
        for (int i = 0; i <= dm; ++i) {
            a[i + shift] = static_cast<int>(
                ((a[i + shift] - static_cast<std::int64_t>(lead) * m[i]) % p + p) % p);
        }
        trim(a);
    }
    return a;
}

// Exact divisibility test by the monic polynomial m.
inline bool divides(const Poly& m, const Poly& a, int p) {
    return mod(a, m, p).empty();
}

} // namespace poly

class FiniteField {
public:
    // Deterministic field with q = p^e elements, 1 <= e <= 4.
    FiniteField(std::int64_t p, int e) : p_(p), e_(e) {
        if (!is_prime(p)) throw InputError("field_make: p = " + std::to_string(p) + " is not prime");
        if (e < 1 || e > 4) throw InputError("field_make: extension degree must be in [1, 4]");
        q_ = 1;
        for (int i = 0; i < e; ++i) {
            q_ *= p;
            if (q_ > 4096) throw CapExceeded("field_make: field size over desk-scale cap 4096");
        }
        modulus_ = smallest_irreducible(static_cast<int>(p), e);
        build_tables();
    }

    std::int64_t p() const { return p_; }
    int e() const { return e_; }
    std::int64_t q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    int zero() const { return 0; }
    int one() const { return 1; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }

    int inv(int a) const {
        if (a == 0) throw InputError("field inverse of zero");
        return inv_[a];
    }

    int pow(int a, std::int64_t k) const {
        if (a == 0) {
            if (k <= 0) throw InputError("0^k for k <= 0");
            return 0;
        }
        const std::int64_t m = q_ - 1;
        k %= m;
        if (k < 0) k += m;
        int r = 1, base = a;
        while (k > 0) {
            if (k & 1) r = mul(r, base);
            base = mul(base, base);
            k >>= 1;
        }
        return r;
    }

    // Frobenius x -> x^p.
    int frob(int a) const { return frob_[a]; }

    // Trace to the prime field, returned as an integer in [0, p).
    int trace(int a) const { return trace_[a]; }

    // Multiplicative order of a nonzero element.
    std::int64_t mult_order(int a) const {
        if (a == 0) throw InputError("mult_order of zero");
        std::int64_t ord = 1;
        int x = a;
        while (x != 1) {
            x = mul(x, a);
            ++ord;
        }
        return ord;
    }

    // Scalar embedding of an integer residue.
    int from_int(std::int64_t c) const {
        c %= p_;
        if (c < 0) c += p_;
        return static_cast<int>(c);
    }

    // Coefficient vector (low degree first, length e) of an element code.
    std::vector<int> coeffs(int a) const {
        std::vector<int> cs(e_);
        for (int i = 0; i < e_; ++i) {
            cs[i] = static_cast<int>(a % p_);
            a = static_cast<int>(a / p_);
        }
        return cs;
    }

    int encode(const std::vector<int>& cs) const {
        if (static_cast<int>(cs.size()) > e_) throw InputError("field element: too many coefficients");
        std::int64_t a = 0, w = 1;
        for (int c : cs) {
            std::int64_t r = c % p_;
            if (r < 0) r += p_;
            a += r * w;
            w *= p_;
        }
        return static_cast<int>(a);
    }

    // Evaluate a polynomial over Z/p (coefficients low first) at an element.
    int eval_int_poly(const std::vector<std::int64_t>& coeffs, int x) const {
        int acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = add(mul(acc, x), from_int(*it));
        return acc;
    }

    bool operator==(const FiniteField& o) const {
        return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
    }

    // Monic irreducibles of degree <= 4 over Z/p have no roots and, in degree
    // 4, no quadratic factors; both conditions are checked exhaustively.
    static bool is_irreducible(const poly::Poly& m, int p) {
        const int deg = static_cast<int>(m.size()) - 1;
        if (deg < 1) return false;
        if (deg == 1) return true;
        for (int r = 0; r < p; ++r) {
            std::int64_t acc = 0;
            for (int i = deg; i >= 0; --i) acc = (acc * r + m[i]) % p;
            if (acc == 0) return false;
        }
        if (deg == 4) {
            for (int c0 = 0; c0 < p; ++c0)
                for (int c1 = 0; c1 < p; ++c1) {
                    const poly::Poly quad = {c0, c1, 1};
                    if (poly::divides(quad, m, p)) return false;
                }
        }
        return true;
    }

private:
    static poly::Poly smallest_irreducible(int p, int e) {
        // Enumerate monic degree-e polynomials in lexicographic order of the
        // tuple (c0, c1, ..., c_{e-1}).
        poly::Poly m(e + 1, 0);
        m[e] = 1;
        std::vector<int> cs(e, 0);
        while (true) {
            for (int i = 0; i < e; ++i) m[i] = cs[i];
            if (is_irreducible(m, p)) return m;
            int i = e - 1;
            while (i >= 0 && cs[i] == p - 1) cs[i--] = 0;
            if (i < 0) throw std::logic_error("no irreducible polynomial found");
            ++cs[i];
        }
    }

    void build_tables() {
        const int q = static_cast<int>(q_);
        const int p = static_cast<int>(p_);
        add_.resize(static_cast<std::size_t>(q) * q);
        mul_.resize(static_cast<std::size_t>(q) * q);
        neg_.resize(q);
        inv_.assign(q, 0);
        frob_.resize(q);
        trace_.resize(q);

        std::vector<poly::Poly> elems(q);
        for (int a = 0; a < q; ++a) {
            poly::Poly pa = to_poly(a);
            elems[a] = pa;
        }
        for (int a = 0; a < q; ++a) {
            for (int b = 0; b < q; ++b) {
                add_[static_cast<std::size_t>(a) * q + b] = from_poly(poly::add(elems[a], elems[b], p));
                mul_[static_cast<std::size_t>(a) * q + b] =
                    from_poly(poly::mod(poly::mul(elems[a], elems[b], p), modulus_, p));
            }
        }
        for (int a = 0; a < q; ++a) {
            poly::Poly na = elems[a];
            for (auto& c : na) c = (p - c) % p;
            poly::trim(na);
            neg_[a] = from_poly(na);
        }
        for (int a = 1; a < q; ++a) {
            for (int b = 1; b < q; ++b)
                if (mul(a, b) == 1) {
                    inv_[a] = b;
                    break;
                }
        }
        for (int a = 0; a < q; ++a) {
            int x = a;
            for (std::int64_t i = 1; i < p_; ++i) x = mul(x, a);
            frob_[a] = x;
        }
        for (int a = 0; a < q; ++a) {
            int s = 0, x = a;
            for (int i = 0; i < e_; ++i) {
                s = add(s, x);
                x = frob_[x];
            }
            // The trace lies in the prime field: its code is a single digit.
            if (s >= p) throw std::logic_error("trace left the prime field");
            trace_[a] = s;
        }
    }

    poly::Poly to_poly(int a) const {
        poly::Poly out;
        for (int i = 0; i < e_; ++i) {
            out.push_back(static_cast<int>(a % p_));
            a = static_cast<int>(a / p_);
        }
        poly::trim(out);
        return out;
    }

    int from_poly(const poly::Poly& pa) const {
        std::int64_t a = 0, w = 1;
        for (std::size_t i = 0; i < pa.size(); ++i) {
            a += pa[i] * w;
            w *= p_;
        }
        return static_cast<int>(a);
    }

    std::int64_t p_;
    int e_;
    std::int64_t q_;
    poly::Poly modulus_;
    std::vector<int> add_, mul_, neg_, inv_, frob_, trace_;
};

inline FiniteField field_make(std::int64_t p, int e) { return FiniteField(p, e); }

// GF(q^2) built over the same prime field with an explicit embedding of
// GF(q), found by locating the smallest root of the base modulus in the
// extension. Keeps a single field representation for both layers.
struct QuadraticExtension {
    FiniteField ext;                 // GF(p^{2e}) with the deterministic modulus
    std::vector<int> embed;          // embed[a] = image of base element a
};

inline QuadraticExtension field_ext_square(const FiniteField& base) {
    QuadraticExtension out{FiniteField(base.p(), 2 * base.e()), {}};
    const FiniteField& E = out.ext;
    // Root of the base modulus inside the extension; smallest code wins.
    std::vector<std::int64_t> mod_coeffs(base.modulus().begin(), base.modulus().end());
    int root = -1;
    for (int x = 0; x < E.q(); ++x) {
        if (E.eval_int_poly(mod_coeffs, x) == 0) {
            root = x;
            break;
        }
    }
    if (root < 0) throw std::logic_error("base modulus has no root in the quadratic extension");
    out.embed.resize(base.q());
    for (int a = 0; a < base.q(); ++a) {
        const std::vector<int> cs = base.coeffs(a);
        int acc = 0;
        for (auto it = cs.rbegin(); it != cs.rend(); ++it)
            acc = E.add(E.mul(acc, root), E.from_int(*it));
        out.embed[a] = acc;
    }
    return out;
}

} // namespace semichar
