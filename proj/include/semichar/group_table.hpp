// Finite groups as index-based multiplication tables.
//
// Element indices are 0-based everywhere internally; they appear 1-based only
// in rendered output. Tables are immutable after construction and safe to
// share across threads. The inverse table is precomputed at construction.
#pragma once

#include "semichar/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace semichar {

enum class AssocCheck {
    automatic, // verify when n <= 512, otherwise skip with a warning
    always,
    never,
};

class GroupTable {
public:
    // For imported (untrusted) tables. Verifies the group axioms; the O(n^3)
    // associativity pass follows the given policy. Family constructors build
    // tables that are groups by construction and bypass this.
    static GroupTable from_mul(int n, std::vector<int> mul,
                               std::optional<std::vector<std::string>> labels = std::nullopt,
                               AssocCheck policy = AssocCheck::automatic,
                               std::string* warning = nullptr) {
        GroupTable g = trusted(n, std::move(mul), std::move(labels));
        bool check_assoc = policy == AssocCheck::always;
        if (policy == AssocCheck::automatic) {
            if (n <= 512) {
                check_assoc = true;
            } else if (warning) {
                *warning = "associativity check skipped for imported table of order " +
                           std::to_string(n) + " (over the 512 default cap)";
            }
        }
        if (check_assoc) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c)
                        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                            throw InputError("multiplication table is not associative at (" +
                                             std::to_string(a) + ", " + std::to_string(b) + ", " +
                                             std::to_string(c) + ")");
        }
        return g;
    }

    // For tables produced by constructors that are correct by construction.
    // Still locates the identity and builds the inverse table, rejecting
    // tables where either fails to exist.
    static GroupTable trusted(int n, std::vector<int> mul,
                              std::optional<std::vector<std::string>> labels = std::nullopt) {
        if (n <= 0) throw InputError("group order must be positive");
        if (static_cast<std::int64_t>(mul.size()) != static_cast<std::int64_t>(n) * n)
            throw InputError("multiplication table has wrong size");
        for (int v : mul)
            if (v < 0 || v >= n) throw InputError("multiplication table entry out of range");
        GroupTable g;
        g.n_ = n;
        g.mul_ = std::move(mul);
        g.identity_ = -1;
        for (int e = 0; e < n; ++e) {
            bool ok = true;
            for (int x = 0; x < n && ok; ++x)
                ok = g.mul(e, x) == x && g.mul(x, e) == x;
            if (ok) {
                g.identity_ = e;
                break;
            }
        }
        if (g.identity_ < 0) throw InputError("multiplication table has no identity");
        g.inv_.assign(n, -1);
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y)
                if (g.mul(x, y) == g.identity_ && g.mul(y, x) == g.identity_) {
                    g.inv_[x] = y;
                    break;
                }
            if (g.inv_[x] < 0)
                throw InputError("element " + std::to_string(x) + " has no inverse");
        }
        if (labels) {
            if (static_cast<int>(labels->size()) != n)
                throw InputError("label list length does not match group order");
            g.labels_ = std::move(labels);
        }
        return g;
    }

    int order() const { return n_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    const std::vector<int>& mul_data() const { return mul_; }
    const std::optional<std::vector<std::string>>& labels() const { return labels_; }

    std::string label(int a) const {
        if (labels_) return (*labels_)[a];
        return "g" + std::to_string(a);
    }

    bool commutes(int a, int b) const { return mul(a, b) == mul(b, a); }

    std::int64_t element_order(int g) const {
        std::int64_t k = 1;
        int x = g;
        while (x != identity_) {
            x = mul(x, g);
            ++k;
        }
        return k;
    }

    int power(int g, std::int64_t k) const {
        if (k < 0) {
            g = inv_[g];
            k = -k;
        }
        int result = identity_;
        int base = g;
        while (k > 0) {
            if (k & 1) result = mul(result, base);
            base = mul(base, base);
            k >>= 1;
        }
        return result;
    }

    // Visits every ordered commuting pair exactly once, i-major then j,
    // including i = j and pairs involving the identity.
    template <typename Fn>
    void commuting_pairs(Fn&& visit) const {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (mul(i, j) == mul(j, i)) visit(i, j);
    }

    std::int64_t commuting_pair_count() const {
        std::int64_t count = 0;
        commuting_pairs([&](int, int) { ++count; });
        return count;
    }

    Factored order_product() const {
        Factored f;
        for (int g = 0; g < n_; ++g) f.multiply_by(element_order(g));
        return f;
    }

private:
    int n_ = 0;
    std::vector<int> mul_;
    int identity_ = 0;
    std::vector<int> inv_;
    std::optional<std::vector<std::string>> labels_;
};

// The set G[l^inf] of elements whose order is a power of the prime l.
// Contains the identity and is closed under inverses and powers.
struct LPartSubset {
    std::int64_t prime = 2;
    std::vector<int> members; // sorted element indices
};

inline LPartSubset l_part(const GroupTable& g, std::int64_t l) {
    if (!is_prime(l)) throw InputError("l_part: l must be prime");
    LPartSubset out;
    out.prime = l;
    for (int x = 0; x < g.order(); ++x)
        if (is_power_of(g.element_order(x), l)) out.members.push_back(x);
    return out;
}

} // namespace semichar
