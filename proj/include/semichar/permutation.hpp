// Permutations on {0, ..., n-1} with cycle-notation parsing and printing.
//
// Composition convention, fixed globally: (s * t)(x) = t(s(x)), i.e. products
// apply left to right, matching the reading order of cycle notation. Text
// cycles use 1-based points.
#pragma once

#include "semichar/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace semichar {

class Permutation {
public:
    Permutation() = default;

    static Permutation identity(int degree) {
        Permutation p;
        p.images_.resize(degree);
        std::iota(p.images_.begin(), p.images_.end(), 0);
        return p;
    }

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int x : images_) {
            if (x < 0 || x >= static_cast<int>(images_.size()) || seen[x])
                throw InputError("Permutation: images are not a bijection");
            seen[x] = true;
        }
    }

    int degree() const { return static_cast<int>(images_.size()); }
    int operator()(int x) const { return images_[x]; }
    const std::vector<int>& images() const { return images_; }

    // (s * t)(x) = t(s(x)): apply *this first, then other.
    Permutation operator*(const Permutation& other) const {
        std::vector<int> im(images_.size());
        for (std::size_t x = 0; x < images_.size(); ++x)
            im[x] = other.images_[images_[x]];
        Permutation p;
        p.images_ = std::move(im);
        return p;
    }

    Permutation inverse() const {
        std::vector<int> im(images_.size());
        for (std::size_t x = 0; x < images_.size(); ++x)
            im[images_[x]] = static_cast<int>(x);
        Permutation p;
        p.images_ = std::move(im);
        return p;
    }

    bool is_identity() const {
        for (std::size_t x = 0; x < images_.size(); ++x)
            if (images_[x] != static_cast<int>(x)) return false;
        return true;
    }

    bool operator==(const Permutation& o) const { return images_ == o.images_; }
    bool operator!=(const Permutation& o) const { return images_ != o.images_; }
    bool operator<(const Permutation& o) const { return images_ < o.images_; }

    bool is_even() const {
        int transpositions = 0;
        for (const auto& c : cycles())
            transpositions += static_cast<int>(c.size()) - 1;
        return transpositions % 2 == 0;
    }

    std::int64_t order() const {
        std::int64_t ord = 1;
        for (const auto& c : cycles()) ord = std::lcm(ord, static_cast<std::int64_t>(c.size()));
        return ord;
    }

    Permutation power(std::int64_t k) const {
        const std::int64_t ord = order();
        k %= ord;
        if (k < 0) k += ord;
        Permutation result = identity(degree());
        Permutation base = *this;
        while (k > 0) {
            if (k & 1) result = result * base;
            base = base * base;
            k >>= 1;
        }
        return result;
    }

    // Disjoint cycle decomposition. Each cycle is rotated to start at its
    // minimum point; cycles are listed by ascending minimum point and include
    // fixed points as length-1 cycles.
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(images_.size(), false);
        for (std::size_t start = 0; start < images_.size(); ++start) {
            if (seen[start]) continue;
            std::vector<int> cyc;
            int x = static_cast<int>(start);
            do {
                cyc.push_back(x);
                seen[x] = true;
                x = images_[x];
            } while (x != static_cast<int>(start));
            out.push_back(std::move(cyc));
        }
        return out;
    }

private:
    std::vector<int> images_;
};

// Multiset of cycle lengths, ascending; fixed points count as length 1.
inline std::vector<int> cycle_type(const Permutation& p) {
    std::vector<int> lens;
    for (const auto& c : p.cycles()) lens.push_back(static_cast<int>(c.size()));
    std::sort(lens.begin(), lens.end());
    return lens;
}

// The length-k cycles of p, each as a Permutation of the same degree fixing
// everything outside its support. Ordered by ascending minimum point.
inline std::vector<Permutation> cycles_of_length(const Permutation& p, int k) {
    std::vector<Permutation> out;
    for (const auto& c : p.cycles()) {
        if (static_cast<int>(c.size()) != k) continue;
        std::vector<int> im(p.degree());
        std::iota(im.begin(), im.end(), 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            im[c[i]] = c[(i + 1) % c.size()];
        out.emplace_back(std::move(im));
    }
    return out;
}

// Parses cycle notation, e.g. "(1 2 3)(4 5)". Points are 1-based and
// separated by whitespace or commas; cycles need not be disjoint and are
// applied left to right. "()" is the identity. The degree is the largest
// point mentioned unless a larger one is requested.
inline Permutation perm_parse(const std::string& text, int degree = 0) {
    std::vector<std::vector<int>> cycles;
    std::size_t i = 0;
    int max_point = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] != '(') throw InputError("cycle notation: expected '(' at position " + std::to_string(i));
        ++i;
        std::vector<int> cyc;
        while (true) {
            while (i < text.size() &&
                   (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
                ++i;
            if (i >= text.size()) throw InputError("cycle notation: unterminated cycle");
            if (text[i] == ')') {
                ++i;
                break;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw InputError("cycle notation: unexpected character at position " + std::to_string(i));
            int point = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                point = point * 10 + (text[i] - '0');
                ++i;
            }
            if (point < 1) throw InputError("cycle notation: points are 1-based");
            if (std::find(cyc.begin(), cyc.end(), point - 1) != cyc.end())
                throw InputError("cycle notation: repeated point " + std::to_string(point) + " within one cycle");
            cyc.push_back(point - 1);
            max_point = std::max(max_point, point);
        }
        if (!cyc.empty()) cycles.push_back(std::move(cyc));
    }
    const int n = std::max(degree, max_point);
    Permutation result = Permutation::identity(n);
    for (const auto& cyc : cycles) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 0);
        for (std::size_t j = 0; j < cyc.size(); ++j)
            im[cyc[j]] = cyc[(j + 1) % cyc.size()];
        result = result * Permutation(std::move(im));
    }
    return result;
}

// Canonical text form: disjoint cycles by ascending minimum point, each
// starting at its minimum, fixed points omitted; the identity prints as "()".
inline std::string perm_print(const Permutation& p) {
    std::string out;
    for (const auto& c : p.cycles()) {
        if (c.size() < 2) continue;
        out += '(';
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i > 0) out += ' ';
            out += std::to_string(c[i] + 1);
        }
        out += ')';
    }
    if (out.empty()) out = "()";
    return out;
}

} // namespace semichar
