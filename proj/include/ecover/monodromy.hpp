#ifndef ECOVER_MONODROMY_HPP
#define ECOVER_MONODROMY_HPP

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "ecover/errors.hpp"

namespace ecover {

/// Permutation of {0..n-1} by its image list.
struct Permutation {
    std::vector<int> images;

    Permutation() = default;
    explicit Permutation(std::vector<int> imgs) : images(std::move(imgs)) {
        std::vector<bool> seen(images.size(), false);
        for (int v : images) {
            if (v < 0 || v >= static_cast<int>(images.size()) || seen[v])
                throw DomainError("Permutation: image list is not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    int size() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[i]; }

    Permutation inverse() const {
        std::vector<int> im(images.size());
        for (int i = 0; i < size(); ++i) im[images[i]] = i;
        Permutation p;
        p.images = std::move(im);
        return p;
    }

    /// (a*b)(i) = a(b(i)).
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) throw SizeMismatch("Permutation: size mismatch");
        Permutation p;
        p.images.resize(a.size());
        for (int i = 0; i < a.size(); ++i) p.images[i] = a.images[b.images[i]];
        return p;
    }

    /// g^-1 * p * g.
    Permutation conjugate(const Permutation& g) const {
        return g.inverse() * (*this * g);
    }

    /// Cycle lengths sorted ascending (including fixed points).
    std::vector<int> cycle_type() const {
        std::vector<int> type;
        std::vector<bool> seen(images.size(), false);
        for (int i = 0; i < size(); ++i) {
            if (seen[i]) continue;
            int len = 0, j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = images[j];
                ++len;
            }
            type.push_back(len);
        }
        std::sort(type.begin(), type.end());
        return type;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.images == b.images;
    }
    friend bool operator<(const Permutation& a, const Permutation& b) {
        return a.images < b.images;
    }
};

enum class CommutatorConvention { InverseFirst, DirectFirst };

/// Commutator of s and t. InverseFirst is s^-1 t^-1 s t (the default);
/// DirectFirst is s t s^-1 t^-1. The two are conjugate, so class counts
/// agree under either.
inline Permutation commutator(const Permutation& s, const Permutation& t,
                              CommutatorConvention conv = CommutatorConvention::InverseFirst) {
    if (s.size() != t.size()) throw SizeMismatch("commutator: size mismatch");
    if (conv == CommutatorConvention::InverseFirst)
        return s.inverse() * t.inverse() * s * t;
    return s * t * s.inverse() * t.inverse();
}

/// True iff <s, t> acts transitively on {0..n-1} (orbit reachability).
inline bool is_transitive(const Permutation& s, const Permutation& t) {
    if (s.size() != t.size()) throw SizeMismatch("is_transitive: size mismatch");
    int n = s.size();
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : {s(v), t(v)}) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

/// Canonical pair: lexicographically minimal simultaneous conjugate.
struct CoverClass {
    Permutation sigma, tau;

    friend bool operator<(const CoverClass& a, const CoverClass& b) {
        if (a.sigma == b.sigma) return a.tau < b.tau;
        return a.sigma < b.sigma;
    }
};

namespace detail {

inline void all_permutations(int n, std::vector<Permutation>& out) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    do {
        Permutation p;
        p.images = im;
        out.push_back(p);
    } while (std::next_permutation(im.begin(), im.end()));
}

inline CoverClass canonicalize(const Permutation& s, const Permutation& t,
                               const std::vector<Permutation>& group) {
    CoverClass best{s, t};
    for (const auto& g : group) {
        CoverClass cand{s.conjugate(g), t.conjugate(g)};
        if (cand < best) best = cand;
    }
    return best;
}

} // namespace detail

struct ClassCount {
    long count = 0;
    std::vector<CoverClass> classes;
};

/// Counts equivalence classes of pairs (sigma, tau) in S_n under
/// simultaneous conjugation, filtered by commutator cycle type and
/// (optionally) transitivity. sigma only walks one representative per
/// conjugacy class; every class of pairs contains such a representative.
inline ClassCount count_classes(int n, const std::vector<int>& commutator_type,
                                bool require_transitive,
                                CommutatorConvention conv = CommutatorConvention::InverseFirst) {
    if (n < 1) throw DomainError("count_classes: n >= 1 required");
    if (n > 8) throw TooLarge("count_classes: exhaustive enumeration capped at n = 8");

    std::vector<Permutation> group;
    detail::all_permutations(n, group);

    // conjugacy class representatives of S_n: first-seen canonical element
    // per cycle type
    std::vector<Permutation> reps;
    std::set<std::vector<int>> seen_types;
    for (const auto& p : group)
        if (seen_types.insert(p.cycle_type()).second) reps.push_back(p);

    std::vector<int> want = commutator_type;
    std::sort(want.begin(), want.end());

    std::set<CoverClass> classes;
    for (const auto& sigma : reps) {
        for (const auto& tau : group) {
            Permutation c = commutator(sigma, tau, conv);
            if (c.cycle_type() != want) continue;
            if (require_transitive && !is_transitive(sigma, tau)) continue;
            classes.insert(detail::canonicalize(sigma, tau, group));
        }
    }

    ClassCount result;
    result.classes.assign(classes.begin(), classes.end());
    result.count = static_cast<long>(result.classes.size());
    return result;
}

/// Cycle type with one cycle of length k and the rest fixed, in S_n.
inline std::vector<int> one_cycle_type(int n, int k) {
    if (k < 1 || k > n) throw DomainError("one_cycle_type: need 1 <= k <= n");
    std::vector<int> t(n - k, 1);
    t.push_back(k);
    std::sort(t.begin(), t.end());
    return t;
}

} // namespace ecover

#endif
