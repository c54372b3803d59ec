#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "moninv/abelian.hpp"
#include "moninv/common.hpp"

/**
 * Zero-sum theory over a finite abelian group G.
 *
 * A sequence over G is a finite multiset of group elements, stored as a
 * multiplicity vector indexed by the canonical element enumeration of G.
 * The minimal zero-sum sequences are exactly the atoms of the block monoid
 * B(G), and the Davenport constant D(G) is the maximal length of an atom.
 */
namespace moninv {

using Sequence = std::vector<long long>;  // multiplicity per element index

inline long long sequence_length(const Sequence& s) {
    long long n = 0;
    for (long long m : s) n = checked_add(n, m);
    return n;
}

/** Sum of the sequence in G. */
inline long long sigma(const AbelianGroup& g, const Sequence& s) {
    if (s.size() != static_cast<std::size_t>(g.order()))
        throw InputError("sequence has wrong length for the group");
    long long acc = 0;
    for (std::size_t e = 0; e < s.size(); ++e) {
        if (s[e] < 0) throw InputError("negative multiplicity in sequence");
        if (s[e] > 0) acc = g.add_multiple(acc, static_cast<long long>(e), s[e]);
    }
    return acc;
}

/**
 * Set of sums of all nonempty subsequences, returned as a sorted list of
 * element indices.
 */
inline std::vector<long long> subsums(const AbelianGroup& g, const Sequence& s) {
    if (s.size() != static_cast<std::size_t>(g.order()))
        throw InputError("sequence has wrong length for the group");
    std::vector<char> reach(static_cast<std::size_t>(g.order()), 0);
    std::vector<char> next(reach.size(), 0);
    for (std::size_t e = 0; e < s.size(); ++e) {
        if (s[e] < 0) throw InputError("negative multiplicity in sequence");
        for (long long c = 0; c < s[e]; ++c) {
            std::copy(reach.begin(), reach.end(), next.begin());
            next[e] = 1;
            for (long long x = 0; x < g.order(); ++x)
                if (reach[static_cast<std::size_t>(x)])
                    next[static_cast<std::size_t>(g.add(x, static_cast<long long>(e)))] = 1;
            reach.swap(next);
        }
    }
    std::vector<long long> out;
    for (long long x = 0; x < g.order(); ++x)
        if (reach[static_cast<std::size_t>(x)]) out.push_back(x);
    return out;
}

/**
 * True iff s is a nonempty zero-sum sequence none of whose proper nonempty
 * subsequences has sum zero.
 */
inline bool is_minimal_zero_sum(const AbelianGroup& g, const Sequence& s) {
    if (sequence_length(s) == 0) return false;
    if (sigma(g, s) != 0) return false;
    std::vector<std::size_t> support;
    for (std::size_t e = 0; e < s.size(); ++e)
        if (s[e] > 0) support.push_back(e);
    // DFS over sub-multisets; succeed on a proper nonempty zero-sum subsequence.
    std::function<bool(std::size_t, long long, bool, bool)> rec =
        [&](std::size_t i, long long acc, bool some, bool all) -> bool {
        if (i == support.size()) return acc == 0 && some && !all;
        for (long long c = 0; c <= s[support[i]]; ++c) {
            if (rec(i + 1, g.add_multiple(acc, static_cast<long long>(support[i]), c),
                    some || c > 0, all && c == s[support[i]]))
                return true;
        }
        return false;
    };
    return !rec(0, 0, false, true);
}

/**
 * All atoms of the block monoid B(G), i.e. all minimal zero-sum sequences
 * over G, as a lex-sorted list of multiplicity vectors.
 *
 * Search: depth-first over zero-sum-free sequences S' built in nondecreasing
 * element order.  At each node the completing element h = -sigma(S') closes
 * S' into a zero-sum sequence S'·h which is automatically minimal: every
 * proper nonempty subsequence either lies inside S' or is S'' · h with
 * S'' a proper subsequence of S', and both have nonzero sum because S' is
 * zero-sum free.  Emitting only when h >= the last element added produces
 * every minimal zero-sum sequence exactly once, namely as
 * (W minus one copy of its maximal element) · max(W); at the root this also
 * yields the singleton atom (0).  S'·e stays zero-sum free iff e != 0 and
 * -e is not a subsum of S'; since the subsum set of a zero-sum-free sequence
 * grows strictly with each extension, the depth is bounded by |G| - 1.
 */
inline std::vector<Sequence> atoms_of_block_monoid(const AbelianGroup& g,
                                                   const Limits& limits = Limits{}) {
    const std::size_t n = static_cast<std::size_t>(g.order());
    std::vector<Sequence> atoms;
    Sequence cur(n, 0);
    std::vector<char> sub(n, 0);  // characteristic vector of subsums(cur)
    long long nodes = 0;

    std::function<void(long long, long long)> rec = [&](long long last, long long sum) {
        if (++nodes > limits.node_limit)
            throw ResourceError("minimal zero-sum search exceeded the node limit of " +
                                std::to_string(limits.node_limit));
        long long h = g.neg(sum);
        if (h >= last) {
            Sequence w = cur;
            ++w[static_cast<std::size_t>(h)];
            atoms.push_back(std::move(w));
        }
        for (long long e = std::max<long long>(last, 1); e < g.order(); ++e) {
            if (sub[static_cast<std::size_t>(g.neg(e))]) continue;  // would gain a zero subsum
            std::vector<char> saved = sub;
            sub[static_cast<std::size_t>(e)] = 1;
            for (long long x = 0; x < g.order(); ++x)
                if (saved[static_cast<std::size_t>(x)])
                    sub[static_cast<std::size_t>(g.add(x, e))] = 1;
            ++cur[static_cast<std::size_t>(e)];
            rec(e, g.add(sum, e));
            --cur[static_cast<std::size_t>(e)];
            sub.swap(saved);
        }
    };
    rec(0, 0);
    std::sort(atoms.begin(), atoms.end());
    return atoms;
}

/** Davenport constant D(G): maximal length of a minimal zero-sum sequence. */
inline long long davenport(const AbelianGroup& g, const Limits& limits = Limits{}) {
    long long d = 0;
    for (const Sequence& a : atoms_of_block_monoid(g, limits))
        d = std::max(d, sequence_length(a));
    return d;
}

}  // namespace moninv
