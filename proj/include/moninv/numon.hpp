#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "moninv/common.hpp"
#include "moninv/presentation.hpp"

/**
 * Numerical monoids: submonoids of (N_0, +) with finite complement, given by
 * a generating set of positive integers with overall gcd 1.
 *
 * A numerical monoid H with multiplicity m (its least positive element) is
 * called smooth when h - b lies in H for all h, b, c in H with h >= b + c.
 * Smoothness is equivalent to the gap set being the interval [1, m-1], and
 * to the minimal generating set being exactly [m, 2m-1]; in that case length
 * counting transfers H onto a monoid determined by m alone.
 */
namespace moninv {

struct NumericalMonoid {
    std::vector<long long> gens;
};

inline void validate(const NumericalMonoid& h) {
    if (h.gens.empty()) throw InputError("a numerical monoid needs at least one generator");
    long long g = 0;
    for (long long v : h.gens) {
        if (v < 1) throw InputError("numerical monoid generators must be positive");
        g = gcd_ll(g, v);
    }
    if (g != 1)
        throw InputError("numerical monoid generators must have gcd 1 "
                         "(otherwise the complement in N_0 is infinite)");
    // the generating set must be minimal: no generator may be a sum of the others
    for (std::size_t i = 0; i < h.gens.size(); ++i) {
        long long target = h.gens[i];
        std::vector<char> reach(static_cast<std::size_t>(target) + 1, 0);
        reach[0] = 1;
        for (long long v = 1; v <= target; ++v)
            for (std::size_t j = 0; j < h.gens.size(); ++j) {
                if (j == i || h.gens[j] > v) continue;
                if (reach[static_cast<std::size_t>(v - h.gens[j])]) {
                    reach[static_cast<std::size_t>(v)] = 1;
                    break;
                }
            }
        if (reach[static_cast<std::size_t>(target)])
            throw InputError("generator " + std::to_string(target) +
                             " lies in the monoid generated by the other generators; "
                             "the generating set must be minimal");
    }
}

namespace detail {

/**
 * Membership sieve: returns a table covering [0, limit] plus one full run of
 * `m` consecutive members beyond the last gap, so table.size() - 1 is always
 * past the Frobenius number.  Membership of any n >= table.size() is implied
 * (the run certifies every later value is a member).
 */
inline std::vector<char> numon_sieve(const NumericalMonoid& h, long long limit = 0) {
    validate(h);
    long long m = *std::min_element(h.gens.begin(), h.gens.end());
    long long size = std::max<long long>(limit + 1, 2);
    for (;;) {
        std::vector<char> member(static_cast<std::size_t>(size), 0);
        member[0] = 1;
        for (long long i = 1; i < size; ++i)
            for (long long g : h.gens)
                if (i >= g && member[static_cast<std::size_t>(i - g)]) {
                    member[static_cast<std::size_t>(i)] = 1;
                    break;
                }
        long long run = 0;
        for (long long i = size - 1; i >= 0 && member[static_cast<std::size_t>(i)]; --i) ++run;
        if (run >= m && size > limit) return member;
        size = checked_mul(size, 2);
        if (size > (1LL << 30))
            throw ResourceError("numerical monoid sieve exceeded its size budget");
    }
}

}  // namespace detail

/** The gap set N_0 \ H, in increasing order. */
inline std::vector<long long> gaps(const NumericalMonoid& h) {
    std::vector<char> member = detail::numon_sieve(h);
    std::vector<long long> out;
    for (std::size_t i = 0; i < member.size(); ++i)
        if (!member[i]) out.push_back(static_cast<long long>(i));
    return out;
}

/** The largest integer not in H, or -1 when H is all of N_0. */
inline long long frobenius(const NumericalMonoid& h) {
    std::vector<long long> gs = gaps(h);
    return gs.empty() ? -1 : gs.back();
}

/**
 * Whether H is smooth: h - b in H whenever h, b, c in H satisfy h >= b + c.
 * Equivalently, the gap set is the interval [1, m-1]: a gap d >= m would give
 * the counterexample h = d + b for any member b with d + b in H, using c = m.
 */
inline bool is_smooth(const NumericalMonoid& h) {
    std::vector<long long> gs = gaps(h);
    for (std::size_t i = 0; i < gs.size(); ++i)
        if (gs[i] != static_cast<long long>(i) + 1) return false;
    return true;
}

/** Whether length counting transfers H onto a monoid determined by its multiplicity. */
inline bool transfer_is_valid(const NumericalMonoid& h) { return is_smooth(h); }

/** The minimal generating set (the atoms) of H, in increasing order. */
inline std::vector<long long> minimal_generators(const NumericalMonoid& h) {
    std::vector<char> member = detail::numon_sieve(h);
    long long m = 0;
    for (std::size_t i = 1; i < member.size(); ++i)
        if (member[i]) {
            m = static_cast<long long>(i);
            break;
        }
    MONINV_CHECK(m > 0, "sieve covers the multiplicity");
    long long f = -1;
    for (std::size_t i = 0; i < member.size(); ++i)
        if (!member[i]) f = static_cast<long long>(i);
    std::vector<long long> out;
    // atoms are members that are not sums of two smaller members; every
    // member above f + m splits off m, so the scan below is complete
    long long last = std::max(f + m, m);
    for (long long v = m; v <= last && v < static_cast<long long>(member.size()); ++v) {
        if (!member[static_cast<std::size_t>(v)]) continue;
        bool atom = true;
        for (long long a = m; atom && a <= v - m; ++a)
            if (member[static_cast<std::size_t>(a)] && member[static_cast<std::size_t>(v - a)])
                atom = false;
        if (atom) out.push_back(v);
    }
    return out;
}

/** H as a one-dimensional presentation over its minimal generating set. */
inline Presentation to_presentation(const NumericalMonoid& h) {
    Presentation p;
    p.free_dim = 1;
    for (long long g : minimal_generators(h)) {
        p.atoms.push_back(Vec{g});
        p.labels.push_back(std::to_string(g));
    }
    return p;
}

}  // namespace moninv
