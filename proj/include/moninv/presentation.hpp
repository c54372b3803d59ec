#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "moninv/common.hpp"

/**
 * Finitely generated reduced commutative cancellative monoids, presented by
 * the images of their atoms inside N_0^m x Z/n_1 x ... x Z/n_r.
 *
 * A monoid element is a coordinate vector of length m + r: first the m free
 * coordinates (nonnegative integers), then one reduced residue per torsion
 * factor.  An atom must be nonzero and must have positive free mass: an atom
 * supported only on torsion coordinates would be a torsion element, hence
 * invertible in a cancellative monoid, contradicting reducedness (and it
 * would give elements with infinitely many factorizations).
 */
namespace moninv {

using Vec = std::vector<long long>;

struct Presentation {
    long long free_dim = 0;           // m
    std::vector<long long> torsion;   // moduli n_1 .. n_r, each >= 2
    std::vector<Vec> atoms;           // each of length free_dim + torsion.size()
    std::vector<std::string> labels;  // optional; empty or one per atom

    std::size_t dim() const { return static_cast<std::size_t>(free_dim) + torsion.size(); }
    std::size_t atom_count() const { return atoms.size(); }
};

/** Reduces the torsion coordinates of v into canonical range [0, n). */
inline void reduce_torsion(const Presentation& p, Vec& v) {
    for (std::size_t j = 0; j < p.torsion.size(); ++j) {
        long long n = p.torsion[j];
        long long& c = v[static_cast<std::size_t>(p.free_dim) + j];
        c %= n;
        if (c < 0) c += n;
    }
}

/** Total free mass (sum of free coordinates) of an element or atom. */
inline long long free_mass(const Presentation& p, const Vec& v) {
    long long s = 0;
    for (long long f = 0; f < p.free_dim; ++f) s = checked_add(s, v[static_cast<std::size_t>(f)]);
    return s;
}

/**
 * Validates the presentation: consistent dimensions, moduli >= 2, atoms
 * nonzero, coordinates in range, positive free mass, pairwise distinct.
 * Throws InputError with a specific message on the first violation.
 */
inline void validate(const Presentation& p) {
    if (p.free_dim < 0) throw InputError("free_dim must be nonnegative");
    for (long long n : p.torsion)
        if (n < 2) throw InputError("torsion moduli must be >= 2");
    if (p.atoms.empty()) throw InputError("presentation needs at least one atom");
    if (!p.labels.empty() && p.labels.size() != p.atoms.size())
        throw InputError("labels must be absent or match the atom count");
    for (std::size_t i = 0; i < p.atoms.size(); ++i) {
        const Vec& a = p.atoms[i];
        if (a.size() != p.dim())
            throw InputError("atom " + std::to_string(i) + " has wrong dimension");
        for (long long f = 0; f < p.free_dim; ++f)
            if (a[static_cast<std::size_t>(f)] < 0)
                throw InputError("atom " + std::to_string(i) + " has a negative free coordinate");
        for (std::size_t j = 0; j < p.torsion.size(); ++j) {
            long long c = a[static_cast<std::size_t>(p.free_dim) + j];
            if (c < 0 || c >= p.torsion[j])
                throw InputError("atom " + std::to_string(i) +
                                 " has a torsion coordinate outside [0, n)");
        }
        if (free_mass(p, a) == 0) {
            bool zero = std::all_of(a.begin(), a.end(), [](long long c) { return c == 0; });
            if (zero) throw InputError("atom " + std::to_string(i) + " is zero");
            throw InputError("atom " + std::to_string(i) +
                             " is pure torsion (zero free part); such an element is "
                             "invertible, so the monoid would not be reduced");
        }
    }
    for (std::size_t i = 0; i < p.atoms.size(); ++i)
        for (std::size_t j = i + 1; j < p.atoms.size(); ++j)
            if (p.atoms[i] == p.atoms[j])
                throw InputError("atoms " + std::to_string(i) + " and " + std::to_string(j) +
                                 " coincide");
}

/** Image of the exponent vector z (one exponent per atom) in the monoid. */
inline Vec pi(const Presentation& p, const Vec& z) {
    if (z.size() != p.atoms.size()) throw InputError("exponent vector has wrong length");
    Vec v(p.dim(), 0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i] < 0) throw InputError("negative exponent");
        for (std::size_t c = 0; c < p.dim(); ++c)
            v[c] = checked_add(v[c], checked_mul(z[i], p.atoms[i][c]));
    }
    reduce_torsion(p, v);
    return v;
}

/** Checks that v is a well-formed element vector for p (ranges only). */
inline void validate_element(const Presentation& p, const Vec& v) {
    if (v.size() != p.dim()) throw InputError("element vector has wrong dimension");
    for (long long f = 0; f < p.free_dim; ++f)
        if (v[static_cast<std::size_t>(f)] < 0)
            throw InputError("element has a negative free coordinate");
    for (std::size_t j = 0; j < p.torsion.size(); ++j) {
        long long c = v[static_cast<std::size_t>(p.free_dim) + j];
        if (c < 0 || c >= p.torsion[j])
            throw InputError("element torsion coordinate outside [0, n)");
    }
}

}  // namespace moninv
