#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "moninv/abelian.hpp"
#include "moninv/common.hpp"
#include "moninv/factorizations.hpp"
#include "moninv/invariants.hpp"
#include "moninv/presentation.hpp"
#include "moninv/zerosum.hpp"

/**
 * T-block monoids B(G, T, iota): pairs (S, t) of a sequence S over a finite
 * abelian group G and an element t of an auxiliary reduced monoid
 * T <= N_0^s x Z/n_1 x ... x Z/n_q, subject to sigma(S) + iota(t) = 0, where
 * iota : T -> G is a homomorphism given by its values on the atoms of T.
 *
 * Atom search: the combined G-trace of a pair (S, t) -- S together with the
 * iota values of any factorization of t -- is a zero-sum sequence over G,
 * and a zero-sum splitting of the trace splits the pair.  Hence every atom
 * arises from a minimal zero-sum sequence W over G by covering a
 * sub-multiset of W with atoms of T whose iota values match the covered
 * copies one for one.  The resulting candidates may still decompose (the
 * T-part can split against S), which an explicit split search removes.
 */
namespace moninv {

struct TAtom {
    Vec free;     // s nonnegative coordinates
    Vec torsion;  // q reduced residues
    Vec iota;     // element of G, one coordinate per invariant factor
};

struct TMonoidSpec {
    std::vector<long long> t_torsion;  // moduli of the torsion part of T's ambient lattice
    std::vector<TAtom> atoms;

    std::size_t free_rank() const { return atoms.empty() ? 0 : atoms[0].free.size(); }
};

/** A T-block atom: group multiplicities plus the T-part in lattice coordinates. */
struct TBlockAtom {
    Sequence s;   // multiplicity per group element index
    Vec t;        // free coords then torsion coords of the T-part
    Vec t_expon;  // one witness atom-exponent vector for the T-part
};

/** The presentation of T itself (atom coordinates in its ambient lattice). */
inline Presentation t_presentation(const TMonoidSpec& t) {
    Presentation p;
    p.free_dim = static_cast<long long>(t.free_rank());
    p.torsion = t.t_torsion;
    for (const TAtom& a : t.atoms) {
        Vec v = a.free;
        v.insert(v.end(), a.torsion.begin(), a.torsion.end());
        p.atoms.push_back(std::move(v));
    }
    return p;
}

/**
 * Validates the T-monoid data against the group: coordinate ranges, distinct
 * nonzero atoms with positive free mass (T must be reduced for the block
 * search to terminate), and additivity of iota across the relation atoms of
 * T (iota must be well defined on all of T, not just on the listed atoms).
 */
inline void validate_t(const AbelianGroup& g, const TMonoidSpec& t,
                       const Limits& limits = Limits{}) {
    Presentation tp = t_presentation(t);
    validate(tp);
    for (const TAtom& a : t.atoms) {
        if (a.free.size() != t.free_rank()) throw InputError("T-atom free parts differ in length");
        if (a.torsion.size() != t.t_torsion.size())
            throw InputError("T-atom torsion part has wrong length");
        if (a.iota.size() != g.rank()) throw InputError("iota value has wrong length for the group");
        for (std::size_t j = 0; j < a.iota.size(); ++j)
            if (a.iota[j] < 0 || a.iota[j] >= g.factors()[j])
                throw InputError("iota value has a coordinate outside its invariant factor");
    }
    if (!is_reduced(tp, limits))
        throw InputError("the auxiliary monoid T is not reduced: an atom factors through others");
    // iota must factor through T: check additivity on the defining relations,
    // which generate the kernel congruence of the atom map.
    RelationAtoms rel = relation_atoms(tp, RelationKind::plain, std::nullopt, limits);
    for (const auto& pr : rel.pairs) {
        long long lhs = 0, rhs = 0;
        for (std::size_t i = 0; i < t.atoms.size(); ++i) {
            lhs = g.add_multiple(lhs, g.index_of(t.atoms[i].iota), pr.x[i]);
            rhs = g.add_multiple(rhs, g.index_of(t.atoms[i].iota), pr.y[i]);
        }
        if (lhs != rhs)
            throw InputError("iota is not additive on T: two factorizations of one element "
                             "of T receive different iota values");
    }
}

namespace detail {

/**
 * A reachable state of partial sub-multiset selection over a multiset of
 * G-labelled items: the group value of the selection plus whether the
 * selection is the empty one and whether it takes every copy seen so far.
 * Both flags hold only before any item is folded.
 */
struct SubsetValue {
    long long value;  // group element index
    bool empty;
    bool full;

    friend bool operator<(const SubsetValue& a, const SubsetValue& b) {
        return std::tie(a.value, a.empty, a.full) < std::tie(b.value, b.empty, b.full);
    }
};

/** Folds one item (group index `elem`, multiplicity `count`) into the state set. */
inline void fold_subset_values(const AbelianGroup& g, std::vector<SubsetValue>& acc,
                               long long elem, long long count) {
    std::set<SubsetValue> next;
    for (const SubsetValue& sv : acc)
        for (long long k = 0; k <= count; ++k)
            next.insert(SubsetValue{g.add_multiple(sv.value, elem, k), sv.empty && k == 0,
                                    sv.full && k == count});
    acc.assign(next.begin(), next.end());
}

}  // namespace detail

/**
 * The atoms of B(G, T, iota), sorted lexicographically by the embedding
 * coordinates [group multiplicities | T free part | T torsion part].
 */
inline std::vector<TBlockAtom> tblock_atoms(const AbelianGroup& g, const TMonoidSpec& t,
                                            const Limits& limits = Limits{}) {
    validate_t(g, t, limits);
    Presentation tp = t_presentation(t);
    const std::size_t tdim = tp.dim();
    const std::size_t n = static_cast<std::size_t>(g.order());

    std::vector<std::vector<std::size_t>> with_iota(n);  // group index -> T-atoms with that iota
    for (std::size_t i = 0; i < t.atoms.size(); ++i)
        with_iota[static_cast<std::size_t>(g.index_of(t.atoms[i].iota))].push_back(i);

    const std::vector<Sequence> zero_sums = atoms_of_block_monoid(g, limits);

    std::map<std::pair<Sequence, Vec>, Vec> candidates;  // (S, T-part) -> witness exponents

    Vec expon(t.atoms.size(), 0);
    Sequence s(n, 0);
    std::vector<std::pair<std::size_t, long long>> support;

    std::function<void(std::size_t)> choose_element;
    // Covers further copies of support element `idx` by T-atoms with matching
    // iota, choosing atom indices nondecreasingly so each multiset of covering
    // atoms is produced exactly once.
    std::function<void(std::size_t, long long, std::size_t)> choose_cover =
        [&](std::size_t idx, long long uncovered, std::size_t min_pos) {
            if (uncovered == 0 || min_pos >= with_iota[support[idx].first].size()) {
                choose_element(idx + 1);
                return;
            }
            choose_element(idx + 1);  // stop covering this element here
            const auto& pool = with_iota[support[idx].first];
            for (std::size_t pos = min_pos; pos < pool.size(); ++pos) {
                s[support[idx].first] -= 1;
                expon[pool[pos]] += 1;
                choose_cover(idx, uncovered - 1, pos);
                expon[pool[pos]] -= 1;
                s[support[idx].first] += 1;
            }
        };
    choose_element = [&](std::size_t idx) {
        if (idx < support.size()) {
            choose_cover(idx, support[idx].second, 0);
            return;
        }
        Vec tpart(tdim, 0);
        for (std::size_t i = 0; i < t.atoms.size(); ++i)
            for (std::size_t c = 0; c < tdim; ++c)
                tpart[c] = checked_add(tpart[c], checked_mul(expon[i], tp.atoms[i][c]));
        reduce_torsion(tp, tpart);
        auto key = std::make_pair(s, tpart);
        if (candidates.find(key) == candidates.end()) candidates[key] = expon;
    };

    for (const Sequence& w : zero_sums) {
        support.clear();
        for (std::size_t e = 0; e < n; ++e)
            if (w[e] > 0) support.push_back({e, w[e]});
        s = w;
        choose_element(0);
    }

    // Split search: (S, t) decomposes iff some factorization z' of t in T
    // admits z1 <= z' and S1 <= S, not both empty and not both full, with
    // sigma(S1) + iota(z1) = 0; the complementary pair is then automatically
    // in B and nonzero.
    std::vector<TBlockAtom> out;
    for (const auto& [key, witness] : candidates) {
        const Sequence& cs = key.first;
        const Vec& ct = key.second;
        bool t_zero = std::all_of(ct.begin(), ct.end(), [](long long v) { return v == 0; });
        bool decomposable = false;
        if (!t_zero) {
            std::vector<detail::SubsetValue> svals{{0, true, true}};
            for (std::size_t e = 0; e < n; ++e)
                if (cs[e] > 0)
                    detail::fold_subset_values(g, svals, static_cast<long long>(e), cs[e]);
            for (const Factorization& z : factorizations_of(tp, ct, limits)) {
                std::vector<detail::SubsetValue> zvals{{0, true, true}};
                for (std::size_t i = 0; i < t.atoms.size(); ++i)
                    if (z[i] > 0)
                        detail::fold_subset_values(g, zvals, g.index_of(t.atoms[i].iota), z[i]);
                // A state pair (z1, S1) with sigma(S1) + iota(z1) = 0 splits
                // the candidate unless it is the empty pair or the full pair.
                for (const auto& zv : zvals) {
                    for (const auto& sv : svals) {
                        if (g.add(zv.value, sv.value) != 0) continue;
                        if (zv.empty && sv.empty) continue;
                        if (zv.full && sv.full) continue;
                        decomposable = true;
                        break;
                    }
                    if (decomposable) break;
                }
                if (decomposable) break;
            }
        }
        if (!decomposable) out.push_back(TBlockAtom{cs, ct, witness});
    }

    std::sort(out.begin(), out.end(), [](const TBlockAtom& a, const TBlockAtom& b) {
        if (a.s != b.s) return a.s < b.s;
        return a.t < b.t;
    });
    return out;
}

/** Embeds T-block atoms as a presentation over [|G| free | s free | q torsion]. */
inline Presentation embed(const AbelianGroup& g, const TMonoidSpec& t,
                          const std::vector<TBlockAtom>& atoms) {
    Presentation p;
    p.free_dim = g.order() + static_cast<long long>(t.free_rank());
    p.torsion = t.t_torsion;
    for (const TBlockAtom& a : atoms) {
        Vec v;
        v.reserve(static_cast<std::size_t>(p.free_dim) + p.torsion.size());
        v.insert(v.end(), a.s.begin(), a.s.end());
        v.insert(v.end(), a.t.begin(), a.t.end());
        p.atoms.push_back(std::move(v));
    }
    return p;
}

struct StripResult {
    Presentation p;
    std::vector<std::size_t> removed_coords;  // original free-coordinate indices
    std::vector<std::size_t> removed_atoms;   // original atom indices
};

/**
 * Removes prime coordinates: a free coordinate c whose unit vector is an atom
 * and which no other atom touches contributes a free factor, so dropping the
 * coordinate and the unit atom leaves the interesting part of the monoid with
 * all invariants intact.  Repeats until no such coordinate remains.
 */
inline StripResult strip_primes(const Presentation& input) {
    StripResult res;
    res.p = input;
    std::vector<std::size_t> coord_orig(static_cast<std::size_t>(input.free_dim));
    std::vector<std::size_t> atom_orig(input.atoms.size());
    for (std::size_t i = 0; i < coord_orig.size(); ++i) coord_orig[i] = i;
    for (std::size_t i = 0; i < atom_orig.size(); ++i) atom_orig[i] = i;

    bool changed = true;
    while (changed) {
        changed = false;
        const std::size_t fd = static_cast<std::size_t>(res.p.free_dim);
        const std::size_t dim = res.p.dim();
        for (std::size_t c = 0; c < fd && !changed; ++c) {
            std::optional<std::size_t> unit_atom;
            bool owned_elsewhere = false;
            for (std::size_t i = 0; i < res.p.atoms.size(); ++i) {
                const Vec& a = res.p.atoms[i];
                if (a[c] == 0) continue;
                bool is_unit = a[c] == 1;
                for (std::size_t j = 0; j < dim && is_unit; ++j)
                    if (j != c && a[j] != 0) is_unit = false;
                if (is_unit && !unit_atom)
                    unit_atom = i;
                else
                    owned_elsewhere = true;
            }
            if (!unit_atom || owned_elsewhere) continue;
            res.removed_coords.push_back(coord_orig[c]);
            res.removed_atoms.push_back(atom_orig[*unit_atom]);
            atom_orig.erase(atom_orig.begin() + static_cast<std::ptrdiff_t>(*unit_atom));
            res.p.atoms.erase(res.p.atoms.begin() + static_cast<std::ptrdiff_t>(*unit_atom));
            coord_orig.erase(coord_orig.begin() + static_cast<std::ptrdiff_t>(c));
            for (Vec& a : res.p.atoms) a.erase(a.begin() + static_cast<std::ptrdiff_t>(c));
            res.p.free_dim -= 1;
            changed = true;
        }
    }
    std::sort(res.removed_coords.begin(), res.removed_coords.end());
    std::sort(res.removed_atoms.begin(), res.removed_atoms.end());
    return res;
}

struct TBlockMeta {
    Rational rho_t;          // elasticity of T
    long long c_t = 0;       // catenary degree of T
    long long davenport = 0; // Davenport constant of G
    long long bound = 0;     // ceil(rho_t * davenport * max(c_t, davenport))
};

/** Derives the search bound for T-block invariants from T and G. */
inline TBlockMeta tblock_meta(const AbelianGroup& g, const TMonoidSpec& t,
                              const Limits& limits = Limits{}) {
    TBlockMeta meta;
    Presentation tp = t_presentation(t);
    InvariantOptions opts;
    opts.limits = limits;
    InvariantSelection sel;
    sel.elasticity = true;
    sel.catenary = true;
    InvariantReport rep = compute_invariants(tp, sel, opts);
    meta.rho_t = rep.elasticity;
    meta.c_t = rep.catenary;
    meta.davenport = davenport(g, limits);
    meta.bound = catenary_auto_bound(meta.rho_t, meta.c_t, meta.davenport);
    return meta;
}

}  // namespace moninv
