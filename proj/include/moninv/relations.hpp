#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "moninv/common.hpp"
#include "moninv/diophantine.hpp"
#include "moninv/presentation.hpp"

/**
 * The monoid of relations of a presentation: pairs (x, y) of exponent
 * vectors with pi(x) = pi(y).  Its atoms are the minimal nonzero solutions
 * of the homogeneous system built from the atom coordinates (one equation
 * per free coordinate, one congruence per torsion coordinate), over the
 * doubled variable vector (x-block, y-block).
 *
 * kind = monotone restricts to |x| <= |y| by adding one variable z with the
 * equation sum(x) - sum(y) + z = 0; the atoms of the monotone relation
 * monoid are the minimal solutions of that extended system (z is determined
 * by the pair, so dropping the z column afterwards loses nothing and the
 * projected list is NOT re-filtered: the monotone relation monoid is not
 * saturated in N^2k, so its atom set need not be a componentwise antichain).
 *
 * kind = equal is the |x| = |y| slice of the monotone atom set: an atom of
 * the equal-length relation monoid is in particular a monotone pair, and a
 * monotone decomposition of an equal-length pair forces every part to be
 * equal-length, so the two atom sets agree on that slice.
 */
namespace moninv {

enum class RelationKind { plain, monotone, equal };

struct RelationPair {
    Vec x, y;
};

struct RelationAtoms {
    RelationKind kind = RelationKind::plain;
    std::vector<RelationPair> pairs;
    bool complete = true;
    std::optional<long long> bound_used;
};

/** The defining Diophantine system for the (plain or monotone) relation monoid. */
inline DioSystem relation_system(const Presentation& p, RelationKind kind) {
    const std::size_t k = p.atom_count();
    const bool mono = kind != RelationKind::plain;
    DioSystem sys;
    sys.num_vars = 2 * k + (mono ? 1 : 0);
    for (long long f = 0; f < p.free_dim; ++f) {
        std::vector<long long> row(sys.num_vars, 0);
        for (std::size_t i = 0; i < k; ++i) {
            row[i] = p.atoms[i][static_cast<std::size_t>(f)];
            row[k + i] = -p.atoms[i][static_cast<std::size_t>(f)];
        }
        sys.eq_rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < p.torsion.size(); ++j) {
        ModRow m;
        m.n = p.torsion[j];
        m.row.assign(sys.num_vars, 0);
        bool nontrivial = false;
        for (std::size_t i = 0; i < k; ++i) {
            long long c = p.atoms[i][static_cast<std::size_t>(p.free_dim) + j];
            m.row[i] = c;
            m.row[k + i] = -c;
            if (c % m.n != 0) nontrivial = true;
        }
        if (nontrivial) sys.mod_rows.push_back(std::move(m));  // vacuous rows add nothing
    }
    if (mono) {
        std::vector<long long> row(sys.num_vars, 0);
        for (std::size_t i = 0; i < k; ++i) {
            row[i] = 1;
            row[k + i] = -1;
        }
        row[2 * k] = 1;  // z = |y| - |x| >= 0
        sys.eq_rows.push_back(std::move(row));
    }
    return sys;
}

inline long long pair_length(const Vec& v) {
    long long s = 0;
    for (long long c : v) s = checked_add(s, c);
    return s;
}

namespace detail {

/**
 * Bounded plain relation atoms by side enumeration.  Every minimal pair
 * other than a diagonal has disjoint sides (a shared atom splits off a
 * diagonal), so the nondiagonal atoms are pairs of distinct sides with the
 * same image.  With the per-side bound the admissible sides form the simplex
 * |x| <= B, which is small enough to enumerate outright; pairing sides
 * within each image bucket and sieving the candidates in ascending total
 * length yields exactly the minimal pairs, because a non-minimal candidate
 * always dominates a strictly shorter pair that has been kept already.
 * This replaces the level search on the doubled system, whose frontier
 * outgrows memory long before bounds of practical interest.
 */
inline std::vector<RelationPair> bounded_plain_pairs(const Presentation& p, long long bound,
                                                     const Limits& limits) {
    const std::size_t k = p.atom_count();
    const std::size_t fdim = static_cast<std::size_t>(p.free_dim);
    const std::size_t tdim = p.torsion.size();
    const long long B = bound;
    MONINV_CHECK(k >= 1 && k <= 64 && B >= 0 && B <= 255,
                 "bounded relation search preconditions");

    // #sides = C(B + k, k); refuse upfront when the simplex alone blows the budget
    long long side_count = 1;
    for (std::size_t j = 1; j <= k; ++j) {
        side_count = checked_mul(side_count, B + static_cast<long long>(j));
        side_count /= static_cast<long long>(j);
        if (side_count > limits.node_limit)
            throw ResourceError("bounded relation search: " + std::to_string(side_count) +
                                "+ admissible sides exceed the node limit of " +
                                std::to_string(limits.node_limit));
    }

    // torsion coordinates of each atom reduced into [0, n)
    std::vector<long long> tred(k * tdim, 0);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t t = 0; t < tdim; ++t) {
            long long n = p.torsion[t];
            tred[j * tdim + t] = ((p.atoms[j][fdim + t] % n) + n) % n;
        }

    struct Side {
        std::uint64_t mask = 0;
        std::uint32_t bucket = 0;
        std::uint8_t norm = 0;
    };
    std::vector<Side> sides;
    std::vector<std::uint8_t> vals;  // k entries per side
    sides.reserve(static_cast<std::size_t>(side_count));
    vals.reserve(static_cast<std::size_t>(side_count) * k);

    std::map<std::vector<long long>, std::uint32_t> bucket_ids;
    std::vector<long long> img(fdim + tdim, 0);
    std::vector<std::uint8_t> cur(k, 0);
    auto enumerate = [&](auto&& self, std::size_t pos, long long left) -> void {
        if (pos == k) {
            auto [it, fresh] =
                bucket_ids.try_emplace(img, static_cast<std::uint32_t>(bucket_ids.size()));
            (void)fresh;
            Side s;
            s.bucket = it->second;
            s.norm = static_cast<std::uint8_t>(B - left);
            for (std::size_t j = 0; j < k; ++j)
                if (cur[j]) s.mask |= std::uint64_t{1} << j;
            sides.push_back(s);
            vals.insert(vals.end(), cur.begin(), cur.end());
            return;
        }
        self(self, pos + 1, left);  // cur[pos] = 0
        for (long long c = 1; c <= left; ++c) {
            cur[pos] = static_cast<std::uint8_t>(c);
            for (std::size_t f = 0; f < fdim; ++f) img[f] += p.atoms[pos][f];
            for (std::size_t t = 0; t < tdim; ++t) {
                img[fdim + t] += tred[pos * tdim + t];
                if (img[fdim + t] >= p.torsion[t]) img[fdim + t] -= p.torsion[t];
            }
            self(self, pos + 1, left - c);
        }
        if (left > 0) {
            for (std::size_t f = 0; f < fdim; ++f) img[f] -= p.atoms[pos][f] * left;
            for (std::size_t t = 0; t < tdim; ++t) {
                img[fdim + t] -= (tred[pos * tdim + t] * left) % p.torsion[t];
                if (img[fdim + t] < 0) img[fdim + t] += p.torsion[t];
            }
        }
        cur[pos] = 0;
    };
    enumerate(enumerate, 0, B);
    MONINV_CHECK(sides.size() == static_cast<std::size_t>(side_count),
                 "side enumeration count mismatch");
    bucket_ids.clear();

    // group sides by bucket, lengths ascending within each bucket, and runs of
    // equal support mask within each length group (so a run pair that shares
    // support is skipped as a whole instead of side by side)
    std::vector<std::uint32_t> ord(sides.size());
    for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = static_cast<std::uint32_t>(i);
    std::sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (sides[a].bucket != sides[b].bucket) return sides[a].bucket < sides[b].bucket;
        if (sides[a].norm != sides[b].norm) return sides[a].norm < sides[b].norm;
        return sides[a].mask < sides[b].mask;
    });

    // per-bucket offsets of each length group, only for buckets with >= 2 sides
    struct Bucket {
        std::uint32_t begin = 0;
        std::vector<std::uint32_t> norm_off;  // norm_off[a]..norm_off[a+1] = sides of length a
    };
    std::vector<Bucket> buckets;
    for (std::size_t s = 0; s < ord.size();) {
        std::size_t e = s;
        while (e < ord.size() && sides[ord[e]].bucket == sides[ord[s]].bucket) ++e;
        if (e - s >= 2) {
            Bucket bk;
            bk.begin = static_cast<std::uint32_t>(s);
            bk.norm_off.assign(static_cast<std::size_t>(B) + 2, 0);
            for (std::size_t i = s; i < e; ++i) ++bk.norm_off[sides[ord[i]].norm + 1];
            for (std::size_t a = 1; a < bk.norm_off.size(); ++a)
                bk.norm_off[a] += bk.norm_off[a - 1];
            buckets.push_back(std::move(bk));
        }
        s = e;
    }

    // kept minimal pairs, ascending total length; both masks for the two-way test
    std::vector<std::uint8_t> kept_vals;  // 2k entries per pair (x then y)
    std::vector<std::uint64_t> kept_xm, kept_ym;
    const std::uint8_t* V = vals.data();
    auto le_vec = [k](const std::uint8_t* a, const std::uint8_t* b) {
        for (std::size_t j = 0; j < k; ++j)
            if (a[j] > b[j]) return false;
        return true;
    };
    long long pair_nodes = side_count;
    for (long long T = 1; T <= 2 * B; ++T) {
        const std::size_t kept_before = kept_xm.size();
        for (const Bucket& bk : buckets) {
            for (long long a = std::max<long long>(0, T - B); 2 * a <= T; ++a) {
                const long long b = T - a;
                const std::uint32_t* beg_a = ord.data() + bk.begin + bk.norm_off[a];
                const std::uint32_t* end_a = ord.data() + bk.begin + bk.norm_off[a + 1];
                const std::uint32_t* beg_b = ord.data() + bk.begin + bk.norm_off[b];
                const std::uint32_t* end_b = ord.data() + bk.begin + bk.norm_off[b + 1];
                if (beg_a == end_a || beg_b == end_b) continue;
                // iterate runs of equal support mask; two sides of one run
                // always overlap, so for a == b pairing starts after the run
                for (const std::uint32_t* ra = beg_a; ra != end_a;) {
                    const std::uint64_t ma = sides[*ra].mask;
                    const std::uint32_t* ra_end = ra + 1;
                    while (ra_end != end_a && sides[*ra_end].mask == ma) ++ra_end;
                    const std::uint32_t* rb = (a == b) ? ra_end : beg_b;
                    while (rb != end_b) {
                        const std::uint64_t mb = sides[*rb].mask;
                        const std::uint32_t* rb_end = rb + 1;
                        while (rb_end != end_b && sides[*rb_end].mask == mb) ++rb_end;
                        ++pair_nodes;
                        if (ma & mb) {
                            rb = rb_end;
                            continue;
                        }
                        pair_nodes += static_cast<long long>(ra_end - ra) *
                                      static_cast<long long>(rb_end - rb);
                        if (pair_nodes > limits.node_limit)
                            throw ResourceError(
                                "bounded relation search exceeded the node limit of " +
                                std::to_string(limits.node_limit) + " nodes");
                        for (const std::uint32_t* ia = ra; ia != ra_end; ++ia) {
                            const std::uint8_t* va = V + std::size_t{*ia} * k;
                            for (const std::uint32_t* jb = rb; jb != rb_end; ++jb) {
                                const std::uint8_t* vb = V + std::size_t{*jb} * k;
                                // canonical orientation: lex-smaller side first
                                const std::uint8_t *x = va, *y = vb;
                                std::uint64_t xm = ma, ym = mb;
                                if (std::lexicographical_compare(vb, vb + k, va, va + k)) {
                                    x = vb;
                                    y = va;
                                    xm = mb;
                                    ym = ma;
                                }
                                bool dominated = false;
                                for (std::size_t t = 0; t < kept_before && !dominated; ++t) {
                                    const std::uint8_t* w = kept_vals.data() + 2 * k * t;
                                    if ((kept_xm[t] & ~xm) == 0 && (kept_ym[t] & ~ym) == 0 &&
                                        le_vec(w, x) && le_vec(w + k, y))
                                        dominated = true;
                                    else if ((kept_xm[t] & ~ym) == 0 &&
                                             (kept_ym[t] & ~xm) == 0 && le_vec(w, y) &&
                                             le_vec(w + k, x))
                                        dominated = true;
                                }
                                if (dominated) continue;
                                kept_vals.insert(kept_vals.end(), x, x + k);
                                kept_vals.insert(kept_vals.end(), y, y + k);
                                kept_xm.push_back(xm);
                                kept_ym.push_back(ym);
                            }
                        }
                        rb = rb_end;
                    }
                    ra = ra_end;
                }
            }
        }
    }

    std::vector<RelationPair> pairs;
    pairs.reserve(2 * kept_xm.size() + k);
    for (std::size_t t = 0; t < kept_xm.size(); ++t) {
        const std::uint8_t* w = kept_vals.data() + 2 * k * t;
        RelationPair pr;
        pr.x.assign(w, w + k);
        pr.y.assign(w + k, w + 2 * k);
        RelationPair rev;
        rev.x = pr.y;
        rev.y = pr.x;
        pairs.push_back(std::move(pr));
        pairs.push_back(std::move(rev));
    }
    for (std::size_t i = 0; i < k; ++i) {
        RelationPair pr;
        pr.x.assign(k, 0);
        pr.y.assign(k, 0);
        pr.x[i] = pr.y[i] = 1;
        pairs.push_back(std::move(pr));
    }
    return pairs;
}

}  // namespace detail

/**
 * The atom set of the relation monoid of the given kind.  With a bound B the
 * search is restricted to |x| <= B and |y| <= B and *complete* is false.
 * plain and equal sets contain both orientations of every nontrivial
 * relation (reduce() collapses them); monotone contains each pair in its
 * |x| <= |y| orientation, both orientations when lengths are equal.
 */
inline RelationAtoms relation_atoms(const Presentation& p, RelationKind kind,
                                    std::optional<long long> bound = std::nullopt,
                                    const Limits& limits = Limits{}) {
    validate(p);
    const std::size_t k = p.atom_count();
    const RelationKind solve_kind = kind == RelationKind::plain ? RelationKind::plain
                                                                : RelationKind::monotone;
    if (solve_kind == RelationKind::plain && bound && *bound >= 0 && *bound <= 255 && k <= 64) {
        RelationAtoms out;
        out.kind = kind;
        out.complete = false;
        out.bound_used = bound;
        out.pairs = detail::bounded_plain_pairs(p, *bound, limits);
        std::sort(out.pairs.begin(), out.pairs.end(),
                  [](const RelationPair& a, const RelationPair& b) {
                      if (a.x != b.x) return a.x < b.x;
                      return a.y < b.y;
                  });
        return out;
    }
    DioSystem sys = relation_system(p, solve_kind);
    HilbertOptions opts;
    opts.bound = bound;
    opts.block_split = k;
    opts.limits = limits;
    if (solve_kind == RelationKind::plain) {
        std::vector<std::size_t> mirror(2 * k);
        for (std::size_t i = 0; i < k; ++i) {
            mirror[i] = k + i;
            mirror[k + i] = i;
        }
        opts.mirror = std::move(mirror);
    }
    MinimalSolutionSet sols = hilbert_minimal_solutions(sys, opts);

    RelationAtoms out;
    out.kind = kind;
    out.complete = sols.complete;
    out.bound_used = sols.bound_used;
    for (const auto& s : sols.solutions) {
        RelationPair pr;
        pr.x.assign(s.begin(), s.begin() + static_cast<long long>(k));
        pr.y.assign(s.begin() + static_cast<long long>(k),
                    s.begin() + static_cast<long long>(2 * k));
        if (kind == RelationKind::equal && pair_length(pr.x) != pair_length(pr.y)) continue;
        out.pairs.push_back(std::move(pr));
    }
    std::sort(out.pairs.begin(), out.pairs.end(), [](const RelationPair& a, const RelationPair& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return out;
}

/**
 * Drops trivial pairs (x = y) and, for plain and equal kinds, keeps exactly
 * one orientation per relation: the (x, y) with lexicographically smaller
 * concatenation x||y.  Monotone sets keep both orientations of equal-length
 * atoms (each satisfies |x| <= |y| in its own right).
 */
inline RelationAtoms reduce(const RelationAtoms& in) {
    RelationAtoms out;
    out.kind = in.kind;
    out.complete = in.complete;
    out.bound_used = in.bound_used;
    for (const RelationPair& pr : in.pairs) {
        if (pr.x == pr.y) continue;
        if (in.kind != RelationKind::monotone && pr.y < pr.x) continue;  // mirror kept instead
        out.pairs.push_back(pr);
    }
    std::sort(out.pairs.begin(), out.pairs.end(), [](const RelationPair& a, const RelationPair& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end(),
                                [](const RelationPair& a, const RelationPair& b) {
                                    return a.x == b.x && a.y == b.y;
                                }),
                    out.pairs.end());
    return out;
}

/** relation_atoms followed by reduce. */
inline RelationAtoms reduced_relation_atoms(const Presentation& p, RelationKind kind,
                                            std::optional<long long> bound = std::nullopt,
                                            const Limits& limits = Limits{}) {
    return reduce(relation_atoms(p, kind, bound, limits));
}

}  // namespace moninv
