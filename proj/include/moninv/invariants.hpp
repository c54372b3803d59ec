#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "moninv/common.hpp"
#include "moninv/factorizations.hpp"
#include "moninv/presentation.hpp"
#include "moninv/rational.hpp"
#include "moninv/relations.hpp"

/**
 * Arithmetical invariants of a reduced finitely generated monoid, computed
 * through the atoms of its relation monoids:
 *
 *   elasticity          sup |x|/|y| over relation atoms (1 when factorial);
 *                       alternatively exact via minimal-support solutions
 *   catenary            max mu(a) over elements of plain relation atoms
 *   equal catenary      max mu_eq(a) over elements of equal relation atoms
 *   adjacent catenary   max mu_adj(a) over elements of monotone atoms
 *   monotone catenary   max(equal, adjacent)
 *   m-adjacent catenary max mu_ad_m(a) over elements of monotone atoms
 *   tame degree         max over plain-atom elements a and atoms u of
 *                       max_z min { d(z, z') : z' in Z(a), z' contains u }
 *   delta set           union of the length-gap sets of plain-atom elements
 *
 * Candidate elements suffice because each invariant is realized at an
 * element whose relation monoid of the matching kind has a nonzero atom;
 * elements with a single R-class (or single-class slices) contribute the
 * neutral value 0 through the mu conventions.
 *
 * Exactness bookkeeping: a bounded relation search makes elasticity and the
 * tame degree lower bounds; the catenary value is reported exact only when
 * the caller certifies that the bound dominates the catenary degree (then
 * every minimal relation realizing the maximum decomposes into pieces whose
 * sides fit under the bound, so the bounded run sees it) and the measured
 * value confirms this; the equal/adjacent/monotone/m-adjacent values are
 * conservatively flagged as lower bounds.  The delta set is always flagged
 * partial (it is a union over candidate elements only).
 */
namespace moninv {

enum class ElasticityMode { automatic, atoms, support };

struct InvariantSelection {
    bool elasticity = true;
    bool catenary = true;
    bool equal_catenary = true;
    bool adjacent_catenary = true;
    bool monotone_catenary = true;
    bool m_adjacent = true;
    bool tame = true;
    bool delta = true;
};

struct InvariantOptions {
    std::optional<long long> bound;
    /** Set when *bound* is known to be >= the catenary degree (for example
     *  the certified block-monoid bound); required for a bounded catenary
     *  value to be reported as exact. */
    bool bound_certified = false;
    std::vector<long long> m_values = {2};
    ElasticityMode elasticity_mode = ElasticityMode::automatic;
    /** Optional candidate pruning (equivalent results, fewer elements). */
    bool equal_candidate_filter = false;
    bool adjacent_candidate_filter = false;
    Limits limits;
};

struct InvariantReport {
    Rational elasticity{1};
    bool elasticity_exact = true;
    long long catenary = 0;
    bool catenary_exact = true;
    long long equal_catenary = 0;
    bool equal_catenary_exact = true;
    long long adjacent_catenary = 0;
    bool adjacent_catenary_exact = true;
    long long monotone_catenary = 0;
    bool monotone_catenary_exact = true;
    std::vector<std::pair<long long, long long>> m_adjacent;  // (m, value)
    bool m_adjacent_exact = true;
    long long tame_degree = 0;
    bool tame_is_lower_bound = false;
    std::vector<long long> delta;
    bool delta_is_partial = true;
    std::optional<long long> bound_used;
    std::size_t relation_atom_count = 0;  // reduced count of the primary run
};

/**
 * Upper bound for the catenary degree of an embedded T-block monoid:
 * ceil( rho(T) * D(G) * max(c(T), D(G)) ).  Using it as the search bound
 * keeps the catenary computation exact.
 */
inline long long catenary_auto_bound(const Rational& rho_t, long long c_t, long long d_g) {
    Rational c = rho_t * Rational(d_g) * Rational(std::max(c_t, d_g));
    return c.ceil();
}

namespace detail {

/** Distinct elements pi(x) of a reduced pair list, lex-sorted. */
inline std::vector<Vec> candidate_elements(const Presentation& p,
                                           const std::vector<RelationPair>& pairs) {
    std::set<Vec> s;
    for (const auto& pr : pairs) s.insert(pi(p, pr.x));
    return std::vector<Vec>(s.begin(), s.end());
}

struct ElementAccumulator {
    long long mu = 0, mu_eq = 0, mu_adj = 0, tame = 0;
    std::map<long long, long long> mu_adm;
    std::set<long long> delta;

    void merge(const ElementAccumulator& o) {
        mu = std::max(mu, o.mu);
        mu_eq = std::max(mu_eq, o.mu_eq);
        mu_adj = std::max(mu_adj, o.mu_adj);
        tame = std::max(tame, o.tame);
        for (const auto& [m, v] : o.mu_adm) {
            auto it = mu_adm.find(m);
            if (it == mu_adm.end())
                mu_adm[m] = v;
            else
                it->second = std::max(it->second, v);
        }
        delta.insert(o.delta.begin(), o.delta.end());
    }
};

/** t(a, ·) = max over atoms u of max_z min { d(z, z') : z' contains u }. */
inline long long tame_of_element(const std::vector<Factorization>& zs) {
    if (zs.empty()) return 0;
    const std::size_t k = zs[0].size();
    long long best = 0;
    for (std::size_t u = 0; u < k; ++u) {
        std::vector<std::size_t> with_u;
        for (std::size_t i = 0; i < zs.size(); ++i)
            if (zs[i][u] > 0) with_u.push_back(i);
        if (with_u.empty() || with_u.size() == zs.size()) continue;
        long long worst = 0;
        for (std::size_t i = 0; i < zs.size(); ++i) {
            if (zs[i][u] > 0) continue;
            long long mn = -1;
            for (std::size_t j : with_u) {
                long long d = distance(zs[i], zs[j]);
                if (mn < 0 || d < mn) mn = d;
                if (mn <= worst) break;  // cannot raise the maximum any more
            }
            worst = std::max(worst, mn);
        }
        best = std::max(best, worst);
    }
    return best;
}

inline void add_delta_of_lengths(const std::vector<Factorization>& zs,
                                 std::set<long long>& delta) {
    std::set<long long> lens;
    for (const auto& z : zs) lens.insert(fact_length(z));
    long long prev = -1;
    for (long long l : lens) {
        if (prev >= 0) delta.insert(l - prev);
        prev = l;
    }
}

}  // namespace detail

/**
 * Elasticity from an explicit pair list: max of the length ratios (both
 * orientations), or 1 when the list is empty (factorial case, 0/0 = 1).
 */
inline Rational elasticity_from_pairs(const std::vector<RelationPair>& pairs) {
    Rational best{1};
    for (const auto& pr : pairs) {
        long long lx = pair_length(pr.x), ly = pair_length(pr.y);
        MONINV_CHECK(lx > 0 && ly > 0, "relation pair with an empty side");
        Rational r = lx >= ly ? Rational(lx, ly) : Rational(ly, lx);
        if (best < r) best = r;
    }
    return best;
}

/** Exact elasticity via the minimal-support subset of the plain relation atoms. */
inline Rational elasticity_minimal_support(const Presentation& p,
                                           const Limits& limits = Limits{}) {
    validate(p);
    DioSystem sys = relation_system(p, RelationKind::plain);
    std::vector<std::vector<long long>> sols = minimal_support_solutions(sys, limits);
    const std::size_t k = p.atom_count();
    std::vector<RelationPair> pairs;
    for (const auto& s : sols) {
        RelationPair pr;
        pr.x.assign(s.begin(), s.begin() + static_cast<long long>(k));
        pr.y.assign(s.begin() + static_cast<long long>(k), s.end());
        if (pr.x == pr.y) continue;
        pairs.push_back(std::move(pr));
    }
    return elasticity_from_pairs(pairs);
}

inline InvariantReport compute_invariants(const Presentation& p,
                                          const InvariantSelection& sel = {},
                                          const InvariantOptions& opts = {}) {
    validate(p);
    if (!is_reduced(p, opts.limits))
        throw InputError("presentation is not reduced: some atom factors through the others");

    InvariantReport rep;
    rep.bound_used = opts.bound;
    const bool bounded = opts.bound.has_value();

    const bool need_plain = sel.elasticity || sel.catenary || sel.tame || sel.delta;
    const bool need_mono = sel.equal_catenary || sel.adjacent_catenary ||
                           sel.monotone_catenary || sel.m_adjacent;

    std::optional<RelationAtoms> plain_red;
    if (need_plain)
        plain_red = reduced_relation_atoms(p, RelationKind::plain, opts.bound, opts.limits);
    std::optional<RelationAtoms> mono_red;
    if (need_mono)
        mono_red = reduced_relation_atoms(p, RelationKind::monotone, opts.bound, opts.limits);
    rep.relation_atom_count = plain_red ? plain_red->pairs.size()
                                        : (mono_red ? mono_red->pairs.size() : 0);

    // ---- elasticity ------------------------------------------------------
    if (sel.elasticity) {
        ElasticityMode mode = opts.elasticity_mode;
        if (mode == ElasticityMode::automatic)
            mode = bounded ? ElasticityMode::support : ElasticityMode::atoms;
        if (mode == ElasticityMode::support) {
            rep.elasticity = elasticity_minimal_support(p, opts.limits);
            rep.elasticity_exact = true;
        } else {
            rep.elasticity = elasticity_from_pairs(plain_red->pairs);
            rep.elasticity_exact = !bounded;
        }
    }

    // ---- plain-run element invariants: catenary, tame, delta -------------
    if (sel.catenary || sel.tame || sel.delta) {
        std::vector<Vec> elems = detail::candidate_elements(p, plain_red->pairs);
        std::vector<detail::ElementAccumulator> acc(
            std::min<std::size_t>(elems.empty() ? 1 : elems.size(),
                                  static_cast<std::size_t>(resolve_threads(opts.limits.threads))));
        parallel_chunks(elems.size(), static_cast<int>(acc.size()),
                        [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
                            for (std::size_t i = lo; i < hi; ++i) {
                                std::vector<Factorization> zs =
                                    factorizations_of(p, elems[i], opts.limits);
                                if (sel.catenary)
                                    acc[chunk].mu = std::max(acc[chunk].mu, mu_value(zs));
                                if (sel.tame)
                                    acc[chunk].tame =
                                        std::max(acc[chunk].tame, detail::tame_of_element(zs));
                                if (sel.delta) detail::add_delta_of_lengths(zs, acc[chunk].delta);
                            }
                        });
        detail::ElementAccumulator total;
        for (const auto& a : acc) total.merge(a);
        if (sel.catenary) {
            rep.catenary = total.mu;
            rep.catenary_exact =
                !bounded || (opts.bound_certified && rep.catenary <= *opts.bound);
        }
        if (sel.tame) {
            rep.tame_degree = total.tame;
            rep.tame_is_lower_bound = bounded;
        }
        if (sel.delta) {
            rep.delta.assign(total.delta.begin(), total.delta.end());
            rep.delta_is_partial = true;
        }
    }

    // ---- monotone-run element invariants ----------------------------------
    if (need_mono) {
        std::vector<RelationPair> equal_pairs;
        for (const auto& pr : mono_red->pairs)
            if (pair_length(pr.x) == pair_length(pr.y)) equal_pairs.push_back(pr);

        std::vector<RelationPair> eq_candidates = equal_pairs;
        if (opts.equal_candidate_filter) {
            // keep only pairs whose sides lie in different R-classes of their
            // length slice; dropping related pairs never changes the maximum
            std::vector<RelationPair> kept;
            for (const auto& pr : eq_candidates) {
                Vec a = pi(p, pr.x);
                std::vector<Factorization> zs = factorizations_of(p, a, opts.limits);
                long long len = pair_length(pr.x);
                std::vector<Factorization> slice;
                for (const auto& z : zs)
                    if (fact_length(z) == len) slice.push_back(z);
                auto cls = r_classes(slice);
                auto find_class = [&](const Vec& v) -> std::size_t {
                    for (std::size_t c = 0; c < cls.size(); ++c)
                        for (std::size_t i : cls[c])
                            if (slice[i] == v) return c;
                    throw InternalError("pair side missing from its factorization slice");
                };
                if (find_class(pr.x) != find_class(pr.y)) kept.push_back(pr);
            }
            eq_candidates = std::move(kept);
        }

        std::vector<RelationPair> adj_candidates = mono_red->pairs;
        if (opts.adjacent_candidate_filter) {
            std::vector<RelationPair> kept;
            for (const auto& pr : adj_candidates) {
                long long lx = pair_length(pr.x), ly = pair_length(pr.y);
                if (lx == ly) {
                    kept.push_back(pr);
                    continue;
                }
                Vec a = pi(p, pr.x);
                std::vector<Factorization> zs = factorizations_of(p, a, opts.limits);
                bool strictly_between = false;
                for (const auto& z : zs) {
                    long long l = fact_length(z);
                    if (l > lx && l < ly) strictly_between = true;
                }
                if (!strictly_between) kept.push_back(pr);
            }
            adj_candidates = std::move(kept);
        }

        std::vector<Vec> eq_elems = detail::candidate_elements(p, eq_candidates);
        std::vector<Vec> mono_elems = detail::candidate_elements(p, adj_candidates);

        if (sel.equal_catenary || sel.monotone_catenary) {
            long long best = 0;
            for (const Vec& a : eq_elems)
                best = std::max(best, mu_eq_value(factorizations_of(p, a, opts.limits)));
            rep.equal_catenary = best;
            rep.equal_catenary_exact = !bounded;
        }
        if (sel.adjacent_catenary || sel.monotone_catenary || sel.m_adjacent) {
            long long best = 0;
            std::map<long long, long long> adm;
            for (long long m : opts.m_values) adm[m] = 0;
            for (const Vec& a : mono_elems) {
                std::vector<Factorization> zs = factorizations_of(p, a, opts.limits);
                if (sel.adjacent_catenary || sel.monotone_catenary)
                    best = std::max(best, mu_adj_value(zs));
                if (sel.m_adjacent)
                    for (long long m : opts.m_values)
                        adm[m] = std::max(adm[m], mu_ad_m_value(zs, m));
            }
            rep.adjacent_catenary = best;
            rep.adjacent_catenary_exact = !bounded;
            if (sel.m_adjacent) {
                for (const auto& [m, v] : adm) rep.m_adjacent.emplace_back(m, v);
                rep.m_adjacent_exact = !bounded;
            }
        }
        if (sel.monotone_catenary) {
            rep.monotone_catenary = std::max(rep.equal_catenary, rep.adjacent_catenary);
            rep.monotone_catenary_exact = !bounded;
        }
    }

    return rep;
}

}  // namespace moninv
