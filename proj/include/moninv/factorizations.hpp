#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "moninv/common.hpp"
#include "moninv/presentation.hpp"

/**
 * Factorizations of a single monoid element and their distance geometry.
 *
 * A factorization of a is an exponent vector z over the atoms with
 * pi(z) = a; Z(a) is the (finite) set of all of them, L(a) the set of their
 * lengths |z| = sum z_i.  The distance between factorizations is
 * d(z, z') = max(|z - gcd|, |z' - gcd|) with gcd the componentwise minimum.
 *
 * Two factorizations are related when their supports share an atom; the
 * transitive closure partitions Z(a) into its R-classes.  The mu-values
 * extracted from this partition (and from its restriction to length slices)
 * are exactly the element-local quantities whose maxima over candidate
 * elements give the catenary degrees.
 */
namespace moninv {

using Factorization = Vec;

inline long long fact_length(const Factorization& z) {
    long long s = 0;
    for (long long c : z) s = checked_add(s, c);
    return s;
}

/** d(z, z') = max of the two reduced lengths after cancelling the gcd. */
inline long long distance(const Factorization& z, const Factorization& z2) {
    MONINV_CHECK(z.size() == z2.size(), "distance on vectors of different length");
    long long a = 0, b = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        long long g = std::min(z[i], z2[i]);
        a += z[i] - g;
        b += z2[i] - g;
    }
    return std::max(a, b);
}

/**
 * Complete factorization list of the element, lex-sorted.  Every atom has
 * positive free mass, so the search tree is finite; enumeration aborts with
 * ResourceError when the configured cap is exceeded.
 */
inline std::vector<Factorization> factorizations_of(const Presentation& p, const Vec& element,
                                                    const Limits& limits = Limits{}) {
    validate(p);
    validate_element(p, element);
    const std::size_t k = p.atom_count();
    const std::size_t m = static_cast<std::size_t>(p.free_dim);
    // suffix coverage: can atoms i.. still contribute to free coordinate f?
    std::vector<std::vector<char>> covers(k + 1, std::vector<char>(m, 0));
    for (std::size_t i = k; i-- > 0;) {
        covers[i] = covers[i + 1];
        for (std::size_t f = 0; f < m; ++f)
            if (p.atoms[i][f] > 0) covers[i][f] = 1;
    }
    std::vector<Factorization> out;
    Factorization z(k, 0);
    Vec rem = element;  // free part counts down; torsion checked at the leaf
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            for (std::size_t f = 0; f < m; ++f)
                if (rem[f] != 0) return;
            for (std::size_t j = 0; j < p.torsion.size(); ++j) {
                long long n = p.torsion[j], c = rem[m + j] % n;
                if (c < 0) c += n;
                if (c != 0) return;
            }
            if (out.size() >= limits.factorization_cap)
                throw ResourceError("factorization count exceeds the cap of " +
                                    std::to_string(limits.factorization_cap));
            out.push_back(z);
            return;
        }
        for (std::size_t f = 0; f < m; ++f)
            if (rem[f] > 0 && !covers[i][f]) return;  // coordinate can no longer be cleared
        long long max_e = -1;
        for (std::size_t f = 0; f < m; ++f)
            if (p.atoms[i][f] > 0) {
                long long q = rem[f] / p.atoms[i][f];
                max_e = max_e < 0 ? q : std::min(max_e, q);
            }
        MONINV_CHECK(max_e >= 0, "atom without free mass survived validation");
        for (long long e = 0;; ++e) {
            rec(i + 1);
            if (e == max_e) break;
            z[i] = e + 1;
            for (std::size_t c = 0; c < p.dim(); ++c) rem[c] -= p.atoms[i][c];
        }
        for (std::size_t c = 0; c < p.dim(); ++c) rem[c] += max_e * p.atoms[i][c];
        z[i] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

/** True iff every atom's only factorization is the trivial one. */
inline bool is_reduced(const Presentation& p, const Limits& limits = Limits{}) {
    validate(p);
    for (std::size_t i = 0; i < p.atom_count(); ++i) {
        Vec img = p.atoms[i];
        std::vector<Factorization> zs = factorizations_of(p, img, limits);
        if (zs.size() != 1) return false;
        if (fact_length(zs[0]) != 1) return false;
    }
    return true;
}

/**
 * R-classes of a factorization list: the finest partition in which any two
 * factorizations with intersecting supports share a class.  Classes are
 * listed by smallest member index; members are sorted.
 */
inline std::vector<std::vector<std::size_t>> r_classes(const std::vector<Factorization>& zs) {
    if (zs.empty()) return {};
    const std::size_t k = zs[0].size();
    const std::size_t words = (k + 63) / 64;
    auto mask_of = [&](const Factorization& z) {
        std::vector<std::uint64_t> m(words, 0);
        for (std::size_t i = 0; i < k; ++i)
            if (z[i] != 0) m[i / 64] |= (std::uint64_t{1} << (i % 64));
        return m;
    };
    struct Cls {
        std::vector<std::uint64_t> mask;
        std::vector<std::size_t> members;
    };
    std::vector<Cls> classes;
    for (std::size_t zi = 0; zi < zs.size(); ++zi) {
        std::vector<std::uint64_t> m = mask_of(zs[zi]);
        std::vector<std::size_t> hit;
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (std::size_t w = 0; w < words; ++w)
                if (classes[c].mask[w] & m[w]) {
                    hit.push_back(c);
                    break;
                }
        if (hit.empty()) {
            classes.push_back({std::move(m), {zi}});
            continue;
        }
        Cls& first = classes[hit[0]];
        for (std::size_t w = 0; w < words; ++w) first.mask[w] |= m[w];
        first.members.push_back(zi);
        for (std::size_t h = hit.size(); h-- > 1;) {
            Cls& other = classes[hit[h]];
            for (std::size_t w = 0; w < words; ++w) first.mask[w] |= other.mask[w];
            first.members.insert(first.members.end(), other.members.begin(), other.members.end());
            classes.erase(classes.begin() + static_cast<long long>(hit[h]));
        }
    }
    for (auto& c : classes) std::sort(c.members.begin(), c.members.end());
    std::sort(classes.begin(), classes.end(),
              [](const Cls& a, const Cls& b) { return a.members[0] < b.members[0]; });
    std::vector<std::vector<std::size_t>> out;
    for (auto& c : classes) out.push_back(std::move(c.members));
    return out;
}

/** R-classes within each length slice, keyed by length (ascending). */
inline std::vector<std::pair<long long, std::vector<std::vector<std::size_t>>>> r_eq_classes(
    const std::vector<Factorization>& zs) {
    std::map<long long, std::vector<std::size_t>> slices;
    for (std::size_t i = 0; i < zs.size(); ++i) slices[fact_length(zs[i])].push_back(i);
    std::vector<std::pair<long long, std::vector<std::vector<std::size_t>>>> out;
    for (const auto& [len, idx] : slices) {
        std::vector<Factorization> sub;
        sub.reserve(idx.size());
        for (std::size_t i : idx) sub.push_back(zs[i]);
        auto cls = r_classes(sub);
        for (auto& c : cls)
            for (auto& member : c) member = idx[member];
        out.emplace_back(len, std::move(cls));
    }
    return out;
}

/**
 * mu(a): maximum over R-classes of the minimal length inside the class, or 0
 * when there are fewer than two classes (single-class elements contribute
 * nothing to the catenary search).
 */
inline long long mu_value(const std::vector<Factorization>& zs) {
    auto classes = r_classes(zs);
    if (classes.size() <= 1) return 0;
    long long best = 0;
    for (const auto& c : classes) {
        long long mn = fact_length(zs[c[0]]);
        for (std::size_t i : c) mn = std::min(mn, fact_length(zs[i]));
        best = std::max(best, mn);
    }
    return best;
}

/** mu_eq(a): largest length whose slice splits into more than one R-class. */
inline long long mu_eq_value(const std::vector<Factorization>& zs) {
    long long best = 0;
    for (const auto& [len, cls] : r_eq_classes(zs))
        if (cls.size() > 1) best = std::max(best, len);
    return best;
}

/** Minimal distance between two index sets of factorizations. */
inline long long slice_distance(const std::vector<Factorization>& zs,
                                const std::vector<std::size_t>& a,
                                const std::vector<std::size_t>& b) {
    long long best = -1;
    for (std::size_t i : a)
        for (std::size_t j : b) {
            long long d = distance(zs[i], zs[j]);
            if (best < 0 || d < best) best = d;
        }
    return best;
}

/**
 * mu_adj(a): largest length k whose slice has distance exactly k from the
 * slice of the adjacent smaller length (0 when |L(a)| < 2).  The distance
 * between adjacent slices never exceeds the larger length, so the condition
 * "= k" says that no pair across the gap shares any atom.
 */
inline long long mu_adj_value(const std::vector<Factorization>& zs) {
    std::map<long long, std::vector<std::size_t>> slices;
    for (std::size_t i = 0; i < zs.size(); ++i) slices[fact_length(zs[i])].push_back(i);
    long long best = 0, prev_len = -1;
    const std::vector<std::size_t>* prev = nullptr;
    for (const auto& [len, idx] : slices) {
        if (prev != nullptr) {
            long long d = slice_distance(zs, *prev, idx);
            MONINV_CHECK(d <= len, "adjacent slice distance exceeds the larger length");
            if (d == len) best = std::max(best, len);
        }
        prev = &idx;
        prev_len = len;
    }
    (void)prev_len;
    return best;
}

/**
 * mu_ad_m(a): largest length k whose slice has distance exactly k from the
 * union of the slices with lengths in [k-m, k).  Lengths whose window
 * contains no factorization are skipped (in particular, m below the minimal
 * length gap of the element yields 0).
 */
inline long long mu_ad_m_value(const std::vector<Factorization>& zs, long long m) {
    if (m < 1) throw InputError("window width m must be >= 1");
    std::map<long long, std::vector<std::size_t>> slices;
    for (std::size_t i = 0; i < zs.size(); ++i) slices[fact_length(zs[i])].push_back(i);
    long long best = 0;
    for (const auto& [len, idx] : slices) {
        std::vector<std::size_t> window;
        for (const auto& [l2, idx2] : slices)
            if (l2 >= len - m && l2 < len) window.insert(window.end(), idx2.begin(), idx2.end());
        if (window.empty()) continue;
        long long d = slice_distance(zs, window, idx);
        if (d == len) best = std::max(best, len);
    }
    return best;
}

/**
 * True iff an N-chain of the requested kind connects the two factorizations
 * inside zs:
 *   plain     steps of distance <= N,
 *   monotone  additionally nondecreasing lengths from the shorter end,
 *   equal     all members share one length (false if the endpoints differ).
 */
enum class ChainMode { plain, monotone, equal };

inline bool chain_exists(const std::vector<Factorization>& zs, std::size_t from, std::size_t to,
                         long long n, ChainMode mode) {
    MONINV_CHECK(from < zs.size() && to < zs.size(), "chain endpoints out of range");
    if (from == to) return true;
    long long lf = fact_length(zs[from]), lt = fact_length(zs[to]);
    if (mode == ChainMode::equal && lf != lt) return false;
    if (mode == ChainMode::monotone && lf > lt) std::swap(from, to);
    std::vector<char> visited(zs.size(), 0);
    std::deque<std::size_t> queue{from};
    visited[from] = 1;
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        if (cur == to) return true;
        long long lc = fact_length(zs[cur]);
        for (std::size_t nxt = 0; nxt < zs.size(); ++nxt) {
            if (visited[nxt]) continue;
            long long ln = fact_length(zs[nxt]);
            if (mode == ChainMode::monotone && ln < lc) continue;
            if (mode == ChainMode::monotone && ln > fact_length(zs[to])) continue;
            if (mode == ChainMode::equal && ln != lf) continue;
            if (distance(zs[cur], zs[nxt]) > n) continue;
            visited[nxt] = 1;
            queue.push_back(nxt);
        }
    }
    return false;
}

}  // namespace moninv
