#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "moninv/common.hpp"

/**
 * Minimal nonnegative integer solutions of homogeneous linear Diophantine
 * systems with optional congruence rows:
 *
 *     sum_j a_ij x_j  =  0           (equation rows)
 *     sum_j b_ij x_j  =  0 (mod n_i) (congruence rows)
 *
 * Congruence rows are handled by appending a slack pair with coefficients
 * +n_i, -n_i and solving the enlarged pure system; solutions are projected
 * back onto the original variables, zero is removed, and the set is
 * re-minimalized componentwise (the congruence solution set is closed under
 * nonnegative differences, so componentwise minimality is the right notion
 * after projection).
 *
 * The pure solver is the classic gradient-guided breadth-first search: a
 * frontier vector t is extended in direction j only when <At, Ae_j> < 0,
 * which preserves completeness (for any minimal solution s >= t, t != s,
 * <At, A(s-t)> = -|At|^2 < 0, so some admissible direction stays under s),
 * and nodes dominated by an already-found solution are pruned.
 */
namespace moninv {

struct ModRow {
    std::vector<long long> row;
    long long n = 0;
};

struct DioSystem {
    std::size_t num_vars = 0;
    std::vector<std::vector<long long>> eq_rows;
    std::vector<ModRow> mod_rows;
};

inline void validate(const DioSystem& sys) {
    for (const auto& r : sys.eq_rows)
        if (r.size() != sys.num_vars) throw InputError("equation row has wrong length");
    for (const auto& m : sys.mod_rows) {
        if (m.row.size() != sys.num_vars) throw InputError("congruence row has wrong length");
        if (m.n < 1) throw InputError("congruence modulus must be >= 1");
    }
}

/**
 * Rewrites congruence rows as equations with a +n/-n slack pair appended per
 * row.  Slack columns come after the original variables, two per congruence
 * row in row order.  Congruence coefficients are reduced to balanced residues
 * mod n first (this changes nothing semantically and keeps defects small).
 */
inline DioSystem expand_modular(const DioSystem& sys) {
    validate(sys);
    DioSystem out;
    out.num_vars = sys.num_vars + 2 * sys.mod_rows.size();
    for (const auto& r : sys.eq_rows) {
        std::vector<long long> row = r;
        row.resize(out.num_vars, 0);
        out.eq_rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < sys.mod_rows.size(); ++i) {
        const ModRow& m = sys.mod_rows[i];
        std::vector<long long> row(out.num_vars, 0);
        for (std::size_t j = 0; j < sys.num_vars; ++j) {
            long long c = m.row[j] % m.n;
            if (c < 0) c += m.n;
            if (2 * c > m.n) c -= m.n;
            // the class n/2 has two balanced representatives; take the sign of
            // the input so antisymmetric rows stay antisymmetric
            if (2 * c == m.n && m.row[j] < 0) c -= m.n;
            row[j] = c;
        }
        row[sys.num_vars + 2 * i] = m.n;
        row[sys.num_vars + 2 * i + 1] = -m.n;
        out.eq_rows.push_back(std::move(row));
    }
    return out;
}

struct HilbertOptions {
    /** Block-sum bound: with block_split = k, sum of vars [0,k) and of [k,2k)
     *  are each bounded by *bound*; without it, the bound applies to the sum
     *  of all original variables.  Slack columns are never bounded. */
    std::optional<long long> bound;
    std::optional<std::size_t> block_split;
    /** Involution p of the original variables with A o p = -A; enables exact
     *  symmetric halving of the search (orbit representatives only).  The
     *  returned solution set always contains both orientations. */
    std::optional<std::vector<std::size_t>> mirror;
    Limits limits;
};

struct MinimalSolutionSet {
    std::vector<std::vector<long long>> solutions;  // lex-sorted, original vars
    bool complete = true;
    std::optional<long long> bound_used;
    /** Vectors removed by componentwise re-minimalization after projection. */
    std::size_t dropped_by_reminimalization = 0;
};

namespace detail {

struct Mask {
    std::uint64_t lo = 0, hi = 0;
    bool subset_of(const Mask& o) const { return (lo & ~o.lo) == 0 && (hi & ~o.hi) == 0; }
};

inline Mask support_mask(const std::int32_t* v, std::size_t dim) {
    Mask m;
    for (std::size_t i = 0; i < dim; ++i)
        if (v[i] != 0) {
            if (i < 64)
                m.lo |= (std::uint64_t{1} << i);
            else
                m.hi |= (std::uint64_t{1} << (i - 64));
        }
    return m;
}

/** Flat arena of fixed-width int32 vectors. */
struct VecArena {
    std::size_t dim = 0;
    std::vector<std::int32_t> data;
    std::size_t size() const { return dim == 0 ? 0 : data.size() / dim; }
    const std::int32_t* at(std::size_t i) const { return data.data() + i * dim; }
    std::int32_t* at(std::size_t i) { return data.data() + i * dim; }
    void push(const std::int32_t* v) { data.insert(data.end(), v, v + dim); }
    void clear() { data.clear(); }
};

inline std::uint64_t hash_vec(const std::int32_t* v, std::size_t dim) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < dim; ++i) {
        h ^= static_cast<std::uint32_t>(v[i]);
        h *= 1099511628211ull;
        h ^= h >> 29;
    }
    return h;
}

/** Contejean-Devie search on a pure equation system. */
class CdSearch {
public:
    CdSearch(std::size_t dim, std::vector<std::vector<long long>> rows, HilbertOptions opts,
             std::size_t num_original)
        : dim_(dim), rows_(std::move(rows)), opts_(std::move(opts)), num_original_(num_original) {
        solutions_.dim = dim_;
        dom_.dim = dim_;
        cols_.assign(dim_, std::vector<long long>(rows_.size(), 0));
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (std::size_t j = 0; j < dim_; ++j) cols_[j][r] = rows_[r][j];
        if (opts_.mirror) build_mirror();
        if (dim_ > 128) throw ResourceError("solver limited to 128 enlarged variables");
    }

    /** Runs to exhaustion and returns the minimal solutions (canonical orbit
     *  representatives when a mirror is active), in discovery order. */
    VecArena run() {
        VecArena frontier;
        frontier.dim = dim_;
        {
            std::vector<std::int32_t> unit(dim_, 0);
            std::unordered_set<std::uint64_t> seen;
            for (std::size_t j = 0; j < dim_; ++j) {
                unit[j] = 1;
                std::vector<std::int32_t> c = canonical(unit.data());
                if (seen.insert(hash_vec(c.data(), dim_)).second) frontier.push(c.data());
                unit[j] = 0;
            }
        }
        long long nodes = 0;
        VecArena children;
        children.dim = dim_;
        while (frontier.size() > 0) {
            nodes += static_cast<long long>(frontier.size());
            if (nodes > opts_.limits.node_limit)
                throw ResourceError("Hilbert search exceeded the node limit of " +
                                    std::to_string(opts_.limits.node_limit) + " nodes");
            expand_level(frontier, children);
            frontier.data.swap(children.data);
        }
        return std::move(solutions_);
    }

    const std::vector<std::size_t>& full_mirror() const { return mirror_full_; }

private:
    void build_mirror() {
        const std::vector<std::size_t>& p = *opts_.mirror;
        if (p.size() != num_original_) throw InternalError("mirror permutation has wrong length");
        mirror_full_.resize(dim_);
        for (std::size_t j = 0; j < num_original_; ++j) {
            if (p[j] >= num_original_ || p[p[j]] != j)
                throw InternalError("mirror is not an involution of the original variables");
            mirror_full_[j] = p[j];
        }
        // slack pairs swap within themselves (the row negates, so +n and -n trade places)
        for (std::size_t j = num_original_; j < dim_; j += 2) {
            mirror_full_[j] = j + 1;
            mirror_full_[j + 1] = j;
        }
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (std::size_t j = 0; j < dim_; ++j)
                if (rows_[r][mirror_full_[j]] != -rows_[r][j])
                    throw InternalError("mirror does not negate the system");
    }

    std::vector<std::int32_t> canonical(const std::int32_t* v) const {
        std::vector<std::int32_t> a(v, v + dim_);
        if (mirror_full_.empty()) return a;
        std::vector<std::int32_t> b(dim_);
        for (std::size_t j = 0; j < dim_; ++j) b[mirror_full_[j]] = v[j];
        return std::min(a, b);
    }

    bool over_bound(const std::int32_t* v) const {
        if (!opts_.bound) return false;
        long long b = *opts_.bound;
        if (opts_.block_split) {
            std::size_t k = *opts_.block_split;
            long long sx = 0, sy = 0;
            for (std::size_t j = 0; j < k; ++j) sx += v[j];
            for (std::size_t j = k; j < 2 * k; ++j) sy += v[j];
            return sx > b || sy > b;
        }
        long long s = 0;
        for (std::size_t j = 0; j < num_original_; ++j) s += v[j];
        return s > b;
    }

    bool dominated(const std::int32_t* v, const Mask& vm) const {
        // cheap dominators first (supports of size <= 2, found at low levels)
        for (std::size_t si : small_) {
            const std::int32_t* m = dom_.at(si);
            if (dom_mask_[si].subset_of(vm)) {
                bool le = true;
                for (std::size_t j = 0; j < dim_ && le; ++j) le = m[j] <= v[j];
                if (le) return true;
            }
        }
        for (std::size_t i = 0; i < dom_.size(); ++i) {
            if (!dom_mask_[i].subset_of(vm)) continue;
            const std::int32_t* m = dom_.at(i);
            bool le = true;
            for (std::size_t j = 0; j < dim_ && le; ++j) le = m[j] <= v[j];
            if (le) return true;
        }
        return false;
    }

    void add_solution(const std::int32_t* v) {
        Mask vm = support_mask(v, dim_);
        if (dominated(v, vm)) return;
        solutions_.push(v);
        push_dom(v);
        if (!mirror_full_.empty()) {
            std::vector<std::int32_t> w(dim_);
            for (std::size_t j = 0; j < dim_; ++j) w[mirror_full_[j]] = v[j];
            if (!std::equal(w.begin(), w.end(), v)) push_dom(w.data());
        }
    }

    void push_dom(const std::int32_t* v) {
        dom_.push(v);
        Mask m = support_mask(v, dim_);
        dom_mask_.push_back(m);
        int pc = __builtin_popcountll(m.lo) + __builtin_popcountll(m.hi);
        if (pc <= 2) small_.push_back(dom_.size() - 1);
    }

    void expand_level(VecArena& frontier, VecArena& children) {
        children.clear();
        const std::size_t n = frontier.size();
        const int workers = resolve_threads(opts_.limits.threads);
        std::vector<VecArena> child_buf(static_cast<std::size_t>(workers) > n
                                            ? n
                                            : static_cast<std::size_t>(workers));
        for (auto& b : child_buf) b.dim = dim_;
        std::vector<std::vector<std::int32_t>> sol_buf(child_buf.size());
        // snapshot of cheap dominators; full domination happens after merge
        parallel_chunks(n, static_cast<int>(child_buf.size()), [&](std::size_t chunk,
                                                                   std::size_t lo,
                                                                   std::size_t hi) {
            std::vector<long long> defect(rows_.size());
            std::vector<std::int32_t> child(dim_);
            for (std::size_t i = lo; i < hi; ++i) {
                const std::int32_t* t = frontier.at(i);
                bool zero = true;
                for (std::size_t r = 0; r < rows_.size(); ++r) {
                    long long d = 0;
                    for (std::size_t j = 0; j < dim_; ++j) d += rows_[r][j] * t[j];
                    defect[r] = d;
                    if (d != 0) zero = false;
                }
                if (zero) {
                    sol_buf[chunk].insert(sol_buf[chunk].end(), t, t + dim_);
                    continue;
                }
                for (std::size_t j = 0; j < dim_; ++j) {
                    long long dot = 0;
                    for (std::size_t r = 0; r < rows_.size(); ++r) dot += defect[r] * cols_[j][r];
                    if (dot >= 0) continue;
                    std::copy(t, t + dim_, child.begin());
                    ++child[j];
                    if (over_bound(child.data())) continue;
                    std::vector<std::int32_t> c = canonical(child.data());
                    child_buf[chunk].push(c.data());
                }
            }
        });
        // solutions first (they prune this level's children); duplicates are
        // filtered naturally because an equal stored solution dominates
        for (const auto& sb : sol_buf)
            for (std::size_t off = 0; off + dim_ <= sb.size(); off += dim_)
                add_solution(sb.data() + off);
        // merge children in chunk order (= single-thread order), dedupe, prune
        std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> seen;
        seen.reserve(1024);
        for (const auto& cb : child_buf) {
            for (std::size_t i = 0; i < cb.size(); ++i) {
                const std::int32_t* v = cb.at(i);
                std::uint64_t h = hash_vec(v, dim_);
                auto& bucket = seen[h];
                bool dup = false;
                for (std::uint32_t q : bucket)
                    if (std::equal(v, v + dim_, children.at(q))) {
                        dup = true;
                        break;
                    }
                if (dup) continue;
                Mask vm = support_mask(v, dim_);
                if (dominated(v, vm)) continue;
                bucket.push_back(static_cast<std::uint32_t>(children.size()));
                children.push(v);
            }
        }
    }

    std::size_t dim_;
    std::vector<std::vector<long long>> rows_;
    HilbertOptions opts_;
    std::size_t num_original_;
    std::vector<std::vector<long long>> cols_;
    std::vector<std::size_t> mirror_full_;
    VecArena solutions_{};
    VecArena dom_{};
    std::vector<Mask> dom_mask_;
    std::vector<std::size_t> small_;
};

}  // namespace detail

/**
 * All componentwise-minimal nonzero solutions of the system (the Hilbert
 * basis of the solution monoid), restricted to block sums <= bound when a
 * bound is given (then *complete* is false).  Deterministic: the result is
 * lex-sorted and independent of the thread count.
 */
inline MinimalSolutionSet hilbert_minimal_solutions(const DioSystem& sys,
                                                    const HilbertOptions& opts = {}) {
    validate(sys);
    DioSystem pure = sys.mod_rows.empty() ? sys : expand_modular(sys);
    detail::CdSearch search(pure.num_vars, pure.eq_rows, opts, sys.num_vars);
    detail::VecArena raw = search.run();

    // project to original variables; drop zero; expand mirror orbits
    std::vector<std::vector<long long>> sols;
    auto push_proj = [&](const std::int32_t* v) {
        std::vector<long long> p(sys.num_vars);
        bool zero = true;
        for (std::size_t j = 0; j < sys.num_vars; ++j) {
            p[j] = v[j];
            if (p[j] != 0) zero = false;
        }
        if (!zero) sols.push_back(std::move(p));
    };
    for (std::size_t i = 0; i < raw.size(); ++i) {
        push_proj(raw.at(i));
        if (opts.mirror) {
            const std::int32_t* v = raw.at(i);
            std::vector<std::int32_t> w(pure.num_vars);
            const auto& mf = search.full_mirror();
            for (std::size_t j = 0; j < pure.num_vars; ++j) w[mf[j]] = v[j];
            push_proj(w.data());
        }
    }
    std::sort(sols.begin(), sols.end());
    sols.erase(std::unique(sols.begin(), sols.end()), sols.end());

    // componentwise re-minimalization after slack projection
    MinimalSolutionSet out;
    std::size_t before = sols.size();
    std::vector<char> keep(sols.size(), 1);
    for (std::size_t i = 0; i < sols.size(); ++i) {
        if (!keep[i]) continue;
        for (std::size_t j = 0; j < sols.size(); ++j) {
            if (i == j || !keep[j]) continue;
            bool le = true;
            for (std::size_t c = 0; c < sys.num_vars && le; ++c) le = sols[j][c] <= sols[i][c];
            if (le) {
                keep[i] = 0;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < sols.size(); ++i)
        if (keep[i]) out.solutions.push_back(sols[i]);
    out.dropped_by_reminimalization = before - out.solutions.size();
    out.complete = !opts.bound.has_value();
    out.bound_used = opts.bound;
    return out;
}

namespace detail {

/**
 * Bareiss fraction-free echelon form.  Mutates m in place; returns the rank
 * and (optionally) the original indices of the pivot rows.  Intermediate
 * entries are minors of the input, so they are Hadamard-bounded and safe in
 * 128 bits for the matrix sizes used here.
 */
inline std::size_t bareiss_echelon(std::vector<std::vector<__int128>>& m,
                                   std::vector<std::size_t>* pivot_rows = nullptr) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    std::vector<std::size_t> order(rows);
    for (std::size_t i = 0; i < rows; ++i) order[i] = i;
    __int128 prev = 1;
    std::size_t rk = 0;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
        std::size_t piv = rk;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rk], m[piv]);
        std::swap(order[rk], order[piv]);
        for (std::size_t r = rk + 1; r < rows; ++r) {
            for (std::size_t cc = c + 1; cc < cols; ++cc)
                m[r][cc] = (m[r][cc] * m[rk][c] - m[r][c] * m[rk][cc]) / prev;
            m[r][c] = 0;
        }
        prev = m[rk][c];
        if (pivot_rows) pivot_rows->push_back(order[rk]);
        ++rk;
    }
    return rk;
}

inline std::size_t int_rank(std::vector<std::vector<__int128>> m) {
    return bareiss_echelon(m);
}

/** Determinant of a small square matrix by Bareiss elimination. */
inline __int128 int_det(std::vector<std::vector<__int128>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    __int128 prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            sign = -sign;
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            for (std::size_t cc = c + 1; cc < n; ++cc)
                m[r][cc] = (m[r][cc] * m[c][c] - m[r][c] * m[c][cc]) / prev;
            m[r][c] = 0;
        }
        prev = m[c][c];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace detail

/**
 * The subset of the Hilbert basis whose supports are minimal among supports
 * of nonzero solutions.  These are the primitive generators of the extreme
 * rays of the solution cone: a support is solution-minimal iff the columns
 * it selects have a one-dimensional kernel with a strictly positive
 * generator.  Complete without any bound, which is what makes the exact
 * elasticity computation possible when the full basis is out of reach.
 */
inline std::vector<std::vector<long long>> minimal_support_solutions(
    const DioSystem& sys, const Limits& limits = Limits{}) {
    validate(sys);
    DioSystem pure = sys.mod_rows.empty() ? sys : expand_modular(sys);
    const std::size_t dim = pure.num_vars;
    std::vector<std::vector<__int128>> full(pure.eq_rows.size(), std::vector<__int128>(dim));
    for (std::size_t r = 0; r < pure.eq_rows.size(); ++r)
        for (std::size_t j = 0; j < dim; ++j) full[r][j] = pure.eq_rows[r][j];
    const std::size_t rank = detail::int_rank(full);

    std::vector<std::vector<long long>> found;
    long long budget = limits.node_limit;
    std::vector<std::size_t> subset;

    // kernel generator of the selected columns, when 1-dimensional and positive
    auto try_subset = [&]() {
        const std::size_t s = subset.size();
        std::vector<std::vector<__int128>> m(pure.eq_rows.size(), std::vector<__int128>(s));
        for (std::size_t r = 0; r < pure.eq_rows.size(); ++r)
            for (std::size_t j = 0; j < s; ++j) m[r][j] = pure.eq_rows[r][subset[j]];
        // row-reduce to find the pivot rows and the kernel dimension
        std::vector<std::vector<__int128>> red = m;
        std::vector<std::size_t> pivot_rows;
        std::size_t rk = detail::bareiss_echelon(red, &pivot_rows);
        if (rk + 1 != s) return;  // kernel dimension != 1
        // kernel by signed maximal minors of the (s-1) x s pivot matrix
        std::vector<__int128> v(s);
        bool any = false;
        for (std::size_t skip = 0; skip < s; ++skip) {
            std::vector<std::vector<__int128>> b(s - 1, std::vector<__int128>(s - 1));
            for (std::size_t r = 0; r + 1 < s; ++r) {
                std::size_t cc = 0;
                for (std::size_t c = 0; c < s; ++c) {
                    if (c == skip) continue;
                    b[r][cc++] = m[pivot_rows[r]][c];
                }
            }
            __int128 d = detail::int_det(b);
            v[skip] = (skip % 2 == 0) ? d : -d;
            if (d != 0) any = true;
        }
        if (!any) return;
        bool pos = true, neg = true;
        for (__int128 x : v) {
            if (x <= 0) pos = false;
            if (x >= 0) neg = false;
        }
        if (!pos && !neg) return;  // kernel line leaves the nonnegative orthant
        if (neg)
            for (auto& x : v) x = -x;
        __int128 g = 0;
        for (__int128 x : v) {
            __int128 a = x < 0 ? -x : x;
            while (a != 0) {
                __int128 t = g % a;
                g = a;
                a = t;
            }
        }
        std::vector<long long> sol(sys.num_vars, 0);
        bool zero = true;
        for (std::size_t j = 0; j < s; ++j) {
            __int128 val = v[j] / g;
            if (val > std::numeric_limits<long long>::max())
                throw ResourceError("minimal-support solution exceeds 64 bits");
            if (subset[j] < sys.num_vars) {
                sol[subset[j]] = static_cast<long long>(val);
                if (val != 0) zero = false;
            }
        }
        if (!zero) found.push_back(std::move(sol));
    };

    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t left) {
        if (--budget < 0)
            throw ResourceError("minimal-support enumeration exceeded the node limit");
        if (!subset.empty()) try_subset();
        if (left == 0) return;
        for (std::size_t j = start; j < dim; ++j) {
            subset.push_back(j);
            rec(j + 1, left - 1);
            subset.pop_back();
        }
    };
    rec(0, std::min(rank + 1, dim));

    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    // keep solutions whose (projected) support is minimal within the set
    auto supp = [&](const std::vector<long long>& v) {
        std::vector<std::size_t> s;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) s.push_back(j);
        return s;
    };
    std::vector<char> keep(found.size(), 1);
    for (std::size_t i = 0; i < found.size(); ++i) {
        std::vector<std::size_t> si = supp(found[i]);
        for (std::size_t j = 0; j < found.size() && keep[i]; ++j) {
            if (i == j) continue;
            std::vector<std::size_t> sj = supp(found[j]);
            if (sj.size() < si.size() && std::includes(si.begin(), si.end(), sj.begin(), sj.end()))
                keep[i] = 0;
        }
    }
    std::vector<std::vector<long long>> out;
    for (std::size_t i = 0; i < found.size(); ++i)
        if (keep[i]) out.push_back(found[i]);
    return out;
}

}  // namespace moninv
