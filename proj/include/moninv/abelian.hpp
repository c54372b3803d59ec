#pragma once

#include <cstdint>
#include <vector>

#include "moninv/common.hpp"

/**
 * Finite abelian groups given by invariant factors n_1 | n_2 | ... | n_r.
 *
 * An element is a tuple (c_1, ..., c_r) with 0 <= c_i < n_i.  Elements are
 * identified with their index in the lexicographic enumeration of tuples
 * (first coordinate most significant), so index order IS the canonical
 * element order used everywhere (sequences are multiplicity vectors over
 * this enumeration, and "nondecreasing" in a search means nondecreasing
 * index).  The trivial group has r = 0, order 1, and the single element ().
 */
namespace moninv {

class AbelianGroup {
public:
    AbelianGroup() : factors_(), order_(1) {}

    explicit AbelianGroup(std::vector<long long> factors) : factors_(std::move(factors)) {
        order_ = 1;
        for (long long f : factors_) {
            if (f < 1) throw InputError("group invariant factor must be >= 1");
            order_ = checked_mul(order_, f);
        }
    }

    const std::vector<long long>& factors() const { return factors_; }
    long long order() const { return order_; }
    std::size_t rank() const { return factors_.size(); }
    bool trivial() const { return order_ == 1; }

    /** Representative tuple of the element with the given index. */
    std::vector<long long> rep(long long index) const {
        MONINV_CHECK(index >= 0 && index < order_, "group index out of range");
        std::vector<long long> r(factors_.size());
        for (std::size_t i = factors_.size(); i-- > 0;) {
            r[i] = index % factors_[i];
            index /= factors_[i];
        }
        return r;
    }

    /** Index of a representative tuple (coordinates reduced mod n_i first). */
    long long index_of(const std::vector<long long>& tuple) const {
        if (tuple.size() != factors_.size())
            throw InputError("group element tuple has wrong length");
        long long idx = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            long long c = tuple[i] % factors_[i];
            if (c < 0) c += factors_[i];
            idx = idx * factors_[i] + c;
        }
        return idx;
    }

    long long add(long long a, long long b) const {
        if (!tables_.empty()) return tables_[static_cast<std::size_t>(a) * order_ + b];
        return combine(a, b, 1);
    }

    long long neg(long long a) const {
        if (!neg_table_.empty()) return neg_table_[static_cast<std::size_t>(a)];
        return combine(0, a, -1);
    }

    /** a + k*b for any integer k (k reduced per coordinate). */
    long long add_multiple(long long a, long long b, long long k) const {
        return combine(a, b, k);
    }

    /**
     * Canonical total order on elements: index comparison, i.e. lexicographic
     * comparison of representative tuples.
     */
    static bool leq(long long a, long long b) { return a <= b; }

    /**
     * Builds dense add/neg tables for O(1) operations.  Refuses groups whose
     * order exceeds the configured cap (the quadratic table would be the
     * resource sink, not the group arithmetic itself).
     */
    void ensure_tables(std::size_t cap = Limits{}.sum_table_cap) {
        if (!tables_.empty()) return;
        if (static_cast<std::size_t>(order_) > cap)
            throw ResourceError("group order " + std::to_string(order_) +
                                " exceeds the dense-table cap " + std::to_string(cap));
        tables_.assign(static_cast<std::size_t>(order_) * order_, 0);
        neg_table_.assign(static_cast<std::size_t>(order_), 0);
        for (long long a = 0; a < order_; ++a) {
            neg_table_[static_cast<std::size_t>(a)] = combine(0, a, -1);
            for (long long b = 0; b < order_; ++b)
                tables_[static_cast<std::size_t>(a) * order_ + b] = combine(a, b, 1);
        }
    }

private:
    long long combine(long long a, long long b, long long k) const {
        // index arithmetic without materializing tuples
        long long idx = 0;
        long long ra = a, rb = b;
        // walk coordinates most-significant first by peeling from the left
        std::vector<long long> ta(factors_.size()), tb(factors_.size());
        for (std::size_t i = factors_.size(); i-- > 0;) {
            ta[i] = ra % factors_[i];
            ra /= factors_[i];
            tb[i] = rb % factors_[i];
            rb /= factors_[i];
        }
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            long long c = (ta[i] + (k % factors_[i]) * tb[i]) % factors_[i];
            if (c < 0) c += factors_[i];
            idx = idx * factors_[i] + c;
        }
        return idx;
    }

    std::vector<long long> factors_;
    long long order_;
    std::vector<long long> tables_;
    std::vector<long long> neg_table_;
};

}  // namespace moninv
