#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "moninv/diophantine.hpp"
#include "oracles.hpp"

using moninv::DioSystem;
using moninv::HilbertOptions;
using moninv::MinimalSolutionSet;
using moninv::ModRow;
using moninv::Vec;

namespace {

DioSystem one_row(std::vector<long long> row) {
    DioSystem sys;
    sys.num_vars = row.size();
    sys.eq_rows.push_back(std::move(row));
    return sys;
}

bool satisfies(const DioSystem& sys, const Vec& x) {
    for (const auto& r : sys.eq_rows) {
        long long s = 0;
        for (std::size_t j = 0; j < sys.num_vars; ++j) s += r[j] * x[j];
        if (s != 0) return false;
    }
    for (const auto& m : sys.mod_rows) {
        long long s = 0;
        for (std::size_t j = 0; j < sys.num_vars; ++j) s += m.row[j] * x[j];
        if (s % m.n != 0) return false;
    }
    return true;
}

bool is_antichain(const std::vector<Vec>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
            if (i != j && oracles::leq(xs[i], xs[j])) return false;
    return true;
}

long long max_abs_coeff(const DioSystem& sys) {
    long long m = 1;
    for (const auto& r : sys.eq_rows)
        for (long long c : r) m = std::max(m, std::llabs(c));
    for (const auto& mr : sys.mod_rows)
        for (long long c : mr.row) m = std::max(m, std::llabs(c));
    return m;
}

}  // namespace

TEST_CASE("validate rejects malformed systems") {
    DioSystem sys = one_row({1, -1});
    CHECK_NOTHROW(moninv::validate(sys));

    DioSystem bad_row = sys;
    bad_row.eq_rows.push_back({1});
    CHECK_THROWS_AS(moninv::validate(bad_row), moninv::InputError);

    DioSystem bad_mod = sys;
    bad_mod.mod_rows.push_back(ModRow{{1, 0}, 0});
    CHECK_THROWS_AS(moninv::validate(bad_mod), moninv::InputError);

    DioSystem short_mod = sys;
    short_mod.mod_rows.push_back(ModRow{{1}, 2});
    CHECK_THROWS_AS(moninv::validate(short_mod), moninv::InputError);
}

TEST_CASE("single equation 2a + 3b = 2c + 3d") {
    DioSystem sys = one_row({2, 3, -2, -3});
    MinimalSolutionSet res = moninv::hilbert_minimal_solutions(sys, {});
    CHECK(res.complete);
    std::vector<Vec> expect = {
        {0, 1, 0, 1}, {0, 2, 3, 0}, {1, 0, 1, 0}, {3, 0, 0, 2}};
    CHECK(res.solutions == expect);
}

TEST_CASE("expand_modular appends one slack pair per congruence") {
    DioSystem sys;
    sys.num_vars = 2;
    sys.eq_rows.push_back({1, 1});
    sys.mod_rows.push_back(ModRow{{1, 2}, 3});
    DioSystem out = moninv::expand_modular(sys);
    CHECK(out.num_vars == 4);
    CHECK(out.mod_rows.empty());
    REQUIRE(out.eq_rows.size() == 2);
    CHECK(out.eq_rows[0] == std::vector<long long>{1, 1, 0, 0});
    // 2 mod 3 balances to -1; slack columns carry +n and -n
    CHECK(out.eq_rows[1] == std::vector<long long>{1, -1, 3, -3});
}

TEST_CASE("expand_modular keeps antisymmetric rows antisymmetric") {
    // coefficient class n/2 has two balanced representatives; the sign of the
    // input decides, so a row of the form (r, -r) stays a mirror image
    DioSystem sys;
    sys.num_vars = 2;
    sys.mod_rows.push_back(ModRow{{2, -2}, 4});
    DioSystem out = moninv::expand_modular(sys);
    REQUIRE(out.eq_rows.size() == 1);
    CHECK(out.eq_rows[0] == std::vector<long long>{2, -2, 4, -4});
}

TEST_CASE("congruence-only system x + y = 0 mod 2") {
    DioSystem sys;
    sys.num_vars = 2;
    sys.mod_rows.push_back(ModRow{{1, 1}, 2});
    MinimalSolutionSet res = moninv::hilbert_minimal_solutions(sys, {});
    CHECK(res.complete);
    std::vector<Vec> expect = {{0, 2}, {1, 1}, {2, 0}};
    CHECK(res.solutions == expect);
}

TEST_CASE("equation plus congruence matches the boxed oracle") {
    DioSystem sys;
    sys.num_vars = 3;
    sys.eq_rows.push_back({1, 2, -3});
    sys.mod_rows.push_back(ModRow{{1, 0, 1}, 2});
    MinimalSolutionSet res = moninv::hilbert_minimal_solutions(sys, {});
    CHECK(res.complete);
    std::vector<Vec> oracle = oracles::boxed_minimal_solutions(sys, 24);
    CHECK(res.solutions == oracle);
    for (const Vec& x : res.solutions) CHECK(satisfies(sys, x));
}

// True when some nonzero solution strictly below x exists (x not minimal).
static bool dominates_some_solution(const DioSystem& sys, const Vec& x) {
    Vec y(x.size(), 0);
    bool found = false;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (found) return;
        if (pos == x.size()) {
            bool zero = true, equal = true;
            for (std::size_t j = 0; j < x.size(); ++j) {
                zero = zero && y[j] == 0;
                equal = equal && y[j] == x[j];
            }
            if (!zero && !equal && satisfies(sys, y)) found = true;
            return;
        }
        for (long long c = 0; c <= x[pos] && !found; ++c) {
            y[pos] = c;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return found;
}

TEST_CASE("random systems match the boxed oracle") {
    // The box [0, C]^k with C = (max coefficient + 1) * k captures every
    // minimal solution of a single equation (each coordinate is then at most
    // the largest opposite-sign coefficient), but systems of two equations
    // have minimal solutions far outside any such linear box.  The sound
    // comparison is therefore: solver output restricted to the box equals
    // the boxed brute force, and out-of-box solutions are certified minimal
    // directly by enumerating everything below them.
    std::mt19937_64 rng(512);
    for (int trial = 0; trial < 30; ++trial) {
        DioSystem sys = oracles::random_system(rng);
        CAPTURE(trial);
        MinimalSolutionSet res = moninv::hilbert_minimal_solutions(sys, {});
        REQUIRE(res.complete);
        long long box = (max_abs_coeff(sys) + 1) * static_cast<long long>(sys.num_vars);
        std::vector<Vec> oracle = oracles::boxed_minimal_solutions(sys, box);
        std::vector<Vec> boxed;
        for (const Vec& x : res.solutions)
            if (*std::max_element(x.begin(), x.end()) <= box) boxed.push_back(x);
        CHECK(boxed == oracle);
        if (sys.eq_rows.size() <= 1 && sys.mod_rows.empty())
            CHECK(res.solutions == oracle);  // the box is a proven bound here
        for (const Vec& x : res.solutions) {
            if (*std::max_element(x.begin(), x.end()) <= box) continue;
            double below = 1;
            for (long long v : x) below *= static_cast<double>(v + 1);
            if (below > 5e6) continue;  // certification budget
            CHECK_FALSE(dominates_some_solution(sys, x));
        }
        CHECK(is_antichain(res.solutions));
        for (const Vec& x : res.solutions) CHECK(satisfies(sys, x));
    }
}

TEST_CASE("bounded solve equals the filtered complete set") {
    // the simplex |x| <= B is downward closed, so the minimal solutions under
    // the bound are exactly the global minimal solutions inside it
    std::mt19937_64 rng(9001);
    for (int trial = 0; trial < 20; ++trial) {
        DioSystem sys = oracles::random_system(rng);
        CAPTURE(trial);
        MinimalSolutionSet full = moninv::hilbert_minimal_solutions(sys, {});
        REQUIRE(full.complete);
        HilbertOptions opts;
        opts.bound = 4;
        MinimalSolutionSet part = moninv::hilbert_minimal_solutions(sys, opts);
        CHECK_FALSE(part.complete);
        CHECK(part.bound_used == 4);
        std::vector<Vec> expect;
        for (const Vec& x : full.solutions)
            if (oracles::norm1(x) <= 4) expect.push_back(x);
        CHECK(part.solutions == expect);
    }
}

TEST_CASE("mirror halving returns the full orbit") {
    // row coefficients negate under the swap (0 2)(1 3), so the search may
    // explore representatives only; the result must still list both sides
    DioSystem sys = one_row({2, 3, -2, -3});
    HilbertOptions opts;
    opts.mirror = std::vector<std::size_t>{2, 3, 0, 1};
    MinimalSolutionSet res = moninv::hilbert_minimal_solutions(sys, opts);
    MinimalSolutionSet plain = moninv::hilbert_minimal_solutions(sys, {});
    CHECK(res.complete);
    CHECK(res.solutions == plain.solutions);
}

TEST_CASE("block-split bound applies to each half") {
    DioSystem sys = one_row({2, 3, -2, -3});
    HilbertOptions opts;
    opts.bound = 3;
    opts.block_split = 2;
    MinimalSolutionSet res = moninv::hilbert_minimal_solutions(sys, opts);
    MinimalSolutionSet full = moninv::hilbert_minimal_solutions(sys, {});
    std::vector<Vec> expect;
    for (const Vec& x : full.solutions)
        if (x[0] + x[1] <= 3 && x[2] + x[3] <= 3) expect.push_back(x);
    CHECK(res.solutions == expect);
    // (3,0,0,2) has first-block sum 3 and second-block sum 2, so it survives
    CHECK(std::count(res.solutions.begin(), res.solutions.end(), Vec{3, 0, 0, 2}) == 1);
}

TEST_CASE("node limit aborts with a resource error") {
    DioSystem sys = one_row({5, 4, 3, -5, -4, -3});
    HilbertOptions opts;
    opts.limits.node_limit = 10;
    CHECK_THROWS_AS(moninv::hilbert_minimal_solutions(sys, opts), moninv::ResourceError);
}

TEST_CASE("solver output is deterministic") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        DioSystem sys = oracles::random_system(rng);
        MinimalSolutionSet a = moninv::hilbert_minimal_solutions(sys, {});
        MinimalSolutionSet b = moninv::hilbert_minimal_solutions(sys, {});
        HilbertOptions threaded;
        threaded.limits.threads = 4;
        MinimalSolutionSet c = moninv::hilbert_minimal_solutions(sys, threaded);
        CHECK(a.solutions == b.solutions);
        CHECK(a.solutions == c.solutions);
    }
}

TEST_CASE("zero system has no minimal solutions besides units") {
    // with no rows every unit vector is a minimal solution
    DioSystem sys;
    sys.num_vars = 3;
    MinimalSolutionSet res = moninv::hilbert_minimal_solutions(sys, {});
    std::vector<Vec> expect = {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    CHECK(res.solutions == expect);
}
