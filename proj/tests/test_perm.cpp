#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qapbench/errors.hpp"
#include "qapbench/perm.hpp"
#include "qapbench/rng.hpp"

using namespace qapbench;

TEST_CASE("factorial values and range") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(1) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(12) == 479001600ULL);
    CHECK(factorial(20) == 2432902008176640000ULL);
    CHECK_THROWS_AS(factorial(-1), std::out_of_range);
    CHECK_THROWS_AS(factorial(21), std::out_of_range);
}

TEST_CASE("validate_perm rejects malformed input") {
    CHECK_NOTHROW(validate_perm({0}));
    CHECK_NOTHROW(validate_perm({2, 0, 1}));
    CHECK_THROWS_AS(validate_perm({}), ValidationError);
    CHECK_THROWS_AS(validate_perm({0, 0}), ValidationError);      // duplicate
    CHECK_THROWS_AS(validate_perm({0, 2}), ValidationError);      // out of range
    CHECK_THROWS_AS(validate_perm({1, 2, 3}), ValidationError);   // shifted
    CHECK_THROWS_AS(validate_perm({0, 1, -1}), ValidationError);  // negative
}

TEST_CASE("index_of matches lexicographic rank") {
    CHECK(index_of({0, 1, 2}) == 0);
    CHECK(index_of({1, 2, 0}) == 3);
    CHECK(index_of({2, 1, 0}) == 5);
    CHECK(index_of({0, 1, 2, 3, 4}) == 0);
    CHECK(index_of({4, 3, 2, 1, 0}) == factorial(5) - 1);

    // std::next_permutation enumerates in exactly PermIndex order.
    Perm perm{0, 1, 2, 3, 4};
    PermIndex expected = 0;
    do {
        CHECK(index_of(perm) == expected);
        ++expected;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(expected == factorial(5));
}

TEST_CASE("perm_of inverts index_of exhaustively for n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        for (PermIndex k = 0; k < factorial(n); ++k) {
            const Perm perm = perm_of(k, n);
            CHECK(perm.size() == static_cast<std::size_t>(n));
            CHECK(index_of(perm) == k);
        }
    }
}

TEST_CASE("perm_of round trip at larger sizes") {
    CHECK(perm_of(0, 12) == Perm{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    const Perm reversed{11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0};
    CHECK(perm_of(factorial(12) - 1, 12) == reversed);

    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const PermIndex k = rng.below(factorial(12));
        CHECK(index_of(perm_of(k, 12)) == k);
    }

    // The 64-bit ceiling: n = 20 still round-trips at both ends.
    const Perm last20 = perm_of(factorial(20) - 1, 20);
    CHECK(last20.front() == 19);
    CHECK(index_of(last20) == factorial(20) - 1);
    CHECK_THROWS_AS(perm_of(factorial(6), 6), std::out_of_range);
}

TEST_CASE("cycle_count and transposition distance") {
    const Perm id4{0, 1, 2, 3};
    CHECK(cycle_count(id4, id4) == 4);

    // Permutation 2310 against reference 0123 is a single 4-cycle, so it
    // sits three transpositions away.
    CHECK(cycle_count({2, 3, 1, 0}, id4) == 1);

    // One swap away: n-1 disjoint cycles.
    CHECK(cycle_count({1, 0, 2, 3}, id4) == 3);

    // The relation is relative: any permutation against itself is distance 0.
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Perm p = perm_of(rng.below(factorial(7)), 7);
        CHECK(cycle_count(p, p) == 7);
    }

    // Distance symmetry: d(a, b) == d(b, a).
    for (int trial = 0; trial < 50; ++trial) {
        const Perm a = perm_of(rng.below(factorial(6)), 6);
        const Perm b = perm_of(rng.below(factorial(6)), 6);
        CHECK(cycle_count(a, b) == cycle_count(b, a));
    }
}

TEST_CASE("transposition_neighbors enumerates i<j swaps in order") {
    const Perm id4{0, 1, 2, 3};
    const auto nbrs = transposition_neighbors(id4);
    REQUIRE(nbrs.size() == 6);

    // First entry swaps positions (0,1), i.e. perm {1,0,2,3}.
    CHECK(nbrs[0] == index_of({1, 0, 2, 3}));
    CHECK(nbrs.back() == index_of({0, 1, 3, 2}));

    // Every neighbor is at transposition distance exactly 1, and all
    // C(n,2) of them are distinct.
    std::set<PermIndex> seen;
    for (const PermIndex k : nbrs) {
        seen.insert(k);
        CHECK(cycle_count(perm_of(k, 4), id4) == 3);
    }
    CHECK(seen.size() == 6);

    // Neighborhood relation is symmetric: v appears in each neighbor's list.
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Perm p = perm_of(rng.below(factorial(5)), 5);
        const PermIndex self = index_of(p);
        for (const PermIndex k : transposition_neighbors(p)) {
            const auto back = transposition_neighbors(perm_of(k, 5));
            CHECK(std::count(back.begin(), back.end(), self) == 1);
        }
    }
}

TEST_CASE("stirling_shell_sizes matches first-kind Stirling numbers") {
    CHECK(stirling_shell_sizes(1) == std::vector<std::uint64_t>{1});
    CHECK(stirling_shell_sizes(4) == std::vector<std::uint64_t>{1, 6, 11, 6});
    CHECK(stirling_shell_sizes(5) == std::vector<std::uint64_t>{1, 10, 35, 50, 24});
    CHECK_THROWS_AS(stirling_shell_sizes(0), std::out_of_range);

    for (int n = 1; n <= 10; ++n) {
        const auto shells = stirling_shell_sizes(n);
        REQUIRE(shells.size() == static_cast<std::size_t>(n));
        const std::uint64_t total = std::accumulate(shells.begin(), shells.end(), std::uint64_t{0});
        CHECK(total == factorial(n));
        CHECK(shells[0] == 1);  // only the reference itself sits at distance 0
        if (n >= 2) {
            CHECK(shells[1] == static_cast<std::uint64_t>(n) * (n - 1) / 2);
        }
    }
}

TEST_CASE("shell sizes agree with brute-force distance census") {
    for (int n = 2; n <= 7; ++n) {
        const auto shells = stirling_shell_sizes(n);
        std::vector<std::uint64_t> census(static_cast<std::size_t>(n), 0);
        const Perm ref = perm_of(0, n);
        for (PermIndex k = 0; k < factorial(n); ++k) {
            const int dist = n - cycle_count(perm_of(k, n), ref);
            ++census[static_cast<std::size_t>(dist)];
        }
        CHECK(census == shells);
    }
}
