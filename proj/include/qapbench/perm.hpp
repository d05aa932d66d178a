#pragma once

#include <cstdint>
#include <vector>

namespace qapbench {

// A permutation of {0..n-1}, stored one-line: perm[i] is the image of i.
using Perm = std::vector<int>;

// Lexicographic rank of a permutation, in [0, n!).
using PermIndex = std::uint64_t;

// Largest n for which n! fits in 64 bits.
inline constexpr int kMaxFactorialN = 20;

// n!, throws std::out_of_range for n < 0 or n > 20.
std::uint64_t factorial(int n);

// Throws ValidationError naming the offending position if perm is not a
// permutation of {0..n-1}.
void validate_perm(const Perm& perm);

// Lexicographic rank (Lehmer code in the factorial number system).
PermIndex index_of(const Perm& perm);

// Inverse of index_of. Throws std::out_of_range if idx >= n!.
Perm perm_of(PermIndex idx, int n);

// Number of disjoint cycles of perm composed with ref^-1, fixed points
// counted as 1-cycles. Transposition distance is n minus this count.
int cycle_count(const Perm& perm, const Perm& ref);

// Ranks of the n(n-1)/2 permutations one position swap away, enumerated
// with i < j ascending.
std::vector<PermIndex> transposition_neighbors(const Perm& perm);

// Entry k counts the permutations of S_n with n-k disjoint cycles, i.e.
// the unsigned Stirling numbers of the first kind c(n, n-k). Entries sum
// to n!. Throws std::out_of_range for n < 1.
std::vector<std::uint64_t> stirling_shell_sizes(int n);

} // namespace qapbench
