#include "qapbench/perm.hpp"

#include <bit>
#include <string>

#include "qapbench/errors.hpp"

namespace qapbench {

std::uint64_t factorial(int n) {
    if (n < 0 || n > kMaxFactorialN) {
        throw std::out_of_range("factorial: n = " + std::to_string(n) + " outside [0, " +
                                std::to_string(kMaxFactorialN) + "]");
    }
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
}

void validate_perm(const Perm& perm) {
    const int n = static_cast<int>(perm.size());
    if (n < 1 || n > kMaxFactorialN) {
        throw ValidationError("permutation length " + std::to_string(n) + " outside [1, " +
                              std::to_string(kMaxFactorialN) + "]");
    }
    std::uint32_t seen = 0;
    for (int i = 0; i < n; ++i) {
        const int v = perm[i];
        if (v < 0 || v >= n) {
            throw ValidationError("permutation element " + std::to_string(v) + " at position " +
                                  std::to_string(i) + " out of range [0, " + std::to_string(n) + ")");
        }
        const std::uint32_t bit = 1u << v;
        if (seen & bit) {
            throw ValidationError("duplicate element " + std::to_string(v) + " at position " +
                                  std::to_string(i));
        }
        seen |= bit;
    }
}

PermIndex index_of(const Perm& perm) {
    validate_perm(perm);
    const int n = static_cast<int>(perm.size());
    // Lehmer digits: rank of perm[k] among the still-unused elements.
    std::uint32_t unused = (1u << n) - 1u;
    std::uint64_t idx = 0;
    std::uint64_t block = factorial(n - 1);
    for (int k = 0; k < n; ++k) {
        const int v = perm[k];
        const std::uint32_t below = unused & ((1u << v) - 1u);
        idx += static_cast<std::uint64_t>(std::popcount(below)) * block;
        unused &= ~(1u << v);
        if (k + 1 < n) block /= static_cast<std::uint64_t>(n - 1 - k);
    }
    return idx;
}

Perm perm_of(PermIndex idx, int n) {
    const std::uint64_t total = factorial(n);
    if (idx >= total) {
        throw std::out_of_range("perm_of: index " + std::to_string(idx) + " >= " + std::to_string(n) +
                                "! = " + std::to_string(total));
    }
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    Perm perm(n);
    std::uint64_t block = total / static_cast<std::uint64_t>(n);
    std::uint64_t rem = idx;
    for (int k = 0; k < n; ++k) {
        const auto digit = static_cast<std::size_t>(rem / block);
        rem %= block;
        perm[k] = pool[digit];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
        if (k + 1 < n) block /= static_cast<std::uint64_t>(n - 1 - k);
    }
    return perm;
}

int cycle_count(const Perm& perm, const Perm& ref) {
    validate_perm(perm);
    validate_perm(ref);
    const int n = static_cast<int>(perm.size());
    if (static_cast<int>(ref.size()) != n) {
        throw ValidationError("cycle_count: size mismatch, " + std::to_string(n) + " vs " +
                              std::to_string(ref.size()));
    }
    // sigma = perm o ref^-1
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[ref[i]] = perm[i];
    int cycles = 0;
    std::uint32_t visited = 0;
    for (int start = 0; start < n; ++start) {
        if (visited & (1u << start)) continue;
        ++cycles;
        for (int j = start; !(visited & (1u << j)); j = sigma[j]) visited |= 1u << j;
    }
    return cycles;
}

std::vector<PermIndex> transposition_neighbors(const Perm& perm) {
    validate_perm(perm);
    const int n = static_cast<int>(perm.size());
    std::vector<PermIndex> out;
    out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    Perm scratch = perm;
    for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::swap(scratch[i], scratch[j]);
            out.push_back(index_of(scratch));
            std::swap(scratch[i], scratch[j]);
        }
    }
    return out;
}

std::vector<std::uint64_t> stirling_shell_sizes(int n) {
    if (n < 1 || n > kMaxFactorialN) {
        throw std::out_of_range("stirling_shell_sizes: n = " + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxFactorialN) + "]");
    }
    // c(m, k) = c(m-1, k-1) + (m-1) c(m-1, k), one row at a time.
    std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
    row[0] = 1; // c(0, 0)
    for (int m = 1; m <= n; ++m) {
        for (int k = m; k >= 1; --k) {
            row[static_cast<std::size_t>(k)] =
                row[static_cast<std::size_t>(k) - 1] +
                static_cast<std::uint64_t>(m - 1) * row[static_cast<std::size_t>(k)];
        }
        row[0] = 0;
    }
    std::vector<std::uint64_t> shells(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) shells[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(n - k)];
    return shells;
}

} // namespace qapbench
