#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "clockwork/errors.hpp"

namespace clockwork {

/// Enumeration limits shared by every brute-force oracle. The budget is a
/// hard cap on the candidate count; exceeding it throws BudgetError up front
/// rather than truncating results.
struct EnumOptions {
    std::uint64_t budget = 10'000'000;
    bool parallel = false;
    unsigned threads = 0; // 0 = hardware concurrency
};

/// Multiplies candidate-space factors, throwing BudgetError as soon as the
/// product exceeds the budget (overflow-safe).
inline std::uint64_t candidate_count(const std::vector<std::uint64_t>& factors,
                                     const EnumOptions& opts,
                                     const std::string& what) {
    std::uint64_t total = 1;
    for (std::uint64_t f : factors) {
        if (f == 0) return 0;
        if (total > opts.budget / f) {
            throw BudgetError(what + ": candidate count exceeds budget of " +
                              std::to_string(opts.budget));
        }
        total *= f;
    }
    if (total > opts.budget) {
        throw BudgetError(what + ": candidate count " + std::to_string(total) +
                          " exceeds budget of " + std::to_string(opts.budget));
    }
    return total;
}

/// Decodes one candidate index against per-slot radices (first slot varies
/// slowest, so index order matches lexicographic table order).
inline void decode_mixed_radix(std::uint64_t index,
                               const std::vector<std::uint64_t>& radices,
                               std::vector<std::uint64_t>& digits) {
    digits.assign(radices.size(), 0);
    for (std::size_t i = radices.size(); i-- > 0;) {
        digits[i] = radices[i] ? index % radices[i] : 0;
        index = radices[i] ? index / radices[i] : index;
    }
}

/// Outcome of scanning a candidate space with one or two predicates.
struct ScanResult {
    std::uint64_t total = 0;
    std::uint64_t first_count = 0;        // candidates passing predicate 1
    std::uint64_t second_count = 0;       // candidates passing predicate 2
    std::uint64_t agree_count = 0;        // candidates where both agree
    std::optional<std::uint64_t> first_disagreement;
};

/// Runs `eval(index) -> pair<bool,bool>` over the whole index space, either
/// sequentially or chunked across threads. Results are deterministic: counts
/// are sums and the reported disagreement is the least index.
ScanResult scan_candidates(
    std::uint64_t total, const EnumOptions& opts,
    const std::function<std::pair<bool, bool>(std::uint64_t)>& eval);

/// Collects the indices satisfying `pred`, in increasing order.
std::vector<std::uint64_t> filter_candidates(
    std::uint64_t total, const EnumOptions& opts,
    const std::function<bool(std::uint64_t)>& pred);

} // namespace clockwork
