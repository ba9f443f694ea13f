#include "clockwork/enumeration.hpp"

#include <algorithm>

namespace clockwork {

namespace {

unsigned worker_count(std::uint64_t total, const EnumOptions& opts) {
    if (!opts.parallel || total < 1024) return 1;
    unsigned n = opts.threads ? opts.threads : std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    return static_cast<unsigned>(std::min<std::uint64_t>(n, total));
}

} // namespace

ScanResult scan_candidates(
    std::uint64_t total, const EnumOptions& opts,
    const std::function<std::pair<bool, bool>(std::uint64_t)>& eval) {
    ScanResult result;
    result.total = total;
    const unsigned workers = worker_count(total, opts);
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < total; ++i) {
            auto [a, b] = eval(i);
            result.first_count += a;
            result.second_count += b;
            if (a == b) {
                ++result.agree_count;
            } else if (!result.first_disagreement) {
                result.first_disagreement = i;
            }
        }
        return result;
    }
    std::vector<ScanResult> parts(workers);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            ScanResult& part = parts[w];
            const std::uint64_t lo = w * chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
            for (std::uint64_t i = lo; i < hi; ++i) {
                auto [a, b] = eval(i);
                part.first_count += a;
                part.second_count += b;
                if (a == b) {
                    ++part.agree_count;
                } else if (!part.first_disagreement) {
                    part.first_disagreement = i;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& part : parts) {
        result.first_count += part.first_count;
        result.second_count += part.second_count;
        result.agree_count += part.agree_count;
        if (part.first_disagreement &&
            (!result.first_disagreement ||
             *part.first_disagreement < *result.first_disagreement)) {
            result.first_disagreement = part.first_disagreement;
        }
    }
    return result;
}

std::vector<std::uint64_t> filter_candidates(
    std::uint64_t total, const EnumOptions& opts,
    const std::function<bool(std::uint64_t)>& pred) {
    const unsigned workers = worker_count(total, opts);
    if (workers <= 1) {
        std::vector<std::uint64_t> out;
        for (std::uint64_t i = 0; i < total; ++i) {
            if (pred(i)) out.push_back(i);
        }
        return out;
    }
    std::vector<std::vector<std::uint64_t>> parts(workers);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::uint64_t lo = w * chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
            for (std::uint64_t i = lo; i < hi; ++i) {
                if (pred(i)) parts[w].push_back(i);
            }
        });
    }
    for (auto& t : pool) t.join();
    std::vector<std::uint64_t> out;
    for (auto& part : parts) {
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

} // namespace clockwork
