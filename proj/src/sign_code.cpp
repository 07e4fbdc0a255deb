#include "netcap/sign_code.hpp"
#include "netcap/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <string>

namespace netcap {

namespace {

// Words are manipulated as packed bit blocks; bit = 1 encodes +1.
using Blocks = std::vector<std::uint64_t>;

int hamming(const Blocks& a, const Blocks& b) {
    int h = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        h += std::popcount(a[i] ^ b[i]);
    return h;
}

std::vector<std::int8_t> unpack(const Blocks& w, int m) {
    std::vector<std::int8_t> signs(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const bool bit = (w[static_cast<std::size_t>(i) / 64] >>
                          (static_cast<unsigned>(i) % 64)) & 1u;
        signs[static_cast<std::size_t>(i)] = bit ? 1 : -1;
    }
    return signs;
}

bool admissible(const Blocks& cand, const std::vector<Blocks>& kept, int min_hamming) {
    for (const Blocks& w : kept)
        if (hamming(cand, w) < min_hamming) return false;
    return true;
}

} // namespace

int SignCode::l1(std::size_t i, std::size_t j) const {
    const auto& a = words.at(i);
    const auto& b = words.at(j);
    int h = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] != b[k]) ++h;
    return 2 * h;
}

SignCode gv_code(int m, int target_l1, std::uint64_t seed, std::size_t max_words) {
    if (m < 1) throw DomainError("gv_code: word length must be positive");
    if (target_l1 < 0) throw DomainError("gv_code: separation target must be nonnegative");
    if (target_l1 == 0) target_l1 = (m + 1) / 2;
    // l1 distances on sign vectors are even, so the effective requirement
    // is on the Hamming distance.
    const int min_hamming = (target_l1 + 1) / 2;
    if (min_hamming > m && max_words == 0)
        throw ConstructionError("gv_code: separation target " +
                                std::to_string(target_l1) +
                                " exceeds the maximal l1 distance " +
                                std::to_string(2 * m));

    SignCode code;
    code.m = m;
    code.target_l1 = target_l1;
    code.seed = seed;
    code.required_log2 = static_cast<double>(m) / 16.0;

    // Guaranteed cardinality ceil(2^{m/16}); may exceed any materializable
    // count for large m, in which case a cap is mandatory.
    const bool required_overflows = code.required_log2 > 60.0;
    const std::size_t required = required_overflows
        ? std::numeric_limits<std::size_t>::max()
        : static_cast<std::size_t>(std::ceil(std::exp2(code.required_log2)));
    if (required_overflows && max_words == 0)
        throw GuardError("gv_code: required cardinality 2^" +
                         std::to_string(code.required_log2) +
                         " cannot be materialized; pass max_words");

    const std::size_t n_blocks = (static_cast<std::size_t>(m) + 63) / 64;
    std::vector<Blocks> kept;
    code.exhaustive = (m <= 20);

    if (code.exhaustive) {
        // Full lexicographic scan; the cap (when given) only truncates it.
        const std::size_t scan_cap =
            max_words > 0 ? max_words : std::numeric_limits<std::size_t>::max();
        const std::uint64_t limit = std::uint64_t{1} << m;
        for (std::uint64_t w = 0; w < limit && kept.size() < scan_cap; ++w) {
            Blocks cand{w};
            if (admissible(cand, kept, min_hamming)) kept.push_back(std::move(cand));
        }
    } else {
        std::size_t build_target = required;
        if (max_words > 0) build_target = std::min(build_target, max_words);
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint64_t> dist;
        const std::uint64_t tail_mask = (m % 64 == 0)
            ? ~std::uint64_t{0}
            : ((std::uint64_t{1} << (m % 64)) - 1);
        std::size_t budget = 2000 * build_target + 4000;
        while (kept.size() < build_target && budget-- > 0) {
            Blocks cand(n_blocks);
            for (auto& b : cand) b = dist(rng);
            cand.back() &= tail_mask;
            if (admissible(cand, kept, min_hamming)) kept.push_back(std::move(cand));
        }
    }

    if (kept.size() < required && max_words == 0)
        throw ConstructionError(
            "gv_code: greedy construction produced " + std::to_string(kept.size()) +
            " of " + std::to_string(required) + " words at l1 target " +
            std::to_string(target_l1) + "; retry with a different seed");

    code.full_cardinality = !required_overflows && kept.size() >= required;

    code.words.reserve(kept.size());
    for (const Blocks& w : kept) code.words.push_back(unpack(w, m));

    // Audit the separation actually achieved over the materialized words.
    int audited = 2 * m;
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = i + 1; j < kept.size(); ++j)
            audited = std::min(audited, 2 * hamming(kept[i], kept[j]));
    code.min_l1 = audited;
    if (code.words.size() >= 2 && code.min_l1 < target_l1)
        throw ConstructionError("gv_code: post-construction audit found pairwise l1 " +
                                std::to_string(code.min_l1) + " below target " +
                                std::to_string(target_l1));
    return code;
}

} // namespace netcap
