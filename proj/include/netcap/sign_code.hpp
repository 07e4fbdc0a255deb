#pragma once

#include <cstdint>
#include <vector>

namespace netcap {

// A set of {-1,+1}^m words with certified pairwise l1 separation
// (l1 distance = 2 x Hamming distance).
struct SignCode {
    int m = 0;
    std::vector<std::vector<std::int8_t>> words;
    int target_l1 = 0;        // requested pairwise separation
    int min_l1 = 0;           // audited over all materialized pairs
    std::uint64_t seed = 0;
    bool exhaustive = false;  // lexicographic greedy (m <= 20) vs. seeded sampling
    bool full_cardinality = false; // reached ceil(2^{m/16}) words
    double required_log2 = 0.0;    // m/16

    int l1(std::size_t i, std::size_t j) const;
};

// Greedy separated code construction. target_l1 = 0 selects the default
// ceil(m/2). For m <= 20 all 2^m words are scanned in lexicographic order
// and every admissible one is kept; beyond that, words are sampled from the
// seeded generator until ceil(2^{m/16}) words exist. max_words, when
// positive, truncates either mode (the result then usually records
// full_cardinality = false). Throws ConstructionError if an uncapped
// construction falls short of the guaranteed cardinality.
SignCode gv_code(int m, int target_l1 = 0, std::uint64_t seed = 0,
                 std::size_t max_words = 0);

} // namespace netcap
