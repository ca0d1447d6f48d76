#pragma once

#include <vector>

#include "baseseq/seq.hpp"

namespace baseseq {

inline constexpr int kBruteBsMaxN = 6;
inline constexpr int kBruteStructuredMaxN = 8;

// Exhaustive enumeration with no pruning beyond stopping at the first nonzero
// total autocorrelation. Results are sorted by the canonical total order.
// Above the size caps these throw ResourceLimit.
std::vector<SeqQuad> brute_bs(int n);
std::vector<SeqQuad> brute_structured(int n, Kind kind);

// Single-threaded references for the two functions above.
std::vector<SeqQuad> brute_bs_serial(int n);
std::vector<SeqQuad> brute_structured_serial(int n, Kind kind);

}  // namespace baseseq
