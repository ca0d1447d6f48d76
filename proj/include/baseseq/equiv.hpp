#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "baseseq/seq.hpp"

namespace baseseq {

enum class Which { A, B, C, D };

struct NegateSeq {
    Which which;
    bool operator==(const NegateSeq&) const = default;
};
struct ReverseSeq {
    Which which;
    bool operator==(const ReverseSeq&) const = default;
};
struct SwapAB {
    bool operator==(const SwapAB&) const = default;
};
struct SwapCD {
    bool operator==(const SwapCD&) const = default;
};
struct AlternateAll {
    bool operator==(const AlternateAll&) const = default;
};
/// Flips every 2x2 block (c_i, c_{n+1-i}; d_i, d_{n+1-i}), 1 <= i <= floor(n/2),
/// that matches (+,-;-,+) or (-,+;+,-) to the other pattern. All matching
/// blocks flip together; flipping a single block does not preserve validity
/// in general (first counterexamples at n = 6).
struct ColumnSwapCD {
    bool operator==(const ColumnSwapCD&) const = default;
};
// The following act on the first n entries X of A (a_{n+1} stays 1) and
// re-derive B from the normal / near-normal coupling.
// NS:  X -> -X,             X -> reverse(X),                  X -> X* (with C*, D*)
// NNS: X -> -X* (odd pos.), X -> odd positions reversed,      X -> X* (with C*, D*)
struct NsBar {
    bool operator==(const NsBar&) const = default;
};
struct NsHat {
    bool operator==(const NsHat&) const = default;
};
struct NsStar {
    bool operator==(const NsStar&) const = default;
};

using Transform = std::variant<NegateSeq, ReverseSeq, SwapAB, SwapCD, AlternateAll, ColumnSwapCD, NsBar, NsHat, NsStar>;

std::string describe(const Transform& t);

bool applicable(const SeqQuad& q, const Transform& t);

/// Throws NotApplicable when the kind (Ns*, or a
/// transform that would break the NS/NNS coupling) does not fit.
SeqQuad apply(const SeqQuad& q, const Transform& t);

/// Generators of the equivalence group for `rules`.
std::vector<Transform> generators(const SeqQuad& q, Kind rules);

inline constexpr std::size_t kDefaultOrbitCap = 10'000'000;

struct OrbitTooLarge : ResourceLimit {
    OrbitTooLarge(std::vector<SeqQuad> p, std::size_t cap);
    std::vector<SeqQuad> partial;
};

/// Breadth-first closure of {q}; sorted by the canonical total order.
std::vector<SeqQuad> orbit(const SeqQuad& q, Kind rules, std::size_t cap = kDefaultOrbitCap);

/// Least member of orbit(q) under the +1 < -1 lexicographic order.
SeqQuad canonical(const SeqQuad& q, Kind rules, std::size_t cap = kDefaultOrbitCap);

/// One canonical representative per class, sorted. Throws MalformedInput on
/// mixed n or kind.
std::vector<SeqQuad> dedup(std::span<const SeqQuad> quads, Kind rules, std::size_t cap = kDefaultOrbitCap);

// ---- sum-profile level -------------------------------------------------------
//
// The reduced transformation list used for sum-profile dedup: negate C or D,
// reverse C or D, interchange C and D, negate-and-interchange A and B,
// alternate all four. Each acts on the eight sums as a signed permutation, and
// each is induced by quad-level transforms of the same kind.

struct SumGenerator {
    std::string name;
    std::vector<Transform> induced;  // kind-independent quad transforms, empty if they depend on the kind
    SumProfile (*act)(const SumProfile&, int n, Kind kind);
};

const std::vector<SumGenerator>& sum_generators();

SumProfile apply_sum_generator(const SumGenerator& g, const SumProfile& s, int n, Kind kind);

/// Quad transforms that induce g on quads of the given kind.
std::vector<Transform> induced_transforms(const SumGenerator& g, Kind kind);

std::vector<SumProfile> sum_orbit(const SumProfile& s, int n, Kind kind);

/// Representative of the sum-level class: the lexicographically greatest member.
SumProfile sum_canonical(const SumProfile& s, int n, Kind kind);

/// Quad transforms whose application maps a quad with sums `from` to one with
/// sums `to`, or nullopt when they are in different classes.
std::optional<std::vector<Transform>> sum_transform_path(const SumProfile& from, const SumProfile& to, int n, Kind kind);

}  // namespace baseseq
