#pragma once

#include <array>
#include <string>
#include <vector>

#include "baseseq/seq.hpp"

namespace baseseq {

enum class Side { AB, CD };

// ---- sum quadruples ------------------------------------------------------------

/// Every 8-tuple (a,b,c,d | a*,b*,c*,d*) meeting the sum-of-squares, parity,
/// bound and mod-4 laws for BS(n+1,n), plus the NS/NNS coupling relations.
/// No dedup; sorted ascending.
std::vector<SumProfile> sum_solutions(int n, Kind kind);

/// sum_solutions reduced to one representative per class of the sum-level
/// transformation list (see equiv.hpp); representatives are the
/// lexicographically greatest class member, listed in descending order.
std::vector<SumProfile> sum_profiles(int n, Kind kind);

/// True when `s` satisfies every law used by sum_solutions.
bool sum_profile_ok(const SumProfile& s, int n, Kind kind);

/// True iff n = 8k - 2; no normal sequences exist there.
bool ns_parity_obstruction(int n);

// ---- sign columns ----------------------------------------------------------------

/// (x_i, x_j, y_i, y_j) with j the mirror position of i on that side.
using Column = std::array<int8_t, 4>;

struct ColumnCaseTable {
    int n = 0;
    Side side = Side::AB;
    Kind kind = Kind::BS;
    /// cases[i-1] lists the admissible columns for pair index i.
    std::vector<std::vector<Column>> cases;
    /// required residue of the column sum mod 4 for pair index i, or -1.
    std::vector<int> congruence;

    std::size_t pairs() const { return cases.size(); }
    bool admissible(int i, const Column& col) const;
};

/// Mirror pairs are (i, n+2-i) for A,B and (i, n+1-i) for C,D.
ColumnCaseTable column_cases(int n, Side side, Kind kind);

// ---- residue-class profiles --------------------------------------------------------

/// Class sums of A, B, C, D modulo m; index i-1 holds class i, where position
/// j belongs to class ((j-1) mod m) + 1.
struct ResidueProfile {
    int m = 0;
    std::vector<int> k, r, p, q;

    auto operator<=>(const ResidueProfile&) const = default;
};

/// Which halves refine_profiles keeps. AbHalf leaves p,q empty; CdHalf leaves k,r empty.
enum class Projection { Full, AbHalf, CdHalf };

std::string format_residue(const ResidueProfile& prof);

int residue_class(int position, int m);

/// Exact class sums of a quad.
ResidueProfile residue_of(const SeqQuad& q, int m);

/// Checks bounds, parity, the quadratic identities, the mod-4 congruences,
/// the class sums against s (and the alternated sums when m is even) and the
/// NS/NNS r-from-k relation. On failure writes a reason into *why.
bool residue_profile_ok(int n, const ResidueProfile& prof, const SumProfile& s, Kind kind, std::string* why = nullptr);

/// All profiles at modulus m consistent with s. NNS needs even m.
std::vector<ResidueProfile> residue_profiles(int n, int m, const SumProfile& s, Kind kind);

/// All profiles at modulus 2m whose coarsening is prof, optionally projected
/// onto one half (distinct halves for which a complementary half exists).
std::vector<ResidueProfile> refine_profiles(int n, const ResidueProfile& prof, const SumProfile& s, Kind kind,
                                            Projection projection = Projection::Full);

/// Coarsen a profile at modulus 2m down to m.
ResidueProfile coarsen(const ResidueProfile& prof);

}  // namespace baseseq
