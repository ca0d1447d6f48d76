#include "baseseq/oracle.hpp"

#include <cstdint>

namespace baseseq {

namespace {

struct PairRow {
    PackedSeq x, y;
    std::vector<int> acf;  // N_x(s) + N_y(s) for s = 1..n
};

std::vector<int> pair_acf(const PackedSeq& x, const PackedSeq& y, int n) {
    std::vector<int> v(n);
    for (int s = 1; s <= n; ++s) v[s - 1] = x.paf(s) + y.paf(s);
    return v;
}

std::vector<PairRow> free_pairs(int len, int n) {
    std::vector<PairRow> rows;
    const uint64_t count = uint64_t{1} << len;
    for (uint64_t i = 0; i < count; ++i)
        for (uint64_t j = 0; j < count; ++j) {
            PackedSeq x{i, len}, y{j, len};
            rows.push_back({x, y, pair_acf(x, y, n)});
        }
    return rows;
}

// A = X then +1, B = X (NS) or X alternated (NNS) then -1.
std::vector<PairRow> structured_pairs(int n, Kind kind) {
    std::vector<PairRow> rows;
    uint64_t alt = 0;  // bits of the even 1-based positions among the first n
    for (int i = 1; i < n; i += 2) alt |= uint64_t{1} << (n - 1 - i);
    const uint64_t count = uint64_t{1} << n;
    for (uint64_t x = 0; x < count; ++x) {
        const uint64_t bx = kind == Kind::NNS ? (x ^ alt) : x;
        PackedSeq a{x << 1, n + 1}, b{(bx << 1) | 1U, n + 1};
        rows.push_back({a, b, pair_acf(a, b, n)});
    }
    return rows;
}

bool completes(const PairRow& ab, const PairRow& cd, int n) {
    for (int s = n; s >= 1; --s)
        if (ab.acf[s - 1] + cd.acf[s - 1] != 0) return false;
    return true;
}

std::vector<SeqQuad> matches_for(const PairRow& ab, const std::vector<PairRow>& cds, int n, Kind kind) {
    std::vector<SeqQuad> out;
    for (const auto& cd : cds) {
        if (!completes(ab, cd, n)) continue;
        SeqQuad q;
        q.a = ab.x.unpack();
        q.b = ab.y.unpack();
        q.c = cd.x.unpack();
        q.d = cd.y.unpack();
        q.kind = kind;
        q.n = n;
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<SeqQuad> run(const std::vector<PairRow>& abs, const std::vector<PairRow>& cds, int n, Kind kind,
                         bool parallel) {
    std::vector<std::vector<SeqQuad>> per(abs.size());
    const auto count = static_cast<long long>(abs.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < count; ++i) per[i] = matches_for(abs[i], cds, n, kind);
    } else {
        for (long long i = 0; i < count; ++i) per[i] = matches_for(abs[i], cds, n, kind);
    }
    std::vector<SeqQuad> out;
    for (auto& v : per)
        for (auto& q : v) out.push_back(std::move(q));
    return out;
}

void check_bs(int n) {
    if (n < 0) throw PreconditionError("n must be nonnegative");
    if (n > kBruteBsMaxN) throw ResourceLimit("brute_bs is limited to n <= 6");
}

void check_structured(int n, Kind kind) {
    if (n < 0) throw PreconditionError("n must be nonnegative");
    if (kind == Kind::BS) throw PreconditionError("brute_structured takes NS or NNS");
    if (kind == Kind::NNS && n % 2 != 0) throw PreconditionError("near-normal sequences need even n");
    if (n > kBruteStructuredMaxN) throw ResourceLimit("brute_structured is limited to n <= 8");
}

// Loop order over packed integers already yields the +1 < -1 lexicographic
// order on (A, B, C, D), so no final sort is needed.
std::vector<SeqQuad> bs_impl(int n, bool parallel) {
    check_bs(n);
    return run(free_pairs(n + 1, n), free_pairs(n, n), n, Kind::BS, parallel);
}

std::vector<SeqQuad> structured_impl(int n, Kind kind, bool parallel) {
    check_structured(n, kind);
    return run(structured_pairs(n, kind), free_pairs(n, n), n, kind, parallel);
}

}  // namespace

std::vector<SeqQuad> brute_bs(int n) { return bs_impl(n, true); }
std::vector<SeqQuad> brute_bs_serial(int n) { return bs_impl(n, false); }
std::vector<SeqQuad> brute_structured(int n, Kind kind) { return structured_impl(n, kind, true); }
std::vector<SeqQuad> brute_structured_serial(int n, Kind kind) { return structured_impl(n, kind, false); }

}  // namespace baseseq
