#include "baseseq/equiv.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

namespace baseseq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

char which_name(Which w) { return "ABCD"[static_cast<int>(w)]; }

bool structured(Kind k) { return k != Kind::BS; }

// ---- element-level helpers ---------------------------------------------------

SignSeq first_n(const SignSeq& a) {
    auto e = a.elements();
    return SignSeq(std::vector<int8_t>(e.begin(), e.end() - 1));
}

SignSeq append(const SignSeq& x, int8_t last) {
    auto e = x.elements();
    std::vector<int8_t> v(e.begin(), e.end());
    v.push_back(last);
    return SignSeq(std::move(v));
}

SignSeq coupled_b(const SignSeq& x, Kind kind) {
    return append(kind == Kind::NS ? x : x.alternated(), -1);
}

SignSeq negate_odd_positions(const SignSeq& x) {
    // 1-based odd positions are 0-based even indices
    auto e = x.elements();
    std::vector<int8_t> v(e.begin(), e.end());
    for (std::size_t i = 0; i < v.size(); i += 2) v[i] = static_cast<int8_t>(-v[i]);
    return SignSeq(std::move(v));
}

SignSeq reverse_odd_positions(const SignSeq& x) {
    auto e = x.elements();
    std::vector<int8_t> v(e.begin(), e.end());
    std::vector<int8_t> odd;
    for (std::size_t i = 0; i < v.size(); i += 2) odd.push_back(v[i]);
    std::reverse(odd.begin(), odd.end());
    for (std::size_t i = 0, j = 0; i < v.size(); i += 2, ++j) v[i] = odd[j];
    return SignSeq(std::move(v));
}

SignSeq& slot(SeqQuad& q, Which w) {
    switch (w) {
    case Which::A: return q.a;
    case Which::B: return q.b;
    case Which::C: return q.c;
    default: return q.d;
    }
}

bool column_pattern(const SeqQuad& q, int i) {
    const int lo = i - 1, hi = q.n - i;
    const int ci = q.c[lo], cj = q.c[hi], di = q.d[lo], dj = q.d[hi];
    return cj == -ci && di == -ci && dj == ci;
}

// Why a transform cannot act on q, or empty when it can.
std::string inapplicable_reason(const SeqQuad& q, const Transform& t) {
    return std::visit(
        overloaded{
            [&](const NegateSeq& x) -> std::string {
                if (structured(q.kind) && (x.which == Which::A || x.which == Which::B))
                    return "negating A or B alone breaks the normal/near-normal coupling";
                return {};
            },
            [&](const ReverseSeq& x) -> std::string {
                if (structured(q.kind) && (x.which == Which::A || x.which == Which::B))
                    return "reversing A or B alone breaks the normal/near-normal coupling";
                return {};
            },
            [&](const SwapAB&) -> std::string {
                if (structured(q.kind)) return "interchanging A and B breaks the normal/near-normal coupling";
                return {};
            },
            [](const SwapCD&) -> std::string { return {}; },
            [&](const AlternateAll&) -> std::string {
                if (q.kind == Kind::NS && q.n % 2 == 1) return "alternating all four moves a_{n+1} to -1 for odd n";
                return {};
            },
            [&](const ColumnSwapCD&) -> std::string {
                if (structured(q.kind)) return "the column flip is a base-sequence transform";
                return {};
            },
            [&](const NsBar&) -> std::string { return structured(q.kind) ? "" : "needs a normal or near-normal quad"; },
            [&](const NsHat&) -> std::string { return structured(q.kind) ? "" : "needs a normal or near-normal quad"; },
            [&](const NsStar&) -> std::string { return structured(q.kind) ? "" : "needs a normal or near-normal quad"; },
        },
        t);
}

// ---- packed orbit machinery --------------------------------------------------

struct PackedQuad {
    uint64_t a = 0, b = 0, c = 0, d = 0;
    bool operator==(const PackedQuad&) const = default;
    auto operator<=>(const PackedQuad&) const = default;
};

struct PackedQuadHash {
    std::size_t operator()(const PackedQuad& q) const noexcept {
        uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (uint64_t v : {q.a, q.b, q.c, q.d}) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

struct Layout {
    int n;
    Kind kind;
    uint64_t mask_ab, mask_cd, mask_x;
    uint64_t alt_ab, alt_cd, alt_x;  // bits of 0-based odd indices
};

uint64_t low_mask(int len) { return len >= 64 ? ~uint64_t{0} : ((uint64_t{1} << len) - 1); }

uint64_t alt_mask(int len) {
    uint64_t m = 0;
    for (int i = 1; i < len; i += 2) m |= uint64_t{1} << (len - 1 - i);
    return m;
}

Layout make_layout(int n, Kind kind) {
    return Layout{n, kind, low_mask(n + 1), low_mask(n), low_mask(n), alt_mask(n + 1), alt_mask(n), alt_mask(n)};
}

uint64_t rev_bits(uint64_t v, int len) {
    if (len == 0) return 0;
    uint64_t r = 0;
    for (int i = 0; i < len; ++i) r |= ((v >> i) & 1U) << (len - 1 - i);
    return r;
}

PackedQuad pack_quad(const SeqQuad& q) {
    return {PackedSeq::pack(q.a).bits, PackedSeq::pack(q.b).bits, PackedSeq::pack(q.c).bits, PackedSeq::pack(q.d).bits};
}

SeqQuad unpack_quad(const PackedQuad& p, int n, Kind kind) {
    SeqQuad q;
    q.n = n;
    q.kind = kind;
    q.a = PackedSeq{p.a, n + 1}.unpack();
    q.b = PackedSeq{p.b, n + 1}.unpack();
    q.c = PackedSeq{p.c, n}.unpack();
    q.d = PackedSeq{p.d, n}.unpack();
    return q;
}

// Rebuild A = (X, +1) and B from the coupling. X occupies bits n..1 of A.
void set_structured(PackedQuad& p, uint64_t x, const Layout& L) {
    p.a = x << 1;
    const uint64_t bx = (L.kind == Kind::NS) ? x : (x ^ L.alt_x);
    p.b = (bx << 1) | 1U;
}

uint64_t nns_reverse_odd_positions(uint64_t x, int n) {
    // 0-based even indices i sit at bit n-1-i
    uint64_t out = x;
    for (int i = 0, j = (n - 1) - ((n - 1) % 2); i < j; i += 2, j -= 2) {
        const uint64_t bi = (x >> (n - 1 - i)) & 1U, bj = (x >> (n - 1 - j)) & 1U;
        out &= ~((uint64_t{1} << (n - 1 - i)) | (uint64_t{1} << (n - 1 - j)));
        out |= (bj << (n - 1 - i)) | (bi << (n - 1 - j));
    }
    return out;
}

enum class Gen : uint8_t { NegA, NegB, NegC, NegD, RevA, RevB, RevC, RevD, SwapAB, SwapCD, Alt, Bar, Hat, Star };

std::vector<Gen> fixed_generators(Kind rules) {
    if (rules == Kind::BS)
        return {Gen::NegA, Gen::NegB, Gen::NegC, Gen::NegD, Gen::RevA,   Gen::RevB,
                Gen::RevC, Gen::RevD, Gen::SwapAB, Gen::SwapCD, Gen::Alt};
    std::vector<Gen> g{Gen::NegC, Gen::NegD, Gen::RevC, Gen::RevD, Gen::SwapCD, Gen::Bar, Gen::Hat, Gen::Star};
    if (rules == Kind::NNS) g.push_back(Gen::Alt);
    return g;
}

PackedQuad apply_gen(PackedQuad p, Gen g, const Layout& L) {
    const int n = L.n;
    switch (g) {
    case Gen::NegA: p.a ^= L.mask_ab; break;
    case Gen::NegB: p.b ^= L.mask_ab; break;
    case Gen::NegC: p.c ^= L.mask_cd; break;
    case Gen::NegD: p.d ^= L.mask_cd; break;
    case Gen::RevA: p.a = rev_bits(p.a, n + 1); break;
    case Gen::RevB: p.b = rev_bits(p.b, n + 1); break;
    case Gen::RevC: p.c = rev_bits(p.c, n); break;
    case Gen::RevD: p.d = rev_bits(p.d, n); break;
    case Gen::SwapAB: std::swap(p.a, p.b); break;
    case Gen::SwapCD: std::swap(p.c, p.d); break;
    case Gen::Alt:
        p.a ^= L.alt_ab;
        p.b ^= L.alt_ab;
        p.c ^= L.alt_cd;
        p.d ^= L.alt_cd;
        break;
    case Gen::Bar: {
        const uint64_t x = p.a >> 1;
        set_structured(p, L.kind == Kind::NS ? (x ^ L.mask_x) : (x ^ (L.mask_x ^ L.alt_x)), L);
        break;
    }
    case Gen::Hat: {
        const uint64_t x = p.a >> 1;
        set_structured(p, L.kind == Kind::NS ? rev_bits(x, n) : nns_reverse_odd_positions(x, n), L);
        break;
    }
    case Gen::Star: {
        const uint64_t x = p.a >> 1;
        set_structured(p, x ^ L.alt_x, L);
        p.c ^= L.alt_cd;
        p.d ^= L.alt_cd;
        break;
    }
    }
    return p;
}

// Flip every C,D block that matches a swap pattern.
PackedQuad column_swap(const PackedQuad& p, int n) {
    uint64_t m = 0;
    for (int i = 1; i <= n / 2; ++i) {
        const int hi_bit = n - i;  // element i-1
        const int lo_bit = i - 1;  // element n-i
        const uint64_t ci = (p.c >> hi_bit) & 1U, cj = (p.c >> lo_bit) & 1U;
        const uint64_t di = (p.d >> hi_bit) & 1U, dj = (p.d >> lo_bit) & 1U;
        if (cj != ci && di != ci && dj == ci) m |= (uint64_t{1} << hi_bit) | (uint64_t{1} << lo_bit);
    }
    PackedQuad r = p;
    r.c ^= m;
    r.d ^= m;
    return r;
}

// BFS closure; visit(member) is called once per member.
template <class Visit>
void packed_orbit(const PackedQuad& start, const Layout& L, Kind rules, std::size_t cap,
                  std::unordered_set<PackedQuad, PackedQuadHash>& seen, Visit&& visit) {
    const auto gens = fixed_generators(rules);
    std::deque<PackedQuad> frontier{start};
    seen.insert(start);
    std::size_t count = 1;
    visit(start);
    auto push = [&](const PackedQuad& r) {
        if (seen.insert(r).second) {
            if (++count > cap) throw ResourceLimit("orbit cap exceeded");
            frontier.push_back(r);
            visit(r);
        }
    };
    while (!frontier.empty()) {
        const PackedQuad p = frontier.front();
        frontier.pop_front();
        for (Gen g : gens) push(apply_gen(p, g, L));
        if (rules == Kind::BS) push(column_swap(p, L.n));
    }
}

void require_packable(const SeqQuad& q) {
    check_shape(q);
    if (q.n + 1 > PackedSeq::kMaxLen) throw ResourceLimit("orbit computation supports n <= 63");
}

}  // namespace

std::string describe(const Transform& t) {
    return std::visit(overloaded{
                          [](const NegateSeq& x) { return std::string("negate ") + which_name(x.which); },
                          [](const ReverseSeq& x) { return std::string("reverse ") + which_name(x.which); },
                          [](const SwapAB&) { return std::string("swap A,B"); },
                          [](const SwapCD&) { return std::string("swap C,D"); },
                          [](const AlternateAll&) { return std::string("alternate all"); },
                          [](const ColumnSwapCD&) { return std::string("column swap C,D"); },
                          [](const NsBar&) { return std::string("bar"); },
                          [](const NsHat&) { return std::string("hat"); },
                          [](const NsStar&) { return std::string("star"); },
                      },
                      t);
}

bool applicable(const SeqQuad& q, const Transform& t) { return inapplicable_reason(q, t).empty(); }

SeqQuad apply(const SeqQuad& q, const Transform& t) {
    check_shape(q);
    if (auto why = inapplicable_reason(q, t); !why.empty()) throw NotApplicable(describe(t) + ": " + why);
    SeqQuad r = q;
    std::visit(overloaded{
                   [&](const NegateSeq& x) { slot(r, x.which) = slot(r, x.which).negated(); },
                   [&](const ReverseSeq& x) { slot(r, x.which) = slot(r, x.which).reversed(); },
                   [&](const SwapAB&) { std::swap(r.a, r.b); },
                   [&](const SwapCD&) { std::swap(r.c, r.d); },
                   [&](const AlternateAll&) {
                       r.a = r.a.alternated();
                       r.b = r.b.alternated();
                       r.c = r.c.alternated();
                       r.d = r.d.alternated();
                   },
                   [&](const ColumnSwapCD&) {
                       std::vector<int8_t> c(r.c.elements().begin(), r.c.elements().end());
                       std::vector<int8_t> d(r.d.elements().begin(), r.d.elements().end());
                       for (int i = 1; i <= q.n / 2; ++i) {
                           if (!column_pattern(q, i)) continue;
                           for (int idx : {i - 1, q.n - i}) {
                               c[idx] = static_cast<int8_t>(-c[idx]);
                               d[idx] = static_cast<int8_t>(-d[idx]);
                           }
                       }
                       r.c = SignSeq(std::move(c));
                       r.d = SignSeq(std::move(d));
                   },
                   [&](const NsBar&) {
                       const SignSeq x = first_n(r.a);
                       const SignSeq nx = q.kind == Kind::NS ? x.negated() : negate_odd_positions(x);
                       r.a = append(nx, 1);
                       r.b = coupled_b(nx, q.kind);
                   },
                   [&](const NsHat&) {
                       const SignSeq x = first_n(r.a);
                       const SignSeq nx = q.kind == Kind::NS ? x.reversed() : reverse_odd_positions(x);
                       r.a = append(nx, 1);
                       r.b = coupled_b(nx, q.kind);
                   },
                   [&](const NsStar&) {
                       const SignSeq nx = first_n(r.a).alternated();
                       r.a = append(nx, 1);
                       r.b = coupled_b(nx, q.kind);
                       r.c = r.c.alternated();
                       r.d = r.d.alternated();
                   },
               },
               t);
    return r;
}

std::vector<Transform> generators(const SeqQuad&, Kind rules) {
    std::vector<Transform> g;
    if (rules == Kind::BS) {
        for (Which w : {Which::A, Which::B, Which::C, Which::D}) g.emplace_back(NegateSeq{w});
        for (Which w : {Which::A, Which::B, Which::C, Which::D}) g.emplace_back(ReverseSeq{w});
        g.emplace_back(SwapAB{});
        g.emplace_back(SwapCD{});
        g.emplace_back(AlternateAll{});
        g.emplace_back(ColumnSwapCD{});
        return g;
    }
    g.emplace_back(NegateSeq{Which::C});
    g.emplace_back(NegateSeq{Which::D});
    g.emplace_back(ReverseSeq{Which::C});
    g.emplace_back(ReverseSeq{Which::D});
    g.emplace_back(SwapCD{});
    g.emplace_back(NsBar{});
    g.emplace_back(NsHat{});
    g.emplace_back(NsStar{});
    if (rules == Kind::NNS) g.emplace_back(AlternateAll{});
    return g;
}

OrbitTooLarge::OrbitTooLarge(std::vector<SeqQuad> p, std::size_t cap)
    : ResourceLimit("orbit exceeds cap of " + std::to_string(cap) + " members"), partial(std::move(p)) {}

std::vector<SeqQuad> orbit(const SeqQuad& q, Kind rules, std::size_t cap) {
    require_packable(q);
    if (rules != Kind::BS && q.kind != rules) throw PreconditionError("NS/NNS rules need a quad of the same kind");
    const Layout L = make_layout(q.n, rules);
    std::unordered_set<PackedQuad, PackedQuadHash> seen;
    std::vector<PackedQuad> members;
    try {
        packed_orbit(pack_quad(q), L, rules, cap, seen, [&](const PackedQuad& p) { members.push_back(p); });
    } catch (const ResourceLimit&) {
        std::vector<SeqQuad> partial;
        partial.reserve(members.size());
        for (const auto& p : members) partial.push_back(unpack_quad(p, q.n, q.kind));
        throw OrbitTooLarge(std::move(partial), cap);
    }
    std::sort(members.begin(), members.end());
    std::vector<SeqQuad> out;
    out.reserve(members.size());
    for (const auto& p : members) out.push_back(unpack_quad(p, q.n, q.kind));
    return out;
}

SeqQuad canonical(const SeqQuad& q, Kind rules, std::size_t cap) {
    require_packable(q);
    if (rules != Kind::BS && q.kind != rules) throw PreconditionError("NS/NNS rules need a quad of the same kind");
    const Layout L = make_layout(q.n, rules);
    std::unordered_set<PackedQuad, PackedQuadHash> seen;
    PackedQuad best = pack_quad(q);
    packed_orbit(best, L, rules, cap, seen, [&](const PackedQuad& p) { best = std::min(best, p); });
    return unpack_quad(best, q.n, q.kind);
}

std::vector<SeqQuad> dedup(std::span<const SeqQuad> quads, Kind rules, std::size_t cap) {
    if (quads.empty()) return {};
    const int n = quads.front().n;
    const Kind kind = quads.front().kind;
    for (const auto& q : quads) {
        if (q.n != n || q.kind != kind) throw MalformedInput("dedup needs quads of one n and kind");
        require_packable(q);
    }
    if (rules != Kind::BS && kind != rules) throw PreconditionError("NS/NNS rules need quads of the same kind");
    const Layout L = make_layout(n, rules);
    std::unordered_set<PackedQuad, PackedQuadHash> seen;
    std::vector<PackedQuad> reps;
    for (const auto& q : quads) {
        const PackedQuad p = pack_quad(q);
        if (seen.contains(p)) continue;
        PackedQuad best = p;
        packed_orbit(p, L, rules, cap, seen, [&](const PackedQuad& m) { best = std::min(best, m); });
        reps.push_back(best);
    }
    std::sort(reps.begin(), reps.end());
    std::vector<SeqQuad> out;
    out.reserve(reps.size());
    for (const auto& p : reps) out.push_back(unpack_quad(p, n, kind));
    return out;
}

// ---- sum level ---------------------------------------------------------------

namespace {

SumProfile neg_c(const SumProfile& s, int, Kind) {
    SumProfile r = s;
    r.c = -r.c;
    r.c_star = -r.c_star;
    return r;
}
SumProfile neg_d(const SumProfile& s, int, Kind) {
    SumProfile r = s;
    r.d = -r.d;
    r.d_star = -r.d_star;
    return r;
}
// Reversing a length-n sequence multiplies its alternated sum by (-1)^(n-1).
SumProfile rev_c(const SumProfile& s, int n, Kind) {
    SumProfile r = s;
    if (n % 2 == 0) r.c_star = -r.c_star;
    return r;
}
SumProfile rev_d(const SumProfile& s, int n, Kind) {
    SumProfile r = s;
    if (n % 2 == 0) r.d_star = -r.d_star;
    return r;
}
SumProfile swap_cd(const SumProfile& s, int, Kind) {
    SumProfile r = s;
    std::swap(r.c, r.d);
    std::swap(r.c_star, r.d_star);
    return r;
}
SumProfile negswap_ab(const SumProfile& s, int, Kind) {
    SumProfile r = s;
    r.a = -s.b;
    r.b = -s.a;
    r.a_star = -s.b_star;
    r.b_star = -s.a_star;
    return r;
}
SumProfile alternate(const SumProfile& s, int n, Kind kind) {
    if (kind == Kind::NS && n % 2 == 1)
        return SumProfile{s.b_star, s.a_star, s.c_star, s.d_star, s.b, s.a, s.c, s.d};
    return SumProfile{s.a_star, s.b_star, s.c_star, s.d_star, s.a, s.b, s.c, s.d};
}

}  // namespace

const std::vector<SumGenerator>& sum_generators() {
    static const std::vector<SumGenerator> gens = {
        {"negate C", {NegateSeq{Which::C}}, &neg_c},
        {"negate D", {NegateSeq{Which::D}}, &neg_d},
        {"reverse C", {ReverseSeq{Which::C}}, &rev_c},
        {"reverse D", {ReverseSeq{Which::D}}, &rev_d},
        {"interchange C,D", {SwapCD{}}, &swap_cd},
        {"negate and interchange A,B", {}, &negswap_ab},
        {"alternate all", {}, &alternate},
    };
    return gens;
}

SumProfile apply_sum_generator(const SumGenerator& g, const SumProfile& s, int n, Kind kind) {
    return g.act(s, n, kind);
}

std::vector<Transform> induced_transforms(const SumGenerator& g, Kind kind) {
    if (!g.induced.empty()) return g.induced;
    if (g.act == &negswap_ab) {
        if (kind == Kind::BS) return {NegateSeq{Which::A}, NegateSeq{Which::B}, SwapAB{}};
        return {NsBar{}};
    }
    if (kind == Kind::NS) return {NsStar{}};
    return {AlternateAll{}};
}

std::vector<SumProfile> sum_orbit(const SumProfile& s, int n, Kind kind) {
    std::set<SumProfile> seen{s};
    std::vector<SumProfile> stack{s};
    while (!stack.empty()) {
        const SumProfile cur = stack.back();
        stack.pop_back();
        for (const auto& g : sum_generators()) {
            const SumProfile nx = g.act(cur, n, kind);
            if (seen.insert(nx).second) stack.push_back(nx);
        }
    }
    return {seen.begin(), seen.end()};
}

SumProfile sum_canonical(const SumProfile& s, int n, Kind kind) {
    const auto o = sum_orbit(s, n, kind);
    return *std::max_element(o.begin(), o.end(), [](const SumProfile& x, const SumProfile& y) {
        return x.values() < y.values();
    });
}

std::optional<std::vector<Transform>> sum_transform_path(const SumProfile& from, const SumProfile& to, int n,
                                                         Kind kind) {
    std::map<SumProfile, std::pair<SumProfile, const SumGenerator*>> parent;
    parent.emplace(from, std::make_pair(from, nullptr));
    std::deque<SumProfile> frontier{from};
    while (!frontier.empty()) {
        const SumProfile cur = frontier.front();
        frontier.pop_front();
        if (cur == to) break;
        for (const auto& g : sum_generators()) {
            const SumProfile nx = g.act(cur, n, kind);
            if (parent.emplace(nx, std::make_pair(cur, &g)).second) frontier.push_back(nx);
        }
    }
    if (!parent.contains(to)) return std::nullopt;
    std::vector<const SumGenerator*> steps;
    for (SumProfile cur = to; cur != from;) {
        const auto& [prev, g] = parent.at(cur);
        steps.push_back(g);
        cur = prev;
    }
    std::reverse(steps.begin(), steps.end());
    std::vector<Transform> out;
    for (const auto* g : steps) {
        auto t = induced_transforms(*g, kind);
        out.insert(out.end(), t.begin(), t.end());
    }
    return out;
}

}  // namespace baseseq
