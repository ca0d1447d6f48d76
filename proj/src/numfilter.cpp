#include "baseseq/numfilter.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "baseseq/equiv.hpp"

namespace baseseq {

namespace {

int mod4(int x) { return ((x % 4) + 4) % 4; }

bool same_parity(int x, int y) { return ((x - y) % 2) == 0; }

// Mod-4 laws between plain and alternated sums.
bool mod4_laws(const SumProfile& s, int n) {
    if (n % 2 == 0) {
        if (mod4(s.c - s.d) != 0 || mod4(s.c_star - s.d_star) != 0) return false;
    } else {
        if (mod4(s.a - s.b - 2) != 0 || mod4(s.a_star - s.b_star - 2) != 0) return false;
    }
    // offsets x - x* (mod 4) for (a, b, c, d) by n mod 4
    static constexpr int kOffsets[4][4] = {{0, 0, 0, 0}, {2, 2, 0, 0}, {2, 2, 2, 2}, {0, 0, 2, 2}};
    const auto& off = kOffsets[n % 4];
    return mod4(s.a - s.a_star - off[0]) == 0 && mod4(s.b - s.b_star - off[1]) == 0 &&
           mod4(s.c - s.c_star - off[2]) == 0 && mod4(s.d - s.d_star - off[3]) == 0;
}

bool coupling_laws(const SumProfile& s, int n, Kind kind) {
    switch (kind) {
    case Kind::BS: return true;
    case Kind::NNS: return s.a == s.b_star + 2 && s.b == s.a_star - 2;
    case Kind::NS:
        if (s.a != s.b + 2) return false;
        return (n % 2 == 1) ? (s.a_star == s.b_star - 2) : (s.a_star == s.b_star + 2);
    }
    return false;
}

using Quad4 = std::array<int, 4>;

std::vector<Quad4> square_decompositions(int n) {
    const int target = 4 * n + 2;
    std::vector<Quad4> out;
    for (int a = -(n + 1); a <= n + 1; ++a) {
        if (!same_parity(a, n + 1)) continue;
        for (int b = -(n + 1); b <= n + 1; ++b) {
            if (!same_parity(b, n + 1)) continue;
            const int rab = target - a * a - b * b;
            if (rab < 0) continue;
            for (int c = -n; c <= n; ++c) {
                if (!same_parity(c, n)) continue;
                const int rd = rab - c * c;
                if (rd < 0) continue;
                for (int d = -n; d <= n; ++d) {
                    if (same_parity(d, n) && d * d == rd) out.push_back({a, b, c, d});
                }
            }
        }
    }
    return out;
}

}  // namespace

bool sum_profile_ok(const SumProfile& s, int n, Kind kind) {
    if (n < 0) return false;
    const int target = 4 * n + 2;
    auto in_box = [&](int x, int bound, int parity) { return std::abs(x) <= bound && same_parity(x, parity); };
    for (int x : {s.a, s.b, s.a_star, s.b_star})
        if (!in_box(x, n + 1, n + 1)) return false;
    for (int x : {s.c, s.d, s.c_star, s.d_star})
        if (!in_box(x, n, n)) return false;
    if (s.a * s.a + s.b * s.b + s.c * s.c + s.d * s.d != target) return false;
    if (s.a_star * s.a_star + s.b_star * s.b_star + s.c_star * s.c_star + s.d_star * s.d_star != target) return false;
    return mod4_laws(s, n) && coupling_laws(s, n, kind);
}

std::vector<SumProfile> sum_solutions(int n, Kind kind) {
    if (n < 0) throw PreconditionError("n must be nonnegative");
    if (kind == Kind::NNS && n % 2 != 0) throw PreconditionError("near-normal sequences need even n");
    const auto quads = square_decompositions(n);
    std::vector<SumProfile> out;
    for (const auto& x : quads) {
        for (const auto& y : quads) {
            const SumProfile s{x[0], x[1], x[2], x[3], y[0], y[1], y[2], y[3]};
            if (mod4_laws(s, n) && coupling_laws(s, n, kind)) out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SumProfile> sum_profiles(int n, Kind kind) {
    std::set<std::array<int, 8>> reps;
    for (const auto& s : sum_solutions(n, kind)) reps.insert(sum_canonical(s, n, kind).values());
    std::vector<SumProfile> out;
    for (auto it = reps.rbegin(); it != reps.rend(); ++it) out.push_back(SumProfile::from(*it));
    return out;
}

bool ns_parity_obstruction(int n) { return n >= 1 && n % 8 == 6; }

// ---- sign columns ----------------------------------------------------------------

bool ColumnCaseTable::admissible(int i, const Column& col) const {
    if (i < 1 || i > static_cast<int>(cases.size())) return true;
    const auto& c = cases[i - 1];
    return std::find(c.begin(), c.end(), col) != c.end();
}

ColumnCaseTable column_cases(int n, Side side, Kind kind) {
    if (n < 0) throw PreconditionError("n must be nonnegative");
    ColumnCaseTable t;
    t.n = n;
    t.side = side;
    t.kind = kind;
    const int pairs = side == Side::AB ? (n + 1) / 2 : n / 2;
    t.cases.resize(pairs);
    t.congruence.resize(pairs);
    for (int i = 1; i <= pairs; ++i) {
        int want = -1;
        if (side == Side::AB)
            want = (i == 1) ? 2 : 0;
        else if (i >= 2)
            want = 0;
        t.congruence[i - 1] = want;
        const bool derived = side == Side::AB && kind != Kind::BS;
        for (int bits = 0; bits < 16; ++bits) {
            Column col{};
            for (int e = 0; e < 4; ++e) col[e] = static_cast<int8_t>((bits >> (3 - e)) & 1 ? -1 : 1);
            if (derived) {
                // positions i and j = n+2-i (1-based); B follows A except at n+1
                const int j = n + 2 - i;
                auto couple = [&](int pos, int x) {
                    if (pos == n + 1) return -1;
                    return (kind == Kind::NS || pos % 2 == 1) ? x : -x;
                };
                if (j == n + 1 && col[1] != 1) continue;
                if (col[2] != couple(i, col[0]) || col[3] != couple(j, col[1])) continue;
            }
            if (want >= 0 && mod4(col[0] + col[1] + col[2] + col[3]) != want) continue;
            t.cases[i - 1].push_back(col);
        }
    }
    return t;
}

// ---- residue-class profiles --------------------------------------------------------

int residue_class(int position, int m) { return (((position - 1) % m) + m) % m + 1; }

namespace {

// Number of positions 1..len in class i (1-based).
int class_count(int len, int i, int m) {
    if (i > len) return 0;
    return (len - i) / m + 1;
}

std::vector<int> class_counts(int len, int m) {
    std::vector<int> c(m);
    for (int i = 1; i <= m; ++i) c[i - 1] = class_count(len, i, m);
    return c;
}

int alt_sum(const std::vector<int>& v) {
    int s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i % 2 == 0) ? v[i] : -v[i];
    return s;
}

int sq_sum(const std::vector<int>& v) {
    int s = 0;
    for (int x : v) s += x * x;
    return s;
}

// [sum of squares, P(1), ..., P(floor(m/2))] with P(s) = N(s) + N(m-s).
std::vector<int> signature(const std::vector<int>& v) {
    const int m = static_cast<int>(v.size());
    std::vector<int> sig(1 + m / 2);
    sig[0] = sq_sum(v);
    auto nper = [&](int s) {
        int t = 0;
        for (int i = 0; i + s < m; ++i) t += v[i] * v[i + s];
        return t;
    };
    for (int s = 1; s <= m / 2; ++s) sig[s] = nper(s) + nper(m - s);
    return sig;
}

std::vector<int> add(std::vector<int> x, const std::vector<int>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return x;
}

std::vector<int> target_signature(int n, int m) {
    std::vector<int> t(1 + m / 2, 0);
    t[0] = 4 * n + 2;
    return t;
}

struct VecSpec {
    std::vector<int> counts;
    int total = 0;
    bool use_alt = false;
    int alt_total = 0;
    std::vector<int> parent;  // coarse class sums when refining, else empty
    int max_sq = 0;
};

// Every class-sum vector meeting bounds, parity, totals and (refine) parent sums.
std::vector<std::vector<int>> enumerate_vectors(const VecSpec& spec) {
    const int m = static_cast<int>(spec.counts.size());
    std::vector<std::vector<int>> out;
    std::vector<int> cur(m, 0);
    auto finish = [&] {
        int s = 0;
        for (int x : cur) s += x;
        if (s != spec.total) return;
        if (spec.use_alt && alt_sum(cur) != spec.alt_total) return;
        if (sq_sum(cur) > spec.max_sq) return;
        out.push_back(cur);
    };
    if (!spec.parent.empty()) {
        const int h = m / 2;
        std::function<void(int, int)> rec = [&](int i, int sq) {
            if (sq > spec.max_sq) return;
            if (i == h) {
                finish();
                return;
            }
            const int lo = spec.counts[i], hi = spec.counts[i + h];
            for (int v = -lo; v <= lo; v += 2) {
                const int w = spec.parent[i] - v;
                if (std::abs(w) > hi || !same_parity(w, hi)) continue;
                cur[i] = v;
                cur[i + h] = w;
                rec(i + 1, sq + v * v + w * w);
            }
        };
        rec(0, 0);
        return out;
    }
    std::vector<int> rest(m + 1, 0);
    for (int i = m - 1; i >= 0; --i) rest[i] = rest[i + 1] + spec.counts[i];
    std::function<void(int, int, int)> rec = [&](int i, int partial, int sq) {
        if (sq > spec.max_sq) return;
        if (std::abs(spec.total - partial) > rest[i]) return;
        if (i == m) {
            finish();
            return;
        }
        const int c = spec.counts[i];
        for (int v = -c; v <= c; v += 2) {
            cur[i] = v;
            rec(i + 1, partial + v, sq + v * v);
        }
        cur[i] = 0;
    };
    rec(0, 0, 0);
    return out;
}

std::vector<int> derive_r(const std::vector<int>& k, int n, Kind kind) {
    const int m = static_cast<int>(k.size());
    const int l = residue_class(n + 1, m);
    std::vector<int> r(m);
    for (int i = 1; i <= m; ++i) {
        if (i == l)
            r[i - 1] = k[i - 1] - 2;
        else
            r[i - 1] = (kind == Kind::NS || i % 2 == 1) ? k[i - 1] : -k[i - 1];
    }
    return r;
}

bool kr_congruences(const std::vector<int>& k, const std::vector<int>& r, int n) {
    const int m = static_cast<int>(k.size());
    const int l = residue_class(n + 1, m);
    for (int j = 1; j <= m; ++j) {
        const int pj = residue_class(n + 2 - j, m);
        const int val = k[j - 1] + r[j - 1] + k[pj - 1] + r[pj - 1];
        const int want = 2 * ((j == 1 ? 1 : 0) + (j == l ? 1 : 0));
        if (mod4(val - want) != 0) return false;
    }
    return true;
}

bool pq_congruences(const std::vector<int>& p, const std::vector<int>& q, int n) {
    const int m = static_cast<int>(p.size());
    for (int j = 1; j <= m; ++j) {
        const int pj = residue_class(n + 1 - j, m);
        if (mod4(p[j - 1] + q[j - 1] + p[pj - 1] + q[pj - 1]) != 0) return false;
    }
    return true;
}

bool in_bounds(const std::vector<int>& v, const std::vector<int>& counts) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > counts[i] || !same_parity(v[i], counts[i])) return false;
    return true;
}

struct Half {
    std::vector<int> x, y;
    std::vector<int> sig;
};

// Pairs of first/second vectors (A,B or C,D side) with their joint signature.
std::vector<Half> side_pairs(int n, int m, const SumProfile& s, Kind kind, Side side, const ResidueProfile* parent) {
    const int len = side == Side::AB ? n + 1 : n;
    const auto counts = class_counts(len, m);
    const bool even = m % 2 == 0;
    const int max_sq = 4 * n + 2;
    auto spec_for = [&](int total, int alt_total, const std::vector<int>* par) {
        VecSpec sp;
        sp.counts = counts;
        sp.total = total;
        sp.use_alt = even;
        sp.alt_total = alt_total;
        sp.max_sq = max_sq;
        if (par) sp.parent = *par;
        return sp;
    };
    std::vector<Half> out;
    if (side == Side::AB) {
        const auto xs = enumerate_vectors(spec_for(s.a, s.a_star, parent ? &parent->k : nullptr));
        if (kind != Kind::BS) {
            for (const auto& k : xs) {
                auto r = derive_r(k, n, kind);
                if (!in_bounds(r, counts)) continue;
                int rs = 0;
                for (int v : r) rs += v;
                if (rs != s.b || (even && alt_sum(r) != s.b_star)) continue;
                if (parent && coarsen(ResidueProfile{m, {}, r, {}, {}}).r != parent->r) continue;
                if (sq_sum(k) + sq_sum(r) > max_sq || !kr_congruences(k, r, n)) continue;
                auto sig = add(signature(k), signature(r));
                out.push_back({k, std::move(r), std::move(sig)});
            }
            return out;
        }
        const auto ys = enumerate_vectors(spec_for(s.b, s.b_star, parent ? &parent->r : nullptr));
        for (const auto& k : xs) {
            const int kq = sq_sum(k);
            for (const auto& r : ys) {
                if (kq + sq_sum(r) > max_sq || !kr_congruences(k, r, n)) continue;
                out.push_back({k, r, add(signature(k), signature(r))});
            }
        }
        return out;
    }
    const auto xs = enumerate_vectors(spec_for(s.c, s.c_star, parent ? &parent->p : nullptr));
    const auto ys = enumerate_vectors(spec_for(s.d, s.d_star, parent ? &parent->q : nullptr));
    for (const auto& p : xs) {
        const int pq = sq_sum(p);
        for (const auto& q : ys) {
            if (pq + sq_sum(q) > max_sq || !pq_congruences(p, q, n)) continue;
            out.push_back({p, q, add(signature(p), signature(q))});
        }
    }
    return out;
}

std::vector<int> complement(const std::vector<int>& target, const std::vector<int>& sig) {
    std::vector<int> c(target.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = target[i] - sig[i];
    return c;
}

std::vector<ResidueProfile> join(int n, int m, const std::vector<Half>& ab, const std::vector<Half>& cd,
                                 Projection projection) {
    const auto target = target_signature(n, m);
    std::vector<ResidueProfile> out;
    if (projection == Projection::CdHalf) {
        std::set<std::vector<int>> ab_sigs;
        for (const auto& h : ab) ab_sigs.insert(h.sig);
        std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
        for (const auto& h : cd)
            if (ab_sigs.contains(complement(target, h.sig)) && seen.emplace(h.x, h.y).second)
                out.push_back(ResidueProfile{m, {}, {}, h.x, h.y});
    } else if (projection == Projection::AbHalf) {
        std::set<std::vector<int>> cd_sigs;
        for (const auto& h : cd) cd_sigs.insert(h.sig);
        std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
        for (const auto& h : ab)
            if (cd_sigs.contains(complement(target, h.sig)) && seen.emplace(h.x, h.y).second)
                out.push_back(ResidueProfile{m, h.x, h.y, {}, {}});
    } else {
        std::map<std::vector<int>, std::vector<std::size_t>> by_sig;
        for (std::size_t i = 0; i < cd.size(); ++i) by_sig[cd[i].sig].push_back(i);
        for (const auto& h : ab) {
            auto it = by_sig.find(complement(target, h.sig));
            if (it == by_sig.end()) continue;
            for (std::size_t i : it->second) out.push_back(ResidueProfile{m, h.x, h.y, cd[i].x, cd[i].y});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void check_kind(int n, Kind kind) {
    if (n < 0) throw PreconditionError("n must be nonnegative");
    if (kind == Kind::NNS && n % 2 != 0) throw PreconditionError("near-normal sequences need even n");
}

}  // namespace

std::string format_residue(const ResidueProfile& prof) {
    std::ostringstream os;
    os << prof.m;
    for (const auto* v : {&prof.k, &prof.r, &prof.p, &prof.q})
        for (int x : *v) os << ',' << x;
    return os.str();
}

ResidueProfile residue_of(const SeqQuad& q, int m) {
    if (m < 1) throw PreconditionError("modulus must be positive");
    ResidueProfile prof{m, std::vector<int>(m), std::vector<int>(m), std::vector<int>(m), std::vector<int>(m)};
    for (std::size_t j = 0; j < q.a.size(); ++j) {
        const int c = residue_class(static_cast<int>(j) + 1, m) - 1;
        prof.k[c] += q.a[j];
        prof.r[c] += q.b[j];
    }
    for (std::size_t j = 0; j < q.c.size(); ++j) {
        const int c = residue_class(static_cast<int>(j) + 1, m) - 1;
        prof.p[c] += q.c[j];
        prof.q[c] += q.d[j];
    }
    return prof;
}

ResidueProfile coarsen(const ResidueProfile& prof) {
    if (prof.m % 2 != 0) throw PreconditionError("only even moduli coarsen by half");
    const int h = prof.m / 2;
    auto half = [&](const std::vector<int>& v) {
        if (v.empty()) return std::vector<int>{};
        std::vector<int> out(h);
        for (int i = 0; i < h; ++i) out[i] = v[i] + v[i + h];
        return out;
    };
    return ResidueProfile{h, half(prof.k), half(prof.r), half(prof.p), half(prof.q)};
}

bool residue_profile_ok(int n, const ResidueProfile& prof, const SumProfile& s, Kind kind, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int m = prof.m;
    if (m < 1) return fail("modulus must be positive");
    for (const auto* v : {&prof.k, &prof.r, &prof.p, &prof.q})
        if (static_cast<int>(v->size()) != m) return fail("vectors must have length m");
    const auto cab = class_counts(n + 1, m), ccd = class_counts(n, m);
    if (!in_bounds(prof.k, cab) || !in_bounds(prof.r, cab) || !in_bounds(prof.p, ccd) || !in_bounds(prof.q, ccd))
        return fail("class sum outside its bound or with the wrong parity");
    auto total = [](const std::vector<int>& v) {
        int t = 0;
        for (int x : v) t += x;
        return t;
    };
    if (total(prof.k) != s.a || total(prof.r) != s.b || total(prof.p) != s.c || total(prof.q) != s.d)
        return fail("class sums do not add up to the sum profile");
    if (m % 2 == 0 && (alt_sum(prof.k) != s.a_star || alt_sum(prof.r) != s.b_star || alt_sum(prof.p) != s.c_star ||
                       alt_sum(prof.q) != s.d_star))
        return fail("alternating class sums do not match the starred sums");
    const auto sig = add(add(signature(prof.k), signature(prof.r)), add(signature(prof.p), signature(prof.q)));
    if (sig[0] != 4 * n + 2) return fail("sum of squares is not 4n+2");
    for (std::size_t i = 1; i < sig.size(); ++i)
        if (sig[i] != 0) return fail("pairing identity fails at s=" + std::to_string(i));
    if (!kr_congruences(prof.k, prof.r, n)) return fail("A,B class congruence mod 4 fails");
    if (!pq_congruences(prof.p, prof.q, n)) return fail("C,D class congruence mod 4 fails");
    if (kind != Kind::BS) {
        if (kind == Kind::NNS && m % 2 != 0) return fail("near-normal relation needs even m");
        if (derive_r(prof.k, n, kind) != prof.r) return fail("r does not follow from k");
    }
    return true;
}

std::vector<ResidueProfile> residue_profiles(int n, int m, const SumProfile& s, Kind kind) {
    check_kind(n, kind);
    if (m < 2) throw PreconditionError("modulus must be at least 2");
    if (kind == Kind::NNS && m % 2 != 0) throw PreconditionError("near-normal residue profiles need even m");
    const auto ab = side_pairs(n, m, s, kind, Side::AB, nullptr);
    const auto cd = side_pairs(n, m, s, kind, Side::CD, nullptr);
    return join(n, m, ab, cd, Projection::Full);
}

std::vector<ResidueProfile> refine_profiles(int n, const ResidueProfile& prof, const SumProfile& s, Kind kind,
                                            Projection projection) {
    check_kind(n, kind);
    std::string why;
    if (!residue_profile_ok(n, prof, s, kind, &why)) throw PreconditionError("cannot refine: " + why);
    const int m = 2 * prof.m;
    const auto ab = side_pairs(n, m, s, kind, Side::AB, &prof);
    const auto cd = side_pairs(n, m, s, kind, Side::CD, &prof);
    return join(n, m, ab, cd, projection);
}

}  // namespace baseseq
