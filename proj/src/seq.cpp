#include "baseseq/seq.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>

namespace baseseq {

std::string_view to_string(Kind k) {
    switch (k) {
    case Kind::BS: return "bs";
    case Kind::NS: return "ns";
    case Kind::NNS: return "nns";
    }
    return "?";
}

Kind parse_kind(std::string_view s) {
    if (s == "bs" || s == "BS") return Kind::BS;
    if (s == "ns" || s == "NS") return Kind::NS;
    if (s == "nns" || s == "NNS") return Kind::NNS;
    throw MalformedInput("unknown kind '" + std::string(s) + "' (expected bs, ns or nns)");
}

SignSeq::SignSeq(std::vector<int8_t> elements) : e_(std::move(elements)) {
    for (auto v : e_)
        if (v != 1 && v != -1) throw MalformedInput("sequence element is not +1 or -1");
}

SignSeq SignSeq::parse(std::string_view text) {
    std::vector<int8_t> e;
    e.reserve(text.size());
    for (char ch : text) {
        if (ch == '+')
            e.push_back(1);
        else if (ch == '-')
            e.push_back(-1);
        else
            throw MalformedInput(std::string("bad sequence character '") + ch + "'");
    }
    SignSeq s;
    s.e_ = std::move(e);
    return s;
}

SignSeq SignSeq::ones(std::size_t len) { return SignSeq(std::vector<int8_t>(len, 1)); }

std::string SignSeq::str() const {
    std::string out(e_.size(), '+');
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] < 0) out[i] = '-';
    return out;
}

int SignSeq::sum() const {
    int s = 0;
    for (auto v : e_) s += v;
    return s;
}

int SignSeq::alt_sum() const {
    int s = 0;
    for (std::size_t i = 0; i < e_.size(); ++i) s += (i % 2 == 0) ? e_[i] : -e_[i];
    return s;
}

SignSeq SignSeq::negated() const {
    SignSeq r = *this;
    for (auto& v : r.e_) v = static_cast<int8_t>(-v);
    return r;
}

SignSeq SignSeq::reversed() const {
    SignSeq r;
    r.e_.assign(e_.rbegin(), e_.rend());
    return r;
}

SignSeq SignSeq::alternated() const {
    SignSeq r = *this;
    for (std::size_t i = 1; i < r.e_.size(); i += 2) r.e_[i] = static_cast<int8_t>(-r.e_[i]);
    return r;
}

std::strong_ordering SignSeq::operator<=>(const SignSeq& other) const {
    const std::size_t n = std::min(e_.size(), other.e_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (e_[i] != other.e_[i]) return e_[i] > other.e_[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return e_.size() <=> other.e_.size();
}

PackedSeq PackedSeq::pack(const SignSeq& s) {
    if (s.size() > static_cast<std::size_t>(kMaxLen)) throw ResourceLimit("packed form supports lengths up to 64");
    PackedSeq p;
    p.len = static_cast<int>(s.size());
    for (int i = 0; i < p.len; ++i)
        if (s[i] < 0) p.bits |= uint64_t{1} << (p.len - 1 - i);
    return p;
}

SignSeq PackedSeq::unpack() const {
    std::vector<int8_t> e(len);
    for (int i = 0; i < len; ++i) e[i] = static_cast<int8_t>(at(i));
    return SignSeq(std::move(e));
}

int PackedSeq::paf(int s) const {
    if (s >= len) return 0;
    if (s == 0) return len;
    // element j+s moves onto element j's bit; only bits s..len-1 carry valid pairs
    const uint64_t pairs = mask() & ~((uint64_t{1} << s) - 1);
    const int disagree = std::popcount((bits ^ (bits << s)) & pairs);
    return (len - s) - 2 * disagree;
}

SeqQuad SeqQuad::make(SignSeq a, SignSeq b, SignSeq c, SignSeq d, Kind kind) {
    SeqQuad q;
    q.n = static_cast<int>(c.size());
    q.a = std::move(a);
    q.b = std::move(b);
    q.c = std::move(c);
    q.d = std::move(d);
    q.kind = kind;
    check_shape(q);
    return q;
}

void check_shape(const SeqQuad& q) {
    const auto n = static_cast<std::size_t>(q.n);
    if (q.n < 0) throw MalformedInput("negative n");
    if (q.a.size() != n + 1 || q.b.size() != n + 1)
        throw MalformedInput("A and B must have length n+1 = " + std::to_string(n + 1) + " (got " +
                             std::to_string(q.a.size()) + ", " + std::to_string(q.b.size()) + ")");
    if (q.c.size() != n || q.d.size() != n)
        throw MalformedInput("C and D must have length n = " + std::to_string(n) + " (got " +
                             std::to_string(q.c.size()) + ", " + std::to_string(q.d.size()) + ")");
    if (q.kind == Kind::NNS && q.n % 2 != 0) throw MalformedInput("near-normal sequences need even n");
}

std::strong_ordering compare_quads(const SeqQuad& x, const SeqQuad& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    if (auto c = x.b <=> y.b; c != 0) return c;
    if (auto c = x.c <=> y.c; c != 0) return c;
    return x.d <=> y.d;
}

SumProfile SumProfile::from(const std::array<int, 8>& v) {
    return SumProfile{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

std::string format_profile(const SumProfile& s) {
    std::string out;
    const auto v = s.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

SumProfile parse_profile(std::string_view text) {
    std::array<int, 8> v{};
    std::size_t pos = 0;
    for (std::size_t i = 0; i < 8; ++i) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '|')) ++pos;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v[i]);
        if (ec != std::errc()) throw MalformedInput("sum profile needs 8 comma-separated integers");
        pos = static_cast<std::size_t>(ptr - text.data());
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (i < 7) {
            if (pos >= text.size() || (text[pos] != ',' && text[pos] != '|'))
                throw MalformedInput("sum profile needs 8 comma-separated integers");
            ++pos;
        }
    }
    if (pos != text.size()) throw MalformedInput("trailing characters after sum profile");
    return SumProfile::from(v);
}

int paf(const SignSeq& seq, int shift) {
    const int len = static_cast<int>(seq.size());
    if (shift < 0) shift = -shift;
    int s = 0;
    for (int j = 0; j + shift < len; ++j) s += seq[j] * seq[j + shift];
    return s;
}

std::vector<int> paf_vector(const SignSeq& seq) {
    std::vector<int> out(seq.size());
    for (std::size_t s = 0; s < seq.size(); ++s) out[s] = paf(seq, static_cast<int>(s));
    return out;
}

double hall_f(const SignSeq& seq, double theta) {
    const auto n = paf_vector(seq);
    if (n.empty()) return 0.0;
    double f = n[0];
    for (std::size_t j = 1; j < n.size(); ++j) f += 2.0 * n[j] * std::cos(static_cast<double>(j) * theta);
    return f;
}

SumProfile row_sums(const SeqQuad& q) {
    return SumProfile{q.a.sum(),     q.b.sum(),     q.c.sum(),     q.d.sum(),
                      q.a.alt_sum(), q.b.alt_sum(), q.c.alt_sum(), q.d.alt_sum()};
}

std::vector<int> total_paf(const SeqQuad& q) {
    std::vector<int> t(static_cast<std::size_t>(q.n) + 1);
    for (int s = 0; s <= q.n; ++s) t[s] = paf(q.a, s) + paf(q.b, s) + paf(q.c, s) + paf(q.d, s);
    return t;
}

namespace {

std::optional<std::string> structural_check(const SeqQuad& q) {
    if (q.kind == Kind::BS) return std::nullopt;
    const int n = q.n;
    if (q.a[n] != 1 || q.b[n] != -1) return std::string("last entries must be a_{n+1}=1, b_{n+1}=-1");
    for (int i = 0; i < n; ++i) {
        const int want = (q.kind == Kind::NS || i % 2 == 0) ? q.a[i] : -q.a[i];
        if (q.b[i] != want) {
            std::ostringstream os;
            os << (q.kind == Kind::NS ? "normal coupling b_i = a_i" : "near-normal coupling b_i = (-1)^(i-1) a_i")
               << " fails at i=" << (i + 1);
            return os.str();
        }
    }
    return std::nullopt;
}

}  // namespace

VerifyReport verify(const SeqQuad& q) {
    check_shape(q);
    VerifyReport r;
    r.sums = row_sums(q);
    for (int s = 1; s <= q.n; ++s) {
        if (paf(q.a, s) + paf(q.b, s) + paf(q.c, s) + paf(q.d, s) != 0) {
            r.first_failing_shift = s;
            break;
        }
    }
    r.structural_violation = structural_check(q);
    r.valid = !r.first_failing_shift && !r.structural_violation;
    return r;
}

}  // namespace baseseq
