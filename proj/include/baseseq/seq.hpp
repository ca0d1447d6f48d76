#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace baseseq {

// Error categories shared by every module.
struct MalformedInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};
struct NotApplicable : std::logic_error {
    using std::logic_error::logic_error;
};
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Kind { BS, NS, NNS };

std::string_view to_string(Kind k);
Kind parse_kind(std::string_view s);

/// A finite +1/-1 sequence, stored one byte per element.
///
/// Elements are 0-based in the API; the usual 1-based index i maps to
/// `seq[i - 1]`. Ordering compares element lists lexicographically with
/// +1 < -1, which is the total order used for canonical forms.
class SignSeq {
public:
    SignSeq() = default;
    explicit SignSeq(std::vector<int8_t> elements);

    static SignSeq parse(std::string_view text);
    static SignSeq ones(std::size_t len);

    std::string str() const;

    std::size_t size() const { return e_.size(); }
    bool empty() const { return e_.empty(); }
    int operator[](std::size_t i) const { return e_[i]; }
    std::span<const int8_t> elements() const { return e_; }

    int sum() const;
    int alt_sum() const;

    SignSeq negated() const;
    SignSeq reversed() const;
    SignSeq alternated() const;

    bool operator==(const SignSeq&) const = default;
    std::strong_ordering operator<=>(const SignSeq& other) const;

private:
    std::vector<int8_t> e_;
};

/// Bit-packed form of a SignSeq (length <= 64) for the hot loops.
///
/// Element i (0-based) lives at bit (len - 1 - i) and a set bit means -1, so
/// for equal lengths integer comparison of `bits` is the same +1 < -1
/// lexicographic order as SignSeq.
struct PackedSeq {
    static constexpr int kMaxLen = 64;

    uint64_t bits = 0;
    int len = 0;

    static PackedSeq pack(const SignSeq& s);
    SignSeq unpack() const;

    uint64_t mask() const { return len == 64 ? ~uint64_t{0} : ((uint64_t{1} << len) - 1); }
    int at(int i) const { return ((bits >> (len - 1 - i)) & 1U) ? -1 : 1; }
    int paf(int s) const;

    bool operator==(const PackedSeq&) const = default;
};

struct SeqQuad {
    SignSeq a, b, c, d;
    Kind kind = Kind::BS;
    int n = 0;

    static SeqQuad make(SignSeq a, SignSeq b, SignSeq c, SignSeq d, Kind kind);

    bool operator==(const SeqQuad& o) const {
        return n == o.n && kind == o.kind && a == o.a && b == o.b && c == o.c && d == o.d;
    }
};

/// Total order on quads of equal n: concatenated (A,B,C,D), +1 < -1.
std::strong_ordering compare_quads(const SeqQuad& x, const SeqQuad& y);
inline bool quad_less(const SeqQuad& x, const SeqQuad& y) { return compare_quads(x, y) < 0; }

/// Throws MalformedInput unless |A|=|B|=n+1, |C|=|D|=n and (NNS) n even.
void check_shape(const SeqQuad& q);

struct SumProfile {
    int a = 0, b = 0, c = 0, d = 0;
    int a_star = 0, b_star = 0, c_star = 0, d_star = 0;

    std::array<int, 8> values() const { return {a, b, c, d, a_star, b_star, c_star, d_star}; }
    static SumProfile from(const std::array<int, 8>& v);

    auto operator<=>(const SumProfile&) const = default;
};

std::string format_profile(const SumProfile& s);
SumProfile parse_profile(std::string_view text);

struct VerifyReport {
    bool valid = false;
    std::optional<int> first_failing_shift;
    std::optional<std::string> structural_violation;
    SumProfile sums;
};

/// Nonperiodic autocorrelation N_A(s); zero once s >= |A|.
int paf(const SignSeq& seq, int shift);

/// N_A(0..|A|-1).
std::vector<int> paf_vector(const SignSeq& seq);

/// f_A(theta) = N_A(0) + 2 sum_{j>=1} N_A(j) cos(j theta) = |h_A(e^{i theta})|^2.
double hall_f(const SignSeq& seq, double theta);

SumProfile row_sums(const SeqQuad& q);

VerifyReport verify(const SeqQuad& q);

/// Total autocorrelation N_A+N_B+N_C+N_D at every shift 0..n.
std::vector<int> total_paf(const SeqQuad& q);

}  // namespace baseseq
