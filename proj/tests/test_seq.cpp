#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "baseseq/seq.hpp"
#include "baseseq/textio.hpp"

using namespace baseseq;

namespace {

SeqQuad load(const std::string& name) { return read_quads_file(std::string(BASESEQ_DATA_DIR) + "/" + name, Kind::BS).at(0); }

// Straight from the definition: sum of a_j a_{j+s} over in-range j.
int naive_paf(const SignSeq& a, int s) {
    int t = 0;
    for (int j = 0; j < static_cast<int>(a.size()); ++j)
        if (j + s < static_cast<int>(a.size())) t += a[j] * a[j + s];
    return t;
}

double complex_power(const SignSeq& a, double theta) {
    std::complex<double> h = 0;
    for (std::size_t j = 0; j < a.size(); ++j) h += static_cast<double>(a[j]) * std::polar(1.0, theta * j);
    return std::norm(h);
}

SignSeq random_seq(std::mt19937& rng, int len) {
    std::vector<int8_t> e(len);
    for (auto& v : e) v = (rng() & 1U) ? 1 : -1;
    return SignSeq(std::move(e));
}

}  // namespace

TEST_CASE("paf small cases") {
    CHECK(paf(SignSeq::parse("+-+"), 1) == -2);
    CHECK(paf(SignSeq::parse("++++"), 3) == 1);
    CHECK(paf(SignSeq::parse("++++"), 4) == 0);
    CHECK(paf(SignSeq::parse("++++"), 9) == 0);
    CHECK(paf(SignSeq{}, 0) == 0);
    const auto q = load("bs42_41.txt");
    CHECK(paf(q.a, 0) == 42);
}

TEST_CASE("paf agrees with direct summation, packed form included") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_seq(rng, 1 + static_cast<int>(rng() % 64));
        const auto p = PackedSeq::pack(a);
        CHECK(p.unpack() == a);
        for (int s = 0; s <= static_cast<int>(a.size()); ++s) {
            const int want = naive_paf(a, s);
            REQUIRE(paf(a, s) == want);
            REQUIRE(p.paf(s) == want);
            REQUIRE(paf(a.negated(), s) == want);
            REQUIRE(paf(a.reversed(), s) == want);
        }
        CHECK(paf(a, 0) == static_cast<int>(a.size()));
    }
}

TEST_CASE("packed order matches sequence order") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int len = 1 + static_cast<int>(rng() % 20);
        const auto a = random_seq(rng, len), b = random_seq(rng, len);
        CHECK((PackedSeq::pack(a).bits < PackedSeq::pack(b).bits) == (a < b));
    }
    CHECK(SignSeq::parse("+-") < SignSeq::parse("-+"));
}

TEST_CASE("hall_f values") {
    const auto a = SignSeq::parse("++-");
    CHECK(hall_f(a, 0.0) == doctest::Approx(1.0));
    CHECK(hall_f(a, std::numbers::pi) == doctest::Approx(1.0));
    CHECK(hall_f(SignSeq::parse("++"), std::numbers::pi / 2) == doctest::Approx(2.0));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> th(0.0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_seq(rng, 1 + static_cast<int>(rng() % 40));
        const double t = th(rng);
        const double f = hall_f(s, t);
        CHECK(f >= -1e-9);
        CHECK(std::abs(f - complex_power(s, t)) < 1e-8);
        CHECK(hall_f(s, 0.0) == doctest::Approx(s.sum() * s.sum()));
        CHECK(hall_f(s, std::numbers::pi) == doctest::Approx(s.alt_sum() * s.alt_sum()));
    }
}

TEST_CASE("row sums") {
    const auto q = SeqQuad::make(SignSeq::parse("++"), SignSeq::parse("+-"), SignSeq::parse("+"),
                                 SignSeq::parse("+"), Kind::BS);
    const auto s = row_sums(q);
    CHECK(s.a == 2);
    CHECK(s.a_star == 0);
    CHECK(s.b == 0);
    CHECK(s.b_star == 2);

    const auto t = row_sums(load("bs42_41.txt"));
    CHECK(t.a * t.a + t.b * t.b + t.c * t.c + t.d * t.d == 166);
    CHECK(t.a_star * t.a_star + t.b_star * t.b_star + t.c_star * t.c_star + t.d_star * t.d_star == 166);
}

TEST_CASE("verify published quads and perturbations") {
    for (const char* f : {"bs42_41.txt", "bs43_42.txt", "bs44_43.txt"}) {
        const auto q = load(f);
        const auto rep = verify(q);
        CHECK(rep.valid);
        const auto acf = total_paf(q);
        CHECK(acf[0] == 4 * q.n + 2);
        for (int s = 1; s <= q.n; ++s) CHECK(acf[s] == 0);
    }
    auto q = load("bs42_41.txt");
    auto e = std::vector<int8_t>(q.c.elements().begin(), q.c.elements().end());
    e[5] = static_cast<int8_t>(-e[5]);
    q.c = SignSeq(e);
    const auto rep = verify(q);
    CHECK_FALSE(rep.valid);
    REQUIRE(rep.first_failing_shift.has_value());
    CHECK(*rep.first_failing_shift >= 1);
}

TEST_CASE("n = 0 quad is valid") {
    const auto q = SeqQuad::make(SignSeq::parse("+"), SignSeq::parse("+"), SignSeq{}, SignSeq{}, Kind::BS);
    CHECK(q.n == 0);
    CHECK(verify(q).valid);
}

TEST_CASE("structural checks for normal and near-normal kinds") {
    // n = 1 normal: A = (x, +), B = (x, -)
    auto ns = SeqQuad::make(SignSeq::parse("++"), SignSeq::parse("+-"), SignSeq::parse("+"), SignSeq::parse("+"),
                            Kind::NS);
    CHECK(verify(ns).valid);
    auto bad = SeqQuad::make(SignSeq::parse("++"), SignSeq::parse("--"), SignSeq::parse("+"), SignSeq::parse("+"),
                             Kind::NS);
    const auto rep = verify(bad);
    CHECK_FALSE(rep.valid);
    CHECK(rep.structural_violation.has_value());
    CHECK_THROWS_AS(SeqQuad::make(SignSeq::parse("++"), SignSeq::parse("+-"), SignSeq::parse("+"),
                                  SignSeq::parse("+"), Kind::NNS),
                    MalformedInput);
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(SignSeq::parse("+-x"), MalformedInput);
    CHECK_THROWS_AS(SeqQuad::make(SignSeq::parse("++"), SignSeq::parse("+"), SignSeq::parse("+"),
                                  SignSeq::parse("+"), Kind::BS),
                    MalformedInput);
    CHECK_THROWS_AS(SeqQuad::make(SignSeq::parse("++"), SignSeq::parse("++"), SignSeq::parse("+"),
                                  SignSeq::parse("++"), Kind::BS),
                    MalformedInput);
    CHECK_THROWS_AS(parse_kind("xs"), MalformedInput);
    CHECK_THROWS_AS(parse_profile("1,2,3"), MalformedInput);
}

TEST_CASE("profile text round trip") {
    const SumProfile s{3, -5, 6, 10, -3, 1, 4, 12};
    CHECK(parse_profile(format_profile(s)) == s);
    CHECK(parse_profile("3,-5,6,10 | -3,1,4,12") == s);
}
