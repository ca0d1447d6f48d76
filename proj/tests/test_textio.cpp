#include <doctest.h>

#include <sstream>

#include "baseseq/textio.hpp"

using namespace baseseq;

TEST_CASE("wrapped quad text joins continuation lines") {
    std::istringstream in(
        "# comment\n"
        "X=++\n"
        "+\n"
        "Y=+\n"
        "-+\n"
        "Z=+\n"
        "W=+-\n"
        "\n");
    // lengths 3,3,1,2 are inconsistent, so shape validation must reject it
    CHECK_THROWS_AS(read_quads(in, Kind::BS), MalformedInput);

    std::istringstream ok("X=+\n+\nY=+\n-\nZ=+\nW=+\nX=++\nY=+-\nZ=-\nW=+\n");
    const auto qs = read_quads(ok, Kind::BS);
    REQUIRE(qs.size() == 2);
    CHECK(qs[0].a.str() == "++");
    CHECK(qs[0].b.str() == "+-");
    CHECK(qs[0].n == 1);
    CHECK(qs[1].c.str() == "-");
}

TEST_CASE("letter labels are accepted") {
    std::istringstream in("A=++\nB=+-\nC=+\nD=+\n");
    const auto qs = read_quads(in, Kind::BS);
    REQUIRE(qs.size() == 1);
    CHECK(verify(qs[0]).valid);
}

TEST_CASE("bad quad text") {
    std::istringstream bad_char("X=+*\nY=++\nZ=+\nW=+\n");
    CHECK_THROWS_AS(read_quads(bad_char, Kind::BS), MalformedInput);
    std::istringstream missing("X=++\nY=++\nZ=+\n");
    CHECK_THROWS_AS(read_quads(missing, Kind::BS), MalformedInput);
    std::istringstream stray("++\nX=++\n");
    CHECK_THROWS_AS(read_quads(stray, Kind::BS), MalformedInput);
    std::istringstream label("Q=++\n");
    CHECK_THROWS_AS(read_quads(label, Kind::BS), MalformedInput);
    CHECK_THROWS_AS(read_quads_file("/nonexistent/file.txt", Kind::BS), MalformedInput);
}

TEST_CASE("published files parse") {
    for (const char* f : {"bs42_41.txt", "bs43_42.txt", "bs44_43.txt"}) {
        const auto qs = read_quads_file(std::string(BASESEQ_DATA_DIR) + "/" + f, Kind::BS);
        REQUIRE(qs.size() == 1);
        CHECK(qs[0].a.size() == static_cast<std::size_t>(qs[0].n + 1));
    }
}

TEST_CASE("write then read is the identity") {
    const auto q = read_quads_file(std::string(BASESEQ_DATA_DIR) + "/bs43_42.txt", Kind::BS).at(0);
    std::ostringstream out;
    write_quad(out, q);
    std::istringstream in(out.str());
    CHECK(read_quads(in, Kind::BS).at(0) == q);
}

TEST_CASE("sequence list") {
    std::istringstream in("# x\n+-+\n\n--\n");
    const auto s = read_sequences(in);
    REQUIRE(s.size() == 2);
    CHECK(s[1].str() == "--");
}

TEST_CASE("result record round trip") {
    const auto q = SeqQuad::make(SignSeq::parse("+++"), SignSeq::parse("+--"), SignSeq::parse("+-"),
                                 SignSeq::parse("+-"), Kind::NNS);
    auto r = ResultRecord::from_quad(q, true);
    CHECK(parse_record(format_record(r)) == r);
    r.sum_profile_index = 3;
    r.residue_profile_index = 17;
    r.timestamp = "2026-01-01T00:00:00Z";
    const auto line = format_record(r);
    CHECK(parse_record(line) == r);
    CHECK(line.find("\"n\"") < line.find("\"kind\""));
    CHECK(line.find("\"X\"") < line.find("\"W\""));
    CHECK(parse_record(line).to_quad() == q);
    CHECK(verify(parse_record(line).to_quad()).valid);
}

TEST_CASE("records without optional fields omit them") {
    const auto q = SeqQuad::make(SignSeq::parse("+"), SignSeq::parse("+"), SignSeq{}, SignSeq{}, Kind::BS);
    const auto line = format_record(ResultRecord::from_quad(q, false));
    CHECK(line.find("stage") == std::string::npos);
    CHECK(line.find("timestamp") == std::string::npos);
}

TEST_CASE("malformed records") {
    CHECK_THROWS_AS(parse_record("not json"), MalformedInput);
    CHECK_THROWS_AS(parse_record("{\"n\":1}"), MalformedInput);
    CHECK_THROWS_AS(parse_record("{\"n\":1,\"kind\":\"zz\",\"X\":\"++\",\"Y\":\"++\",\"Z\":\"+\",\"W\":\"+\"}"),
                    MalformedInput);
    const auto r = parse_record("{\"n\":5,\"kind\":\"bs\",\"X\":\"++\",\"Y\":\"+-\",\"Z\":\"+\",\"W\":\"+\"}");
    CHECK_THROWS_AS(r.to_quad(), MalformedInput);
}
