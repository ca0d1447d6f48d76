#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "baseseq/seq.hpp"

namespace baseseq {

// Quad text form: labeled lines X=, Y=, Z=, W= for A, B, C, D. A line made only
// of '+'/'-' continues the previous labeled line, so wrapped tables can be
// pasted as-is. Blank lines and lines starting with '#' are skipped.
std::vector<SeqQuad> read_quads(std::istream& in, Kind kind);
std::vector<SeqQuad> read_quads_file(const std::string& path, Kind kind);
void write_quad(std::ostream& out, const SeqQuad& q);

// One '+'/'-' sequence per line.
std::vector<SignSeq> read_sequences(std::istream& in);

struct ResultRecord {
    int n = 0;
    Kind kind = Kind::BS;
    std::string x, y, z, w;
    bool canonical = false;
    std::optional<long long> sum_profile_index;
    std::optional<long long> residue_profile_index;
    std::optional<std::string> timestamp;

    static ResultRecord from_quad(const SeqQuad& q, bool canonical);
    SeqQuad to_quad() const;

    bool operator==(const ResultRecord&) const = default;
};

/// One JSON object per line with a fixed key order.
std::string format_record(const ResultRecord& r);
ResultRecord parse_record(const std::string& line);

}  // namespace baseseq
