#include "baseseq/textio.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace baseseq {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_sign_run(const std::string& s) {
    return !s.empty() && s.find_first_not_of("+-") == std::string::npos;
}

int label_slot(const std::string& label) {
    if (label == "X" || label == "A") return 0;
    if (label == "Y" || label == "B") return 1;
    if (label == "Z" || label == "C") return 2;
    if (label == "W" || label == "D") return 3;
    return -1;
}

}  // namespace

std::vector<SeqQuad> read_quads(std::istream& in, Kind kind) {
    std::vector<SeqQuad> out;
    std::array<std::string, 4> parts;
    std::array<bool, 4> seen{};
    int current = -1;
    int lineno = 0;

    auto flush = [&] {
        if (current < 0) return;
        for (int i = 0; i < 4; ++i)
            if (!seen[i]) throw MalformedInput("quad is missing one of the X=, Y=, Z=, W= lines");
        out.push_back(SeqQuad::make(SignSeq::parse(parts[0]), SignSeq::parse(parts[1]), SignSeq::parse(parts[2]),
                                    SignSeq::parse(parts[3]), kind));
        parts = {};
        seen = {};
        current = -1;
    };

    std::string raw;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (current < 0 || !is_sign_run(line))
                throw MalformedInput("line " + std::to_string(lineno) + ": expected X=, Y=, Z=, W= or a continuation");
            parts[current] += line;
            continue;
        }
        const int slot = label_slot(trim(line.substr(0, eq)));
        if (slot < 0) throw MalformedInput("line " + std::to_string(lineno) + ": unknown label");
        if (seen[slot]) flush();
        current = slot;
        seen[slot] = true;
        parts[slot] = trim(line.substr(eq + 1));
        if (!parts[slot].empty() && !is_sign_run(parts[slot]))
            throw MalformedInput("line " + std::to_string(lineno) + ": sequences use only '+' and '-'");
    }
    flush();
    return out;
}

std::vector<SeqQuad> read_quads_file(const std::string& path, Kind kind) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    return read_quads(in, kind);
}

void write_quad(std::ostream& out, const SeqQuad& q) {
    out << "X=" << q.a.str() << "\nY=" << q.b.str() << "\nZ=" << q.c.str() << "\nW=" << q.d.str() << "\n";
}

std::vector<SignSeq> read_sequences(std::istream& in) {
    std::vector<SignSeq> out;
    std::string raw;
    while (std::getline(in, raw)) {
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        out.push_back(SignSeq::parse(line));
    }
    return out;
}

ResultRecord ResultRecord::from_quad(const SeqQuad& q, bool canonical) {
    ResultRecord r;
    r.n = q.n;
    r.kind = q.kind;
    r.x = q.a.str();
    r.y = q.b.str();
    r.z = q.c.str();
    r.w = q.d.str();
    r.canonical = canonical;
    return r;
}

SeqQuad ResultRecord::to_quad() const {
    auto q = SeqQuad::make(SignSeq::parse(x), SignSeq::parse(y), SignSeq::parse(z), SignSeq::parse(w), kind);
    if (q.n != n) throw MalformedInput("record n does not match its sequence lengths");
    return q;
}

std::string format_record(const ResultRecord& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["kind"] = std::string(to_string(r.kind));
    j["X"] = r.x;
    j["Y"] = r.y;
    j["Z"] = r.z;
    j["W"] = r.w;
    j["canonical"] = r.canonical;
    if (r.sum_profile_index || r.residue_profile_index) {
        nlohmann::ordered_json stage;
        if (r.sum_profile_index) stage["sum_profile"] = *r.sum_profile_index;
        if (r.residue_profile_index) stage["residue_profile"] = *r.residue_profile_index;
        j["stage"] = stage;
    }
    if (r.timestamp) j["timestamp"] = *r.timestamp;
    return j.dump();
}

ResultRecord parse_record(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
        ResultRecord r;
        r.n = j.at("n").get<int>();
        r.kind = parse_kind(j.at("kind").get<std::string>());
        r.x = j.at("X").get<std::string>();
        r.y = j.at("Y").get<std::string>();
        r.z = j.at("Z").get<std::string>();
        r.w = j.at("W").get<std::string>();
        r.canonical = j.value("canonical", false);
        if (j.contains("stage")) {
            const auto& st = j["stage"];
            if (st.contains("sum_profile")) r.sum_profile_index = st["sum_profile"].get<long long>();
            if (st.contains("residue_profile")) r.residue_profile_index = st["residue_profile"].get<long long>();
        }
        if (j.contains("timestamp")) r.timestamp = j["timestamp"].get<std::string>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("bad result record: ") + e.what());
    }
}

}  // namespace baseseq
