#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "baseseq/equiv.hpp"
#include "baseseq/numfilter.hpp"
#include "baseseq/oracle.hpp"
#include "baseseq/searcher.hpp"
#include "baseseq/specfilter.hpp"
#include "baseseq/textio.hpp"

using namespace baseseq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string data_path(const std::string& name) { return std::string(BASESEQ_DATA_DIR) + "/" + name; }

const char* const kPublished[] = {"bs42_41.txt", "bs43_42.txt", "bs44_43.txt"};

SeqQuad load(const std::string& name) { return read_quads_file(data_path(name), Kind::BS).at(0); }

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << detail << std::endl;
    if (!ok) ++failures;
}

struct ClassRow {
    int n;
    SumProfile s;
};

// Rows "n | a,b,c,d | a*,b*,c*,d*".
std::vector<ClassRow> read_class_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<ClassRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto bar1 = line.find('|'), bar2 = line.rfind('|');
        const int n = std::stoi(line.substr(0, bar1));
        const auto s = parse_profile(line.substr(bar1 + 1, bar2 - bar1 - 1) + "," + line.substr(bar2 + 1));
        rows.push_back({n, s});
    }
    return rows;
}

std::set<SumProfile> normalized(const std::vector<SumProfile>& v, int n, Kind k) {
    std::set<SumProfile> out;
    for (const auto& s : v) out.insert(sum_canonical(s, n, k));
    return out;
}

template <class T>
bool contains(const std::vector<T>& v, const T& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

std::vector<SeqQuad> oracle_quads(int n, Kind k) { return k == Kind::BS ? brute_bs(n) : brute_structured(n, k); }

struct Case {
    int n;
    Kind kind;
};

std::vector<Case> equivalence_cases() {
    std::vector<Case> c;
    for (int n = 1; n <= 5; ++n) c.push_back({n, Kind::BS});
    for (int n = 1; n <= 8; ++n) c.push_back({n, Kind::NS});
    for (int n = 2; n <= 8; n += 2) c.push_back({n, Kind::NNS});
    return c;
}

std::string case_name(const Case& c) { return std::string(to_string(c.kind)) + "(" + std::to_string(c.n) + ")"; }

std::string records_text(const SearchResult& r, bool canonical) {
    std::ostringstream os;
    for (const auto& f : r.quads) {
        auto rec = ResultRecord::from_quad(f.quad, canonical);
        rec.sum_profile_index = static_cast<long long>(f.sum_index);
        rec.residue_profile_index = static_cast<long long>(f.residue_index);
        os << format_record(rec) << '\n';
    }
    return os.str();
}

std::string write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---------------------------------------------------------------------------

void criterion1() {
    const auto t0 = Clock::now();
    const int expected_shift0[] = {166, 170, 174};
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 3; ++i) {
        const auto q = load(kPublished[i]);
        const auto rep = verify(q);
        const int shift0 = paf(q.a, 0) + paf(q.b, 0) + paf(q.c, 0) + paf(q.d, 0);
        ok = ok && rep.valid && shift0 == expected_shift0[i];
        detail += "BS(" + std::to_string(q.n + 1) + "," + std::to_string(q.n) + ") shift0=" + std::to_string(shift0) +
                  (rep.valid ? " valid; " : " invalid; ");
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    report(1, ok, detail + "time=" + std::to_string(dt) + "s");
}

void criterion2() {
    std::mt19937 rng(20240521);
    std::uniform_real_distribution<double> theta(0.0, 2 * std::numbers::pi);
    double worst = 0;
    for (const char* f : kPublished) {
        const auto q = load(f);
        for (int i = 0; i < 1000; ++i) {
            const double t = theta(rng);
            const double sum = hall_f(q.a, t) + hall_f(q.b, t) + hall_f(q.c, t) + hall_f(q.d, t);
            worst = std::max(worst, std::abs(sum - (4 * q.n + 2)));
        }
    }
    report(2, worst <= 1e-9, "max deviation=" + std::to_string(worst));
}

void criterion3() {
    const auto t0 = Clock::now();
    const auto rows = read_class_rows(data_path("nns_sum_classes.txt"));
    bool ok = true;
    std::string detail;
    for (int n : {42, 44}) {
        std::vector<SumProfile> table;
        for (const auto& r : rows)
            if (r.n == n) table.push_back(r.s);
        const auto got = sum_profiles(n, Kind::NNS);
        const auto want = normalized(table, n, Kind::NNS);
        const bool match = std::set<SumProfile>(got.begin(), got.end()) == want && got.size() == table.size();
        ok = ok && match;
        detail += "n=" + std::to_string(n) + " rows=" + std::to_string(table.size()) +
                  " computed=" + std::to_string(got.size()) + (match ? " match; " : " MISMATCH; ");
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 10.0;
    report(3, ok, detail + "time=" + std::to_string(dt) + "s");
}

void criterion4() {
    const auto rows = read_class_rows(data_path("ns_sum_classes.txt"));
    // Three published NS(43) rows violate the sum laws; each differs from an
    // admissible class by sign or order of two entries.
    const std::vector<std::pair<SumProfile, SumProfile>> corrections = {
        {SumProfile{2, 0, -7, -11, -2, 0, -7, -11}, SumProfile{2, 0, -7, -11, -2, 0, 7, 11}},
        {SumProfile{2, 0, -7, -11, -2, 0, -11, -7}, SumProfile{2, 0, -7, -11, -2, 0, 11, 7}},
        {SumProfile{-6, -8, 5, -7, -10, -8, -1, -3}, SumProfile{-6, -8, 5, -7, -10, -8, -1, 3}},
    };
    bool ok = true;
    std::string detail;
    for (int n = 41; n <= 45; ++n) {
        std::vector<SumProfile> table;
        int corrected = 0;
        for (const auto& r : rows) {
            if (r.n != n) continue;
            SumProfile s = r.s;
            for (const auto& [bad, good] : corrections) {
                if (n == 43 && s == bad) {
                    if (sum_profile_ok(bad, n, Kind::NS)) ok = false;
                    s = good;
                    ++corrected;
                }
            }
            table.push_back(s);
        }
        const auto got = sum_profiles(n, Kind::NS);
        const auto want = normalized(table, n, Kind::NS);
        const bool match = std::set<SumProfile>(got.begin(), got.end()) == want && got.size() == table.size();
        ok = ok && match;
        if (n == 43) ok = ok && corrected == 3;
        detail += "n=" + std::to_string(n) + ":" + std::to_string(got.size()) + "/" + std::to_string(table.size()) +
                  (match ? "" : " MISMATCH") + (corrected ? " (" + std::to_string(corrected) + " rows corrected)" : "") +
                  "; ";
    }
    report(4, ok, detail);
}

void criterion5() {
    bool ok = true;
    std::string detail;
    for (int n : {6, 14, 22, 30, 38, 46}) {
        bool here = ns_parity_obstruction(n) && sum_profiles(n, Kind::NS).empty();
        if (n <= 8) here = here && brute_structured(n, Kind::NS).empty();
        ok = ok && here;
        detail += std::to_string(n) + (here ? " " : "(FAIL) ");
    }
    report(5, ok, "n= " + detail);
}

void criterion6() {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (const auto& c : equivalence_cases()) {
        auto cfg = SearchConfig::defaults(c.n, c.kind);
        cfg.worker_count = 0;
        const auto r = search(cfg);
        std::vector<SeqQuad> got;
        for (const auto& f : r.quads) got.push_back(f.quad);
        const auto want = dedup(oracle_quads(c.n, c.kind), c.kind);
        const bool match = got == want && r.certificate.exhaustive;
        ok = ok && match;
        detail += case_name(c) + "=" + std::to_string(got.size()) + (match ? " " : "(MISMATCH) ");
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 600.0;
    report(6, ok, detail + "time=" + std::to_string(dt) + "s");
}

void criterion7() {
    bool ok = true;
    std::string detail;
    std::vector<Case> cases;
    for (int n : {1, 2, 3, 4, 5, 7, 8}) cases.push_back({n, Kind::NS});
    for (int n : {2, 4, 6, 8}) cases.push_back({n, Kind::NNS});
    for (const auto& c : cases) {
        auto cfg = SearchConfig::defaults(c.n, c.kind);
        cfg.first_solution_only = true;
        const auto r = search(cfg);
        const bool found = !r.quads.empty() && verify(r.quads.front().quad).valid;
        ok = ok && found;
        detail += case_name(c) + (found ? " found; " : " NONE; ");
    }
    auto six = SearchConfig::defaults(6, Kind::NS);
    const auto r6 = search(six);
    const bool none6 = r6.quads.empty() && r6.certificate.exhaustive;
    ok = ok && none6;
    detail += std::string("NS(6) ") + (none6 ? "none" : "UNEXPECTED");
    report(7, ok, detail);
}

// Every filter stage must accept every oracle quad.
void criterion8() {
    std::vector<Case> cases;
    for (int n = 1; n <= 5; ++n) cases.push_back({n, Kind::BS});
    for (int n = 1; n <= 5; ++n) cases.push_back({n, Kind::NS});
    for (int n : {2, 4}) cases.push_back({n, Kind::NNS});
    std::size_t checked = 0, rejected = 0;
    for (const auto& c : cases) {
        const auto reps = sum_profiles(c.n, c.kind);
        const auto sols = sum_solutions(c.n, c.kind);
        const auto ab = column_cases(c.n, Side::AB, c.kind);
        const auto cd = column_cases(c.n, Side::CD, c.kind);
        const auto cfg = SearchConfig::defaults(c.n, c.kind);
        std::vector<ThetaGrid> grids;
        for (const auto& g : cfg.grids) grids.push_back(ThetaGrid::parse(g));
        grids.push_back(ThetaGrid::pi_over(100));
        grids.push_back(ThetaGrid::uniform(1000));
        const double bound = 4.0 * c.n + 2;
        std::map<std::pair<SumProfile, int>, std::vector<ResidueProfile>> residue_cache;
        for (const auto& q : oracle_quads(c.n, c.kind)) {
            ++checked;
            bool pass = true;
            const auto s = row_sums(q);
            pass = pass && sum_profile_ok(s, c.n, c.kind) && contains(sols, s) &&
                   contains(reps, sum_canonical(s, c.n, c.kind));
            for (int i = 1; i <= static_cast<int>(ab.pairs()); ++i) {
                const int j = c.n + 2 - i;
                pass = pass && ab.admissible(i, Column{static_cast<int8_t>(q.a[i - 1]), static_cast<int8_t>(q.a[j - 1]),
                                                       static_cast<int8_t>(q.b[i - 1]), static_cast<int8_t>(q.b[j - 1])});
            }
            for (int i = 1; i <= static_cast<int>(cd.pairs()); ++i) {
                const int j = c.n + 1 - i;
                pass = pass && cd.admissible(i, Column{static_cast<int8_t>(q.c[i - 1]), static_cast<int8_t>(q.c[j - 1]),
                                                       static_cast<int8_t>(q.d[i - 1]), static_cast<int8_t>(q.d[j - 1])});
            }
            for (int m : {3, 6}) {
                if (c.kind == Kind::NNS && m % 2) continue;
                const auto own = residue_of(q, m);
                auto it = residue_cache.find({s, m});
                if (it == residue_cache.end()) it = residue_cache.emplace(std::make_pair(s, m), residue_profiles(c.n, m, s, c.kind)).first;
                pass = pass && residue_profile_ok(c.n, own, s, c.kind) && contains(it->second, own);
            }
            if (c.kind != Kind::NNS) {
                const auto p3 = residue_of(q, 3);
                pass = pass && contains(refine_profiles(c.n, p3, s, c.kind), residue_of(q, 6));
            }
            for (const auto& g : grids)
                pass = pass && pair_filter(q.a, q.b, bound, g) && pair_filter(q.c, q.d, bound, g);
            if (!pass) ++rejected;
        }
    }
    report(8, rejected == 0,
           "oracle quads checked=" + std::to_string(checked) + " false rejections=" + std::to_string(rejected));
}

// The candidate stream is sharded by the outermost C,D columns; the shard that
// holds the published pair is streamed in full and its size is the prefix bound.
void criterion9() {
    const auto t0 = Clock::now();
    const int n = 41;
    const int shard_columns = 8;
    const std::uint64_t prefix_bound = 1'000'000;
    const auto q = load("bs42_41.txt");
    const auto rep = sum_canonical(row_sums(q), n, Kind::BS);
    const auto profiles = sum_profiles(n, Kind::BS);
    const bool rep_listed = contains(profiles, rep);
    const auto path = sum_transform_path(row_sums(q), rep, n, Kind::BS);
    SeqQuad t = q;
    if (path)
        for (const auto& tr : *path) t = baseseq::apply(t, tr);

    const auto cfg = SearchConfig::defaults(n, Kind::BS);
    const auto r3 = residue_profiles(n, cfg.moduli[0], rep, Kind::BS);
    const auto own3 = residue_of(t, cfg.moduli[0]);
    const bool in3 = contains(r3, own3);
    const auto own6 = residue_of(t, cfg.moduli[1]);
    const ResidueProfile half{cfg.moduli[1], {}, {}, own6.p, own6.q};
    const bool in6 = in3 && contains(refine_profiles(n, own3, rep, Kind::BS, Projection::CdHalf), half);

    ExpandOptions opt;
    opt.sums = rep;
    for (int i = 1; i <= shard_columns; ++i)
        opt.prefix.push_back(Column{static_cast<int8_t>(t.c[i - 1]), static_cast<int8_t>(t.c[n - i]),
                                    static_cast<int8_t>(t.d[i - 1]), static_cast<int8_t>(t.d[n - i])});
    PsdEvaluator ev(ThetaGrid::parse(cfg.grids.at(0)), n + 1);
    std::uint64_t streamed = 0, kept = 0, position = 0;
    bool hit = false;
    expand_candidates(half, n, Kind::BS, Side::CD, [&](const SignSeq& x, const SignSeq& y) {
        if (++streamed > prefix_bound) return false;
        if (ev.keep_pair(x, y, 4 * n + 2)) {
            ++kept;
            if (x == t.c && y == t.d) {
                hit = true;
                position = kept;
            }
        }
        return true;
    }, opt);
    const bool ok = rep_listed && path && verify(t).valid && in3 && in6 && kept > 0 && hit && streamed <= prefix_bound;
    report(9, ok,
           "sum classes=" + std::to_string(profiles.size()) + " m=3 profiles=" + std::to_string(r3.size()) +
               " shard candidates=" + std::to_string(streamed) + " kept=" + std::to_string(kept) +
               " published pair at kept position " + std::to_string(position) + " time=" +
               std::to_string(seconds_since(t0)) + "s");

    // Stretch goal: complete the published C,D pair to a full quad.
    std::uint64_t budget = 500'000'000;
    if (const char* env = std::getenv("BASESEQ_STRETCH_NODES")) budget = std::strtoull(env, nullptr, 10);
    if (budget == 0) {
        std::cout << "criterion 9 stretch: skipped" << std::endl;
        return;
    }
    const auto t1 = Clock::now();
    BacktrackStats st;
    const auto done = backtrack_complete(t.c, t.d, n, Kind::BS, Side::AB, CompleteMode::First, budget, &st);
    const bool found = !done.empty() && verify(done.front()).valid;
    std::cout << "criterion 9 stretch (informational): " << (found ? "completed" : "not completed")
              << " nodes=" << st.nodes << (st.truncated ? " (budget reached)" : "")
              << " time=" << seconds_since(t1) << "s" << std::endl;
}

void criterion10() {
    const auto dir = std::filesystem::temp_directory_path() / "baseseq_acceptance";
    std::filesystem::create_directories(dir);
    bool ok = true;
    std::string bad;
    std::size_t compared = 0;
    for (const auto& c : equivalence_cases()) {
        const auto base = SearchConfig::defaults(c.n, c.kind);
        const std::string stem = (dir / (std::string(to_string(c.kind)) + std::to_string(c.n))).string();

        auto one = base;
        one.worker_count = 1;
        const auto f1 = write_file(stem + "_w1.jsonl", records_text(search(one), true));

        auto four = base;
        four.worker_count = 4;
        const auto f4 = write_file(stem + "_w4.jsonl", records_text(search(four), true));

        auto resumed = base;
        resumed.worker_count = 4;
        resumed.checkpoint_interval = 1;
        resumed.checkpoint_path = stem + ".ckpt";
        std::filesystem::remove(resumed.checkpoint_path);
        const std::size_t total = plan_tasks(base).size();
        resumed.stop_after_tasks = total / 2;
        const auto first = search(resumed);
        const bool interrupted = total < 2 || first.certificate.interrupted;
        resumed.stop_after_tasks.reset();
        const auto second = search(resumed);
        const auto fr = write_file(stem + "_resumed.jsonl", records_text(second, true));
        std::filesystem::remove(resumed.checkpoint_path);

        const bool same = interrupted && f1 == f4 && f1 == fr && second.certificate.exhaustive;
        ++compared;
        if (!same) {
            ok = false;
            bad += case_name(c) + " ";
        }
    }
    std::filesystem::remove_all(dir);
    report(10, ok, "cases=" + std::to_string(compared) + (ok ? " identical across workers 1/4 and resume" : " differ: " + bad));
}

}  // namespace

int main() {
    const std::vector<void (*)()> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                              criterion6, criterion7, criterion8, criterion9, criterion10};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
        }
    }
    std::cout << (failures ? "acceptance: FAIL (" + std::to_string(failures) + ")" : std::string("acceptance: PASS"))
              << std::endl;
    return failures ? 1 : 0;
}
