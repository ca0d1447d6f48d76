#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "baseseq/equiv.hpp"
#include "baseseq/numfilter.hpp"
#include "baseseq/oracle.hpp"
#include "baseseq/searcher.hpp"
#include "baseseq/specfilter.hpp"
#include "baseseq/textio.hpp"

using namespace baseseq;

namespace {

constexpr int kOk = 0;
constexpr int kNoneFound = 1;
constexpr int kUsage = 2;
constexpr int kInvalidQuad = 3;

std::vector<SeqQuad> load_quads(const std::string& file, Kind kind) {
    if (file.empty() || file == "-") return read_quads(std::cin, kind);
    return read_quads_file(file, kind);
}

std::vector<SignSeq> load_sequences(const std::string& file) {
    if (file.empty() || file == "-") return read_sequences(std::cin);
    std::ifstream in(file);
    if (!in) throw MalformedInput("cannot open " + file);
    return read_sequences(in);
}

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw MalformedInput("expected comma-separated integers, got '" + text + "'");
        }
    }
    return out;
}

ResidueProfile parse_residue(const std::string& text) {
    const auto v = parse_int_list(text);
    if (v.empty() || v[0] < 1 || v.size() != 1 + 4 * static_cast<std::size_t>(v[0]))
        throw MalformedInput("residue profile is m followed by 4m integers");
    const int m = v[0];
    ResidueProfile p;
    p.m = m;
    p.k.assign(v.begin() + 1, v.begin() + 1 + m);
    p.r.assign(v.begin() + 1 + m, v.begin() + 1 + 2 * m);
    p.p.assign(v.begin() + 1 + 2 * m, v.begin() + 1 + 3 * m);
    p.q.assign(v.begin() + 1 + 3 * m, v.end());
    return p;
}

// ---- subcommands ------------------------------------------------------------------

int cmd_verify(Kind kind, const std::string& file) {
    const auto quads = load_quads(file, kind);
    if (quads.empty()) throw MalformedInput("no quads in input");
    bool all = true;
    for (std::size_t i = 0; i < quads.size(); ++i) {
        const auto& q = quads[i];
        const auto rep = verify(q);
        std::cout << "quad " << i + 1 << ": n=" << q.n << " kind=" << to_string(q.kind) << " shift0="
                  << total_paf(q)[0] << " sums=" << format_profile(rep.sums) << ' ';
        if (rep.valid) {
            std::cout << "valid\n";
            continue;
        }
        all = false;
        std::cout << "invalid";
        if (rep.first_failing_shift) std::cout << " (nonzero at shift " << *rep.first_failing_shift << ')';
        if (rep.structural_violation) std::cout << " (" << *rep.structural_violation << ')';
        std::cout << '\n';
    }
    return all ? kOk : kInvalidQuad;
}

int cmd_sums(int n, Kind kind, bool all) {
    const auto list = all ? sum_solutions(n, kind) : sum_profiles(n, kind);
    for (const auto& s : list) std::cout << format_profile(s) << '\n';
    return list.empty() ? kNoneFound : kOk;
}

int cmd_profiles(int n, Kind kind, int m, const std::string& sums, const std::string& refine_from,
                 const std::string& projection) {
    const SumProfile s = parse_profile(sums);
    std::vector<ResidueProfile> out;
    if (!refine_from.empty()) {
        Projection proj = Projection::Full;
        if (projection == "ab")
            proj = Projection::AbHalf;
        else if (projection == "cd")
            proj = Projection::CdHalf;
        else if (projection != "full")
            throw MalformedInput("projection must be full, ab or cd");
        out = refine_profiles(n, parse_residue(refine_from), s, kind, proj);
    } else {
        out = residue_profiles(n, m, s, kind);
    }
    for (const auto& p : out) std::cout << format_residue(p) << '\n';
    return out.empty() ? kNoneFound : kOk;
}

int cmd_psd(const std::string& file, const std::string& grid_spec, std::optional<double> bound) {
    const auto seqs = load_sequences(file);
    if (seqs.empty()) throw MalformedInput("no sequences in input");
    const ThetaGrid g = ThetaGrid::parse(grid_spec);
    std::vector<double> total(g.points.size(), 0.0);
    std::cout << std::setprecision(12);
    for (const auto& s : seqs) {
        const auto f = psd_vector(s, g);
        double mx = -INFINITY;
        for (std::size_t t = 0; t < f.size(); ++t) {
            mx = std::max(mx, f[t]);
            total[t] += f[t];
        }
        std::cout << s.str() << " max=" << mx << '\n';
    }
    const double mx = *std::max_element(total.begin(), total.end());
    std::cout << "grid=" << g.label << " total_max=" << mx;
    if (bound) std::cout << " bound=" << *bound << (mx <= *bound + kPsdEpsilon ? " keep" : " reject");
    std::cout << '\n';
    return kOk;
}

struct SearchArgs {
    int n = 0;
    std::string kind;
    bool exhaustive = false, first = false;
    int workers = 1;
    std::string checkpoint, out, moduli, side;
    std::vector<std::string> grids;
    bool no_dedup = false, timestamp = false;
    std::size_t interval = 64;
    std::optional<std::size_t> stop_after;
    std::optional<std::uint64_t> node_limit;
};

int cmd_search(const SearchArgs& a) {
    if (a.exhaustive && a.first) throw MalformedInput("--exhaustive and --first are exclusive");
    const Kind kind = parse_kind(a.kind);
    SearchConfig cfg = SearchConfig::defaults(a.n, kind);
    cfg.first_solution_only = a.first;
    cfg.worker_count = a.workers;
    cfg.checkpoint_path = a.checkpoint;
    cfg.checkpoint_interval = a.interval;
    cfg.orbit_dedup = !a.no_dedup;
    cfg.stop_after_tasks = a.stop_after;
    cfg.node_limit = a.node_limit;
    if (!a.grids.empty()) cfg.grids = a.grids;
    if (!a.moduli.empty()) cfg.moduli = parse_int_list(a.moduli);
    if (a.side == "ab")
        cfg.start_side = Side::AB;
    else if (a.side == "cd")
        cfg.start_side = Side::CD;
    else if (!a.side.empty())
        throw MalformedInput("--side must be ab or cd");

    const auto res = search(cfg);
    const auto& c = res.certificate;
    std::cerr << "tasks " << c.tasks_done << '/' << c.tasks_total << " candidates " << c.candidates << " psd_rejected "
              << c.psd_rejected << " backtrack_nodes " << c.backtrack_nodes << " completions " << c.completions
              << " truncated_tasks " << c.truncated_tasks << " exhaustive " << (c.exhaustive ? "yes" : "no") << '\n';
    if (c.interrupted) {
        std::cerr << "stopped early; resume with the same --checkpoint\n";
        return kOk;
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!a.out.empty()) {
        file.open(a.out, std::ios::trunc);
        if (!file) throw MalformedInput("cannot write " + a.out);
        os = &file;
    }
    const auto stamp = a.timestamp ? std::optional<std::string>(utc_now()) : std::nullopt;
    for (const auto& f : res.quads) {
        auto rec = ResultRecord::from_quad(f.quad, cfg.orbit_dedup);
        rec.sum_profile_index = static_cast<long long>(f.sum_index);
        rec.residue_profile_index = static_cast<long long>(f.residue_index);
        rec.timestamp = stamp;
        *os << format_record(rec) << '\n';
    }
    os->flush();
    return res.quads.empty() && c.exhaustive ? kNoneFound : kOk;
}

int cmd_canon(Kind kind, const std::string& file) {
    const auto quads = load_quads(file, kind);
    for (std::size_t i = 0; i < quads.size(); ++i) {
        const auto rep = verify(quads[i]);
        if (!rep.valid) throw MalformedInput("quad " + std::to_string(i + 1) + " is not valid");
    }
    const auto reps = dedup(quads, kind);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (i) std::cout << '\n';
        write_quad(std::cout, reps[i]);
    }
    return kOk;
}

int cmd_oracle(int n, Kind kind, bool classes) {
    auto quads = kind == Kind::BS ? brute_bs(n) : brute_structured(n, kind);
    if (classes) quads = dedup(quads, kind);
    for (const auto& q : quads) std::cout << format_record(ResultRecord::from_quad(q, classes)) << '\n';
    return quads.empty() ? kNoneFound : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Base, normal and near-normal sequence toolkit"};
    app.require_subcommand(1);

    std::string kind = "bs", file, grid = "pi-over-100", sums, refine_from, projection = "full";
    int n = 0, m = 3;
    bool all = false, classes = false;
    std::optional<double> bound;

    auto* verify_cmd = app.add_subcommand("verify", "Check quads for zero total autocorrelation");
    verify_cmd->add_option("--kind", kind, "bs, ns or nns");
    verify_cmd->add_option("--file", file, "quad file (default stdin)");

    auto* sums_cmd = app.add_subcommand("sums", "List sum profiles, one class representative per line");
    sums_cmd->add_option("--n", n)->required();
    sums_cmd->add_option("--kind", kind);
    sums_cmd->add_flag("--all", all, "every solution, without class reduction");

    auto* prof_cmd = app.add_subcommand("profiles", "List residue-class profiles for one sum profile");
    prof_cmd->add_option("--n", n)->required();
    prof_cmd->add_option("--kind", kind);
    prof_cmd->add_option("--m", m, "modulus");
    prof_cmd->add_option("--sums", sums, "a,b,c,d,a*,b*,c*,d*")->required();
    prof_cmd->add_option("--refine-from", refine_from, "profile at m to refine to 2m");
    prof_cmd->add_option("--projection", projection, "full, ab or cd");

    auto* psd_cmd = app.add_subcommand("psd", "Evaluate f over a theta grid");
    psd_cmd->add_option("--file", file, "sequence file (default stdin)");
    psd_cmd->add_option("--grid", grid, "pi-over-D or l=L");
    psd_cmd->add_option("--bound", bound, "keep/reject threshold for the summed values");

    SearchArgs sa;
    auto* search_cmd = app.add_subcommand("search", "Run the filter-then-backtrack search");
    search_cmd->add_option("--n", sa.n)->required();
    search_cmd->add_option("--kind", sa.kind)->required();
    search_cmd->add_flag("--exhaustive", sa.exhaustive, "all classes (default)");
    search_cmd->add_flag("--first", sa.first, "stop at the first solution");
    search_cmd->add_option("--workers", sa.workers, "worker threads, 0 = all cores");
    search_cmd->add_option("--checkpoint", sa.checkpoint, "checkpoint file; resumes when present");
    search_cmd->add_option("--grid", sa.grids, "theta grid, repeatable; replaces the defaults");
    search_cmd->add_option("--out", sa.out, "result file (default stdout)");
    search_cmd->add_option("--moduli", sa.moduli, "comma-separated moduli chain");
    search_cmd->add_option("--side", sa.side, "starting side for bs: ab or cd");
    search_cmd->add_option("--checkpoint-interval", sa.interval, "tasks between checkpoints");
    search_cmd->add_option("--stop-after", sa.stop_after, "stop after this many tasks (resume later)");
    search_cmd->add_option("--node-limit", sa.node_limit, "backtracking node budget per candidate");
    search_cmd->add_flag("--no-dedup", sa.no_dedup, "report raw completions instead of class representatives");
    search_cmd->add_flag("--timestamp", sa.timestamp, "add a timestamp to each record");

    auto* canon_cmd = app.add_subcommand("canon", "Print one canonical representative per class");
    canon_cmd->add_option("--kind", kind);
    canon_cmd->add_option("--file", file, "quad file (default stdin)");

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force enumeration at small n");
    oracle_cmd->add_option("--n", n)->required();
    oracle_cmd->add_option("--kind", kind);
    oracle_cmd->add_flag("--classes", classes, "one canonical representative per class");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*verify_cmd) return cmd_verify(parse_kind(kind), file);
        if (*sums_cmd) return cmd_sums(n, parse_kind(kind), all);
        if (*prof_cmd) return cmd_profiles(n, parse_kind(kind), m, sums, refine_from, projection);
        if (*psd_cmd) return cmd_psd(file, grid, bound);
        if (*search_cmd) return cmd_search(sa);
        if (*canon_cmd) return cmd_canon(parse_kind(kind), file);
        if (*oracle_cmd) return cmd_oracle(n, parse_kind(kind), classes);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
