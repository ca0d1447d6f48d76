#include "baseseq/searcher.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>
#include <sstream>

#include <omp.h>

#include "baseseq/equiv.hpp"

namespace baseseq {

// ---- configuration -------------------------------------------------------------

SearchConfig SearchConfig::defaults(int n, Kind kind) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.kind = kind;
    if (kind == Kind::BS) {
        cfg.start_side = Side::CD;
        cfg.moduli = {3, 6};
        cfg.grids = {"pi-over-100"};
    } else {
        cfg.start_side = Side::AB;
        cfg.moduli = kind == Kind::NS ? std::vector<int>{3, 6} : std::vector<int>{6};
        cfg.grids = {"l=50", "l=1000"};
    }
    return cfg;
}

void SearchConfig::validate() const {
    if (n < 0) throw PreconditionError("n must be nonnegative");
    if (n > 63) throw PreconditionError("searches are limited to n <= 63");
    if (kind == Kind::NNS && n % 2 != 0) throw PreconditionError("near-normal sequences need even n");
    if (kind != Kind::BS && start_side != Side::AB) throw PreconditionError("NS and NNS searches start on A,B");
    if (moduli.empty()) throw PreconditionError("moduli chain is empty");
    if (moduli.front() < 2) throw PreconditionError("moduli must be at least 2");
    for (std::size_t i = 1; i < moduli.size(); ++i)
        if (moduli[i] != 2 * moduli[i - 1]) throw PreconditionError("each modulus must double the previous one");
    if (kind == Kind::NNS)
        for (int m : moduli)
            if (m % 2 != 0) throw PreconditionError("near-normal searches need even moduli");
    if (grids.empty()) throw PreconditionError("at least one theta grid is required");
    for (const auto& g : grids) ThetaGrid::parse(g);
    if (checkpoint_interval == 0) throw PreconditionError("checkpoint interval must be positive");
    if (worker_count < 0) throw PreconditionError("worker count must be nonnegative");
}

std::uint64_t SearchConfig::digest() const {
    std::ostringstream os;
    os << "n=" << n << ";kind=" << to_string(kind) << ";side=" << (start_side == Side::AB ? "ab" : "cd") << ";moduli=";
    for (int m : moduli) os << m << ',';
    os << ";grids=";
    for (const auto& g : grids) os << g << ',';
    os << ";first=" << first_solution_only << ";dedup=" << orbit_dedup;
    os << ";nodes=" << (node_limit ? std::to_string(*node_limit) : "none");
    return fnv1a(os.str());
}

// ---- candidate expansion ---------------------------------------------------------

namespace {

int coupled(int pos, int x, int n, Kind kind) {
    if (pos == n + 1) return -1;
    return (kind == Kind::NS || pos % 2 == 1) ? x : -x;
}

class Expander {
public:
    Expander(const ResidueProfile& prof, int n, Kind kind, Side side, const PairSink& sink, const ExpandOptions& opt)
        : n_(n), kind_(kind), side_(side), sink_(sink), opt_(opt), table_(column_cases(n, side, kind)) {
        const bool ab = side == Side::AB;
        m_ = prof.m;
        const auto& vx = ab ? prof.k : prof.p;
        const auto& vy = ab ? prof.r : prof.q;
        if (m_ < 1 || static_cast<int>(vx.size()) != m_ || static_cast<int>(vy.size()) != m_)
            throw PreconditionError("profile has no class sums for this side");
        len_ = ab ? n + 1 : n;
        derived_ = ab && kind != Kind::BS;
        need_x_ = vx;
        need_y_ = vy;
        left_.assign(m_, 0);
        for (int pos = 1; pos <= len_; ++pos) ++left_[cls(pos)];
        x_.assign(len_, 0);
        y_.assign(len_, 0);
    }

    ExpandStats run() {
        for (int c = 0; c < m_; ++c)
            if (!feasible(c)) return stats_;
        pairs(1);
        return stats_;
    }

private:
    int cls(int pos) const { return (pos - 1) % m_; }

    bool feasible(int c) const { return std::abs(need_x_[c]) <= left_[c] && std::abs(need_y_[c]) <= left_[c]; }

    void place(int pos, int xv, int yv) {
        const int c = cls(pos);
        need_x_[c] -= xv;
        need_y_[c] -= yv;
        --left_[c];
        x_[pos - 1] = static_cast<int8_t>(xv);
        y_[pos - 1] = static_cast<int8_t>(yv);
        ++stats_.nodes;
    }

    void unplace(int pos) {
        const int c = cls(pos);
        need_x_[c] += x_[pos - 1];
        need_y_[c] += y_[pos - 1];
        ++left_[c];
    }

    void pairs(int t) {
        if (stop_) return;
        const int count = len_ / 2;
        if (t > count) {
            middle();
            return;
        }
        const int i = t, j = len_ + 1 - t;
        auto try_col = [&](const Column& col) {
            place(i, col[0], col[2]);
            place(j, col[1], col[3]);
            if (feasible(cls(i)) && feasible(cls(j))) pairs(t + 1);
            unplace(j);
            unplace(i);
        };
        if (t <= static_cast<int>(opt_.prefix.size())) {
            if (table_.admissible(t, opt_.prefix[t - 1])) try_col(opt_.prefix[t - 1]);
            return;
        }
        for (const auto& col : table_.cases[t - 1]) {
            try_col(col);
            if (stop_) return;
        }
    }

    void middle() {
        if (len_ % 2 == 0) {
            leaf();
            return;
        }
        const int mid = (len_ + 1) / 2;
        for (int xv : {1, -1}) {
            for (int yv : {1, -1}) {
                if (derived_ && yv != coupled(mid, xv, n_, kind_)) continue;
                place(mid, xv, yv);
                if (feasible(cls(mid))) leaf();
                unplace(mid);
                if (stop_) return;
            }
        }
    }

    void leaf() {
        for (int c = 0; c < m_; ++c)
            if (need_x_[c] != 0 || need_y_[c] != 0) return;
        SignSeq x(x_), y(y_);
        if (opt_.sums) {
            const auto& s = *opt_.sums;
            const bool ab = side_ == Side::AB;
            if (x.sum() != (ab ? s.a : s.c) || y.sum() != (ab ? s.b : s.d)) return;
            if (x.alt_sum() != (ab ? s.a_star : s.c_star) || y.alt_sum() != (ab ? s.b_star : s.d_star)) return;
        }
        ++stats_.emitted;
        if (!sink_(x, y)) stop_ = true;
    }

    int n_;
    Kind kind_;
    Side side_;
    const PairSink& sink_;
    const ExpandOptions& opt_;
    ColumnCaseTable table_;
    int m_ = 0, len_ = 0;
    bool derived_ = false;
    std::vector<int> need_x_, need_y_, left_;
    std::vector<int8_t> x_, y_;
    ExpandStats stats_;
    bool stop_ = false;
};

}  // namespace

ExpandStats expand_candidates(const ResidueProfile& prof, int n, Kind kind, Side side, const PairSink& sink,
                              const ExpandOptions& opt) {
    if (n < 0) throw PreconditionError("n must be nonnegative");
    if (kind == Kind::NNS && n % 2 != 0) throw PreconditionError("near-normal sequences need even n");
    return Expander(prof, n, kind, side, sink, opt).run();
}

std::vector<SeqPair> expand_all(const ResidueProfile& prof, int n, Kind kind, Side side, const ExpandOptions& opt) {
    std::vector<SeqPair> out;
    expand_candidates(
        prof, n, kind, side,
        [&](const SignSeq& x, const SignSeq& y) {
            out.emplace_back(x, y);
            return true;
        },
        opt);
    return out;
}

// ---- backtracking ----------------------------------------------------------------

namespace {

class Completer {
public:
    Completer(const SignSeq& x, const SignSeq& y, int n, Kind kind, Side fill, CompleteMode mode,
              std::optional<std::uint64_t> limit)
        : fx_(x), fy_(y), n_(n), kind_(kind), fill_(fill), mode_(mode), limit_(limit),
          table_(column_cases(n, fill, kind)) {
        len_ = fill == Side::AB ? n + 1 : n;
        fixed_acf_.assign(n + 1, 0);
        for (int s = 1; s <= n; ++s) fixed_acf_[s] = paf(x, s) + paf(y, s);
        x_.assign(len_, 0);
        y_.assign(len_, 0);
    }

    std::vector<SeqQuad> run(BacktrackStats& stats) {
        for (int s = std::max(len_, 1); s <= n_; ++s)
            if (fixed_acf_[s] != 0) return {};
        pairs(1);
        stats.nodes = nodes_;
        stats.truncated = truncated_;
        if (mode_ == CompleteMode::First || len_ == 0) return found_;
        std::vector<SeqQuad> all;
        for (const auto& q : found_) {
            for (int flip = 0; flip < 4; ++flip) {
                SeqQuad v = q;
                SignSeq& vx = fill_ == Side::AB ? v.a : v.c;
                SignSeq& vy = fill_ == Side::AB ? v.b : v.d;
                if (flip & 1) vx = vx.negated();
                if (flip & 2) vy = vy.negated();
                all.push_back(std::move(v));
            }
        }
        std::sort(all.begin(), all.end(), quad_less);
        all.erase(std::unique(all.begin(), all.end()), all.end());
        return all;
    }

private:
    bool done() const { return stopped_ || truncated_; }

    bool tick() {
        if (limit_ && nodes_ >= *limit_) {
            truncated_ = true;
            return false;
        }
        ++nodes_;
        return true;
    }

    int open_acf(int s) const {
        int t = 0;
        for (int j = 0; j + s < len_; ++j) t += x_[j] * x_[j + s] + y_[j] * y_[j + s];
        return t;
    }

    void pairs(int t) {
        if (done()) return;
        const int count = len_ / 2;
        if (t > count) {
            middle();
            return;
        }
        const int i = t, j = len_ + 1 - t;
        const int shift = len_ - t;  // fully determined once pair t is placed
        for (const auto& col : table_.cases[t - 1]) {
            if (t == 1 && (col[0] != 1 || col[2] != 1)) continue;
            if (!tick()) return;
            x_[i - 1] = col[0];
            x_[j - 1] = col[1];
            y_[i - 1] = col[2];
            y_[j - 1] = col[3];
            if (shift < 1 || shift > n_ || fixed_acf_[shift] + open_acf(shift) == 0) pairs(t + 1);
            if (done()) return;
        }
    }

    void middle() {
        if (len_ % 2 == 0) {
            leaf();
            return;
        }
        const int mid = (len_ + 1) / 2;
        for (int xv : {1, -1}) {
            for (int yv : {1, -1}) {
                if (mid == 1 && (xv != 1 || yv != 1)) continue;
                if (!tick()) return;
                x_[mid - 1] = static_cast<int8_t>(xv);
                y_[mid - 1] = static_cast<int8_t>(yv);
                leaf();
                if (done()) return;
            }
        }
    }

    void leaf() {
        for (int s = 1; s <= n_; ++s)
            if (fixed_acf_[s] + open_acf(s) != 0) return;
        SeqQuad q;
        q.kind = kind_;
        q.n = n_;
        if (fill_ == Side::AB) {
            q.a = SignSeq(x_);
            q.b = SignSeq(y_);
            q.c = fx_;
            q.d = fy_;
        } else {
            q.a = fx_;
            q.b = fy_;
            q.c = SignSeq(x_);
            q.d = SignSeq(y_);
        }
        if (!verify(q).valid) return;
        found_.push_back(std::move(q));
        if (mode_ == CompleteMode::First) stopped_ = true;
    }

    const SignSeq& fx_;
    const SignSeq& fy_;
    int n_;
    Kind kind_;
    Side fill_;
    CompleteMode mode_;
    std::optional<std::uint64_t> limit_;
    ColumnCaseTable table_;
    int len_ = 0;
    std::vector<int> fixed_acf_;
    std::vector<int8_t> x_, y_;
    std::vector<SeqQuad> found_;
    std::uint64_t nodes_ = 0;
    bool stopped_ = false;
    bool truncated_ = false;
};

}  // namespace

std::vector<SeqQuad> backtrack_complete(const SignSeq& x, const SignSeq& y, int n, Kind kind, Side fill,
                                        CompleteMode mode, std::optional<std::uint64_t> node_limit,
                                        BacktrackStats* stats) {
    if (n < 0) throw PreconditionError("n must be nonnegative");
    if (kind == Kind::NNS && n % 2 != 0) throw PreconditionError("near-normal sequences need even n");
    if (kind != Kind::BS && fill != Side::CD) throw PreconditionError("NS and NNS completions fill C,D");
    const std::size_t fixed_len = fill == Side::AB ? n : n + 1;
    if (x.size() != fixed_len || y.size() != fixed_len) throw PreconditionError("fixed pair has the wrong length");
    BacktrackStats local;
    auto out = Completer(x, y, n, kind, fill, mode, node_limit).run(local);
    if (stats) *stats = local;
    return out;
}

// ---- planning --------------------------------------------------------------------

namespace {

ResidueProfile project(const ResidueProfile& p, Side side) {
    if (side == Side::AB) return ResidueProfile{p.m, p.k, p.r, {}, {}};
    return ResidueProfile{p.m, {}, {}, p.p, p.q};
}

std::vector<ResidueProfile> halves_for(const SearchConfig& cfg, const SumProfile& s) {
    const Projection proj = cfg.start_side == Side::AB ? Projection::AbHalf : Projection::CdHalf;
    std::vector<ResidueProfile> level = residue_profiles(cfg.n, cfg.moduli.front(), s, cfg.kind);
    std::set<ResidueProfile> halves;
    if (cfg.moduli.size() == 1) {
        for (const auto& p : level) halves.insert(project(p, cfg.start_side));
        return {halves.begin(), halves.end()};
    }
    for (std::size_t stage = 1; stage < cfg.moduli.size(); ++stage) {
        const bool last = stage + 1 == cfg.moduli.size();
        std::set<ResidueProfile> next;
        for (const auto& p : level)
            for (auto& c : refine_profiles(cfg.n, p, s, cfg.kind, last ? proj : Projection::Full))
                next.insert(std::move(c));
        if (last) {
            halves = std::move(next);
        } else {
            level.assign(next.begin(), next.end());
        }
    }
    return {halves.begin(), halves.end()};
}

int workers(const SearchConfig& cfg) { return cfg.worker_count > 0 ? cfg.worker_count : omp_get_max_threads(); }

}  // namespace

std::vector<SearchTask> plan_tasks(const SearchConfig& cfg) {
    cfg.validate();
    const auto sums = sum_profiles(cfg.n, cfg.kind);
    std::vector<std::vector<ResidueProfile>> halves(sums.size());
    std::exception_ptr error;
    const auto count = static_cast<long long>(sums.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers(cfg))
    for (long long i = 0; i < count; ++i) {
        try {
            halves[i] = halves_for(cfg, sums[i]);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    std::vector<SearchTask> tasks;
    for (std::size_t i = 0; i < sums.size(); ++i)
        for (std::size_t j = 0; j < halves[i].size(); ++j) tasks.push_back({i, j, sums[i], halves[i][j]});
    return tasks;
}

// ---- search ----------------------------------------------------------------------

namespace {

struct TaskOutcome {
    std::vector<SeqQuad> quads;
    std::uint64_t candidates = 0, psd_rejected = 0, nodes = 0, completions = 0;
    bool truncated = false;
};

TaskOutcome run_task(const SearchTask& task, const SearchConfig& cfg, const std::vector<PsdEvaluator>& screens) {
    TaskOutcome o;
    const double bound = 4.0 * cfg.n + 2.0;
    const Side fill = cfg.start_side == Side::AB ? Side::CD : Side::AB;
    const auto mode = cfg.first_solution_only ? CompleteMode::First : CompleteMode::All;
    ExpandOptions opt;
    opt.sums = task.sums;
    expand_candidates(
        task.half, cfg.n, cfg.kind, cfg.start_side,
        [&](const SignSeq& x, const SignSeq& y) {
            ++o.candidates;
            for (const auto& ev : screens) {
                if (!ev.keep_pair(x, y, bound)) {
                    ++o.psd_rejected;
                    return true;
                }
            }
            BacktrackStats bs;
            auto qs = backtrack_complete(x, y, cfg.n, cfg.kind, fill, mode, cfg.node_limit, &bs);
            o.nodes += bs.nodes;
            o.truncated = o.truncated || bs.truncated;
            o.completions += qs.size();
            for (auto& q : qs) o.quads.push_back(std::move(q));
            return !(cfg.first_solution_only && !o.quads.empty());
        },
        opt);
    return o;
}

std::vector<FoundQuad> finalize(const std::vector<FoundQuad>& found, const SearchConfig& cfg) {
    std::map<SeqQuad, FoundQuad, decltype(&quad_less)> by_key(&quad_less);
    // found is in task order, so the first member seen names the producing task
    std::set<SeqQuad, decltype(&quad_less)> covered(&quad_less);
    for (const auto& f : found) {
        if (!cfg.orbit_dedup) {
            by_key.try_emplace(f.quad, f);
            continue;
        }
        if (covered.contains(f.quad)) continue;
        const auto members = orbit(f.quad, cfg.kind);
        covered.insert(members.begin(), members.end());
        by_key.try_emplace(members.front(), FoundQuad{members.front(), f.sum_index, f.residue_index});
    }
    std::vector<FoundQuad> out;
    for (auto& [k, v] : by_key) out.push_back(std::move(v));
    return out;
}

void add_counters(Certificate& c, const TaskOutcome& o) {
    c.candidates += o.candidates;
    c.psd_rejected += o.psd_rejected;
    c.backtrack_nodes += o.nodes;
    c.completions += o.completions;
    if (o.truncated) ++c.truncated_tasks;
}

}  // namespace

SearchResult search(const SearchConfig& cfg) {
    cfg.validate();
    const auto tasks = plan_tasks(cfg);
    std::vector<PsdEvaluator> screens;
    for (const auto& g : cfg.grids) screens.emplace_back(ThetaGrid::parse(g), cfg.n + 1);

    Checkpoint state;
    state.config_digest = cfg.digest();
    state.total_tasks = tasks.size();
    if (!cfg.checkpoint_path.empty()) {
        if (auto cp = checkpoint_load(cfg.checkpoint_path, cfg.kind)) {
            if (cp->config_digest != state.config_digest)
                throw ResumeError("checkpoint was written for a different configuration");
            if (cp->total_tasks != tasks.size() || cp->next_task > tasks.size())
                throw ResumeError("checkpoint does not match the task plan");
            if (result_digest(cp->found) != cp->result_digest) throw ResumeError("checkpoint results are corrupt");
            state = std::move(*cp);
        }
    }

    bool first_found = cfg.first_solution_only && !state.found.empty();
    bool interrupted = false;
    std::size_t ran = 0;
    while (state.next_task < tasks.size() && !first_found) {
        if (cfg.stop_after_tasks && ran >= *cfg.stop_after_tasks) {
            interrupted = true;
            break;
        }
        const std::size_t begin = state.next_task;
        const std::size_t end = std::min(tasks.size(), begin + cfg.checkpoint_interval);
        std::vector<TaskOutcome> outcomes(end - begin);
        std::exception_ptr error;
        const auto count = static_cast<long long>(end - begin);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers(cfg))
        for (long long i = 0; i < count; ++i) {
            try {
                outcomes[i] = run_task(tasks[begin + i], cfg, screens);
            } catch (...) {
#pragma omp critical
                error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);

        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            add_counters(state.counters, outcomes[i]);
            if (first_found) continue;
            const auto& t = tasks[begin + i];
            for (const auto& q : outcomes[i].quads) {
                state.found.push_back({q, t.sum_index, t.residue_index});
                if (cfg.first_solution_only) {
                    first_found = true;
                    break;
                }
            }
        }
        state.next_task = end;
        ran += end - begin;
        state.counters.tasks_done = end;
        state.result_digest = result_digest(state.found);
        if (!cfg.checkpoint_path.empty()) checkpoint_save(cfg.checkpoint_path, state);
    }

    SearchResult res;
    res.quads = finalize(state.found, cfg);
    res.certificate = state.counters;
    res.certificate.tasks_total = tasks.size();
    res.certificate.tasks_done = state.next_task;
    res.certificate.interrupted = interrupted;
    // a first-solution run that found nothing has still explored every task
    res.certificate.exhaustive = !interrupted && state.next_task == tasks.size() &&
                                 state.counters.truncated_tasks == 0 &&
                                 (!cfg.first_solution_only || state.found.empty());
    return res;
}

}  // namespace baseseq
