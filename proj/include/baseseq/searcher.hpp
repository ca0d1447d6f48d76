#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "baseseq/numfilter.hpp"
#include "baseseq/seq.hpp"
#include "baseseq/specfilter.hpp"

namespace baseseq {

struct ResumeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchConfig {
    int n = 0;
    Kind kind = Kind::BS;
    Side start_side = Side::CD;
    std::vector<int> moduli;
    std::vector<std::string> grids;
    bool first_solution_only = false;
    int worker_count = 1;  // 0 = OpenMP default
    bool orbit_dedup = true;
    std::size_t checkpoint_interval = 64;  // tasks per chunk
    std::string checkpoint_path;           // empty = no checkpointing
    std::optional<std::size_t> stop_after_tasks;
    std::optional<std::uint64_t> node_limit;  // per backtracking call

    /// Kind-dependent defaults: BS starts on C,D with moduli 3,6 and the
    /// pi/100 grid; NS and NNS start on A,B with l=50 then l=1000, moduli 3,6
    /// for NS and 6 for NNS.
    static SearchConfig defaults(int n, Kind kind);

    /// Throws PreconditionError on an unusable combination.
    void validate() const;

    /// Identity of everything that changes the result set.
    std::uint64_t digest() const;
};

struct ExpandOptions {
    /// Columns forced onto the outermost pairs, in order from pair 1.
    std::vector<Column> prefix;
    /// When set, emitted pairs must also match these sums and alternated sums.
    std::optional<SumProfile> sums;
};

struct ExpandStats {
    std::uint64_t nodes = 0;
    std::uint64_t emitted = 0;
};

/// Return false to stop the stream.
using PairSink = std::function<bool(const SignSeq&, const SignSeq&)>;

/// Streams every pair on `side` with the class sums of prof (k,r for A,B;
/// p,q for C,D) whose sign columns are admissible. For NS/NNS on A,B the
/// second sequence is derived from the first. Pairs are filled outside-in and
/// emitted in a fixed order without repeats.
ExpandStats expand_candidates(const ResidueProfile& prof, int n, Kind kind, Side side, const PairSink& sink,
                              const ExpandOptions& opt = {});

std::vector<SeqPair> expand_all(const ResidueProfile& prof, int n, Kind kind, Side side,
                                const ExpandOptions& opt = {});

enum class CompleteMode { First, All };

struct BacktrackStats {
    std::uint64_t nodes = 0;
    bool truncated = false;  // node limit reached before the tree was exhausted
};

/// Completes a fixed pair into valid quads by filling `fill` outside-in.
/// The first element of both open sequences is fixed to +1 while searching;
/// in All mode the negated variants are added back, so the list is exhaustive
/// and sorted.
std::vector<SeqQuad> backtrack_complete(const SignSeq& x, const SignSeq& y, int n, Kind kind, Side fill,
                                        CompleteMode mode, std::optional<std::uint64_t> node_limit = std::nullopt,
                                        BacktrackStats* stats = nullptr);

struct SearchTask {
    std::size_t sum_index = 0;
    std::size_t residue_index = 0;
    SumProfile sums;
    ResidueProfile half;  // the start side's half at the last modulus
};

/// Sum profiles, residue profiles and the refinement chain, flattened into
/// independent tasks in a fixed order.
std::vector<SearchTask> plan_tasks(const SearchConfig& cfg);

struct Certificate {
    bool exhaustive = false;
    bool interrupted = false;
    std::size_t tasks_total = 0;
    std::size_t tasks_done = 0;
    std::uint64_t candidates = 0;
    std::uint64_t psd_rejected = 0;
    std::uint64_t backtrack_nodes = 0;
    std::uint64_t completions = 0;
    std::uint64_t truncated_tasks = 0;
};

struct FoundQuad {
    SeqQuad quad;
    std::size_t sum_index = 0;
    std::size_t residue_index = 0;
};

struct SearchResult {
    std::vector<FoundQuad> quads;
    Certificate certificate;
};

SearchResult search(const SearchConfig& cfg);

struct Checkpoint {
    std::uint64_t config_digest = 0;
    std::size_t next_task = 0;
    std::size_t total_tasks = 0;
    std::vector<FoundQuad> found;
    Certificate counters;
    std::uint64_t result_digest = 0;
};

/// 64-bit FNV-1a, used for config and result digests.
std::uint64_t fnv1a(std::string_view text);

std::uint64_t result_digest(const std::vector<FoundQuad>& found);

/// Atomic write (temporary file, then rename).
void checkpoint_save(const std::string& path, const Checkpoint& cp);

/// nullopt when the file is absent or empty; ResumeError when it is corrupt.
std::optional<Checkpoint> checkpoint_load(const std::string& path, Kind kind);

}  // namespace baseseq
