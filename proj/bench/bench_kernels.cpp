// Serial reference vs OpenMP timings for the data-parallel kernels.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include <omp.h>

#include "baseseq/oracle.hpp"
#include "baseseq/searcher.hpp"
#include "baseseq/specfilter.hpp"

using namespace baseseq;

namespace {

double seconds(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %9.4fs  parallel %9.4fs  speedup %5.2fx\n", name, serial, parallel, serial / parallel);
}

SignSeq random_seq(std::mt19937& rng, int len) {
    std::vector<int8_t> e(len);
    for (auto& v : e) v = (rng() & 1U) ? 1 : -1;
    return SignSeq(std::move(e));
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());

    std::size_t a = 0, b = 0;
    const double bs_s = seconds([&] { a = brute_bs_serial(5).size(); });
    const double bs_p = seconds([&] { b = brute_bs(5).size(); });
    row("brute_bs(5)", bs_s, bs_p);
    if (a != b) std::printf("  mismatch: %zu vs %zu\n", a, b);

    const double ns_s = seconds([&] { a = brute_structured_serial(8, Kind::NS).size(); });
    const double ns_p = seconds([&] { b = brute_structured(8, Kind::NS).size(); });
    row("brute_structured(8, NS)", ns_s, ns_p);
    if (a != b) std::printf("  mismatch: %zu vs %zu\n", a, b);

    std::mt19937 rng(12345);
    std::vector<SeqPair> pairs;
    for (int i = 0; i < 20000; ++i) pairs.emplace_back(random_seq(rng, 41), random_seq(rng, 41));
    const ThetaGrid g = ThetaGrid::pi_over(100);
    std::vector<char> ks, kp;
    const double psd_s = seconds([&] { ks = pair_filter_batch_serial(pairs, 166.0, g); });
    const double psd_p = seconds([&] { kp = pair_filter_batch(pairs, 166.0, g); });
    row("pair_filter_batch(20000)", psd_s, psd_p);
    if (ks != kp) std::printf("  mismatch in keep flags\n");

    auto cfg = SearchConfig::defaults(5, Kind::BS);
    cfg.worker_count = 1;
    const double se_s = seconds([&] { a = search(cfg).quads.size(); });
    cfg.worker_count = 0;
    const double se_p = seconds([&] { b = search(cfg).quads.size(); });
    row("search(BS, n=5)", se_s, se_p);
    if (a != b) std::printf("  mismatch: %zu vs %zu\n", a, b);
    return 0;
}
