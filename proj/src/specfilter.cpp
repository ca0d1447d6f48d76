#include "baseseq/specfilter.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace baseseq {

namespace {

int parse_positive(std::string_view text, std::string_view spec) {
    int v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || v <= 0) throw MalformedInput("bad grid spec: " + std::string(spec));
    return v;
}

}  // namespace

ThetaGrid ThetaGrid::pi_over(int d) {
    if (d <= 0) throw PreconditionError("grid divisor must be positive");
    ThetaGrid g;
    g.label = "pi-over-" + std::to_string(d);
    for (int j = 1; j <= 2 * d; ++j) g.points.push_back(j * std::numbers::pi / d);
    return g;
}

ThetaGrid ThetaGrid::uniform(int l) {
    if (l <= 0) throw PreconditionError("grid size must be positive");
    ThetaGrid g;
    g.label = "l=" + std::to_string(l);
    for (int j = 1; j <= l; ++j) g.points.push_back(2.0 * j * std::numbers::pi / l);
    return g;
}

ThetaGrid ThetaGrid::parse(std::string_view spec) {
    constexpr std::string_view kPi = "pi-over-";
    if (spec.starts_with(kPi)) return pi_over(parse_positive(spec.substr(kPi.size()), spec));
    if (spec.starts_with("l=")) return uniform(parse_positive(spec.substr(2), spec));
    throw MalformedInput("bad grid spec: " + std::string(spec));
}

PsdEvaluator::PsdEvaluator(ThetaGrid grid, int max_lag) : grid_(std::move(grid)), max_lag_(std::max(max_lag, 0)) {
    const std::size_t w = max_lag_ + 1;
    cos_.resize(grid_.points.size() * w);
    for (std::size_t t = 0; t < grid_.points.size(); ++t)
        for (std::size_t j = 0; j < w; ++j) cos_[t * w + j] = std::cos(static_cast<double>(j) * grid_.points[t]);
}

void PsdEvaluator::eval(const std::vector<int>& acf, std::vector<double>& out) const {
    if (static_cast<int>(acf.size()) > max_lag_ + 1) throw PreconditionError("sequence longer than the cosine table");
    const std::size_t w = max_lag_ + 1;
    out.assign(grid_.points.size(), 0.0);
    if (acf.empty()) return;
    for (std::size_t t = 0; t < out.size(); ++t) {
        const double* c = &cos_[t * w];
        double f = 0.0;
        for (std::size_t j = 1; j < acf.size(); ++j) f += acf[j] * c[j];
        out[t] = acf[0] + 2.0 * f;
    }
}

std::vector<double> PsdEvaluator::psd(const SignSeq& seq) const {
    std::vector<double> out;
    eval(paf_vector(seq), out);
    return out;
}

bool PsdEvaluator::keep_pair(const SignSeq& x, const SignSeq& y, double bound) const {
    std::vector<double> fx, fy;
    eval(paf_vector(x), fx);
    eval(paf_vector(y), fy);
    for (std::size_t t = 0; t < fx.size(); ++t)
        if (fx[t] + fy[t] > bound + kPsdEpsilon) return false;
    return true;
}

std::vector<double> psd_vector(const SignSeq& seq, const ThetaGrid& g) {
    return PsdEvaluator(g, static_cast<int>(seq.size())).psd(seq);
}

bool pair_filter(const SignSeq& x, const SignSeq& y, double bound, const ThetaGrid& g) {
    return PsdEvaluator(g, static_cast<int>(std::max(x.size(), y.size()))).keep_pair(x, y, bound);
}

namespace {

int longest(const std::vector<SeqPair>& pairs) {
    std::size_t len = 0;
    for (const auto& [x, y] : pairs) len = std::max({len, x.size(), y.size()});
    return static_cast<int>(len);
}

}  // namespace

std::vector<char> pair_filter_batch(const std::vector<SeqPair>& pairs, double bound, const ThetaGrid& g) {
    const PsdEvaluator ev(g, longest(pairs));
    std::vector<char> keep(pairs.size(), 0);
    const auto count = static_cast<long long>(pairs.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) keep[i] = ev.keep_pair(pairs[i].first, pairs[i].second, bound) ? 1 : 0;
    return keep;
}

std::vector<char> pair_filter_batch_serial(const std::vector<SeqPair>& pairs, double bound, const ThetaGrid& g) {
    const PsdEvaluator ev(g, longest(pairs));
    std::vector<char> keep(pairs.size(), 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) keep[i] = ev.keep_pair(pairs[i].first, pairs[i].second, bound) ? 1 : 0;
    return keep;
}

}  // namespace baseseq
