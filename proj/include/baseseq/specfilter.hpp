#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "baseseq/seq.hpp"

namespace baseseq {

inline constexpr double kPsdEpsilon = 1e-9;

struct ThetaGrid {
    std::vector<double> points;
    std::string label;

    /// theta = j*pi/d for j = 1..2d ("pi-over-d").
    static ThetaGrid pi_over(int d);
    /// theta = 2*j*pi/l for j = 1..l ("l=L").
    static ThetaGrid uniform(int l);
    /// Accepts "pi-over-D" or "l=L".
    static ThetaGrid parse(std::string_view spec);
};

/// Cosine table for one grid and a maximum lag; cos(j*theta_t) at [t*(max_lag+1)+j].
class PsdEvaluator {
public:
    PsdEvaluator(ThetaGrid grid, int max_lag);

    const ThetaGrid& grid() const { return grid_; }
    int max_lag() const { return max_lag_; }

    /// f at every grid point from an autocorrelation vector N(0..L-1), L-1 <= max_lag.
    void eval(const std::vector<int>& acf, std::vector<double>& out) const;
    std::vector<double> psd(const SignSeq& seq) const;
    bool keep_pair(const SignSeq& x, const SignSeq& y, double bound) const;

private:
    ThetaGrid grid_;
    int max_lag_;
    std::vector<double> cos_;
};

std::vector<double> psd_vector(const SignSeq& seq, const ThetaGrid& g);

/// Keep iff f_x + f_y <= bound + eps at every grid point.
bool pair_filter(const SignSeq& x, const SignSeq& y, double bound, const ThetaGrid& g);

using SeqPair = std::pair<SignSeq, SignSeq>;

/// Keep flags for a batch; the OpenMP and serial versions agree exactly.
std::vector<char> pair_filter_batch(const std::vector<SeqPair>& pairs, double bound, const ThetaGrid& g);
std::vector<char> pair_filter_batch_serial(const std::vector<SeqPair>& pairs, double bound, const ThetaGrid& g);

}  // namespace baseseq
