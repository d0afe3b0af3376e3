#ifndef KIRWAN_CORRECTIONS_HPP
#define KIRWAN_CORRECTIONS_HPP

#include "kirwan/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kirwan {

// One Kirwan blowup: exceptional-divisor gain minus the new unstable strata.
struct BlowupStep {
    std::string name;
    int d_R = 1;                           // factor is t^2 + ... + t^{2 d_R}
    TruncatedSeries center_series;         // P^{N(R)}_t of the center
    std::vector<std::pair<int, TruncatedSeries>> removals;   // (codim, series)
};
TruncatedSeries blowup_correction(const BlowupStep& step, int trunc);

// Unstable-strata removal for a rank-1 torus acting on a projectivized
// normal space with the given (weight, multiplicity) table. Strata sit over
// the exceptional divisor, hence the +1 codimension shift. Each nonzero
// weight level w contributes t^{2 codim(w)} * P(P^{mult-1}) / (1-t^2) with
// codim(w) = 1 + #{weights on the unstable side of w}.
TruncatedSeries rank1_normal_removal(const std::vector<std::pair<int, int>>& weights,
                                     const TruncatedSeries& base_factor, int trunc);

// One IH blow-down. The removal is base * F where F_q = f_{lambda(q)},
// lambda(q) = q-2 for q <= lambda_threshold and q otherwise; f is the fiber
// series, optionally palindromically completed to degree 2*fiber_dim first.
struct BlowdownStep {
    std::string name;
    TruncatedSeries base_series;
    TruncatedSeries fiber_series;
    std::optional<int> fiber_complex_dim;   // palindromic completion when set
    std::optional<int> lambda_threshold;    // none: shift every degree
    std::optional<int> result_complex_dim;  // palindromically complete the result
};
TruncatedSeries ic_blowdown(const BlowdownStep& step, int trunc);

// Decomposition-theorem bookkeeping for a P^m-bundle contraction of a
// divisor to a center Z of real codimension c: the transferred classes are
// H^{k-c+j}(Z) for even j in [2, 2m].
struct PBundleStep {
    TruncatedSeries z_series;
    int codim_real = 2;      // real codimension of the center
    int fiber_dim_m = 1;
    bool drop_h0 = false;    // exclude the H^0(Z) tower
};
TruncatedSeries pbundle_transfer(const PBundleStep& step, int trunc);
TruncatedSeries decomp_pbundle_inverse(const TruncatedSeries& known, const PBundleStep& step);
TruncatedSeries decomp_pbundle_forward(const TruncatedSeries& known, const PBundleStep& step);

// Semismall contraction with P^m fibers over Z inside an n-dimensional
// (complex) ambient: removes z * (t^{n-2m} + t^{n-2m+2} + ... + t^{n}).
struct SemismallStep {
    TruncatedSeries z_series;
    int fiber_dim_m = 1;
    int ambient_dim_n = 20;
};
TruncatedSeries semismall_transfer(const SemismallStep& step, int trunc);
TruncatedSeries decomp_semismall(const TruncatedSeries& known, const SemismallStep& step);

} // namespace kirwan

#endif
