#include "kirwan/corrections.hpp"

#include <map>
#include <stdexcept>

namespace kirwan {

TruncatedSeries blowup_correction(const BlowupStep& step, int trunc) {
    if (step.d_R < 1) throw std::invalid_argument("blowup_correction: d_R >= 1 required");
    TruncatedSeries gain =
        finite_geometric(2, 2 * step.d_R, trunc) * step.center_series.truncated(trunc);
    for (const auto& [codim, series] : step.removals) {
        if (codim < 1) throw std::invalid_argument("blowup_correction: removal codim >= 1");
        gain = gain - series.truncated(trunc).shifted(2 * codim);
    }
    return gain;
}

TruncatedSeries rank1_normal_removal(const std::vector<std::pair<int, int>>& weights,
                                     const TruncatedSeries& base_factor, int trunc) {
    bool has_positive = false, has_nonzero = false;
    long total = 0;
    for (auto [w, m] : weights) {
        if (m <= 0) throw std::invalid_argument("rank1_normal_removal: multiplicities positive");
        if (w > 0) has_positive = true;
        if (w != 0) has_nonzero = true;
        total += m;
    }
    if (!has_nonzero || !has_positive)
        throw std::invalid_argument("rank1_normal_removal: needs a positive weight");
    // distinct levels with multiplicities
    std::map<int, long> mult;
    for (auto [w, m] : weights) mult[w] += m;
    TruncatedSeries sum(trunc);
    for (auto [w, m] : mult) {
        if (w == 0) continue;
        long unstable_side = 0;   // weights the 1-PS toward w leaves behind
        for (auto [u, mu] : mult) {
            if (w > 0 && u < w) unstable_side += mu;
            if (w < 0 && u > w) unstable_side += mu;
        }
        long codim = unstable_side + 1;   // strata live over the exceptional divisor
        if (2 * codim > trunc) continue;
        TruncatedSeries piece =
            projective_series((int)m - 1, trunc).geom_div(2).shifted((int)(2 * codim));
        sum = sum + piece;
    }
    return base_factor.truncated(trunc) * sum;
}

TruncatedSeries ic_blowdown(const BlowdownStep& step, int trunc) {
    TruncatedSeries f = step.fiber_series;
    if (step.fiber_complex_dim) {
        DualityResult dr = duality_complete(f.truncated(*step.fiber_complex_dim),
                                            *step.fiber_complex_dim);
        if (!dr.ok) throw std::invalid_argument("ic_blowdown: fiber series not palindromic");
        f = dr.poly;
    }
    TruncatedSeries shifted(trunc);
    for (int q = 0; q <= trunc; ++q) {
        int lam = (!step.lambda_threshold || q <= *step.lambda_threshold) ? q - 2 : q;
        if (lam < 0 || lam > f.truncation()) continue;
        shifted.at(q) = f[lam];
    }
    TruncatedSeries out = step.base_series.truncated(trunc) * shifted;
    if (step.result_complex_dim) {
        int d = *step.result_complex_dim;
        DualityResult dr = duality_complete(out.truncated(d), d);
        out = dr.poly.truncated(trunc);
    }
    return out;
}

TruncatedSeries pbundle_transfer(const PBundleStep& step, int trunc) {
    if (step.fiber_dim_m < 0) throw std::invalid_argument("pbundle_transfer: m >= 0");
    TruncatedSeries z = step.z_series.truncated(trunc);
    if (step.drop_h0) z.at(0) -= Rat(1);
    TruncatedSeries total(trunc);
    for (int j = 2; j <= 2 * step.fiber_dim_m; j += 2)
        total = total + z.shifted(step.codim_real - j);
    return total;
}

TruncatedSeries decomp_pbundle_inverse(const TruncatedSeries& known, const PBundleStep& step) {
    return known - pbundle_transfer(step, known.truncation());
}

TruncatedSeries decomp_pbundle_forward(const TruncatedSeries& known, const PBundleStep& step) {
    return known + pbundle_transfer(step, known.truncation());
}

TruncatedSeries semismall_transfer(const SemismallStep& step, int trunc) {
    if (step.fiber_dim_m == 0) return TruncatedSeries(trunc);
    TruncatedSeries tower(trunc);
    for (int j = 0; j <= step.fiber_dim_m; ++j) {
        int deg = step.ambient_dim_n - 2 * j;
        if (deg >= 0 && deg <= trunc) tower.at(deg) += Rat(1);
    }
    return step.z_series.truncated(trunc) * tower;
}

TruncatedSeries decomp_semismall(const TruncatedSeries& known, const SemismallStep& step) {
    TruncatedSeries r = known - semismall_transfer(step, known.truncation());
    return r;
}

} // namespace kirwan
