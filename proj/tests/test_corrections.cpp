#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kirwan/corrections.hpp"
#include "kirwan/expr.hpp"

#include <random>

using namespace kirwan;

namespace {
TruncatedSeries E(const std::string& s, int n) {
    ExprEnv env{n, nullptr, nullptr};
    return eval_series_expr(s, env);
}
} // namespace

TEST_CASE("blowup_correction") {
    // minimal case: one exceptional degree, trivial center
    BlowupStep tiny{"", 1, TruncatedSeries::one(8), {}};
    CHECK(blowup_correction(tiny, 8) == TruncatedSeries::monomial(2, 8));

    // torus blowup of the second center: t^2 over the invariant product
    BlowupStep zeta{"", 24, E("1/(1-t^4)(1-t^6)(1-t^8)(1-t^10)(1-t^12)", 20), {}};
    CHECK(blowup_correction(zeta, 20) ==
          E("t^2/(1-t^2)(1-t^4)(1-t^6)(1-t^8)(1-t^10)(1-t^12)", 20));

    // adding a removal never increases a coefficient
    std::mt19937 rng(3);
    for (int it = 0; it < 20; ++it) {
        BlowupStep s{"", 5 + (int)(rng() % 6), E("1/(1-t^2)^2", 16), {}};
        TruncatedSeries before = blowup_correction(s, 16);
        s.removals.emplace_back(1 + (int)(rng() % 5), E("1/(1-t^2)", 16));
        TruncatedSeries after = blowup_correction(s, 16);
        for (int k = 0; k <= 16; ++k) CHECK(after[k] <= before[k]);
        // additivity in removal terms
        BlowupStep gain_only{"", s.d_R, s.center_series, {}};
        TruncatedSeries removed =
            blowup_correction(gain_only, 16) - s.removals[0].second.shifted(2 * s.removals[0].first);
        CHECK(removed == after);
    }
    BlowupStep bad{"", 0, TruncatedSeries::one(4), {}};
    CHECK_THROWS(blowup_correction(bad, 4));
}

TEST_CASE("rank1_normal_removal") {
    // weight table of the cone-plus-cubic locus: the visible stratum is the
    // multiplicity-six level at shifted codimension 8
    std::vector<std::pair<int, int>> delta = {{6, 1}, {4, 3}, {0, 3}, {-3, 2}, {-2, 6}, {-1, 6}};
    TruncatedSeries base = E("1+t^2", 20);
    TruncatedSeries got = rank1_normal_removal(delta, base, 20);
    CHECK(got == E("(1+t^2)*t^16*Proj(5)/(1-t^2)", 20));

    // pencil-locus table: every stratum is out of the degree-20 window
    std::vector<std::pair<int, int>> alpha = {{-3, 7}, {0, 5}, {3, 4}, {6, 4}};
    CHECK(rank1_normal_removal(alpha, TruncatedSeries::one(20), 20).is_zero());

    // one positive weight against negatives: codimension is the count below
    // plus the exceptional shift
    std::vector<std::pair<int, int>> single = {{2, 3}, {-1, 4}};
    TruncatedSeries s = rank1_normal_removal(single, TruncatedSeries::one(20), 20);
    // positive side: codim 4+1; negative side: codim 3+1
    CHECK(s == E("t^10*Proj(2)/(1-t^2)+t^8*Proj(3)/(1-t^2)", 20));

    CHECK_THROWS(rank1_normal_removal({{-1, 2}, {0, 1}}, base, 10));
    CHECK_THROWS(rank1_normal_removal({{1, 0}}, base, 10));
}

TEST_CASE("ic_blowdown shift rule") {
    // base 1, fiber a projective space, threshold at its top degree: the
    // contribution is the palindromic t^2 + ... + t^{2m}
    for (int m = 1; m <= 4; ++m) {
        BlowdownStep s{"", TruncatedSeries::one(20), projective_series(m, 20), {}, 2 * m, {}};
        TruncatedSeries want(20);
        for (int k = 2; k <= 2 * m; k += 2) want.at(k) = Rat(1);
        CHECK(ic_blowdown(s, 20) == want);
    }
    // palindromic completion of the fiber from its low half
    BlowdownStep half{"", TruncatedSeries::one(12), E("1+2t^2+3t^4", 12), 4, {}};
    CHECK(ic_blowdown(half, 12) == E("t^2+2t^4+3t^6+2t^8+t^10", 12));
    // completion of the result: degrees above the cut come from the mirror
    BlowdownStep comp{"", TruncatedSeries::one(12), E("1+2t^2+t^4+5t^6", 12), {}, {}, 4};
    CHECK(ic_blowdown(comp, 12) == E("t^2+2t^4+t^6", 12));
}

TEST_CASE("pbundle transfer and round trip") {
    PBundleStep p{E("1+t^2+2t^4", 12), 4, 1, false};
    TruncatedSeries known = E("1+3t^2+5t^4+7t^6", 12);
    CHECK(decomp_pbundle_forward(decomp_pbundle_inverse(known, p), p) == known);
    CHECK(decomp_pbundle_inverse(decomp_pbundle_forward(known, p), p) == known);

    // single t-power for a point center
    PBundleStep pt{TruncatedSeries::one(12), 4, 1, false};
    CHECK(pbundle_transfer(pt, 12) == TruncatedSeries::monomial(2, 12));

    // the divisor-contraction shape used in the ledger: (1+t^2)(z-1)
    PBundleStep div{E("1+t^2+2t^4+2t^6", 12), 4, 2, true};
    CHECK(pbundle_transfer(div, 12) == E("(1+t^2)*(t^2+2t^4+2t^6)", 12));
}

TEST_CASE("semismall transfer") {
    SemismallStep p1{TruncatedSeries::one(20), 1, 20};
    CHECK(semismall_transfer(p1, 20) == E("t^18+t^20", 20));
    SemismallStep p2{TruncatedSeries::one(20), 2, 20};
    CHECK(semismall_transfer(p2, 20) == E("t^16+t^18+t^20", 20));
    SemismallStep noop{TruncatedSeries::one(20), 0, 20};
    CHECK(semismall_transfer(noop, 20).is_zero());
    TruncatedSeries known = E("1+2t^2", 20);
    CHECK(decomp_semismall(known, noop) == known);
}
