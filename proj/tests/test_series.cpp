#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kirwan/series.hpp"

#include <random>

using namespace kirwan;

namespace {

// independent oracle: exact polynomial long division of P by prod(1-t^a)^e,
// coefficient by coefficient
std::vector<Rat> long_division_oracle(std::vector<Rat> num,
                                      const std::vector<std::pair<int, int>>& factors, int n) {
    // build the denominator polynomial
    std::vector<Rat> den{Rat(1)};
    for (auto [a, e] : factors) {
        for (int rep = 0; rep < e; ++rep) {
            std::vector<Rat> next(den.size() + a, Rat(0));
            for (size_t i = 0; i < den.size(); ++i) {
                next[i] += den[i];
                next[i + a] -= den[i];
            }
            den = next;
        }
    }
    num.resize(std::max(num.size(), (size_t)n + 1), Rat(0));
    std::vector<Rat> q(n + 1, Rat(0));
    for (int k = 0; k <= n; ++k) {
        Rat acc = num[k];
        for (int j = 1; j <= k && j < (int)den.size(); ++j) acc -= den[j] * q[k - j];
        q[k] = acc / den[0];
    }
    return q;
}

TruncatedSeries random_series(std::mt19937& rng, int trunc) {
    std::uniform_int_distribution<int> numd(-6, 6), dend(1, 4);
    TruncatedSeries s(trunc);
    for (int k = 0; k <= trunc; ++k) s.at(k) = Rat(numd(rng), dend(rng));
    return s;
}

} // namespace

TEST_CASE("ring operations") {
    int n = 4;
    TruncatedSeries a(n), b(n);
    a.at(0) = Rat(1);
    a.at(2) = Rat(1);
    b = a;
    TruncatedSeries sq = a * b;
    CHECK(sq[0] == Rat(1));
    CHECK(sq[2] == Rat(2));
    CHECK(sq[4] == Rat(1));
    CHECK(sq[1] == Rat(0));

    TruncatedSeries one = TruncatedSeries::one(n);
    CHECK(a * one == a);

    TruncatedSeries other(7);
    CHECK_THROWS(a + other);
}

TEST_CASE("inverse of geometric series multiplies back to one") {
    int n = 10;
    TruncatedSeries geo = TruncatedSeries::one(n).geom_div(2);   // 1/(1-t^2)
    TruncatedSeries back = geo.geom_mul(2);
    CHECK(back == TruncatedSeries::one(n));
    // (1+t^2+t^4+...)*(1-t^2) as a plain product
    TruncatedSeries onemt2(n);
    onemt2.at(0) = Rat(1);
    onemt2.at(2) = Rat(-1);
    CHECK(geo * onemt2 == TruncatedSeries::one(n));
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(20240811);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 6 + iter % 5;
        TruncatedSeries a = random_series(rng, n), b = random_series(rng, n),
                        c = random_series(rng, n);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("expand_rational matches the long-division oracle") {
    std::vector<Rat> num{Rat(1), Rat(0), Rat(1)};   // 1 + t^2
    num.resize(13, Rat(0));
    num[10] = Rat(1);
    num[12] = Rat(1);
    std::vector<std::pair<int, int>> fac{{4, 1}, {6, 1}};
    TruncatedSeries got = expand_rational(num, fac, 12);
    auto oracle = long_division_oracle(num, fac, 12);
    for (int k = 0; k <= 12; ++k) CHECK(got[k] == oracle[k]);
    // frozen values from the oracle
    std::vector<int> frozen{1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 3, 0, 4};
    for (int k = 0; k <= 12; ++k) CHECK(got[k] == Rat(frozen[k]));
}

TEST_CASE("expand_rational random cross-check against multiply-back") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-4, 4), ad(1, 3), ed(1, 2);
    for (int iter = 0; iter < 40; ++iter) {
        int n = 14;
        std::vector<Rat> num(5);
        for (Rat& c : num) c = Rat(coef(rng));
        std::vector<std::pair<int, int>> fac{{2 * ad(rng), ed(rng)}, {2 * ad(rng), 1}};
        TruncatedSeries got = expand_rational(num, fac, n);
        TruncatedSeries back = got;
        for (auto [a, e] : fac) back = back.geom_mul(a, e);
        for (int k = 0; k <= n; ++k) CHECK(back[k] == (k < (int)num.size() ? num[k] : Rat(0)));
    }
}

TEST_CASE("geometric series basics") {
    TruncatedSeries s = expand_rational({Rat(1)}, {{2, 1}}, 6);
    for (int k = 0; k <= 6; ++k) CHECK(s[k] == Rat(k % 2 == 0 ? 1 : 0));
    CHECK_THROWS(expand_rational({Rat(1)}, {{0, 1}}, 4));
}

TEST_CASE("paper identity: pencil stratum combination collapses") {
    // (1+t^2+t^4+t^6)/((1-t^2)(1-t^4)) - (1+t^2) t^2/(1-t^2)^2 = 1/(1-t^2)
    int n = 8;
    std::vector<Rat> num1{Rat(1), Rat(0), Rat(1), Rat(0), Rat(1), Rat(0), Rat(1)};
    TruncatedSeries lhs = expand_rational(num1, {{2, 1}, {4, 1}}, n);
    std::vector<Rat> num2{Rat(0), Rat(0), Rat(1), Rat(0), Rat(1)};   // (1+t^2)t^2
    lhs = lhs - expand_rational(num2, {{2, 2}}, n);
    TruncatedSeries rhs = TruncatedSeries::one(n).geom_div(2);
    CHECK(lhs == rhs);
}

TEST_CASE("finite_geometric") {
    TruncatedSeries s = finite_geometric(2, 2, 6);
    CHECK(s[2] == Rat(1));
    CHECK(s[4] == Rat(0));
    TruncatedSeries t = finite_geometric(2, 48, 20);
    for (int k = 2; k <= 20; k += 2) CHECK(t[k] == Rat(1));
    CHECK(t[0] == Rat(0));
    CHECK_THROWS(finite_geometric(6, 2, 10));

    // cross-expansion: t^lo + ... + t^hi = (t^lo - t^{hi+2})/(1-t^2)
    for (int lo = 2; lo <= 40; lo += 2)
        for (int hi = lo; hi <= 40; hi += 2) {
            std::vector<Rat> num(hi + 3, Rat(0));
            num[lo] = Rat(1);
            num[hi + 2] = Rat(-1);
            CHECK(finite_geometric(lo, hi, 55) == expand_rational(num, {{2, 1}}, 55));
        }
}

TEST_CASE("classifying series") {
    // SL(3): 1/((1-t^4)(1-t^6))
    TruncatedSeries sl3 = classifying_series(GroupDescriptor::sl(3), 10);
    TruncatedSeries want = expand_rational({Rat(1)}, {{4, 1}, {6, 1}}, 10);
    CHECK(sl3 == want);
    std::vector<int> frozen{1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1};
    for (int k = 0; k <= 10; ++k) CHECK(sl3[k] == Rat(frozen[k]));

    CHECK(classifying_series(GroupDescriptor::trivial(), 8) == TruncatedSeries::one(8));

    TruncatedSeries t5 = classifying_series(GroupDescriptor::torus(5), 4);
    CHECK(t5[0] == Rat(1));
    CHECK(t5[2] == Rat(5));
    CHECK(t5[4] == Rat(15));

    // product descriptor = product of factors
    GroupDescriptor a = GroupDescriptor::torus(2), b = GroupDescriptor::sl(4);
    CHECK(classifying_series(a.product(b), 12) ==
          classifying_series(a, 12) * classifying_series(b, 12));

    // SO(2) ~ torus factor, SO(3) ~ 1/(1-t^4)
    GroupDescriptor so;
    so.so2_factors = 1;
    CHECK(classifying_series(so, 6) == classifying_series(GroupDescriptor::torus(1), 6));
    GroupDescriptor so3;
    so3.so3_factors = 1;
    CHECK(classifying_series(so3, 8) == expand_rational({Rat(1)}, {{4, 1}}, 8));
}

TEST_CASE("projective and weighted projective series") {
    TruncatedSeries p1 = projective_series(1, 4);
    CHECK(p1[0] == Rat(1));
    CHECK(p1[2] == Rat(1));
    CHECK(p1[4] == Rat(0));
    CHECK(weighted_projective_series({1, 3, 6, 8}, 10) == projective_series(3, 10));
    CHECK(weighted_projective_series({1, 2, 3}, 10) == projective_series(2, 10));
}

TEST_CASE("invariant torus series") {
    CHECK(invariant_torus_series(1, 8) == TruncatedSeries::one(8).geom_div(2));
    // k=2: count S2-symmetric monomials in two degree-2 generators
    TruncatedSeries s = invariant_torus_series(2, 8);
    // partitions of k into parts of size <= 2
    auto count = [](int k) {
        int c = 0;
        for (int twos = 0; 2 * twos <= k; ++twos)
            if ((k - 2 * twos) >= 0) ++c;
        return c;
    };
    for (int k = 0; k <= 4; ++k) CHECK(s[2 * k] == Rat(count(k)));
    std::vector<int> frozen{1, 1, 2, 2, 3};
    for (int k = 0; k <= 4; ++k) CHECK(s[2 * k] == Rat(frozen[k]));
}

TEST_CASE("duality_complete") {
    TruncatedSeries s(2);
    s.at(0) = Rat(1);
    CHECK(duality_complete(s.truncated(0), 0).poly[0] == Rat(1));

    TruncatedSeries half(3);
    half.at(0) = Rat(1);
    half.at(2) = Rat(2);
    DualityResult r = duality_complete(half, 2);
    CHECK(r.ok);
    CHECK(r.poly[4] == Rat(1));
    CHECK(r.poly[2] == Rat(2));
    // idempotence
    DualityResult again = duality_complete(r.poly, 2);
    CHECK(again.ok);
    CHECK(again.poly == r.poly);
    // inconsistent overlap reported with both values
    TruncatedSeries bad(6);
    bad.at(0) = Rat(1);
    bad.at(2) = Rat(2);
    bad.at(4) = Rat(1);
    bad.at(6) = Rat(9);
    DualityResult br = duality_complete(bad, 2);
    CHECK_FALSE(br.ok);
    CHECK(br.conflict_degree == 6);
    CHECK(br.given == Rat(9));
    CHECK(br.mirrored == Rat(0));
}

TEST_CASE("serialization round-trips") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 20; ++iter) {
        TruncatedSeries s = random_series(rng, 9);
        CHECK(TruncatedSeries::from_json(s.to_json()) == s);
        TruncatedSeries p = TruncatedSeries::parse_pretty(s.to_pretty_string(), 9);
        CHECK(p == s);
    }
    TruncatedSeries thm = TruncatedSeries::parse_pretty("1 + 9t^2 + 26t^4", 4);
    CHECK(thm[2] == Rat(9));
    CHECK(thm[4] == Rat(26));
}

TEST_CASE("bigint arithmetic under stress") {
    // divmod identity on values crafted to hit the normalization and
    // add-back branches of the long division
    std::mt19937_64 rng(404);
    auto random_big = [&](int limbs) {
        std::string s = std::to_string(1 + rng() % 9);
        for (int i = 0; i < limbs * 9; ++i) s.push_back(char('0' + rng() % 10));
        return BigInt(s);
    };
    for (int it = 0; it < 200; ++it) {
        BigInt a = random_big(1 + it % 4);
        BigInt b = random_big(1 + it % 3);
        if (it % 2) a.negate();
        if (it % 3 == 0) b.negate();
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        // truncated division: |r| < |b|, r has the sign of a (or is zero)
        BigInt absr = r.is_negative() ? -r : r;
        BigInt absb = b.is_negative() ? -b : b;
        CHECK(absr < absb);
        if (!r.is_zero()) CHECK(r.is_negative() == a.is_negative());
        CHECK(BigInt(a.to_string()) == a);
    }
    // high-bit divisor limbs exercise the quotient-correction path
    BigInt top("79228162514264337593543950335");    // 2^96 - 1
    BigInt div("18446744073709551615");             // 2^64 - 1
    BigInt q, r;
    BigInt::divmod(top, div, q, r);
    CHECK(q * div + r == top);
    CHECK(q == BigInt("4294967296"));               // 2^32
    CHECK(r == BigInt("4294967295"));               // 2^32 - 1
    CHECK(BigInt::gcd(top, div) == BigInt("4294967295"));

    // gcd fuel for rational reduction
    for (int it = 0; it < 100; ++it) {
        BigInt g = random_big(1);
        BigInt x = random_big(1) * g, y = random_big(1) * g;
        BigInt d = BigInt::gcd(x, y);
        CHECK((x % d).is_zero());
        CHECK((y % d).is_zero());
        CHECK(!(d % g).is_zero() == false);
    }
}
