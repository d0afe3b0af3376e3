#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kirwan/weights.hpp"

#include <random>

using namespace kirwan;

namespace {
long binom(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

RatVec random_traceless(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> d(-5, 5);
    RatVec v(n);
    Rat sum;
    for (int i = 0; i + 1 < n; ++i) {
        v[i] = Rat(d(rng), 1 + (i % 3));
        sum += v[i];
    }
    v[n - 1] = -sum;
    return v;
}
} // namespace

TEST_CASE("monomial enumeration counts") {
    CHECK(enumerate_monomials(6, 3).size() == 56);
    CHECK(enumerate_monomials(5, 3).size() == 35);
    CHECK(enumerate_monomials(4, 3).size() == 20);
    for (int n = 2; n <= 6; ++n)
        for (int d = 1; d <= 4; ++d)
            CHECK((long)enumerate_monomials(n, d).size() == binom(n - 1 + d, d));
    CHECK_THROWS(enumerate_monomials(0, 3));
}

TEST_CASE("weights are traceless and shift correctly") {
    WeightTable t = enumerate_monomials(2, 1);
    REQUIRE(t.size() == 2);
    CHECK(t.weights[0].coords == RatVec{Rat(1, 2), Rat(-1, 2)});
    CHECK(t.weights[1].coords == RatVec{Rat(-1, 2), Rat(1, 2)});
    for (int n : {3, 5, 6}) {
        WeightTable w = enumerate_monomials(n, 3);
        for (const WeightVector& v : w.weights) {
            Rat s;
            for (const Rat& c : v.coords) s += c;
            CHECK(s.is_zero());
        }
    }
}

TEST_CASE("inner product") {
    WeightVector u{{Rat(1, 2), Rat(-1, 2)}};
    CHECK(inner(u, u) == Rat(1, 2));
    WeightVector a{{Rat(1), Rat(-1), Rat(0)}}, b{{Rat(0), Rat(1), Rat(-1)}};
    CHECK(inner(a, b) == Rat(-1));
    WeightVector bad{{Rat(1)}};
    CHECK_THROWS(inner(a, bad));
}

TEST_CASE("chamber_sort") {
    WeightVector v{{Rat(0), Rat(1), Rat(-1)}};
    auto [dom, perm] = chamber_sort(v);
    CHECK(dom.coords == RatVec{Rat(1), Rat(0), Rat(-1)});
    // already-dominant: identity permutation
    auto [dom2, perm2] = chamber_sort(dom);
    CHECK(dom2.coords == dom.coords);
    CHECK(perm2 == std::vector<int>{0, 1, 2});
    // idempotence and permutation invariance on random vectors
    std::mt19937 rng(11);
    for (int it = 0; it < 50; ++it) {
        int n = 3 + it % 4;
        WeightVector w{random_traceless(rng, n)};
        auto d1 = chamber_sort(w).first;
        CHECK(chamber_sort(d1).first.coords == d1.coords);
        std::vector<int> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        WeightVector wp;
        wp.coords.resize(n);
        for (int i = 0; i < n; ++i) wp.coords[i] = w.coords[sigma[i]];
        CHECK(chamber_sort(wp).first.coords == d1.coords);
    }
}

TEST_CASE("parabolic_dim") {
    // all distinct coordinates: Borel dimension n + n(n+1)/2
    WeightVector b{{Rat(3), Rat(1), Rat(0), Rat(-4)}};
    CHECK(parabolic_dim(b) == 3 + 6);
    // five equal coordinates against one: root count gives 30
    WeightVector beta{{Rat(-1, 2), Rat(1, 10), Rat(1, 10), Rat(1, 10), Rat(1, 10), Rat(1, 10)}};
    CHECK(parabolic_dim(beta) == 30);
    CHECK_THROWS(parabolic_dim(WeightVector{{Rat(0), Rat(0)}}));

    // two equal blocks of sizes (a,b): n + a(a-1) + b(b-1) + ab
    std::mt19937 rng(5);
    for (int it = 0; it < 30; ++it) {
        int a = 1 + it % 4, bsz = 1 + (it / 4) % 4;
        int n1 = a + bsz;
        if (n1 < 2) continue;
        RatVec v(n1);
        for (int i = 0; i < a; ++i) v[i] = Rat(bsz);
        for (int i = a; i < n1; ++i) v[i] = Rat(-a);
        CHECK(parabolic_dim({v}) == (n1 - 1) + a * (a - 1) + bsz * (bsz - 1) + a * bsz);
    }

    // parabolic_dim(b) + parabolic_dim(-b) = dim G + rank, with zero-pairing
    // roots counted on both sides
    for (int it = 0; it < 40; ++it) {
        int n = 3 + it % 4;
        WeightVector w{random_traceless(rng, n)};
        if (is_zero_vec(w.coords)) continue;
        WeightVector neg{scale(Rat(-1), w.coords)};
        int dim_g = n * n - 1;
        int equal_pairs = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && w.coords[i] == w.coords[j]) ++equal_pairs;
        CHECK(parabolic_dim(w) + parabolic_dim(neg) == dim_g + (n - 1) + equal_pairs);
    }
}

TEST_CASE("pairing_supports") {
    // cone face for the six-variable cubics: all 35 monomials without x1
    WeightTable t = enumerate_monomials(6, 3);
    WeightVector beta{{Rat(-1, 2), Rat(1, 10), Rat(1, 10), Rat(1, 10), Rat(1, 10), Rat(1, 10)}};
    PairingSupports ps = pairing_supports(t, beta);
    CHECK(ps.z_support.size() == 35);
    CHECK(ps.y_support.size() == 35);
    CHECK(ps.n_beta == 21);
    for (int i : ps.z_support) CHECK(t.monomials[i].exps[0] == 0);

    // |y| + n = total for random beta
    std::mt19937 rng(17);
    for (int it = 0; it < 25; ++it) {
        int n = 3 + it % 3;
        WeightTable w = enumerate_monomials(n, 3);
        WeightVector b{random_traceless(rng, n)};
        if (is_zero_vec(b.coords)) continue;
        PairingSupports p = pairing_supports(w, b);
        CHECK(p.y_support.size() + (size_t)p.n_beta == w.size());
        for (int i : p.z_support)
            CHECK(inner(w.weights[i], b) == inner(b, b));
    }
    CHECK_THROWS(pairing_supports(t, WeightVector{{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)}}));
}

TEST_CASE("monomial printing and canonical supports") {
    WeightTable t = enumerate_monomials(4, 3);
    bool found = false;
    for (const ExponentVector& m : t.monomials)
        if (m.exps == std::vector<int>{1, 0, 1, 1}) {
            CHECK(m.to_string() == "x1*x3*x4");
            found = true;
        }
    CHECK(found);

    std::vector<ExponentVector> a = {{{2, 1, 0}}, {{0, 0, 3}}};
    std::vector<ExponentVector> b = {{{0, 2, 1}}, {{3, 0, 0}}};   // permuted variables
    CHECK(support_canonical_form(a) == support_canonical_form(b));
    std::vector<ExponentVector> c = {{{2, 1, 0}}, {{0, 1, 2}}};
    CHECK(support_canonical_form(a) != support_canonical_form(c));
}

TEST_CASE("weight table json") {
    WeightTable t = enumerate_monomials(3, 2);
    std::string j = t.to_json();
    CHECK(j.find("\"n_vars\":3") != std::string::npos);
    CHECK(j.find("[2,0,0]") != std::string::npos);
}
