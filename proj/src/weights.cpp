#include "kirwan/weights.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace kirwan {

int ExponentVector::degree() const {
    int d = 0;
    for (int e : exps) d += e;
    return d;
}

std::string ExponentVector::to_string() const {
    std::string s;
    for (size_t i = 0; i < exps.size(); ++i) {
        if (!exps[i]) continue;
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(i + 1);
        if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
    }
    return s.empty() ? "1" : s;
}

static void enumerate_rec(int pos, int remaining, std::vector<int>& cur,
                          std::vector<ExponentVector>& out) {
    if (pos + 1 == (int)cur.size()) {
        cur[pos] = remaining;
        out.push_back({cur});
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[pos] = e;
        enumerate_rec(pos + 1, remaining - e, cur, out);
    }
}

WeightTable enumerate_monomials(int n_vars, int d) {
    if (n_vars < 1 || d < 1) throw std::invalid_argument("enumerate_monomials: need n_vars >= 1, d >= 1");
    WeightTable t;
    t.n_vars = n_vars;
    t.degree = d;
    std::vector<int> cur(n_vars, 0);
    enumerate_rec(0, d, cur, t.monomials);
    Rat shift(d, n_vars);
    t.weights.reserve(t.monomials.size());
    for (const ExponentVector& m : t.monomials) {
        RatVec w(n_vars);
        for (int i = 0; i < n_vars; ++i) w[i] = Rat(m.exps[i]) - shift;
        t.weights.push_back({std::move(w)});
    }
    return t;
}

std::string WeightTable::to_json() const {
    nlohmann::json j;
    j["n_vars"] = n_vars;
    j["degree"] = degree;
    nlohmann::json mons = nlohmann::json::array();
    for (const ExponentVector& m : monomials) mons.push_back(m.exps);
    j["monomials"] = mons;
    return j.dump();
}

Rat inner(const WeightVector& u, const WeightVector& v) {
    if (u.coords.size() != v.coords.size())
        throw std::invalid_argument("inner: dimension mismatch");
    return dot(u.coords, v.coords);
}

std::pair<WeightVector, std::vector<int>> chamber_sort(const WeightVector& v) {
    std::vector<int> perm(v.coords.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return v.coords[b] < v.coords[a]; });
    WeightVector out;
    out.coords.resize(v.coords.size());
    for (size_t i = 0; i < perm.size(); ++i) out.coords[i] = v.coords[perm[i]];
    return {out, perm};
}

int parabolic_dim(const WeightVector& beta) {
    if (is_zero_vec(beta.coords)) throw std::invalid_argument("parabolic_dim: beta = 0");
    int n = (int)beta.coords.size() - 1;
    int pairs = 0;
    for (size_t i = 0; i < beta.coords.size(); ++i)
        for (size_t j = 0; j < beta.coords.size(); ++j)
            if (i != j && beta.coords[i] >= beta.coords[j]) ++pairs;
    return n + pairs;
}

PairingSupports pairing_supports(const WeightTable& table, const WeightVector& beta) {
    if (is_zero_vec(beta.coords)) throw std::invalid_argument("pairing_supports: beta = 0");
    Rat norm2 = inner(beta, beta);
    PairingSupports out;
    for (size_t i = 0; i < table.weights.size(); ++i) {
        Rat p = inner(table.weights[i], beta);
        int c = p.cmp(norm2);
        if (c == 0) {
            out.z_support.push_back((int)i);
            out.y_support.push_back((int)i);
        } else if (c > 0) {
            out.y_support.push_back((int)i);
        } else {
            ++out.n_beta;
        }
    }
    return out;
}

std::vector<std::vector<int>> support_canonical_form(const std::vector<ExponentVector>& mons) {
    if (mons.empty()) return {};
    int n = (int)mons[0].exps.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> best;
    do {
        std::vector<std::vector<int>> img;
        img.reserve(mons.size());
        for (const ExponentVector& m : mons) {
            std::vector<int> e(n);
            for (int i = 0; i < n; ++i) e[i] = m.exps[perm[i]];
            img.push_back(std::move(e));
        }
        std::sort(img.begin(), img.end());
        if (best.empty() || img < best) best = std::move(img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace kirwan
