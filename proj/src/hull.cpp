#include "kirwan/hull.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kirwan {

bool HullCertificate::verify(const std::vector<RatVec>& points) const {
    if (points.empty()) return false;
    size_t dim = points[0].size();
    RatVec sum(dim, Rat(0));
    Rat total;
    for (auto& [i, c] : barycentric) {
        if (i < 0 || i >= (int)points.size() || c.is_negative()) return false;
        sum = sum + scale(c, points[i]);
        total += c;
    }
    if (total != Rat(1)) return false;
    if (sum != point) return false;
    Rat n2 = dot(point, point);
    for (const RatVec& p : points)
        if (dot(point, p) < n2) return false;
    return true;
}

// Minimize |sum c_i s_i|^2 subject to sum c_i = 1 over the corral. The KKT
// system is always consistent; free variables (affinely dependent corral)
// are set to zero to pick one solution.
static bool affine_min_norm(const std::vector<RatVec>& pts, const std::vector<int>& corral,
                            std::vector<Rat>& coeffs) {
    size_t m = corral.size();
    size_t n = m + 1;   // c_1..c_m, lambda
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n + 1, Rat(0)));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) A[i][j] = dot(pts[corral[i]], pts[corral[j]]);
        A[i][m] = Rat(1);
    }
    for (size_t j = 0; j < m; ++j) A[m][j] = Rat(1);
    A[m][n] = Rat(1);

    std::vector<size_t> pivot_of_col(n, SIZE_MAX);
    size_t row = 0;
    for (size_t col = 0; col < n && row < n; ++col) {
        size_t piv = SIZE_MAX;
        for (size_t r = row; r < n; ++r)
            if (!A[r][col].is_zero()) { piv = r; break; }
        if (piv == SIZE_MAX) continue;
        std::swap(A[piv], A[row]);
        Rat inv = Rat(1) / A[row][col];
        for (size_t c = col; c <= n; ++c) A[row][c] *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == row || A[r][col].is_zero()) continue;
            Rat f = A[r][col];
            for (size_t c = col; c <= n; ++c) A[r][c] -= f * A[row][c];
        }
        pivot_of_col[col] = row;
        ++row;
    }
    for (size_t r = row; r < n; ++r)
        if (!A[r][n].is_zero()) return false;   // inconsistent (should not happen)
    coeffs.assign(m, Rat(0));
    for (size_t j = 0; j < m; ++j)
        if (pivot_of_col[j] != SIZE_MAX) coeffs[j] = A[pivot_of_col[j]][n];
    return true;
}

static bool wolfe(const std::vector<RatVec>& points, HullCertificate& out) {
    size_t dim = points[0].size();
    size_t best = 0;
    Rat bestn = dot(points[0], points[0]);
    for (size_t i = 1; i < points.size(); ++i) {
        Rat n2 = dot(points[i], points[i]);
        if (n2 < bestn) { bestn = n2; best = i; }
    }
    std::vector<int> corral{(int)best};
    std::vector<Rat> coeffs{Rat(1)};
    RatVec x = points[best];

    size_t guard = 0, guard_max = 2000 + 100 * points.size();
    while (true) {
        if (++guard > guard_max) return false;
        Rat xn = dot(x, x);
        int add = -1;
        Rat addval;
        for (size_t i = 0; i < points.size(); ++i) {
            Rat v = dot(x, points[i]);
            if (v < xn && (add < 0 || v < addval)) {
                add = (int)i;
                addval = v;
            }
        }
        if (add < 0) break;
        if (std::find(corral.begin(), corral.end(), add) != corral.end()) return false;
        corral.push_back(add);
        coeffs.push_back(Rat(0));

        while (true) {
            if (++guard > guard_max) return false;
            std::vector<Rat> y;
            if (!affine_min_norm(points, corral, y)) return false;
            bool feasible = true;
            for (const Rat& c : y)
                if (c.is_negative()) { feasible = false; break; }
            if (feasible) {
                coeffs = y;
                break;
            }
            Rat theta(1);
            bool found = false;
            for (size_t i = 0; i < y.size(); ++i) {
                if (y[i].is_negative()) {
                    Rat t = coeffs[i] / (coeffs[i] - y[i]);
                    if (!found || t < theta) { theta = t; found = true; }
                }
            }
            std::vector<int> next_corral;
            std::vector<Rat> next_coeffs;
            bool dropped = false;
            for (size_t i = 0; i < y.size(); ++i) {
                Rat c = coeffs[i] + theta * (y[i] - coeffs[i]);
                if (c.is_negative()) c = Rat(0);
                if (c.is_zero()) {
                    if (!dropped) { dropped = true; continue; }   // drop one blocker
                    // keep further zero-coefficient members this round
                }
                next_corral.push_back(corral[i]);
                next_coeffs.push_back(c);
            }
            if (!dropped && !next_corral.empty()) {
                next_corral.pop_back();
                next_coeffs.pop_back();
            }
            corral = std::move(next_corral);
            coeffs = std::move(next_coeffs);
            if (corral.empty()) return false;
        }
        x.assign(dim, Rat(0));
        for (size_t i = 0; i < corral.size(); ++i) x = x + scale(coeffs[i], points[corral[i]]);
    }

    out.point = x;
    out.barycentric.clear();
    for (size_t i = 0; i < corral.size(); ++i)
        if (!coeffs[i].is_zero()) out.barycentric[corral[i]] += coeffs[i];
    if (out.barycentric.empty()) out.barycentric[corral[0]] = Rat(1);
    return out.verify(points);
}

HullCertificate nearest_point_hull(const std::vector<RatVec>& points) {
    if (points.empty()) throw std::invalid_argument("nearest_point_hull: empty input");
    size_t dim = points[0].size();
    for (const RatVec& p : points)
        if (p.size() != dim) throw std::invalid_argument("nearest_point_hull: dimension mismatch");
    HullCertificate cert;
    if (wolfe(points, cert)) return cert;
    // certified fallback
    cert = nearest_point_bruteforce(points);
    if (!cert.verify(points)) throw std::runtime_error("nearest_point_hull: verification failed");
    return cert;
}

MembershipResult hull_membership(const std::vector<RatVec>& points, const RatVec& target) {
    std::vector<RatVec> shifted;
    shifted.reserve(points.size());
    for (const RatVec& p : points) shifted.push_back(p - target);
    HullCertificate c = nearest_point_hull(shifted);
    MembershipResult res;
    if (is_zero_vec(c.point)) {
        res.inside = true;
        res.barycentric = c.barycentric;
    } else {
        res.inside = false;
        res.separator = c.point;   // <sep, p - target> >= |sep|^2 > 0
    }
    return res;
}

bool affine_projection_of_origin(const std::vector<RatVec>& points, RatVec& out) {
    if (points.empty()) return false;
    size_t m = points.size();
    std::vector<RatVec> diffs;
    for (size_t i = 1; i < m; ++i) diffs.push_back(points[i] - points[0]);
    size_t k = diffs.size();
    if (k == 0) {
        out = points[0];
        return true;
    }
    std::vector<std::vector<Rat>> A(k, std::vector<Rat>(k + 1));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) A[i][j] = dot(diffs[i], diffs[j]);
        A[i][k] = -dot(points[0], diffs[i]);
    }
    std::vector<Rat> s(k);
    for (size_t col = 0; col < k; ++col) {
        size_t piv = SIZE_MAX;
        for (size_t r = col; r < k; ++r)
            if (!A[r][col].is_zero()) { piv = r; break; }
        if (piv == SIZE_MAX) return false;   // affinely dependent
        std::swap(A[piv], A[col]);
        for (size_t r = 0; r < k; ++r) {
            if (r == col || A[r][col].is_zero()) continue;
            Rat f = A[r][col] / A[col][col];
            for (size_t c = col; c <= k; ++c) A[r][c] -= f * A[col][c];
        }
    }
    for (size_t i = 0; i < k; ++i) s[i] = A[i][k] / A[i][i];
    out = points[0];
    for (size_t i = 0; i < k; ++i) out = out + scale(s[i], diffs[i]);
    return true;
}

HullCertificate nearest_point_bruteforce(const std::vector<RatVec>& points) {
    size_t n = points.size();
    size_t dim = points[0].size();
    size_t maxk = std::min(n, dim + 1);
    HullCertificate best;
    bool have = false;
    Rat bestn;
    std::vector<int> subset;
    auto consider = [&]() {
        std::vector<RatVec> sub;
        for (int i : subset) sub.push_back(points[i]);
        RatVec x;
        if (!affine_projection_of_origin(sub, x)) return;
        std::vector<Rat> coeffs;
        if (!affine_min_norm(points, subset, coeffs)) return;
        for (const Rat& c : coeffs)
            if (c.is_negative()) return;
        Rat n2 = dot(x, x);
        for (const RatVec& p : points)
            if (dot(x, p) < n2) return;
        if (!have || n2 < bestn) {
            have = true;
            bestn = n2;
            best.point = x;
            best.barycentric.clear();
            for (size_t i = 0; i < subset.size(); ++i)
                if (!coeffs[i].is_zero()) best.barycentric[subset[i]] += coeffs[i];
            if (best.barycentric.empty()) best.barycentric[subset[0]] = Rat(1);
        }
    };
    std::function<void(size_t, size_t)> rec = [&](size_t start, size_t k) {
        if (!subset.empty()) consider();
        if (k == maxk) return;
        for (size_t i = start; i < n; ++i) {
            subset.push_back((int)i);
            rec(i + 1, k + 1);
            subset.pop_back();
        }
    };
    rec(0, 0);
    if (!have) throw std::runtime_error("nearest_point_bruteforce: no feasible face");
    return best;
}

} // namespace kirwan
