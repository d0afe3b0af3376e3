#ifndef KIRWAN_SERIES_HPP
#define KIRWAN_SERIES_HPP

#include "kirwan/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kirwan {

// Power series in t truncated at a fixed order N: coefficients of t^0..t^N.
class TruncatedSeries {
public:
    TruncatedSeries() : coeffs_(1) {}
    explicit TruncatedSeries(int trunc) : coeffs_(trunc + 1) {}
    TruncatedSeries(int trunc, std::vector<Rat> coeffs);

    static TruncatedSeries one(int trunc);
    static TruncatedSeries monomial(int degree, int trunc, const Rat& c = Rat(1));

    int truncation() const { return (int)coeffs_.size() - 1; }
    const Rat& operator[](int k) const { return coeffs_[k]; }
    Rat& at(int k) { return coeffs_[k]; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    // Re-truncate (extending pads with zeros; shrinking drops tail).
    TruncatedSeries truncated(int trunc) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries operator-() const;
    TruncatedSeries operator*(const Rat& c) const;

    // Multiply by t^k (coefficients above N fall off).
    TruncatedSeries shifted(int k) const;

    // Divide by (1 - t^a)^e, a >= 1: the geometric-series recurrence.
    TruncatedSeries geom_div(int a, int e = 1) const;
    // Multiply by (1 - t^a)^e.
    TruncatedSeries geom_mul(int a, int e = 1) const;

    bool operator==(const TruncatedSeries& b) const { return coeffs_ == b.coeffs_; }
    bool operator!=(const TruncatedSeries& b) const { return !(*this == b); }
    bool is_zero() const;

    // "1 + 9t^2 + 26t^4" style; round-trips through parse_pretty.
    std::string to_pretty_string() const;
    static TruncatedSeries parse_pretty(const std::string& s, int trunc = -1);

    // {"truncation": N, "coeffs": ["p/q", ...]}
    std::string to_json() const;
    static TruncatedSeries from_json(const std::string& json);

private:
    std::vector<Rat> coeffs_;
    void check_same(const TruncatedSeries& b) const;
};

// Product of torus factors and SL/GL/SO blocks; all fields zero means the
// trivial group.
struct GroupDescriptor {
    int torus_rank = 0;
    std::vector<int> sl_blocks;   // entries >= 2
    std::vector<int> gl_blocks;   // entries >= 1
    int so2_factors = 0;
    int so3_factors = 0;

    static GroupDescriptor trivial() { return {}; }
    static GroupDescriptor torus(int rank) { return {rank, {}, {}, 0, 0}; }
    static GroupDescriptor sl(int n) { return {0, {n}, {}, 0, 0}; }
    static GroupDescriptor gl(int n) { return {0, {}, {n}, 0, 0}; }
    GroupDescriptor product(const GroupDescriptor& o) const;
    std::string to_string() const;
};

// P(t)/prod (1-t^{a_i})^{e_i} expanded mod t^{N+1}. Numerator given by its
// coefficient list (degree = index).
TruncatedSeries expand_rational(const std::vector<Rat>& numerator,
                                const std::vector<std::pair<int, int>>& denominator_factors,
                                int trunc);

// t^lo + t^{lo+2} + ... + t^hi, both even, truncated.
TruncatedSeries finite_geometric(int lo, int hi, int trunc);

// Poincare series of BG for the descriptor (rational coefficients).
TruncatedSeries classifying_series(const GroupDescriptor& g, int trunc);

// 1 + t^2 + ... + t^{2n}.
TruncatedSeries projective_series(int n, int trunc);
// Weighted projective space: Betti numbers of P^{k-1} for k weights.
TruncatedSeries weighted_projective_series(const std::vector<int>& weights, int trunc);

// Symmetric-group invariants of a rank-k torus classifying space:
// 1/prod_{i=1..k}(1-t^{2i}).
TruncatedSeries invariant_torus_series(int k, int trunc);

// Palindromic completion for a space of complex dimension d: degree-2d
// polynomial with coeff(2d-i) = coeff(i). Degrees of s above d must agree
// with their mirrors.
struct DualityResult {
    TruncatedSeries poly;           // trunc = 2d
    bool ok = true;
    int conflict_degree = -1;       // first inconsistent degree if !ok
    Rat given, mirrored;
};
DualityResult duality_complete(const TruncatedSeries& s, int complex_dim);

} // namespace kirwan

#endif
