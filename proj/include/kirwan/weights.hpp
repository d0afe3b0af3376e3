#ifndef KIRWAN_WEIGHTS_HPP
#define KIRWAN_WEIGHTS_HPP

#include "kirwan/rational.hpp"

#include <string>
#include <vector>

namespace kirwan {

// A monomial exponent vector of fixed degree.
struct ExponentVector {
    std::vector<int> exps;
    int degree() const;
    std::string to_string() const;   // "x1*x3^2" style, variables 1-based
};

// Weight of a monomial in the Cartan of SL(n_vars): the exponent vector
// orthogonally projected to the traceless hyperplane. Stored exactly.
struct WeightVector {
    RatVec coords;
};

struct WeightTable {
    int n_vars = 0;
    int degree = 0;
    std::vector<ExponentVector> monomials;   // lexicographic order
    std::vector<WeightVector> weights;       // parallel to monomials
    size_t size() const { return monomials.size(); }
    std::string to_json() const;
};

// All degree-d monomials in n_vars variables with their traceless weights.
WeightTable enumerate_monomials(int n_vars, int d);

Rat inner(const WeightVector& u, const WeightVector& v);

// Weakly decreasing representative of the Weyl orbit and the permutation
// applied (result[i] = v[perm[i]]).
std::pair<WeightVector, std::vector<int>> chamber_sort(const WeightVector& v);

// dim P_beta = n + #{(i,j), i != j : beta_i - beta_j >= 0} for SL(n+1).
int parabolic_dim(const WeightVector& beta);

struct PairingSupports {
    std::vector<int> z_support;   // monomial indices with <alpha,beta> = |beta|^2
    std::vector<int> y_support;   // <alpha,beta> >= |beta|^2
    long n_beta = 0;              // #{<alpha,beta> < |beta|^2}
};
PairingSupports pairing_supports(const WeightTable& table, const WeightVector& beta);

// Canonical form of a monomial support set under variable permutation:
// lexicographically least sorted list of exponent vectors over all
// permutations. Used to compare supports "up to Weyl".
std::vector<std::vector<int>> support_canonical_form(const std::vector<ExponentVector>& mons);

} // namespace kirwan

#endif
