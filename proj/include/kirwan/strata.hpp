#ifndef KIRWAN_STRATA_HPP
#define KIRWAN_STRATA_HPP

#include "kirwan/hull.hpp"
#include "kirwan/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kirwan {

// Coordinate frame used for the nearest-point geometry.
//  - invariant: weights projected to the traceless hyperplane, standard
//    Euclidean product (Weyl-invariant).
//  - eliminated(j): coordinates (i_k - i_j) for k != j with the Euclidean
//    product there. Not Weyl-invariant; kept because published stratum
//    tables for these actions were computed this way, and the semistability
//    tests depend on the frame.
struct Frame {
    enum class Kind { Invariant, Eliminated };
    Kind kind = Kind::Invariant;
    int dropped = 0;   // variable index for Eliminated

    static Frame invariant() { return {Kind::Invariant, 0}; }
    static Frame eliminated(int j) { return {Kind::Eliminated, j}; }
    int dim(int n_vars) const { return kind == Kind::Invariant ? n_vars : n_vars - 1; }
    std::string to_string() const;
};

enum class CodimMode { Rootcount, PaperOverride };

struct IndexVector {
    RatVec beta;                  // frame coordinates (dominant)
    RatVec beta_ambient;          // traceless lift, for root counting
    Rat norm_sq;                  // |beta|^2 in the frame metric
    std::vector<int> z_support;   // monomial indices
    std::vector<int> y_support;
    long n_beta = 0;
    int dim_p_beta = 0;           // root-count parabolic dimension
    int codim_rootcount = 0;
    std::optional<int> codim_override;   // pinned published value, when known
    std::string override_note;
    HullCertificate hull_cert;    // beta as nearest point of conv(z weights)
    bool nonempty_ss = false;     // generic-torus test
    std::map<int, Rat> ss_barycentric;   // when nonempty
    RatVec ss_separator;                 // when empty: destabilizing 1-PS direction

    int codim(CodimMode mode) const {
        return (mode == CodimMode::PaperOverride && codim_override) ? *codim_override
                                                                    : codim_rootcount;
    }
};

struct SearchOptions {
    int codim_cutoff = -1;        // -1: no cutoff
    CodimMode codim_mode = CodimMode::Rootcount;
    Frame frame = Frame::invariant();
    int jobs = 1;
    bool weyl_reduction = false;  // anchored subset enumeration (invariant frame)
    std::optional<Rat> max_norm_sq;   // pruning bound on |beta|^2
};

struct StratificationReport {
    int n_vars = 0, degree = 0;
    SearchOptions options;
    WeightTable table;
    std::vector<IndexVector> index_vectors;
    std::string to_json() const;
};

// Enumerate the Kirwan index set for SL(n_vars) acting on degree-d forms.
StratificationReport index_set_search(int n_vars, int d, const SearchOptions& opts = {});

// Generic point of P(span of the given weights): semistable for the torus
// iff 0 is in the hull. Returns a barycentric certificate or a separating
// one-parameter-subgroup direction.
struct TorusSemistable {
    bool nonempty = false;
    std::map<int, Rat> barycentric;
    RatVec separator;
};
TorusSemistable generic_torus_semistable(const std::vector<RatVec>& weight_set);

// Both codimension routes; asserts they agree.
int stratum_codim(const IndexVector& iv, int n_vars, int d);

// Frame plumbing shared with the equivariant engine.
std::vector<std::vector<long long>> frame_weights(const WeightTable& table, const Frame& frame);
RatVec frame_lift_ambient(const RatVec& frame_coords, const Frame& frame, int n_vars);

// Published stratum codimensions for the hypersurface actions this project
// reproduces, keyed by canonical support. Used by CodimMode::PaperOverride.
std::optional<std::pair<int, std::string>> paper_codim_override(
    int n_vars, int d, const std::vector<ExponentVector>& z_monomials);

} // namespace kirwan

#endif
