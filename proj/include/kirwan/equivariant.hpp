#ifndef KIRWAN_EQUIVARIANT_HPP
#define KIRWAN_EQUIVARIANT_HPP

#include "kirwan/series.hpp"
#include "kirwan/strata.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kirwan {

// Stabilizer of an index vector, split into the central torus and the part
// acting effectively on the critical locus.
struct StabilizerSplit {
    enum class Residual { Point, Subform, Torus, General };
    int central_torus_rank = 0;       // number of beta coordinate levels - 1
    Residual kind = Residual::General;
    int subform_vars = 0, subform_degree = 0;   // when kind == Subform
    GroupDescriptor residual_group;             // Levi type acting on Z
    std::string describe() const;
};

StabilizerSplit stabilizer_split(const IndexVector& iv, const WeightTable& table);

// A reductive block group T^r x prod SL(parts) acting on the projectivized
// span of a list of weight vectors (with multiplicity). Weights live in the
// ambient Cartan coordinates; every computation uses the standard invariant
// product there.
struct BlockAction {
    std::vector<std::vector<int>> parts;   // partition of ambient slots
    int free_torus_rank = 0;
    int cartan_dim = 0;                    // effective rank left for strata
    struct W {
        RatVec vec;
        long mult = 1;
    };
    std::vector<W> weights;
    // monomial structure when the action is a hypersurface representation
    std::optional<int> hyper_vars, hyper_degree;
    TruncatedSeries classifying(int trunc) const;
    long total_multiplicity() const;
};

struct EquivariantOptions {
    CodimMode codim_mode = CodimMode::Rootcount;
    int search_jobs = 1;
    bool weyl_reduction = true;   // for the large hypersurface searches
};

// Shared cache so nested hypersurface problems are computed once.
class EquivariantEngine {
public:
    explicit EquivariantEngine(EquivariantOptions opts = {}) : opts_(opts) {}

    // P^{SL(n_vars)}_t(P(degree-d forms)^{ss}) mod t^{N+1}.
    TruncatedSeries hypersurface_series(int n_vars, int d, int trunc);

    // General block action.
    TruncatedSeries series(const BlockAction& action, int trunc);

    // Per-stratum branch value (1/(1-t^2) times the residual series), exposed
    // for reporting: the full removal term is t^{2 codim} times this.
    TruncatedSeries stratum_branch(const BlockAction& action, const IndexVector& iv,
                                   const WeightTable& table, int trunc);

    const EquivariantOptions& options() const { return opts_; }

    // Trace of the last hypersurface evaluation (stratum, codim, branch).
    struct TraceRow {
        std::string z_support;
        int codim_used = 0;
        int codim_rootcount = 0;
        bool override_used = false;
        TruncatedSeries branch;
    };
    std::vector<TraceRow> last_trace;

private:
    EquivariantOptions opts_;
    std::map<std::tuple<int, int, int, int>, TruncatedSeries> hyper_cache_;

    TruncatedSeries series_general(const BlockAction& action, int trunc);
    BlockAction residual_action(const BlockAction& action, const RatVec& beta,
                                const std::vector<size_t>& z_weight_ids) const;
};

// Convenience wrapper matching the operation contract.
TruncatedSeries equivariant_ss_series(int n_vars, int d, int trunc,
                                      CodimMode mode = CodimMode::Rootcount, int jobs = 1);

BlockAction hypersurface_action(int n_vars, int d);

// Rigorous emptiness of the critical semistable locus: the residual branch
// series has constant term 1 exactly when it is nonempty. Works for
// invariant-frame reports only.
bool stratum_is_nonempty(EquivariantEngine& engine, const IndexVector& iv,
                         const WeightTable& table);

} // namespace kirwan

#endif
