#include "kirwan/equivariant.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kirwan {

std::string StabilizerSplit::describe() const {
    std::ostringstream os;
    os << "C*^" << central_torus_rank << " x ";
    switch (kind) {
        case Residual::Point: os << residual_group.to_string() << " (fixed point)"; break;
        case Residual::Subform:
            os << "SL(" << subform_vars << ") on degree-" << subform_degree << " forms";
            break;
        case Residual::Torus: os << residual_group.to_string(); break;
        case Residual::General: os << residual_group.to_string() << " (general block action)"; break;
    }
    return os.str();
}

long BlockAction::total_multiplicity() const {
    long m = 0;
    for (const W& w : weights) m += w.mult;
    return m;
}

TruncatedSeries BlockAction::classifying(int trunc) const {
    GroupDescriptor g;
    g.torus_rank = free_torus_rank;
    for (const auto& p : parts)
        if (p.size() >= 2) g.sl_blocks.push_back((int)p.size());
    return classifying_series(g, trunc);
}

BlockAction hypersurface_action(int n_vars, int d) {
    BlockAction a;
    a.parts = {std::vector<int>(n_vars)};
    std::iota(a.parts[0].begin(), a.parts[0].end(), 0);
    a.free_torus_rank = 0;
    a.cartan_dim = n_vars - 1;
    a.hyper_vars = n_vars;
    a.hyper_degree = d;
    WeightTable t = enumerate_monomials(n_vars, d);
    for (const WeightVector& w : t.weights) a.weights.push_back({w.coords, 1});
    return a;
}

// Is the critical support a fixed monomial times the full space of degree-d'
// forms on a variable subset? Returns (vars, degree) when so.
static std::optional<std::pair<std::vector<int>, int>> detect_subform(
    const std::vector<ExponentVector>& zmons, int n_vars) {
    if (zmons.empty()) return std::nullopt;
    // variables where exponents vary
    std::vector<int> varying;
    for (int k = 0; k < n_vars; ++k) {
        for (const ExponentVector& m : zmons)
            if (m.exps[k] != zmons[0].exps[k]) {
                varying.push_back(k);
                break;
            }
    }
    if (varying.empty()) return std::nullopt;   // single monomial
    // the restriction to the varying variables must be every monomial of its
    // degree, with the rest fixed
    int dsub = 0;
    for (int k : varying) dsub += zmons[0].exps[k];
    long expect = 1;
    for (int i = 1; i <= dsub; ++i) expect = expect * ((long)varying.size() - 1 + i) / i;
    if ((long)zmons.size() != expect) return std::nullopt;
    // fixed part must be constant outside varying (checked by construction),
    // and minimum over varying exponents should hit all distributions; the
    // count check plus distinctness of monomials already pins this.
    for (const ExponentVector& m : zmons) {
        int s = 0;
        for (int k : varying) s += m.exps[k];
        if (s != dsub) return std::nullopt;
    }
    return std::make_pair(varying, dsub);
}

StabilizerSplit stabilizer_split(const IndexVector& iv, const WeightTable& table) {
    StabilizerSplit out;
    // coordinate level sets of the ambient representative
    std::vector<Rat> seen;
    std::vector<std::vector<int>> level_sets;
    for (size_t i = 0; i < iv.beta_ambient.size(); ++i) {
        bool placed = false;
        for (size_t l = 0; l < seen.size(); ++l)
            if (seen[l] == iv.beta_ambient[i]) {
                level_sets[l].push_back((int)i);
                placed = true;
                break;
            }
        if (!placed) {
            seen.push_back(iv.beta_ambient[i]);
            level_sets.push_back({(int)i});
        }
    }
    out.central_torus_rank = (int)level_sets.size() - 1;
    GroupDescriptor g;
    for (const auto& ls : level_sets)
        if (ls.size() >= 2) g.sl_blocks.push_back((int)ls.size());
    out.residual_group = g;

    std::vector<ExponentVector> zmons;
    for (int i : iv.z_support) zmons.push_back(table.monomials[i]);
    if (zmons.size() == 1) {
        out.kind = StabilizerSplit::Residual::Point;
        return out;
    }
    if (auto sf = detect_subform(zmons, table.n_vars)) {
        out.kind = StabilizerSplit::Residual::Subform;
        out.subform_vars = (int)sf->first.size();
        out.subform_degree = sf->second;
        return out;
    }
    out.kind = g.sl_blocks.empty() ? StabilizerSplit::Residual::Torus
                                   : StabilizerSplit::Residual::General;
    return out;
}

// ---------------------------------------------------------------------------

TruncatedSeries EquivariantEngine::hypersurface_series(int n_vars, int d, int trunc) {
    auto key = std::make_tuple(n_vars, d, trunc, opts_.codim_mode == CodimMode::PaperOverride);
    auto it = hyper_cache_.find(key);
    if (it != hyper_cache_.end()) return it->second;

    // removals with 2*codim > trunc are invisible
    SearchOptions sopts;
    sopts.codim_cutoff = trunc / 2;
    sopts.codim_mode = opts_.codim_mode;
    sopts.frame = Frame::invariant();
    sopts.jobs = opts_.search_jobs;
    sopts.weyl_reduction = opts_.weyl_reduction;
    StratificationReport rep = index_set_search(n_vars, d, sopts);

    BlockAction ambient = hypersurface_action(n_vars, d);
    long M = ambient.total_multiplicity();
    TruncatedSeries total = projective_series((int)M - 1, trunc) * ambient.classifying(trunc);

    std::vector<TraceRow> trace;
    for (const IndexVector& iv : rep.index_vectors) {
        int c = iv.codim(opts_.codim_mode);
        // negative codimension forces an empty critical semistable locus
        // (a nonempty stratum cannot exceed the ambient dimension)
        if (c < 0 || 2 * c > trunc) continue;
        TruncatedSeries branch = stratum_branch(ambient, iv, rep.table, trunc - 2 * c);
        TruncatedSeries contrib = branch.truncated(trunc).shifted(2 * c);
        total = total - contrib;
        TraceRow row;
        std::string sup;
        for (int i : iv.z_support) {
            if (!sup.empty()) sup += ", ";
            sup += rep.table.monomials[i].to_string();
        }
        row.z_support = sup;
        row.codim_used = c;
        row.codim_rootcount = iv.codim_rootcount;
        row.override_used = opts_.codim_mode == CodimMode::PaperOverride && iv.codim_override &&
                            *iv.codim_override != iv.codim_rootcount;
        row.branch = branch;
        trace.push_back(std::move(row));
    }
    last_trace = std::move(trace);
    hyper_cache_.emplace(key, total);
    return total;
}

TruncatedSeries EquivariantEngine::stratum_branch(const BlockAction& action, const IndexVector& iv,
                                                  const WeightTable& table, int trunc) {
    if (trunc < 0) return TruncatedSeries(0);
    // shortcut: full sub-form critical locus recurses into the smaller
    // hypersurface problem (memoized)
    std::vector<ExponentVector> zmons;
    if (action.hyper_vars) {
        for (int i : iv.z_support) zmons.push_back(table.monomials[i]);
        if (auto sf = detect_subform(zmons, table.n_vars)) {
            TruncatedSeries inner = hypersurface_series((int)sf->first.size(), sf->second, trunc);
            return inner.geom_div(2);   // central C* along beta
        }
    }
    // general residual block action on the shifted critical weights
    std::vector<size_t> ids;
    for (int i : iv.z_support) ids.push_back((size_t)i);
    BlockAction res = residual_action(action, iv.beta_ambient, ids);
    TruncatedSeries inner = series(res, trunc);
    return inner.geom_div(2);
}

BlockAction EquivariantEngine::residual_action(const BlockAction& action, const RatVec& beta,
                                               const std::vector<size_t>& z_weight_ids) const {
    BlockAction res;
    res.cartan_dim = action.cartan_dim - 1;
    // refine each part by the beta levels
    int parts_before = (int)action.parts.size();
    for (const auto& part : action.parts) {
        std::vector<std::pair<Rat, std::vector<int>>> by_level;
        for (int slot : part) {
            bool placed = false;
            for (auto& [lv, slots] : by_level)
                if (lv == beta[slot]) {
                    slots.push_back(slot);
                    placed = true;
                    break;
                }
            if (!placed) by_level.push_back({beta[slot], {slot}});
        }
        for (auto& [lv, slots] : by_level) res.parts.push_back(slots);
    }
    res.free_torus_rank =
        action.free_torus_rank + ((int)res.parts.size() - parts_before) - 1;
    // weights shift by -beta; multiplicities carried over, merging equal vectors
    for (size_t id : z_weight_ids) {
        RatVec v = action.weights[id].vec - beta;
        bool merged = false;
        for (auto& w : res.weights)
            if (w.vec == v) {
                w.mult += action.weights[id].mult;
                merged = true;
                break;
            }
        if (!merged) res.weights.push_back({std::move(v), action.weights[id].mult});
    }
    return res;
}

// Dominant representative for a block action: sort coordinates within each
// part (descending).
static RatVec block_dominant(const RatVec& v, const std::vector<std::vector<int>>& parts) {
    RatVec out = v;
    for (const auto& part : parts) {
        std::vector<Rat> vals;
        vals.reserve(part.size());
        for (int s : part) vals.push_back(v[s]);
        std::sort(vals.begin(), vals.end(), [](const Rat& a, const Rat& b) { return b < a; });
        for (size_t i = 0; i < part.size(); ++i) out[part[i]] = vals[i];
    }
    return out;
}

static int block_negative_pairs(const RatVec& beta, const std::vector<std::vector<int>>& parts) {
    int neg = 0;
    for (const auto& part : parts)
        for (int i : part)
            for (int j : part)
                if (i != j && beta[i] < beta[j]) ++neg;
    return neg;
}

TruncatedSeries EquivariantEngine::series(const BlockAction& action, int trunc) {
    return series_general(action, trunc);
}

TruncatedSeries EquivariantEngine::series_general(const BlockAction& action, int trunc) {
    long M = action.total_multiplicity();
    if (M <= 0) throw std::logic_error("equivariant series: empty action");
    TruncatedSeries total = projective_series((int)M - 1, trunc) * action.classifying(trunc);
    if (action.cartan_dim <= 0) return total;

    // strata of the block action: nearest points of faces of the weight
    // configuration, kept when they certify as index vectors
    size_t nw = action.weights.size();
    size_t maxk = std::min(nw, (size_t)action.cartan_dim + 1);
    std::map<std::string, RatVec> cands;
    std::vector<int> subset;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (!subset.empty()) {
            std::vector<RatVec> pts;
            for (int i : subset) pts.push_back(action.weights[i].vec);
            RatVec x;
            if (affine_projection_of_origin(pts, x) && !is_zero_vec(x)) {
                RatVec dom = block_dominant(x, action.parts);
                cands.emplace(vec_to_string(dom), dom);
            }
        }
        if (subset.size() == maxk) return;
        for (size_t i = start; i < nw; ++i) {
            subset.push_back((int)i);
            rec(i + 1);
            subset.pop_back();
        }
    };
    rec(0);

    for (auto& [key, beta] : cands) {
        Rat norm2 = dot(beta, beta);
        std::vector<size_t> z_ids;
        long n_beta = 0;
        long z_mult = 0;
        for (size_t i = 0; i < nw; ++i) {
            Rat p = dot(action.weights[i].vec, beta);
            int c = p.cmp(norm2);
            if (c == 0) {
                z_ids.push_back(i);
                z_mult += action.weights[i].mult;
            } else if (c < 0) {
                n_beta += action.weights[i].mult;
            }
        }
        if (z_ids.empty()) continue;
        int codim = (int)n_beta - block_negative_pairs(beta, action.parts);
        // a genuine stratum has nonnegative codimension; candidates that
        // fail this cannot pass the hull test either
        if (codim < 0 || 2 * codim > trunc) continue;
        std::vector<RatVec> zw;
        for (size_t i : z_ids) zw.push_back(action.weights[i].vec);
        MembershipResult mem = hull_membership(zw, beta);
        if (!mem.inside) continue;

        BlockAction res = residual_action(action, beta, z_ids);
        TruncatedSeries branch = series_general(res, trunc - 2 * codim).geom_div(2);
        total = total - branch.truncated(trunc).shifted(2 * codim);
    }
    return total;
}

bool stratum_is_nonempty(EquivariantEngine& engine, const IndexVector& iv,
                         const WeightTable& table) {
    BlockAction ambient = hypersurface_action(table.n_vars, table.degree);
    TruncatedSeries branch = engine.stratum_branch(ambient, iv, table, 0);
    return branch[0] == Rat(1);
}

TruncatedSeries equivariant_ss_series(int n_vars, int d, int trunc, CodimMode mode, int jobs) {
    EquivariantOptions opts;
    opts.codim_mode = mode;
    opts.search_jobs = jobs;
    EquivariantEngine engine(opts);
    return engine.hypersurface_series(n_vars, d, trunc);
}

} // namespace kirwan
