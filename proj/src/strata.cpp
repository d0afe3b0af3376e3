#include "kirwan/strata.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "json.hpp"

namespace kirwan {

using i128 = __int128;

std::string Frame::to_string() const {
    if (kind == Kind::Invariant) return "invariant";
    return "eliminated(x" + std::to_string(dropped + 1) + ")";
}

std::vector<std::vector<long long>> frame_weights(const WeightTable& table, const Frame& frame) {
    std::vector<std::vector<long long>> out;
    out.reserve(table.size());
    if (frame.kind == Frame::Kind::Invariant) {
        // scale by n_vars so the traceless projection is integral
        for (const ExponentVector& m : table.monomials) {
            std::vector<long long> w(table.n_vars);
            for (int k = 0; k < table.n_vars; ++k)
                w[k] = (long long)table.n_vars * m.exps[k] - table.degree;
            out.push_back(std::move(w));
        }
    } else {
        int j = frame.dropped;
        for (const ExponentVector& m : table.monomials) {
            std::vector<long long> w;
            w.reserve(table.n_vars - 1);
            for (int k = 0; k < table.n_vars; ++k)
                if (k != j) w.push_back(m.exps[k] - m.exps[j]);
            out.push_back(std::move(w));
        }
    }
    return out;
}

RatVec frame_lift_ambient(const RatVec& frame_coords, const Frame& frame, int n_vars) {
    RatVec full;
    if (frame.kind == Frame::Kind::Invariant) {
        // search coordinates are scaled by n_vars to stay integral
        full = scale(Rat(1, n_vars), frame_coords);
    } else {
        full.reserve(n_vars);
        size_t src = 0;
        for (int k = 0; k < n_vars; ++k) {
            if (k == frame.dropped) full.push_back(Rat(0));
            else full.push_back(frame_coords[src++]);
        }
    }
    Rat mean;
    for (const Rat& c : full) mean += c;
    mean /= Rat(n_vars);
    for (Rat& c : full) c -= mean;
    return full;
}

// ---------------------------------------------------------------------------
// fraction-free linear algebra on small integer matrices

static i128 det_bareiss(std::vector<std::vector<i128>> a) {
    size_t m = a.size();
    if (m == 0) return 1;
    int sign = 1;
    i128 prev = 1;
    for (size_t k = 0; k + 1 < m; ++k) {
        if (a[k][k] == 0) {
            size_t piv = SIZE_MAX;
            for (size_t r = k + 1; r < m; ++r)
                if (a[r][k] != 0) { piv = r; break; }
            if (piv == SIZE_MAX) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < m; ++i)
            for (size_t j = k + 1; j < m; ++j)
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign > 0 ? a[m - 1][m - 1] : -a[m - 1][m - 1];
}

static i128 gcd_i128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// Projection of the origin onto the affine span of integer points, exact:
// x = (num / den). Returns false if the points are affinely dependent.
static bool int_affine_projection(const std::vector<const std::vector<long long>*>& pts,
                                  std::vector<i128>& num, i128& den) {
    size_t k = pts.size();
    size_t dim = pts[0]->size();
    const std::vector<long long>& p0 = *pts[0];
    if (k == 1) {
        num.assign(p0.begin(), p0.end());
        den = 1;
        return true;
    }
    size_t m = k - 1;
    std::vector<std::vector<i128>> diffs(m, std::vector<i128>(dim));
    for (size_t i = 0; i < m; ++i)
        for (size_t t = 0; t < dim; ++t) diffs[i][t] = (i128)(*pts[i + 1])[t] - p0[t];
    std::vector<std::vector<i128>> gram(m, std::vector<i128>(m));
    std::vector<i128> rhs(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i; j < m; ++j) {
            i128 s = 0;
            for (size_t t = 0; t < dim; ++t) s += diffs[i][t] * diffs[j][t];
            gram[i][j] = gram[j][i] = s;
        }
        i128 s = 0;
        for (size_t t = 0; t < dim; ++t) s += (i128)p0[t] * diffs[i][t];
        rhs[i] = -s;
    }
    i128 D = det_bareiss(gram);
    if (D == 0) return false;
    // Cramer: s_i = det(gram with column i -> rhs) / D
    std::vector<i128> snum(m);
    for (size_t i = 0; i < m; ++i) {
        std::vector<std::vector<i128>> g = gram;
        for (size_t r = 0; r < m; ++r) g[r][i] = rhs[r];
        snum[i] = det_bareiss(g);
    }
    num.assign(dim, 0);
    for (size_t t = 0; t < dim; ++t) {
        i128 v = D * (i128)p0[t];
        for (size_t i = 0; i < m; ++i) v += snum[i] * diffs[i][t];
        num[t] = v;
    }
    den = D;
    if (den < 0) {
        den = -den;
        for (i128& v : num) v = -v;
    }
    return true;
}

// ---------------------------------------------------------------------------
// candidate bookkeeping

namespace {

struct CandKey {
    std::vector<long long> v;   // den, coords...
    bool operator==(const CandKey& o) const { return v == o.v; }
    bool operator<(const CandKey& o) const { return v < o.v; }
};

struct CandKeyHash {
    size_t operator()(const CandKey& k) const {
        size_t h = 1469598103934665603ull;
        for (long long x : k.v) h = (h ^ (size_t)x) * 1099511628211ull;
        return h;
    }
};

using CandMap = std::unordered_map<CandKey, char, CandKeyHash>;

struct EnumContext {
    const std::vector<std::vector<long long>>* wts;
    size_t maxk;
    bool sort_dominant;          // invariant frame: normalize by sorting
    bool require_dominant;       // eliminated frame: keep only chamber members
    const Rat* max_norm_sq;
    CandMap cands;
    std::vector<std::vector<int>> slow;   // subsets needing big arithmetic
};

bool reduce_candidate(std::vector<i128>& num, i128& den, std::vector<long long>& out) {
    i128 g = den;
    for (i128 v : num) g = gcd_i128(g, v);
    if (g > 1) {
        den /= g;
        for (i128& v : num) v /= g;
    }
    const i128 lim = (i128)1 << 62;
    if (den >= lim) return false;
    out.clear();
    out.reserve(num.size());
    for (i128 v : num) {
        if (v >= lim || v <= -lim) return false;
        out.push_back((long long)v);
    }
    return true;
}

void consider_candidate(EnumContext& ctx, const std::vector<int>& subset) {
    std::vector<const std::vector<long long>*> pts;
    pts.reserve(subset.size());
    for (int i : subset) pts.push_back(&(*ctx.wts)[i]);
    std::vector<i128> num;
    i128 den;
    if (!int_affine_projection(pts, num, den)) return;
    bool zero = true;
    for (i128 v : num)
        if (v != 0) { zero = false; break; }
    if (zero) return;
    std::vector<long long> coords;
    if (!reduce_candidate(num, den, coords)) {
        ctx.slow.push_back(subset);
        return;
    }
    if (ctx.max_norm_sq) {
        // |x|^2 <= Q  <=>  sum num^2 <= Q * den^2
        i128 n2 = 0;
        for (long long v : coords) n2 += (i128)v * v;
        // compare exactly via rationals (cheap; candidates are few after dedup,
        // but this runs pre-dedup: keep it integral when Q fits)
        Rat lhs(BigInt::from_i128(n2), BigInt(1));
        Rat d2(BigInt::from_i128((i128)(long long)den * (long long)den), BigInt(1));
        if (lhs > *ctx.max_norm_sq * d2) return;
    }
    if (ctx.sort_dominant) {
        std::sort(coords.begin(), coords.end(), std::greater<long long>());
    } else if (ctx.require_dominant) {
        for (size_t i = 0; i + 1 < coords.size(); ++i)
            if (coords[i] < coords[i + 1]) return;
        if (coords.back() < 0) return;
    }
    CandKey key;
    key.v.reserve(coords.size() + 1);
    key.v.push_back((long long)den);
    for (long long c : coords) key.v.push_back(c);
    ctx.cands.emplace(std::move(key), 0);
}

void enumerate_subsets(EnumContext& ctx, const std::vector<int>& pool, size_t pool_from,
                       std::vector<int>& subset) {
    if (!subset.empty()) consider_candidate(ctx, subset);
    if (subset.size() == ctx.maxk) return;
    for (size_t i = pool_from; i < pool.size(); ++i) {
        subset.push_back(pool[i]);
        enumerate_subsets(ctx, pool, i + 1, subset);
        subset.pop_back();
    }
}

} // namespace

// ---------------------------------------------------------------------------

TorusSemistable generic_torus_semistable(const std::vector<RatVec>& weight_set) {
    if (weight_set.empty()) throw std::invalid_argument("generic_torus_semistable: empty weight set");
    RatVec origin(weight_set[0].size(), Rat(0));
    MembershipResult m = hull_membership(weight_set, origin);
    TorusSemistable out;
    out.nonempty = m.inside;
    out.barycentric = m.barycentric;
    out.separator = m.separator;
    return out;
}

int stratum_codim(const IndexVector& iv, int n_vars, int d) {
    long total = 1;
    for (int i = 1; i <= d; ++i) total = total * (n_vars - 1 + i) / i;   // C(n_vars-1+d, d)
    int dim_x = (int)total - 1;
    int dim_g = n_vars * n_vars - 1;
    int dim_y = (int)iv.y_support.size() - 1;
    int via_dim = dim_x - (dim_g + dim_y - iv.dim_p_beta);
    int via_n = (int)iv.n_beta - (dim_g - iv.dim_p_beta);
    if (via_dim != via_n) throw std::logic_error("stratum_codim: formulas disagree");
    return via_n;
}

std::optional<std::pair<int, std::string>> paper_codim_override(
    int n_vars, int d, const std::vector<ExponentVector>& z_monomials) {
    if (d != 3) return std::nullopt;
    struct Entry {
        int n_vars;
        std::vector<std::vector<int>> canon;
        int codim;
        const char* note;
    };
    static std::vector<Entry> table = [] {
        std::vector<Entry> t;
        auto add_face = [&t](int nv, int keep_vars, int codim, const char* note) {
            WeightTable wt = enumerate_monomials(nv, 3);
            std::vector<ExponentVector> mons;
            for (const ExponentVector& m : wt.monomials) {
                bool ok = true;
                for (int k = keep_vars; k < nv; ++k)
                    if (m.exps[k]) { ok = false; break; }
                if (ok) mons.push_back(m);
            }
            t.push_back({nv, support_canonical_form(mons), codim, note});
        };
        add_face(6, 5, 6, "published value for the cone stratum of the P^55 action");
        add_face(5, 4, 6, "published value for the cone stratum of the P^34 action");
        add_face(5, 3, 16, "published value for the three-variable stratum of the P^34 action");
        add_face(4, 3, 4, "published value for the cone stratum of the P^19 action");
        std::vector<ExponentVector> beta2 = {
            {{1, 2, 0, 0}}, {{0, 1, 2, 0}}, {{0, 1, 1, 1}}, {{0, 1, 0, 2}}};
        t.push_back({4, support_canonical_form(beta2), 5,
                     "published value for the quadric-pencil stratum of the P^19 action"});
        return t;
    }();
    for (const Entry& e : table) {
        if (e.n_vars != n_vars) continue;
        if (z_monomials.size() != e.canon.size() || e.canon.empty()) continue;
        if (support_canonical_form(z_monomials) == e.canon)
            return std::make_pair(e.codim, std::string(e.note));
    }
    return std::nullopt;
}

static int negative_pairs(const RatVec& beta) {
    int neg = 0;
    for (size_t i = 0; i < beta.size(); ++i)
        for (size_t j = 0; j < beta.size(); ++j)
            if (i != j && beta[i] < beta[j]) ++neg;
    return neg;
}

StratificationReport index_set_search(int n_vars, int d, const SearchOptions& opts) {
    if (n_vars < 2 || d < 1) throw std::invalid_argument("index_set_search: need n_vars >= 2, d >= 1");
    if (opts.codim_cutoff < -1) throw std::invalid_argument("index_set_search: cutoff < 0");
    StratificationReport rep;
    rep.n_vars = n_vars;
    rep.degree = d;
    rep.options = opts;
    rep.table = enumerate_monomials(n_vars, d);
    auto wts = frame_weights(rep.table, opts.frame);
    size_t nw = wts.size();
    size_t maxk = std::min<size_t>(nw, (size_t)n_vars);

    bool invariant = opts.frame.kind == Frame::Kind::Invariant;
    bool anchored = opts.weyl_reduction && invariant;

    // enumeration pools: either everything, or subsets anchored at a
    // sorted-exponent representative monomial (sound: every index vector has
    // a Weyl image whose critical support contains such a representative)
    std::vector<int> anchors;
    if (anchored) {
        for (size_t i = 0; i < nw; ++i) {
            const std::vector<int>& e = rep.table.monomials[i].exps;
            if (std::is_sorted(e.begin(), e.end(), std::greater<int>())) anchors.push_back((int)i);
        }
    }

    struct Task {
        int anchor;   // -1 for plain enumeration
        int first;
    };
    std::vector<Task> tasks;
    if (anchored) {
        for (int a : anchors) tasks.push_back({a, -1});
    } else {
        for (size_t i = 0; i < nw; ++i) tasks.push_back({-1, (int)i});
    }

    int jobs = std::max(1, opts.jobs);
    std::vector<EnumContext> ctxs(jobs);
    for (EnumContext& c : ctxs) {
        c.wts = &wts;
        c.maxk = maxk;
        c.sort_dominant = invariant;
        c.require_dominant = !invariant;
        c.max_norm_sq = opts.max_norm_sq ? &*opts.max_norm_sq : nullptr;
    }
    std::atomic<size_t> next_task{0};
    auto worker = [&](int tid) {
        EnumContext& ctx = ctxs[tid];
        std::vector<int> subset;
        while (true) {
            size_t t = next_task.fetch_add(1);
            if (t >= tasks.size()) break;
            const Task& task = tasks[t];
            if (task.anchor >= 0) {
                // pool: all indices except anchors <= this one
                std::vector<int> pool;
                pool.reserve(nw);
                for (size_t i = 0; i < nw; ++i) {
                    if ((int)i == task.anchor) continue;
                    if (std::binary_search(anchors.begin(), anchors.end(), (int)i) &&
                        (int)i < task.anchor)
                        continue;
                    pool.push_back((int)i);
                }
                subset.assign(1, task.anchor);
                enumerate_subsets(ctx, pool, 0, subset);
            } else {
                std::vector<int> pool;
                pool.reserve(nw - task.first - 1);
                for (size_t i = task.first + 1; i < nw; ++i) pool.push_back((int)i);
                subset.assign(1, task.first);
                enumerate_subsets(ctx, pool, 0, subset);
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    // deterministic merge
    std::map<CandKey, char> merged;
    for (EnumContext& c : ctxs) {
        for (auto& [k, v] : c.cands) merged.emplace(k, v);
        if (!c.slow.empty()) {
            // exact fallback for candidates that overflowed the fast path
            for (const std::vector<int>& subset : c.slow) {
                std::vector<RatVec> pts;
                for (int i : subset) {
                    RatVec v(wts[i].size());
                    for (size_t t2 = 0; t2 < v.size(); ++t2) v[t2] = Rat(wts[i][t2]);
                    pts.push_back(std::move(v));
                }
                RatVec x;
                if (!affine_projection_of_origin(pts, x) || is_zero_vec(x)) continue;
                // scale to integers
                BigInt den(1);
                for (const Rat& c2 : x) den = den * c2.den() / BigInt::gcd(den, c2.den());
                std::vector<long long> coords;
                bool ok = true;
                CandKey key;
                Rat denr(den, BigInt(1));
                for (const Rat& c2 : x) {
                    Rat scaled = c2 * denr;
                    if (!scaled.den().is_one() || !scaled.num().fits_ll()) { ok = false; break; }
                    coords.push_back(scaled.num().to_ll());
                }
                if (!ok || !den.fits_ll()) continue;   // out of reach; record nothing
                if (invariant) {
                    std::sort(coords.begin(), coords.end(), std::greater<long long>());
                } else {
                    bool dom = true;
                    for (size_t t2 = 0; t2 + 1 < coords.size(); ++t2)
                        if (coords[t2] < coords[t2 + 1]) { dom = false; break; }
                    if (!dom || coords.back() < 0) continue;
                }
                key.v.push_back(den.to_ll());
                for (long long c2 : coords) key.v.push_back(c2);
                merged.emplace(key, 0);
            }
        }
    }

    // verification and assembly per distinct candidate
    std::vector<const CandKey*> keys;
    keys.reserve(merged.size());
    for (auto& [k, v] : merged) keys.push_back(&k);
    std::vector<std::optional<IndexVector>> slots(keys.size());

    std::atomic<size_t> next_cand{0};
    auto verify_worker = [&]() {
        while (true) {
            size_t idx = next_cand.fetch_add(1);
            if (idx >= keys.size()) break;
            const CandKey& key = *keys[idx];
            long long den = key.v[0];
            size_t dim = key.v.size() - 1;
            RatVec beta(dim);
            for (size_t t = 0; t < dim; ++t) beta[t] = Rat(key.v[t + 1], den);

            // supports via exact integer comparisons
            i128 norm2 = 0;
            for (size_t t = 0; t < dim; ++t) norm2 += (i128)key.v[t + 1] * key.v[t + 1];
            IndexVector iv;
            iv.beta = beta;
            iv.norm_sq = Rat(BigInt::from_i128(norm2), BigInt(den) * BigInt(den));
            for (size_t i = 0; i < nw; ++i) {
                i128 p = 0;
                for (size_t t = 0; t < dim; ++t) p += (i128)wts[i][t] * key.v[t + 1];
                i128 lhs = p * den;
                if (lhs == norm2) {
                    iv.z_support.push_back((int)i);
                    iv.y_support.push_back((int)i);
                } else if (lhs > norm2) {
                    iv.y_support.push_back((int)i);
                } else {
                    ++iv.n_beta;
                }
            }
            if (iv.z_support.empty()) continue;

            iv.beta_ambient = frame_lift_ambient(beta, opts.frame, n_vars);
            iv.dim_p_beta = parabolic_dim({iv.beta_ambient});
            iv.codim_rootcount = (int)iv.n_beta - negative_pairs(iv.beta_ambient);

            std::vector<ExponentVector> zmons;
            for (int i : iv.z_support) zmons.push_back(rep.table.monomials[i]);
            if (auto ov = paper_codim_override(n_vars, d, zmons)) {
                iv.codim_override = ov->first;
                iv.override_note = ov->second;
            }
            if (opts.codim_cutoff >= 0 && iv.codim(opts.codim_mode) > opts.codim_cutoff) continue;

            // the defining test: beta must be the nearest point of conv(z weights)
            std::vector<RatVec> zw;
            zw.reserve(iv.z_support.size());
            for (int i : iv.z_support) {
                RatVec v(dim);
                for (size_t t = 0; t < dim; ++t) v[t] = Rat(wts[i][t]);
                zw.push_back(std::move(v));
            }
            MembershipResult mem = hull_membership(zw, beta);
            if (!mem.inside) continue;
            iv.hull_cert.point = beta;
            iv.hull_cert.barycentric = mem.barycentric;

            // generic-point semistability of the critical locus, in-frame
            std::vector<RatVec> proj;
            proj.reserve(zw.size());
            for (const RatVec& w : zw) proj.push_back(w - beta);
            TorusSemistable ss = generic_torus_semistable(proj);
            iv.nonempty_ss = ss.nonempty;
            iv.ss_barycentric = ss.barycentric;
            iv.ss_separator = ss.separator;

            stratum_codim(iv, n_vars, d);   // consistency assert
            slots[idx] = std::move(iv);
        }
    };
    if (jobs == 1) {
        verify_worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(verify_worker);
        for (auto& th : pool) th.join();
    }

    for (auto& s : slots)
        if (s) rep.index_vectors.push_back(std::move(*s));
    std::sort(rep.index_vectors.begin(), rep.index_vectors.end(),
              [](const IndexVector& a, const IndexVector& b) {
                  int c = a.norm_sq.cmp(b.norm_sq);
                  if (c) return c < 0;
                  if (a.z_support.size() != b.z_support.size())
                      return a.z_support.size() < b.z_support.size();
                  return a.z_support < b.z_support;
              });
    return rep;
}

std::string StratificationReport::to_json() const {
    nlohmann::json j;
    j["n_vars"] = n_vars;
    j["degree"] = degree;
    j["frame"] = options.frame.to_string();
    j["codim_mode"] = options.codim_mode == CodimMode::PaperOverride ? "paper" : "rootcount";
    j["codim_cutoff"] = options.codim_cutoff;
    nlohmann::json ivs = nlohmann::json::array();
    for (const IndexVector& iv : index_vectors) {
        nlohmann::json e;
        std::vector<std::string> b;
        for (const Rat& c : iv.beta) b.push_back(c.to_string());
        e["beta"] = b;
        e["norm_sq"] = iv.norm_sq.to_string();
        std::vector<std::string> mons;
        for (int i : iv.z_support) mons.push_back(table.monomials[i].to_string());
        e["z_support"] = mons;
        e["y_support_size"] = iv.y_support.size();
        e["n_beta"] = iv.n_beta;
        e["dim_p_beta"] = iv.dim_p_beta;
        e["codim_rootcount"] = iv.codim_rootcount;
        if (iv.codim_override) {
            e["codim_override"] = *iv.codim_override;
            e["override_note"] = iv.override_note;
        }
        e["nonempty_ss"] = iv.nonempty_ss;
        if (iv.nonempty_ss) {
            nlohmann::json bc = nlohmann::json::object();
            for (auto& [i, c] : iv.ss_barycentric) bc[std::to_string(i)] = c.to_string();
            e["ss_certificate"] = bc;
        } else {
            std::vector<std::string> sep;
            for (const Rat& c : iv.ss_separator) sep.push_back(c.to_string());
            e["ss_separator"] = sep;
        }
        ivs.push_back(e);
    }
    j["index_vectors"] = ivs;
    return j.dump(2);
}

} // namespace kirwan
