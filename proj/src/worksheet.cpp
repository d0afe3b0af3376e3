#include "kirwan/worksheet.hpp"

#include "kirwan/corrections.hpp"
#include "kirwan/expr.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kirwan {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
    std::string raw;
};

[[noreturn]] void fail_at(int line, const std::string& msg) {
    throw std::invalid_argument("worksheet line " + std::to_string(line) + ": " + msg);
}

// whitespace tokens; quoted strings and [...] lists are single tokens
std::vector<std::string> tokenize(const std::string& raw, int lineno) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < raw.size()) {
        if (std::isspace((unsigned char)raw[i])) {
            ++i;
            continue;
        }
        if (raw[i] == '#') break;
        if (raw[i] == '"') {
            size_t j = raw.find('"', i + 1);
            if (j == std::string::npos) fail_at(lineno, "unterminated string");
            out.push_back(raw.substr(i + 1, j - i - 1));
            i = j + 1;
        } else if (raw[i] == '[') {
            size_t j = raw.find(']', i);
            if (j == std::string::npos) fail_at(lineno, "unterminated list");
            out.push_back(raw.substr(i, j - i + 1));
            i = j + 1;
        } else {
            size_t j = i;
            while (j < raw.size() && !std::isspace((unsigned char)raw[j]) && raw[j] != '#') ++j;
            out.push_back(raw.substr(i, j - i));
            i = j;
        }
    }
    return out;
}

std::vector<Rat> parse_rat_list(const std::string& tok, int lineno) {
    if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']')
        fail_at(lineno, "expected [..] list");
    std::vector<Rat> out;
    std::string body = tok.substr(1, tok.size() - 2);
    std::string cur;
    for (char c : body) {
        if (c == ',') {
            if (!cur.empty()) out.emplace_back(cur);
            cur.clear();
        } else if (!std::isspace((unsigned char)c)) {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.emplace_back(cur);
    return out;
}

int to_int(const std::string& s, int lineno) {
    try {
        return std::stoi(s);
    } catch (...) {
        fail_at(lineno, "expected integer, got '" + s + "'");
    }
}

// key=value pairs on stratum / removal lines
std::map<std::string, std::string> kv_pairs(const std::vector<std::string>& toks, size_t from,
                                            int lineno) {
    std::map<std::string, std::string> kv;
    for (size_t i = from; i < toks.size(); ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos) fail_at(lineno, "expected key=value, got '" + toks[i] + "'");
        std::string key = toks[i].substr(0, eq);
        std::string val = toks[i].substr(eq + 1);
        // a quoted value was already stripped by the tokenizer only if the
        // whole token was quoted; allow key="..." by re-joining
        if (!val.empty() && val.front() == '"') {
            val = val.substr(1);
            while (i + 1 < toks.size() && (val.empty() || val.back() != '"')) {
                val += " " + toks[++i];
            }
            if (!val.empty() && val.back() == '"') val.pop_back();
        }
        kv[key] = val;
    }
    return kv;
}

} // namespace

Worksheet parse_worksheet(const std::string& text) {
    Worksheet w;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::vector<Line> lines;
    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = tokenize(raw, lineno);
        if (!toks.empty()) lines.push_back({lineno, toks, raw});
    }

    std::vector<std::string> known_names;
    size_t li = 0;
    while (li < lines.size()) {
        const Line& L = lines[li];
        const auto& t = L.tokens;
        if (t[0] == "meta") {
            if (t.size() < 3) fail_at(L.number, "meta needs a key and a value");
            if (t[1] == "title") w.title = t[2];
            else if (t[1] == "truncation") w.truncation = to_int(t[2], L.number);
            else if (t[1] == "codim_mode")
                w.codim_mode = t[2] == "paper" ? CodimMode::PaperOverride : CodimMode::Rootcount;
            else fail_at(L.number, "unknown meta key '" + t[1] + "'");
            ++li;
            continue;
        }
        if (t[0] != "step") fail_at(L.number, "expected 'step' or 'meta', got '" + t[0] + "'");
        if (t.size() < 3) fail_at(L.number, "step needs a name and a kind");
        WorksheetStep st;
        st.name = t[1];
        st.kind = t[2];
        st.line = L.number;
        static const std::vector<std::string> kinds = {
            "literal", "equivariant_ss", "blowup", "sum", "combine",
            "duality", "blowdown",       "pbundle", "semismall"};
        if (std::find(kinds.begin(), kinds.end(), st.kind) == kinds.end())
            fail_at(L.number, "unknown step kind '" + st.kind + "'");
        ++li;
        bool closed = false;
        while (li < lines.size()) {
            const Line& P = lines[li];
            const auto& p = P.tokens;
            if (p[0] == "end") {
                closed = true;
                ++li;
                break;
            }
            auto need = [&](size_t n) {
                if (p.size() < n + 1) fail_at(P.number, "'" + p[0] + "' needs an argument");
            };
            if (p[0] == "expr") {
                need(1);
                st.expr = p[1];
            } else if (p[0] == "vars") {
                need(1);
                st.vars = to_int(p[1], P.number);
            } else if (p[0] == "degree") {
                need(1);
                st.degree = to_int(p[1], P.number);
            } else if (p[0] == "auto_strata") {
                st.auto_strata = true;
            } else if (p[0] == "stratum") {
                auto kv = kv_pairs(p, 1, P.number);
                WorksheetStep::Stratum s;
                if (!kv.count("codim") || !kv.count("branch"))
                    fail_at(P.number, "stratum needs codim= and branch=");
                s.codim = to_int(kv["codim"], P.number);
                s.rootcount = kv.count("rootcount") ? to_int(kv["rootcount"], P.number) : s.codim;
                s.branch = kv["branch"];
                s.note = kv.count("note") ? kv["note"] : "";
                st.strata.push_back(std::move(s));
            } else if (p[0] == "dR") {
                need(1);
                st.d_R = to_int(p[1], P.number);
            } else if (p[0] == "center") {
                need(1);
                st.center = p[1];
            } else if (p[0] == "removal") {
                auto kv = kv_pairs(p, 1, P.number);
                if (!kv.count("codim") || !kv.count("series"))
                    fail_at(P.number, "removal needs codim= and series=");
                st.removals.emplace_back(to_int(kv["codim"], P.number), kv["series"]);
            } else if (p[0] == "terms") {
                for (size_t k = 1; k < p.size(); ++k) st.terms.push_back(p[k]);
            } else if (p[0] == "of") {
                need(1);
                st.of = p[1];
            } else if (p[0] == "dim") {
                need(1);
                st.dim = to_int(p[1], P.number);
            } else if (p[0] == "base") {
                need(1);
                st.base = p[1];
            } else if (p[0] == "fiber") {
                need(1);
                st.fiber = p[1];
            } else if (p[0] == "fiber_dim") {
                need(1);
                st.fiber_dim = to_int(p[1], P.number);
            } else if (p[0] == "lambda_threshold") {
                need(1);
                st.lambda_threshold = to_int(p[1], P.number);
            } else if (p[0] == "complete_dim") {
                need(1);
                st.complete_dim = to_int(p[1], P.number);
            } else if (p[0] == "stored") {
                need(1);
                st.stored = p[1];
            } else if (p[0] == "z") {
                need(1);
                st.z_expr = p[1];
            } else if (p[0] == "codim_real") {
                need(1);
                st.codim_real = to_int(p[1], P.number);
            } else if (p[0] == "fiber_m") {
                need(1);
                st.fiber_m = to_int(p[1], P.number);
            } else if (p[0] == "drop_h0") {
                st.drop_h0 = true;
            } else if (p[0] == "forward") {
                st.forward = true;
            } else if (p[0] == "row") {
                auto kv = kv_pairs(p, 1, P.number);
                if (!kv.count("m") || !kv.count("n")) fail_at(P.number, "row needs m= and n=");
                st.rows.emplace_back(to_int(kv["m"], P.number), to_int(kv["n"], P.number));
            } else if (p[0] == "truncation") {
                need(1);
                st.trunc_override = to_int(p[1], P.number);
            } else if (p[0] == "source") {
                need(1);
                if (p[1] == "input") st.provenance = WorksheetStep::Provenance::Input;
                else if (p[1] == "derived") st.provenance = WorksheetStep::Provenance::Derived;
                else if (p[1] == "fixed") st.provenance = WorksheetStep::Provenance::Fixed;
                else fail_at(P.number, "source must be input|derived|fixed");
                if (p.size() > 2) st.note = p[2];
            } else if (p[0] == "expect") {
                need(2);
                if (p[1] == "even") st.expect_even = true;
                else if (p[1] != "all") fail_at(P.number, "expect needs even|all");
                st.expect = parse_rat_list(p[2], P.number);
            } else {
                fail_at(P.number, "unknown step field '" + p[0] + "'");
            }
            ++li;
        }
        if (!closed) fail_at(L.number, "step '" + st.name + "' missing 'end'");
        if (st.provenance == WorksheetStep::Provenance::Input && st.note.empty())
            fail_at(st.line, "input-provenance step '" + st.name + "' needs a note");
        // named references must resolve to earlier steps
        auto known = [&](const std::string& n) {
            return std::find(known_names.begin(), known_names.end(), n) != known_names.end();
        };
        if (!st.of.empty() && !known(st.of))
            fail_at(st.line, "step '" + st.name + "' references undefined name '" + st.of + "'");
        for (const std::string& term : st.terms)
            if (!known(term))
                fail_at(st.line, "step '" + st.name + "' references undefined name '" + term + "'");
        known_names.push_back(st.name);
        w.steps.push_back(std::move(st));
    }
    return w;
}

Worksheet load_worksheet(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open worksheet: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_worksheet(ss.str());
}

std::string Worksheet::serialize() const {
    std::ostringstream os;
    if (!title.empty()) os << "meta title \"" << title << "\"\n";
    os << "meta truncation " << truncation << "\n";
    os << "meta codim_mode " << (codim_mode == CodimMode::PaperOverride ? "paper" : "rootcount")
       << "\n";
    auto prov = [](WorksheetStep::Provenance p) {
        switch (p) {
            case WorksheetStep::Provenance::Input: return "input";
            case WorksheetStep::Provenance::Derived: return "derived";
            case WorksheetStep::Provenance::Fixed: return "fixed";
            default: return "";
        }
    };
    for (const WorksheetStep& st : steps) {
        os << "\nstep " << st.name << " " << st.kind << "\n";
        if (!st.expr.empty()) os << "  expr \"" << st.expr << "\"\n";
        if (st.vars) os << "  vars " << st.vars << "\n";
        if (st.degree) os << "  degree " << st.degree << "\n";
        if (st.auto_strata) os << "  auto_strata\n";
        for (const auto& s : st.strata) {
            os << "  stratum codim=" << s.codim << " rootcount=" << s.rootcount << " branch=\""
               << s.branch << "\"";
            if (!s.note.empty()) os << " note=\"" << s.note << "\"";
            os << "\n";
        }
        if (st.d_R) os << "  dR " << st.d_R << "\n";
        if (!st.center.empty()) os << "  center \"" << st.center << "\"\n";
        for (const auto& [c, e] : st.removals)
            os << "  removal codim=" << c << " series=\"" << e << "\"\n";
        if (!st.terms.empty()) {
            os << "  terms";
            for (const auto& t : st.terms) os << " " << t;
            os << "\n";
        }
        if (!st.of.empty()) os << "  of " << st.of << "\n";
        if (st.dim) os << "  dim " << st.dim << "\n";
        if (!st.base.empty()) os << "  base \"" << st.base << "\"\n";
        if (!st.fiber.empty()) os << "  fiber \"" << st.fiber << "\"\n";
        if (st.fiber_dim) os << "  fiber_dim " << *st.fiber_dim << "\n";
        if (st.lambda_threshold) os << "  lambda_threshold " << *st.lambda_threshold << "\n";
        if (st.complete_dim) os << "  complete_dim " << *st.complete_dim << "\n";
        if (st.stored) os << "  stored \"" << *st.stored << "\"\n";
        if (!st.z_expr.empty()) os << "  z \"" << st.z_expr << "\"\n";
        if (st.codim_real) os << "  codim_real " << st.codim_real << "\n";
        if (st.fiber_m) os << "  fiber_m " << st.fiber_m << "\n";
        if (st.drop_h0) os << "  drop_h0\n";
        if (st.forward) os << "  forward\n";
        for (auto [m, n] : st.rows) os << "  row m=" << m << " n=" << n << "\n";
        if (st.trunc_override) os << "  truncation " << *st.trunc_override << "\n";
        if (st.provenance != WorksheetStep::Provenance::None) {
            os << "  source " << prov(st.provenance);
            if (!st.note.empty()) os << " \"" << st.note << "\"";
            os << "\n";
        }
        if (st.expect) {
            os << "  expect " << (st.expect_even ? "even" : "all") << " [";
            for (size_t i = 0; i < st.expect->size(); ++i) {
                if (i) os << ", ";
                os << (*st.expect)[i].to_string();
            }
            os << "]\n";
        }
        os << "end\n";
    }
    return os.str();
}

bool Report::all_golden_pass() const {
    for (const StepReport& s : steps)
        if (s.golden == StepReport::Golden::Fail) return false;
    return true;
}

int Report::golden_count() const {
    int n = 0;
    for (const StepReport& s : steps)
        if (s.golden != StepReport::Golden::None) ++n;
    return n;
}

const StepReport* Report::find(const std::string& name) const {
    for (const StepReport& s : steps)
        if (s.name == name) return &s;
    return nullptr;
}

std::string Report::render_text() const {
    std::ostringstream os;
    for (const StepReport& s : steps) {
        os << s.name << " (" << s.kind << "): " << s.value.to_pretty_string() << "\n";
        if (s.golden == StepReport::Golden::Pass) os << "  golden: pass\n";
        if (s.golden == StepReport::Golden::Fail)
            os << "  golden: FAIL at degree " << s.first_mismatch << " (expected "
               << s.expected_at.to_string() << ", got " << s.got_at.to_string() << ")\n";
        for (const std::string& n : s.notes) os << "  note: " << n << "\n";
    }
    return os.str();
}

std::string Report::render_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const StepReport& s : steps) {
        nlohmann::json e;
        e["name"] = s.name;
        e["kind"] = s.kind;
        e["series"] = nlohmann::json::parse(s.value.to_json());
        e["golden"] = s.golden == StepReport::Golden::None
                          ? "none"
                          : (s.golden == StepReport::Golden::Pass ? "pass" : "fail");
        if (s.golden == StepReport::Golden::Fail) e["first_mismatch_degree"] = s.first_mismatch;
        e["notes"] = s.notes;
        e["millis"] = s.millis;
        j.push_back(e);
    }
    return j.dump(2);
}

Report evaluate_worksheet(const Worksheet& w, EquivariantEngine* ext_engine) {
    EquivariantOptions eopts;
    eopts.codim_mode = w.codim_mode;
    EquivariantEngine own_engine(eopts);
    EquivariantEngine* engine = ext_engine ? ext_engine : &own_engine;

    Report rep;
    std::map<std::string, TruncatedSeries> names;
    for (const WorksheetStep& st : w.steps) {
        auto t0 = std::chrono::steady_clock::now();
        int trunc = st.trunc_override.value_or(w.truncation);
        ExprEnv env{trunc, &names, engine};
        auto ev = [&](const std::string& text) {
            try {
                return eval_series_expr(text, env);
            } catch (const std::exception& e) {
                throw std::invalid_argument("step '" + st.name + "' (line " +
                                            std::to_string(st.line) + "): " + e.what());
            }
        };
        StepReport sr;
        sr.name = st.name;
        sr.kind = st.kind;
        TruncatedSeries value(trunc);
        if (st.kind == "literal" || st.kind == "combine") {
            value = ev(st.expr);
        } else if (st.kind == "equivariant_ss") {
            if (st.auto_strata) {
                value = engine->hypersurface_series(st.vars, st.degree, trunc);
            } else {
                WeightTable t = enumerate_monomials(st.vars, st.degree);
                GroupDescriptor g = GroupDescriptor::sl(st.vars);
                value = projective_series((int)t.size() - 1, trunc) * classifying_series(g, trunc);
                for (const auto& s : st.strata) {
                    TruncatedSeries branch = ev(s.branch);
                    value = value - branch.shifted(2 * s.codim);
                    if (s.codim != s.rootcount)
                        sr.notes.push_back("stratum uses pinned codimension " +
                                           std::to_string(s.codim) + " (root count " +
                                           std::to_string(s.rootcount) + ")");
                }
            }
        } else if (st.kind == "blowup") {
            BlowupStep b;
            b.name = st.name;
            b.d_R = st.d_R;
            b.center_series = ev(st.center);
            for (const auto& [c, e] : st.removals) b.removals.emplace_back(c, ev(e));
            value = blowup_correction(b, trunc);
        } else if (st.kind == "sum") {
            value = TruncatedSeries(trunc);
            for (const std::string& term : st.terms) {
                auto it = names.find(term);
                if (it == names.end())
                    fail_at(st.line, "sum step '" + st.name + "': unknown term '" + term + "'");
                value = value + it->second.truncated(trunc);
            }
        } else if (st.kind == "duality") {
            auto it = names.find(st.of);
            if (it == names.end()) fail_at(st.line, "duality: unknown reference '" + st.of + "'");
            DualityResult dr = duality_complete(it->second, st.dim);
            if (!dr.ok)
                sr.notes.push_back("palindrome conflict at degree " +
                                   std::to_string(dr.conflict_degree) + ": given " +
                                   dr.given.to_string() + ", mirrored " + dr.mirrored.to_string());
            value = dr.poly;
        } else if (st.kind == "blowdown") {
            BlowdownStep b;
            b.name = st.name;
            b.base_series = ev(st.base);
            b.fiber_series = ev(st.fiber);
            b.fiber_complex_dim = st.fiber_dim;
            b.lambda_threshold = st.lambda_threshold;
            b.result_complex_dim = st.complete_dim;
            value = ic_blowdown(b, trunc);
            if (st.stored) {
                TruncatedSeries stored = ev(*st.stored);
                if (stored != value) {
                    std::string degs;
                    for (int k = 0; k <= trunc; ++k)
                        if (stored[k] != value[k]) {
                            if (!degs.empty()) degs += ", ";
                            degs += "t^" + std::to_string(k) + " (stored " +
                                    stored[k].to_string() + ", recomputed " +
                                    value[k].to_string() + ")";
                        }
                    sr.notes.push_back("stored series differs from the degree-shift recomputation at " + degs);
                }
                value = stored;   // the ledger keeps the stored golden
            }
        } else if (st.kind == "pbundle") {
            auto it = names.find(st.of);
            if (it == names.end()) fail_at(st.line, "pbundle: unknown reference '" + st.of + "'");
            PBundleStep p;
            p.z_series = ev(st.z_expr);
            p.codim_real = st.codim_real;
            p.fiber_dim_m = st.fiber_m;
            p.drop_h0 = st.drop_h0;
            TruncatedSeries known = it->second.truncated(trunc);
            value = st.forward ? decomp_pbundle_forward(known, p) : decomp_pbundle_inverse(known, p);
            for (int k = 0; k <= trunc; ++k)
                if (value[k].is_negative()) {
                    sr.notes.push_back("ledger inconsistency: negative coefficient at degree " +
                                       std::to_string(k));
                    break;
                }
        } else if (st.kind == "semismall") {
            auto it = names.find(st.of);
            if (it == names.end()) fail_at(st.line, "semismall: unknown reference '" + st.of + "'");
            value = it->second.truncated(trunc);
            for (auto [m, n] : st.rows) {
                SemismallStep s;
                s.z_series = TruncatedSeries::one(trunc);
                s.fiber_dim_m = m;
                s.ambient_dim_n = n;
                value = decomp_semismall(value, s);
            }
            for (int k = 0; k <= trunc; ++k)
                if (value[k].is_negative()) {
                    sr.notes.push_back("ledger inconsistency: negative coefficient at degree " +
                                       std::to_string(k));
                    break;
                }
        } else {
            fail_at(st.line, "unhandled step kind");
        }

        if (st.expect) {
            const std::vector<Rat>& exp = *st.expect;
            sr.golden = StepReport::Golden::Pass;
            int stride = st.expect_even ? 2 : 1;
            for (int k = 0; k <= value.truncation(); ++k) {
                Rat want;
                if (st.expect_even && (k % 2)) {
                    want = Rat(0);
                } else {
                    size_t idx = k / stride;
                    if (idx >= exp.size()) break;   // golden covers a prefix
                    want = exp[idx];
                }
                if (value[k] != want) {
                    sr.golden = StepReport::Golden::Fail;
                    sr.first_mismatch = k;
                    sr.expected_at = want;
                    sr.got_at = value[k];
                    break;
                }
            }
        }
        sr.value = value;
        names.emplace(st.name, value);
        auto t1 = std::chrono::steady_clock::now();
        sr.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rep.steps.push_back(std::move(sr));
    }
    return rep;
}

int verify_golden(const Worksheet& w, std::string* diagnostics) {
    try {
        Report rep = evaluate_worksheet(w);
        if (rep.golden_count() == 0) {
            if (diagnostics) *diagnostics = "worksheet has no golden expectations";
            return 2;
        }
        std::ostringstream os;
        bool ok = true;
        for (const StepReport& s : rep.steps) {
            if (s.golden == StepReport::Golden::Fail) {
                ok = false;
                os << s.name << ": first differing degree " << s.first_mismatch << ": expected "
                   << s.expected_at.to_string() << ", got " << s.got_at.to_string() << "\n";
            }
            for (const std::string& n : s.notes) os << s.name << ": " << n << "\n";
        }
        if (diagnostics) *diagnostics = os.str();
        return ok ? 0 : 1;
    } catch (const std::exception& e) {
        if (diagnostics) *diagnostics = e.what();
        return 2;
    }
}

} // namespace kirwan
