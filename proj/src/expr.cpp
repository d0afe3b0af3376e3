#include "kirwan/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace kirwan {

namespace {

// Invert a series with invertible constant term.
TruncatedSeries invert(const TruncatedSeries& s) {
    if (s[0].is_zero()) throw std::invalid_argument("series division: constant term is zero");
    int n = s.truncation();
    TruncatedSeries inv(n);
    Rat c0 = Rat(1) / s[0];
    inv.at(0) = c0;
    for (int k = 1; k <= n; ++k) {
        Rat acc;
        for (int j = 1; j <= k; ++j) acc += s[j] * inv[k - j];
        inv.at(k) = -acc * c0;
    }
    return inv;
}

struct Parser {
    const std::string& s;
    size_t i = 0;
    const ExprEnv& env;

    Parser(const std::string& text, const ExprEnv& e) : s(text), env(e) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("expr: " + msg + " at column " + std::to_string(i + 1) +
                                    " in \"" + s + "\"");
    }
    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool peek(char c) {
        skip();
        return i < s.size() && s[i] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++i;
            return true;
        }
        return false;
    }
    long parse_uint() {
        skip();
        if (i >= s.size() || !std::isdigit((unsigned char)s[i])) fail("expected number");
        long v = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
        return v;
    }
    std::string parse_ident() {
        skip();
        std::string id;
        while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_' || s[i] == '^'))
            id.push_back(s[i++]);
        return id;
    }

    TruncatedSeries expr() {
        skip();
        bool neg = eat('-');
        if (!neg) eat('+');
        TruncatedSeries acc = term();
        if (neg) acc = -acc;
        while (true) {
            skip();
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else break;
        }
        return acc;
    }

    bool at_t_var() {
        skip();
        if (i >= s.size() || s[i] != 't') return false;
        size_t j = i + 1;
        return j >= s.size() || !(std::isalnum((unsigned char)s[j]) || s[j] == '_');
    }

    TruncatedSeries term() {
        TruncatedSeries acc = factor();
        while (true) {
            skip();
            if (eat('*')) {
                acc = acc * factor();
            } else if (eat('/')) {
                // juxtaposed parenthesized factors after '/' form one denominator
                TruncatedSeries den = factor();
                while (peek('(')) den = den * factor();
                acc = acc * invert(den);
            } else if (peek('(') || at_t_var()) {
                acc = acc * factor();   // juxtaposition: "(1-t^2)(1-t^4)", "3t^2"
            } else {
                break;
            }
        }
        return acc;
    }

    TruncatedSeries factor() {
        TruncatedSeries base = atom();
        skip();
        if (eat('^')) {
            long e = parse_uint();
            TruncatedSeries out = TruncatedSeries::one(env.trunc);
            for (long k = 0; k < e; ++k) out = out * base;
            return out;
        }
        return base;
    }

    TruncatedSeries call(const std::string& fn) {
        if (!eat('(')) fail("expected ( after " + fn);
        auto close = [&] {
            if (!eat(')')) fail("expected ) closing " + fn);
        };
        if (fn == "BG") {
            std::string arg = parse_ident();
            close();
            GroupDescriptor g;
            if (arg.rfind("SL", 0) == 0) g.sl_blocks.push_back(std::stoi(arg.substr(2)));
            else if (arg.rfind("GL", 0) == 0) g.gl_blocks.push_back(std::stoi(arg.substr(2)));
            else if (arg.rfind("T^", 0) == 0) g.torus_rank = std::stoi(arg.substr(2));
            else if (arg == "T") g.torus_rank = 1;
            else if (arg == "SO2") g.so2_factors = 1;
            else if (arg == "SO3") g.so3_factors = 1;
            else fail("unknown group " + arg);
            return classifying_series(g, env.trunc);
        }
        if (fn == "Proj") {
            long n = parse_uint();
            close();
            return projective_series((int)n, env.trunc);
        }
        if (fn == "WProj") {
            std::vector<int> w;
            w.push_back((int)parse_uint());
            while (eat(',')) w.push_back((int)parse_uint());
            close();
            return weighted_projective_series(w, env.trunc);
        }
        if (fn == "InvT") {
            long k = parse_uint();
            close();
            return invariant_torus_series((int)k, env.trunc);
        }
        if (fn == "FinGeo") {
            long lo = parse_uint();
            if (!eat(',')) fail("FinGeo needs two arguments");
            long hi = parse_uint();
            close();
            return finite_geometric((int)lo, (int)hi, env.trunc);
        }
        if (fn == "SS" || fn == "SSP") {
            long n = parse_uint();
            if (!eat(',')) fail(fn + " needs two arguments");
            long d = parse_uint();
            close();
            if (!env.engine) fail(fn + " needs an equivariant engine");
            EquivariantOptions saved = env.engine->options();
            EquivariantOptions opts = saved;
            opts.codim_mode = fn == "SSP" ? CodimMode::PaperOverride : CodimMode::Rootcount;
            EquivariantEngine scoped(opts);
            // reuse the shared engine when the mode matches, else a scoped one
            if (opts.codim_mode == saved.codim_mode)
                return env.engine->hypersurface_series((int)n, (int)d, env.trunc);
            return scoped.hypersurface_series((int)n, (int)d, env.trunc);
        }
        if (fn == "Pal") {
            TruncatedSeries inner = expr();
            if (!eat(',')) fail("Pal needs a dimension argument");
            long dd = parse_uint();
            close();
            DualityResult dr = duality_complete(inner.truncated((int)dd), (int)dd);
            if (!dr.ok)
                fail("Pal: inconsistent palindrome at degree " + std::to_string(dr.conflict_degree));
            return dr.poly.truncated(env.trunc);
        }
        fail("unknown function " + fn);
    }

    TruncatedSeries atom() {
        skip();
        if (i >= s.size()) fail("unexpected end");
        char c = s[i];
        if (std::isdigit((unsigned char)c)) {
            long v = parse_uint();
            TruncatedSeries out = TruncatedSeries::one(env.trunc);
            return out * Rat(v);
        }
        if (c == 't' && at_t_var()) {
            ++i;
            return TruncatedSeries::monomial(1, env.trunc);
        }
        if (c == '(') {
            ++i;
            TruncatedSeries inner = expr();
            if (!eat(')')) fail("expected )");
            return inner;
        }
        if (std::isalpha((unsigned char)c)) {
            std::string id = parse_ident();
            skip();
            if (i < s.size() && s[i] == '(') return call(id);
            if (env.names) {
                auto it = env.names->find(id);
                if (it != env.names->end()) return it->second.truncated(env.trunc);
            }
            fail("unknown name " + id);
        }
        fail("unexpected character");
    }
};

} // namespace

TruncatedSeries eval_series_expr(const std::string& text, const ExprEnv& env) {
    Parser p(text, env);
    TruncatedSeries out = p.expr();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    return out;
}

} // namespace kirwan
