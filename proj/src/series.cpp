#include "kirwan/series.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kirwan {

TruncatedSeries::TruncatedSeries(int trunc, std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
    if ((int)coeffs_.size() != trunc + 1)
        throw std::invalid_argument("TruncatedSeries: coefficient count must be trunc+1");
}

TruncatedSeries TruncatedSeries::one(int trunc) {
    TruncatedSeries s(trunc);
    s.coeffs_[0] = Rat(1);
    return s;
}

TruncatedSeries TruncatedSeries::monomial(int degree, int trunc, const Rat& c) {
    TruncatedSeries s(trunc);
    if (degree <= trunc) s.coeffs_[degree] = c;
    return s;
}

TruncatedSeries TruncatedSeries::truncated(int trunc) const {
    TruncatedSeries s(trunc);
    for (int k = 0; k <= trunc && k <= truncation(); ++k) s.coeffs_[k] = coeffs_[k];
    return s;
}

void TruncatedSeries::check_same(const TruncatedSeries& b) const {
    if (truncation() != b.truncation())
        throw std::invalid_argument("TruncatedSeries: mismatched truncation orders");
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_same(b);
    TruncatedSeries r(a.truncation());
    for (int k = 0; k <= a.truncation(); ++k) r.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
    return r;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_same(b);
    TruncatedSeries r(a.truncation());
    for (int k = 0; k <= a.truncation(); ++k) r.coeffs_[k] = a.coeffs_[k] - b.coeffs_[k];
    return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_same(b);
    int n = a.truncation();
    TruncatedSeries r(n);
    for (int i = 0; i <= n; ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r(truncation());
    for (int k = 0; k <= truncation(); ++k) r.coeffs_[k] = -coeffs_[k];
    return r;
}

TruncatedSeries TruncatedSeries::operator*(const Rat& c) const {
    TruncatedSeries r(truncation());
    for (int k = 0; k <= truncation(); ++k) r.coeffs_[k] = coeffs_[k] * c;
    return r;
}

TruncatedSeries TruncatedSeries::shifted(int k) const {
    TruncatedSeries r(truncation());
    for (int i = 0; i + k <= truncation(); ++i)
        if (i + k >= 0) r.coeffs_[i + k] = coeffs_[i];
    return r;
}

TruncatedSeries TruncatedSeries::geom_div(int a, int e) const {
    if (a < 1) throw std::domain_error("geom_div: factor exponent must be positive");
    TruncatedSeries r = *this;
    for (int pass = 0; pass < e; ++pass)
        for (int k = a; k <= truncation(); ++k) r.coeffs_[k] += r.coeffs_[k - a];
    return r;
}

TruncatedSeries TruncatedSeries::geom_mul(int a, int e) const {
    TruncatedSeries r = *this;
    for (int pass = 0; pass < e; ++pass)
        for (int k = truncation(); k >= a; --k) r.coeffs_[k] -= r.coeffs_[k - a];
    return r;
}

bool TruncatedSeries::is_zero() const {
    for (const Rat& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

std::string TruncatedSeries::to_pretty_string() const {
    std::string out;
    bool first = true;
    for (int k = 0; k <= truncation(); ++k) {
        const Rat& c = coeffs_[k];
        if (c.is_zero()) continue;
        Rat abs = c.is_negative() ? -c : c;
        if (first) {
            if (c.is_negative()) out += "-";
            first = false;
        } else {
            out += c.is_negative() ? " - " : " + ";
        }
        bool unit = abs == Rat(1);
        if (k == 0 || !unit) out += abs.to_string();
        if (k > 0) {
            out += "t";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    if (first) out = "0";
    return out;
}

TruncatedSeries TruncatedSeries::parse_pretty(const std::string& s, int trunc) {
    struct Term {
        Rat c;
        int deg;
    };
    std::vector<Term> terms;
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; };
    skip_ws();
    if (i < s.size() && s[i] == '0' && i + 1 == s.size()) {
        return TruncatedSeries(trunc < 0 ? 0 : trunc);
    }
    int maxdeg = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    while (i < s.size()) {
        skip_ws();
        std::string numtok;
        while (i < s.size() && (std::isdigit((unsigned char)s[i]) || s[i] == '/')) numtok.push_back(s[i++]);
        Rat c = numtok.empty() ? Rat(1) : Rat(numtok);
        skip_ws();
        if (i < s.size() && s[i] == '*') {
            ++i;
            skip_ws();
        }
        int deg = 0;
        if (i < s.size() && s[i] == 't') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string d;
                while (i < s.size() && std::isdigit((unsigned char)s[i])) d.push_back(s[i++]);
                if (d.empty()) throw std::invalid_argument("series parse: missing exponent");
                deg = std::stoi(d);
            }
        } else if (numtok.empty()) {
            throw std::invalid_argument("series parse: expected coefficient or t");
        }
        if (neg) c = -c;
        terms.push_back({c, deg});
        maxdeg = std::max(maxdeg, deg);
        skip_ws();
        if (i >= s.size()) break;
        if (s[i] == '+') neg = false;
        else if (s[i] == '-') neg = true;
        else throw std::invalid_argument("series parse: expected + or -");
        ++i;
        skip_ws();
    }
    int n = trunc < 0 ? maxdeg : trunc;
    TruncatedSeries out(n);
    for (const Term& t : terms)
        if (t.deg <= n) out.at(t.deg) += t.c;
    return out;
}

std::string TruncatedSeries::to_json() const {
    nlohmann::json j;
    j["truncation"] = truncation();
    std::vector<std::string> cs;
    cs.reserve(coeffs_.size());
    for (const Rat& c : coeffs_) cs.push_back(c.to_string());
    j["coeffs"] = cs;
    return j.dump();
}

TruncatedSeries TruncatedSeries::from_json(const std::string& json) {
    nlohmann::json j = nlohmann::json::parse(json);
    int n = j.at("truncation").get<int>();
    std::vector<std::string> cs = j.at("coeffs").get<std::vector<std::string>>();
    if ((int)cs.size() != n + 1)
        throw std::invalid_argument("series json: coeff count != truncation+1");
    std::vector<Rat> coeffs;
    coeffs.reserve(cs.size());
    for (const std::string& c : cs) coeffs.emplace_back(c);
    return TruncatedSeries(n, std::move(coeffs));
}

GroupDescriptor GroupDescriptor::product(const GroupDescriptor& o) const {
    GroupDescriptor g = *this;
    g.torus_rank += o.torus_rank;
    g.sl_blocks.insert(g.sl_blocks.end(), o.sl_blocks.begin(), o.sl_blocks.end());
    g.gl_blocks.insert(g.gl_blocks.end(), o.gl_blocks.begin(), o.gl_blocks.end());
    g.so2_factors += o.so2_factors;
    g.so3_factors += o.so3_factors;
    return g;
}

std::string GroupDescriptor::to_string() const {
    std::ostringstream os;
    bool any = false;
    auto sep = [&] { if (any) os << " x "; any = true; };
    if (torus_rank) {
        sep();
        os << "T^" << torus_rank;
    }
    for (int n : sl_blocks) {
        sep();
        os << "SL(" << n << ")";
    }
    for (int n : gl_blocks) {
        sep();
        os << "GL(" << n << ")";
    }
    for (int i = 0; i < so2_factors; ++i) {
        sep();
        os << "SO(2)";
    }
    for (int i = 0; i < so3_factors; ++i) {
        sep();
        os << "SO(3)";
    }
    if (!any) os << "1";
    return os.str();
}

TruncatedSeries expand_rational(const std::vector<Rat>& numerator,
                                const std::vector<std::pair<int, int>>& denominator_factors,
                                int trunc) {
    TruncatedSeries s(trunc);
    for (int k = 0; k <= trunc && k < (int)numerator.size(); ++k) s.at(k) = numerator[k];
    for (auto [a, e] : denominator_factors) {
        if (a <= 0) throw std::domain_error("expand_rational: denominator factor (1-t^a) needs a >= 1");
        s = s.geom_div(a, e);
    }
    return s;
}

TruncatedSeries finite_geometric(int lo, int hi, int trunc) {
    if (lo > hi) throw std::invalid_argument("finite_geometric: lo > hi");
    if (lo % 2 || hi % 2 || lo <= 0) throw std::invalid_argument("finite_geometric: bounds must be positive even");
    TruncatedSeries s(trunc);
    for (int k = lo; k <= hi && k <= trunc; k += 2) s.at(k) = Rat(1);
    return s;
}

TruncatedSeries classifying_series(const GroupDescriptor& g, int trunc) {
    TruncatedSeries s = TruncatedSeries::one(trunc);
    if (g.torus_rank) s = s.geom_div(2, g.torus_rank);
    for (int n : g.sl_blocks)
        for (int i = 2; i <= n; ++i) s = s.geom_div(2 * i);
    for (int n : g.gl_blocks)
        for (int i = 1; i <= n; ++i) s = s.geom_div(2 * i);
    if (g.so2_factors) s = s.geom_div(2, g.so2_factors);
    if (g.so3_factors) s = s.geom_div(4, g.so3_factors);
    return s;
}

TruncatedSeries projective_series(int n, int trunc) {
    if (n < 0) throw std::invalid_argument("projective_series: negative dimension");
    TruncatedSeries s(trunc);
    for (int k = 0; k <= n && 2 * k <= trunc; ++k) s.at(2 * k) = Rat(1);
    return s;
}

TruncatedSeries weighted_projective_series(const std::vector<int>& weights, int trunc) {
    if (weights.empty()) throw std::invalid_argument("weighted_projective_series: empty weights");
    return projective_series((int)weights.size() - 1, trunc);
}

TruncatedSeries invariant_torus_series(int k, int trunc) {
    if (k < 1) throw std::invalid_argument("invariant_torus_series: k >= 1 required");
    TruncatedSeries s = TruncatedSeries::one(trunc);
    for (int i = 1; i <= k; ++i) s = s.geom_div(2 * i);
    return s;
}

DualityResult duality_complete(const TruncatedSeries& s, int d) {
    if (s.truncation() < d)
        throw std::invalid_argument("duality_complete: series does not determine degrees 0..d");
    DualityResult res{TruncatedSeries(2 * d), true, -1, Rat(0), Rat(0)};
    for (int k = 0; k <= d; ++k) {
        res.poly.at(k) = s[k];
        res.poly.at(2 * d - k) = s[k];
    }
    for (int k = d + 1; k <= s.truncation(); ++k) {
        Rat mirrored = k <= 2 * d ? res.poly[k] : Rat(0);
        if (s[k] != mirrored) {
            res.ok = false;
            res.conflict_degree = k;
            res.given = s[k];
            res.mirrored = mirrored;
            return res;
        }
    }
    return res;
}

} // namespace kirwan
