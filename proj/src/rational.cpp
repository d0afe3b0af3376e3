#include "kirwan/rational.hpp"

#include <stdexcept>

namespace kirwan {

Rat::Rat(long long n, long long d) : num_(n), den_(d) { reduce(); }
Rat::Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

Rat::Rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        num_ = BigInt(s);
        den_ = BigInt(1);
    } else {
        num_ = BigInt(s.substr(0, slash));
        den_ = BigInt(s.substr(slash + 1));
    }
    reduce();
}

void Rat::reduce() {
    if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.is_negative()) {
        num_.negate();
        den_.negate();
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num_ * b.num_, a.den_ * b.den_); }
Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw std::domain_error("Rat: division by zero");
    return Rat(a.num_ * b.den_, a.den_ * b.num_);
}

Rat Rat::operator-() const {
    Rat r = *this;
    r.num_.negate();
    return r;
}

int Rat::cmp(const Rat& b) const { return (num_ * b.den_).cmp(b.num_ * den_); }

std::string Rat::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

size_t Rat::hash() const { return num_.hash() * 31 + den_.hash(); }

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rat s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RatVec operator+(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec operator-(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec scale(const Rat& c, const RatVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

bool is_zero_vec(const RatVec& v) {
    for (const Rat& x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::string vec_to_string(const RatVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].to_string();
    }
    return s + ")";
}

} // namespace kirwan
