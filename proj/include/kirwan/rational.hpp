#ifndef KIRWAN_RATIONAL_HPP
#define KIRWAN_RATIONAL_HPP

#include "kirwan/bigint.hpp"

#include <string>
#include <vector>

namespace kirwan {

// Exact rational number. Always reduced, denominator > 0.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d);
    Rat(BigInt n, BigInt d);
    explicit Rat(const std::string& s);   // "p", "-p", "p/q"

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_negative() const { return num_.is_negative(); }
    bool is_integer() const { return den_.is_one(); }

    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const;

    Rat& operator+=(const Rat& b) { *this = *this + b; return *this; }
    Rat& operator-=(const Rat& b) { *this = *this - b; return *this; }
    Rat& operator*=(const Rat& b) { *this = *this * b; return *this; }
    Rat& operator/=(const Rat& b) { *this = *this / b; return *this; }

    int cmp(const Rat& b) const;
    friend bool operator==(const Rat& a, const Rat& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.cmp(b) != 0; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.cmp(b) >= 0; }

    std::string to_string() const;        // "p" or "p/q"
    size_t hash() const;

private:
    BigInt num_, den_;
    void reduce();
};

using RatVec = std::vector<Rat>;

Rat dot(const RatVec& a, const RatVec& b);
RatVec operator+(const RatVec& a, const RatVec& b);
RatVec operator-(const RatVec& a, const RatVec& b);
RatVec scale(const Rat& c, const RatVec& v);
bool is_zero_vec(const RatVec& v);
std::string vec_to_string(const RatVec& v);

} // namespace kirwan

#endif
