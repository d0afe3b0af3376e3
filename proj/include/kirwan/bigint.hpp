#ifndef KIRWAN_BIGINT_HPP
#define KIRWAN_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace kirwan {

// Arbitrary-precision signed integer, sign-magnitude with base-2^32 limbs.
// Magnitudes are normalized: no trailing zero limbs, zero has empty limbs
// and sign 0.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    explicit BigInt(const std::string& decimal);

    static BigInt from_i128(__int128 v);

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    bool is_one() const;

    BigInt operator-() const;
    BigInt& negate();

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    // Truncated division (rounds toward zero), as in C++ integer division.
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    BigInt& operator+=(const BigInt& b) { *this = *this + b; return *this; }
    BigInt& operator-=(const BigInt& b) { *this = *this - b; return *this; }
    BigInt& operator*=(const BigInt& b) { *this = *this * b; return *this; }

    // -1, 0, +1
    int cmp(const BigInt& b) const;
    friend bool operator==(const BigInt& a, const BigInt& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return a.cmp(b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return a.cmp(b) >= 0; }

    static BigInt gcd(BigInt a, BigInt b);   // result >= 0

    std::string to_string() const;
    // Fits in long long? (used for fast paths and hashing)
    bool fits_ll() const;
    long long to_ll() const;  // valid only if fits_ll()

    size_t hash() const;

private:
    int sign_ = 0;                 // -1, 0, +1
    std::vector<uint32_t> mag_;    // little-endian limbs

    void trim();
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

} // namespace kirwan

#endif
