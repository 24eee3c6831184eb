#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuspjet {

struct arithmetic_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arbitrary-precision signed integer, sign-magnitude.
/// Magnitudes up to 64 bits live in `small_`; larger ones spill into
/// base-2^32 little-endian limbs. Most values in this library stay small,
/// so the common path never allocates.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    static BigInt from_string(const std::string& dec);

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    bool is_small() const { return big_.empty(); }

    bool fits_int64() const;
    long long to_int64() const;   // throws if out of range
    double to_double() const;

    std::string to_string() const;

    friend BigInt operator-(const BigInt& a);
    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    // Truncated quotient/remainder, C semantics (remainder has dividend's sign).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    friend bool operator==(const BigInt& a, const BigInt& b);
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b);
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

    static BigInt abs(const BigInt& a);
    static BigInt gcd(const BigInt& a, const BigInt& b);

    // Floor of the square root of a non-negative value.
    static BigInt isqrt(const BigInt& a);
    // Exact square root; sets ok=false when the value is not a perfect square.
    static BigInt sqrt_exact(const BigInt& a, bool& ok);

private:
    int sign_ = 0;                 // -1, 0, +1
    std::uint64_t small_ = 0;      // magnitude when big_ is empty
    std::vector<std::uint32_t> big_;

    void set_u64(std::uint64_t mag, int sign);
    std::vector<std::uint32_t> limbs() const;                   // magnitude as limbs
    void set_limbs(std::vector<std::uint32_t> limbs, int sign); // normalizes

    static int cmp_mag(const BigInt& a, const BigInt& b);
    static BigInt add_mag(const BigInt& a, const BigInt& b, int sign);
    static BigInt sub_mag(const BigInt& a, const BigInt& b, int sign); // |a| >= |b|
    size_t bit_length() const;
    bool bit(size_t i) const;
};

/// Exact rational. Always normalized: den > 0, gcd(num, den) = 1, 0 = 0/1.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long v) : num_(v), den_(1) {}
    Rat(long long n, long long d);
    Rat(BigInt n, BigInt d);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_ == BigInt(1) && num_ == BigInt(1); }
    int sign() const { return num_.sign(); }

    double to_double() const;
    std::string to_string() const;  // "p" or "p/q"

    friend Rat operator-(const Rat& a) { return Rat::raw(-a.num_, a.den_); }
    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);

    Rat& operator+=(const Rat& b) { *this = *this + b; return *this; }
    Rat& operator-=(const Rat& b) { *this = *this - b; return *this; }
    Rat& operator*=(const Rat& b) { *this = *this * b; return *this; }
    Rat& operator/=(const Rat& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rat& a, const Rat& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b);
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    static Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }

    // Exact square root of a non-negative rational; throws arithmetic_error
    // when num or den is not a perfect square.
    static Rat sqrt_exact(const Rat& a);

private:
    BigInt num_, den_;
    static Rat raw(BigInt n, BigInt d)  // already normalized
    {
        Rat r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }
    void normalize();
};

// Scalar adapters shared by Jet<S> for S in {Rat, double}.
inline double to_double(const Rat& x) { return x.to_double(); }
inline double to_double(double x) { return x; }
inline int scalar_sign(const Rat& x) { return x.sign(); }
inline int scalar_sign(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
inline bool scalar_is_zero(const Rat& x) { return x.is_zero(); }
inline bool scalar_is_zero(double x) { return x == 0.0; }
inline std::string scalar_to_string(const Rat& x) { return x.to_string(); }
std::string scalar_to_string(double x);

Rat scalar_sqrt(const Rat& x);     // exact or throws
double scalar_sqrt(double x);
Rat scalar_inv(const Rat& x);
double scalar_inv(double x);

} // namespace cuspjet
