#include "cuspjet/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace cuspjet {

// ---------------------------------------------------------------------------
// BigInt
// ---------------------------------------------------------------------------

BigInt::BigInt(long long v)
{
    if (v == 0) return;
    if (v > 0) {
        set_u64(static_cast<std::uint64_t>(v), +1);
    } else {
        // avoid UB on LLONG_MIN
        set_u64(~static_cast<std::uint64_t>(v) + 1u, -1);
    }
}

void BigInt::set_u64(std::uint64_t mag, int sign)
{
    big_.clear();
    small_ = mag;
    sign_ = mag == 0 ? 0 : sign;
}

std::vector<std::uint32_t> BigInt::limbs() const
{
    if (!big_.empty()) return big_;
    std::vector<std::uint32_t> out;
    if (small_ != 0) {
        out.push_back(static_cast<std::uint32_t>(small_));
        if (small_ >> 32) out.push_back(static_cast<std::uint32_t>(small_ >> 32));
    }
    return out;
}

void BigInt::set_limbs(std::vector<std::uint32_t> limbs, int sign)
{
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
    if (limbs.empty()) {
        set_u64(0, 0);
        return;
    }
    if (limbs.size() <= 2) {
        std::uint64_t mag = limbs[0];
        if (limbs.size() == 2) mag |= static_cast<std::uint64_t>(limbs[1]) << 32;
        set_u64(mag, sign);
        return;
    }
    small_ = 0;
    big_ = std::move(limbs);
    sign_ = sign;
}

bool BigInt::fits_int64() const
{
    if (big_.empty()) {
        if (sign_ >= 0) return small_ <= 0x7fffffffffffffffull;
        return small_ <= 0x8000000000000000ull;
    }
    return false;
}

long long BigInt::to_int64() const
{
    if (!fits_int64()) throw arithmetic_error("BigInt: value does not fit in int64");
    if (sign_ == 0) return 0;
    if (sign_ > 0) return static_cast<long long>(small_);
    return -static_cast<long long>(small_ - 1) - 1;
}

double BigInt::to_double() const
{
    if (sign_ == 0) return 0.0;
    double mag = 0.0;
    if (big_.empty()) {
        mag = static_cast<double>(small_);
    } else {
        for (auto it = big_.rbegin(); it != big_.rend(); ++it)
            mag = mag * 4294967296.0 + static_cast<double>(*it);
    }
    return sign_ < 0 ? -mag : mag;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b)
{
    if (a.big_.empty() && b.big_.empty())
        return a.small_ < b.small_ ? -1 : (a.small_ > b.small_ ? 1 : 0);
    auto la = a.limbs(), lb = b.limbs();
    if (la.size() != lb.size()) return la.size() < lb.size() ? -1 : 1;
    for (size_t i = la.size(); i-- > 0;)
        if (la[i] != lb[i]) return la[i] < lb[i] ? -1 : 1;
    return 0;
}

bool operator==(const BigInt& a, const BigInt& b)
{
    return a.sign_ == b.sign_ && BigInt::cmp_mag(a, b) == 0;
}

bool operator<(const BigInt& a, const BigInt& b)
{
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int c = BigInt::cmp_mag(a, b);
    return a.sign_ >= 0 ? c < 0 : c > 0;
}

BigInt operator-(const BigInt& a)
{
    BigInt r = a;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs(const BigInt& a)
{
    BigInt r = a;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt BigInt::add_mag(const BigInt& a, const BigInt& b, int sign)
{
    if (a.big_.empty() && b.big_.empty()) {
        std::uint64_t s;
        if (!__builtin_add_overflow(a.small_, b.small_, &s)) {
            BigInt r;
            r.set_u64(s, sign);
            return r;
        }
    }
    auto la = a.limbs(), lb = b.limbs();
    if (la.size() < lb.size()) la.swap(lb);
    std::uint64_t carry = 0;
    for (size_t i = 0; i < la.size(); ++i) {
        std::uint64_t t = carry + la[i] + (i < lb.size() ? lb[i] : 0u);
        la[i] = static_cast<std::uint32_t>(t);
        carry = t >> 32;
    }
    if (carry) la.push_back(static_cast<std::uint32_t>(carry));
    BigInt r;
    r.set_limbs(std::move(la), sign);
    return r;
}

BigInt BigInt::sub_mag(const BigInt& a, const BigInt& b, int sign)
{
    if (a.big_.empty() && b.big_.empty()) {
        BigInt r;
        r.set_u64(a.small_ - b.small_, sign);
        return r;
    }
    auto la = a.limbs(), lb = b.limbs();
    std::int64_t borrow = 0;
    for (size_t i = 0; i < la.size(); ++i) {
        std::int64_t t = static_cast<std::int64_t>(la[i]) - borrow -
                         (i < lb.size() ? static_cast<std::int64_t>(lb[i]) : 0);
        borrow = 0;
        if (t < 0) {
            t += 1ll << 32;
            borrow = 1;
        }
        la[i] = static_cast<std::uint32_t>(t);
    }
    BigInt r;
    r.set_limbs(std::move(la), sign);
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b)
{
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.sign_ == b.sign_) return BigInt::add_mag(a, b, a.sign_);
    int c = BigInt::cmp_mag(a, b);
    if (c == 0) return BigInt{};
    return c > 0 ? BigInt::sub_mag(a, b, a.sign_) : BigInt::sub_mag(b, a, b.sign_);
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b)
{
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt{};
    int sign = a.sign_ * b.sign_;
    if (a.big_.empty() && b.big_.empty()) {
        unsigned __int128 p = static_cast<unsigned __int128>(a.small_) * b.small_;
        if ((p >> 64) == 0) {
            BigInt r;
            r.set_u64(static_cast<std::uint64_t>(p), sign);
            return r;
        }
    }
    auto la = a.limbs(), lb = b.limbs();
    std::vector<std::uint32_t> prod(la.size() + lb.size(), 0);
    for (size_t i = 0; i < la.size(); ++i) {
        std::uint64_t carry = 0;
        for (size_t j = 0; j < lb.size(); ++j) {
            std::uint64_t t = static_cast<std::uint64_t>(la[i]) * lb[j] + prod[i + j] + carry;
            prod[i + j] = static_cast<std::uint32_t>(t);
            carry = t >> 32;
        }
        size_t k = i + lb.size();
        while (carry) {
            std::uint64_t t = prod[k] + carry;
            prod[k] = static_cast<std::uint32_t>(t);
            carry = t >> 32;
            ++k;
        }
    }
    BigInt r;
    r.set_limbs(std::move(prod), sign);
    return r;
}

size_t BigInt::bit_length() const
{
    if (sign_ == 0) return 0;
    if (big_.empty()) return 64 - __builtin_clzll(small_);
    return (big_.size() - 1) * 32 + (32 - __builtin_clz(big_.back()));
}

bool BigInt::bit(size_t i) const
{
    if (big_.empty()) return i < 64 && ((small_ >> i) & 1u);
    size_t limb = i / 32;
    if (limb >= big_.size()) return false;
    return (big_[limb] >> (i % 32)) & 1u;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r)
{
    if (b.sign_ == 0) throw arithmetic_error("BigInt: division by zero");
    if (a.sign_ == 0) {
        q = BigInt{};
        r = BigInt{};
        return;
    }
    if (a.big_.empty() && b.big_.empty()) {
        BigInt qq, rr;
        qq.set_u64(a.small_ / b.small_, a.sign_ * b.sign_);
        rr.set_u64(a.small_ % b.small_, a.sign_);
        q = qq;
        r = rr;
        return;
    }
    // binary long division on magnitudes; slow path is rare
    BigInt A = abs(a), B = abs(b);
    if (cmp_mag(A, B) < 0) {
        q = BigInt{};
        r = a;
        return;
    }
    size_t n = A.bit_length();
    std::vector<std::uint32_t> qrl((n + 31) / 32, 0);
    BigInt rem;
    for (size_t i = n; i-- > 0;) {
        rem = rem + rem;
        if (A.bit(i)) rem = rem + BigInt(1);
        if (cmp_mag(rem, B) >= 0) {
            rem = rem - B;
            qrl[i / 32] |= 1u << (i % 32);
        }
    }
    BigInt qq;
    qq.set_limbs(std::move(qrl), a.sign_ * b.sign_);
    if (rem.sign_ != 0) rem.sign_ = a.sign_;
    q = qq;
    r = rem;
}

BigInt operator/(const BigInt& a, const BigInt& b)
{
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b)
{
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b)
{
    if (a.sign_ == 0) return abs(b);
    if (b.sign_ == 0) return abs(a);
    if (a.big_.empty() && b.big_.empty()) {
        BigInt r;
        r.set_u64(std::gcd(a.small_, b.small_), 1);
        return r;
    }
    BigInt x = abs(a), y = abs(b);
    while (y.sign_ != 0) {
        BigInt q, r;
        divmod(x, y, q, r);
        x = y;
        y = abs(r);
    }
    return x;
}

BigInt BigInt::isqrt(const BigInt& a)
{
    if (a.sign_ < 0) throw arithmetic_error("BigInt: isqrt of negative value");
    if (a.sign_ == 0) return BigInt{};
    if (a.big_.empty()) {
        std::uint64_t v = a.small_;
        std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
        auto sq = [](std::uint64_t x) { return static_cast<unsigned __int128>(x) * x; };
        while (r > 0 && sq(r) > v) --r;
        while (sq(r + 1) <= v) ++r;
        BigInt out;
        out.set_u64(r, 1);
        return out;
    }
    // Newton iteration with an over-estimate start
    size_t n = a.bit_length();
    BigInt x = BigInt(1);
    for (size_t i = 0; i < n / 2 + 1; ++i) x = add_mag(x, x, 1); // x = 2^(n/2+1)
    while (true) {
        BigInt q, r;
        divmod(a, x, q, r);
        BigInt next = (x + q) / BigInt(2);
        if (!(next < x)) break;
        x = next;
    }
    return x;
}

BigInt BigInt::sqrt_exact(const BigInt& a, bool& ok)
{
    if (a.sign_ < 0) {
        ok = false;
        return BigInt{};
    }
    BigInt r = isqrt(a);
    ok = (r * r == a);
    return r;
}

std::string BigInt::to_string() const
{
    if (sign_ == 0) return "0";
    if (big_.empty()) {
        std::string s = std::to_string(small_);
        return sign_ < 0 ? "-" + s : s;
    }
    std::string digits;
    BigInt v = abs(*this);
    const BigInt base(1000000000ll);
    while (v.sign_ != 0) {
        BigInt q, r;
        divmod(v, base, q, r);
        std::uint64_t chunk = r.sign_ == 0 ? 0 : r.small_;
        char buf[16];
        if (q.sign_ == 0)
            std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(chunk));
        else
            std::snprintf(buf, sizeof buf, "%09llu", static_cast<unsigned long long>(chunk));
        digits = std::string(buf) + digits;
        v = q;
    }
    return sign_ < 0 ? "-" + digits : digits;
}

BigInt BigInt::from_string(const std::string& dec)
{
    if (dec.empty()) throw arithmetic_error("BigInt: empty string");
    size_t pos = 0;
    int sign = 1;
    if (dec[0] == '-') {
        sign = -1;
        pos = 1;
    } else if (dec[0] == '+') {
        pos = 1;
    }
    if (pos == dec.size()) throw arithmetic_error("BigInt: invalid string");
    BigInt v;
    const BigInt ten(10);
    for (; pos < dec.size(); ++pos) {
        if (dec[pos] < '0' || dec[pos] > '9') throw arithmetic_error("BigInt: invalid digit");
        v = v * ten + BigInt(dec[pos] - '0');
    }
    if (sign < 0) v = -v;
    return v;
}

// ---------------------------------------------------------------------------
// Rat
// ---------------------------------------------------------------------------

Rat::Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }
Rat::Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

void Rat::normalize()
{
    if (den_.is_zero()) throw arithmetic_error("Rat: zero denominator");
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!(g == BigInt(1))) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

double Rat::to_double() const { return num_.to_double() / den_.to_double(); }

std::string Rat::to_string() const
{
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rat operator+(const Rat& a, const Rat& b)
{
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

Rat operator*(const Rat& a, const Rat& b)
{
    if (a.is_zero() || b.is_zero()) return Rat();
    // cross-reduce before multiplying to keep magnitudes down
    BigInt g1 = BigInt::gcd(a.num_, b.den_);
    BigInt g2 = BigInt::gcd(b.num_, a.den_);
    BigInt n = (a.num_ / g1) * (b.num_ / g2);
    BigInt d = (a.den_ / g2) * (b.den_ / g1);
    return Rat::raw(std::move(n), std::move(d));
}

Rat operator/(const Rat& a, const Rat& b)
{
    if (b.is_zero()) throw arithmetic_error("Rat: division by zero");
    return a * Rat::raw(b.sign() < 0 ? -b.den_ : b.den_, BigInt::abs(b.num_));
}

bool operator<(const Rat& a, const Rat& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

Rat Rat::sqrt_exact(const Rat& a)
{
    if (a.sign() < 0) throw arithmetic_error("Rat: sqrt of negative value");
    bool okn = false, okd = false;
    BigInt n = BigInt::sqrt_exact(a.num_, okn);
    BigInt d = BigInt::sqrt_exact(a.den_, okd);
    if (!okn || !okd)
        throw arithmetic_error("Rat: " + a.to_string() + " is not a perfect square");
    return Rat::raw(std::move(n), std::move(d));
}

Rat scalar_sqrt(const Rat& x) { return Rat::sqrt_exact(x); }
double scalar_sqrt(double x)
{
    if (x < 0) throw arithmetic_error("sqrt of negative value");
    return std::sqrt(x);
}

Rat scalar_inv(const Rat& x) { return Rat(1) / x; }
double scalar_inv(double x)
{
    if (x == 0.0) throw arithmetic_error("division by zero");
    return 1.0 / x;
}

std::string scalar_to_string(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace cuspjet
