#pragma once

#include "cuspjet/errors.hpp"
#include "cuspjet/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cuspjet {

enum class Var : int { u = 0, v = 1, s = 2 };

/// Monomial exponents in (u, v, s). Ordered by total degree, then
/// lexicographically, so term lists sort in graded order.
struct Expo {
    std::uint8_t e[3] = {0, 0, 0};

    Expo() = default;
    Expo(int i, int j, int k)
    {
        e[0] = static_cast<std::uint8_t>(i);
        e[1] = static_cast<std::uint8_t>(j);
        e[2] = static_cast<std::uint8_t>(k);
    }
    int operator[](Var v) const { return e[static_cast<int>(v)]; }
    int total() const { return e[0] + e[1] + e[2]; }

    friend bool operator==(const Expo& a, const Expo& b)
    {
        return a.e[0] == b.e[0] && a.e[1] == b.e[1] && a.e[2] == b.e[2];
    }
    friend bool operator<(const Expo& a, const Expo& b)
    {
        int ta = a.total(), tb = b.total();
        if (ta != tb) return ta < tb;
        if (a.e[0] != b.e[0]) return a.e[0] < b.e[0];
        if (a.e[1] != b.e[1]) return a.e[1] < b.e[1];
        return a.e[2] < b.e[2];
    }
};

/// Truncated power series in (u, v, s) with total-degree truncation.
/// Terms are kept sorted in graded order with zero coefficients dropped,
/// so two equal series have identical term lists. Values are immutable
/// in spirit: every operation returns a fresh jet.
///
/// `order()` is the truncation bound N: coefficients of total degree <= N
/// are meaningful, everything above has been discarded. Binary operations
/// propagate the weaker knowledge: the result order is the min of the
/// operand orders.
template <typename S>
class Jet {
public:
    using Term = std::pair<Expo, S>;

    explicit Jet(int order = 0) : order_(order) {}

    static Jet constant(const S& c, int order)
    {
        Jet j(order);
        if (!scalar_is_zero(c)) j.terms_.push_back({Expo{}, c});
        return j;
    }
    static Jet variable(Var var, int order)
    {
        Jet j(order);
        Expo e;
        e.e[static_cast<int>(var)] = 1;
        if (order >= 1) j.terms_.push_back({e, S(1)});
        return j;
    }
    static Jet monomial(const Expo& e, const S& c, int order)
    {
        Jet j(order);
        if (!scalar_is_zero(c) && e.total() <= order) j.terms_.push_back({e, c});
        return j;
    }

    int order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    S coeff(const Expo& e) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const Expo& k) { return t.first < k; });
        if (it != terms_.end() && it->first == e) return it->second;
        return S(0);
    }
    S coeff(int i, int j, int k) const { return coeff(Expo(i, j, k)); }
    S constant_term() const { return coeff(Expo{}); }

    /// In-place coefficient update; used by builders, keeps invariants.
    void set_coeff(const Expo& e, const S& c)
    {
        if (e.total() > order_)
            throw InvariantViolation("Jet::set_coeff: exponent exceeds truncation order");
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const Expo& k) { return t.first < k; });
        if (it != terms_.end() && it->first == e) {
            if (scalar_is_zero(c)) terms_.erase(it);
            else it->second = c;
        } else if (!scalar_is_zero(c)) {
            terms_.insert(it, {e, c});
        }
    }
    void add_coeff(const Expo& e, const S& c) { set_coeff(e, coeff(e) + c); }

    Jet truncated(int new_order) const
    {
        Jet r(new_order);
        for (const auto& [e, c] : terms_) {
            if (e.total() > new_order) break; // graded order
            r.terms_.push_back({e, c});
        }
        return r;
    }

    /// Raise the truncation horizon. Only valid when the caller genuinely
    /// knows the higher coefficients vanish (e.g. explicit polynomial data).
    Jet extended(int new_order) const
    {
        if (new_order <= order_) return *this;
        Jet r = *this;
        r.order_ = new_order;
        return r;
    }

    friend Jet operator-(const Jet& a)
    {
        Jet r(a.order_);
        r.terms_.reserve(a.terms_.size());
        for (const auto& [e, c] : a.terms_) r.terms_.push_back({e, -c});
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) { return merge(a, b, false); }
    friend Jet operator-(const Jet& a, const Jet& b) { return merge(a, b, true); }

    friend Jet operator*(const Jet& a, const Jet& b)
    {
        int n = std::min(a.order_, b.order_);
        Jet r(n);
        if (a.terms_.empty() || b.terms_.empty()) return r;
        DenseScratch scratch(n);
        for (const auto& [ea, ca] : a.terms_) {
            int budget = n - ea.total();
            if (budget < 0) break;
            for (const auto& [eb, cb] : b.terms_) {
                if (eb.total() > budget) break; // graded order
                scratch.add(ea, eb, ca * cb);
            }
        }
        scratch.collect(r.terms_);
        return r;
    }

    friend Jet operator*(const Jet& a, const S& c)
    {
        Jet r(a.order_);
        if (scalar_is_zero(c)) return r;
        r.terms_.reserve(a.terms_.size());
        for (const auto& [e, coef] : a.terms_) {
            S p = coef * c;
            if (!scalar_is_zero(p)) r.terms_.push_back({e, p});
        }
        return r;
    }
    friend Jet operator*(const S& c, const Jet& a) { return a * c; }
    friend Jet operator+(const Jet& a, const S& c) { return a + Jet::constant(c, a.order_); }
    friend Jet operator-(const Jet& a, const S& c) { return a - Jet::constant(c, a.order_); }

    friend bool operator==(const Jet& a, const Jet& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

    Jet differentiate(Var var) const
    {
        int iv = static_cast<int>(var);
        Jet r(order_ > 0 ? order_ - 1 : 0);
        for (const auto& [e, c] : terms_) {
            if (e.e[iv] == 0) continue;
            Expo d = e;
            d.e[iv] -= 1;
            if (d.total() > r.order_) continue;
            r.terms_.push_back({d, c * S(static_cast<long long>(e.e[iv]))});
        }
        sort_terms(r.terms_);
        return r;
    }

    /// Truncated substitution f(g_u, g_v, g_s). Every inner jet must vanish
    /// at the origin, which makes the composite exact through the result order.
    static Jet compose(const Jet& outer, const std::array<Jet, 3>& inner)
    {
        int n = outer.order_;
        for (const auto& g : inner) {
            n = std::min(n, g.order_);
            if (!scalar_is_zero(g.constant_term()))
                throw NonvanishingConstantTerm("Jet::compose: inner jet has nonzero constant term");
        }
        std::array<std::vector<Jet>, 3> pow;
        for (int v = 0; v < 3; ++v) pow[v].push_back(Jet::constant(S(1), n));
        auto power = [&](int v, int k) -> const Jet& {
            while (static_cast<int>(pow[v].size()) <= k)
                pow[v].push_back(pow[v].back() * inner[v].truncated(n));
            return pow[v][k];
        };
        Jet acc(n);
        for (const auto& [e, c] : outer.terms_) {
            if (e.total() > n) break; // inner jets vanish at 0, so this term is O(n+1)
            Jet t = power(0, e.e[0]) * power(1, e.e[1]);
            t = t * power(2, e.e[2]);
            acc = acc + t * c;
        }
        return acc;
    }

    /// Multiplicative inverse of a jet with nonzero constant term, exact
    /// through the truncation order (Newton iteration, quadratic order growth).
    Jet invert_unit() const
    {
        S a0 = constant_term();
        if (scalar_is_zero(a0)) throw ZeroConstantTerm("Jet::invert_unit: zero constant term");
        Jet b = Jet::constant(scalar_inv(a0), order_);
        Jet two = Jet::constant(S(2), order_);
        for (int correct = 0; correct < order_; correct = 2 * correct + 1)
            b = b * (two - *this * b);
        return b;
    }

    /// Square root with positive constant term (exact in rational mode only
    /// when the constant term is a perfect square).
    Jet sqrt_unit() const
    {
        S a0 = constant_term();
        if (scalar_is_zero(a0)) throw ZeroConstantTerm("Jet::sqrt_unit: zero constant term");
        if (to_double(a0) < 0) throw NegativeConstantTerm("Jet::sqrt_unit: negative constant term");
        // Newton on the inverse square root avoids nested inversion.
        S y0 = scalar_inv(scalar_sqrt(a0));
        Jet y = Jet::constant(y0, order_);
        Jet three = Jet::constant(S(3), order_);
        S half = S(1) / S(2);
        for (int correct = 0; correct < order_; correct = 2 * correct + 1)
            y = y * (three - *this * y * y) * half;
        return *this * y;
    }

    /// Polynomial evaluation of the retained monomials. Only meaningful as a
    /// truncation of the underlying function near the origin.
    S evaluate(const std::array<S, 3>& p) const
    {
        int maxe[3] = {0, 0, 0};
        for (const auto& [e, c] : terms_)
            for (int v = 0; v < 3; ++v) maxe[v] = std::max(maxe[v], static_cast<int>(e.e[v]));
        std::array<std::vector<S>, 3> pow;
        for (int v = 0; v < 3; ++v) {
            pow[v].resize(maxe[v] + 1, S(1));
            for (int k = 1; k <= maxe[v]; ++k) pow[v][k] = pow[v][k - 1] * p[v];
        }
        S acc(0);
        for (const auto& [e, c] : terms_) acc += c * pow[0][e.e[0]] * pow[1][e.e[1]] * pow[2][e.e[2]];
        return acc;
    }

    /// Substitute 0 for one variable.
    Jet restrict_zero(Var var) const
    {
        int iv = static_cast<int>(var);
        Jet r(order_);
        for (const auto& [e, c] : terms_)
            if (e.e[iv] == 0) r.terms_.push_back({e, c});
        return r;
    }

    bool divisible_by(Var var) const
    {
        int iv = static_cast<int>(var);
        for (const auto& [e, c] : terms_)
            if (e.e[iv] == 0) return false;
        return true;
    }

    /// Exact division by a variable; every term must carry it.
    Jet divide_by(Var var) const
    {
        int iv = static_cast<int>(var);
        Jet r(order_ > 0 ? order_ - 1 : 0);
        for (const auto& [e, c] : terms_) {
            if (e.e[iv] == 0)
                throw NotDivisible("Jet::divide_by: term without the variable present");
            Expo d = e;
            d.e[iv] -= 1;
            r.terms_.push_back({d, c});
        }
        sort_terms(r.terms_);
        return r;
    }

    /// Multiply by a monomial; the truncation horizon moves up with it.
    Jet mul_monomial(const Expo& m, const S& c) const
    {
        Jet r(order_ + m.total());
        if (scalar_is_zero(c)) return r;
        for (const auto& [e, coef] : terms_) {
            Expo t(e.e[0] + m.e[0], e.e[1] + m.e[1], e.e[2] + m.e[2]);
            r.terms_.push_back({t, coef * c});
        }
        sort_terms(r.terms_);
        return r;
    }

    /// Recenter one variable: x -> x + c, exact on the polynomial representative.
    Jet shift_var(Var var, const S& c) const
    {
        if (scalar_is_zero(c)) return *this;
        int iv = static_cast<int>(var);
        Jet r(order_);
        for (const auto& [e, coef] : terms_) {
            int n = e.e[iv];
            // binomial expansion of (x + c)^n
            std::vector<S> cpows(n + 1, S(1));
            for (int t = 1; t <= n; ++t) cpows[t] = cpows[t - 1] * c;
            S bc(1); // C(n, m), walked down from m = n
            for (int m = n; m >= 0; --m) {
                Expo d = e;
                d.e[iv] = static_cast<std::uint8_t>(m);
                r.add_coeff(d, coef * bc * cpows[n - m]);
                if (m > 0) bc = bc * S(m) / S(n - m + 1);
            }
        }
        return r;
    }

    /// Keep only terms whose exponent in `var` has the given parity.
    Jet parity_part(Var var, int parity) const
    {
        int iv = static_cast<int>(var);
        Jet r(order_);
        for (const auto& [e, c] : terms_)
            if (e.e[iv] % 2 == parity) r.terms_.push_back({e, c});
        return r;
    }

    /// Halve every exponent of `var` (all must be even). Used to re-express
    /// even series in v as series in w = v^2.
    Jet halve_exponents(Var var) const
    {
        int iv = static_cast<int>(var);
        Jet r(order_);
        for (const auto& [e, c] : terms_) {
            if (e.e[iv] % 2 != 0)
                throw NotDivisible("Jet::halve_exponents: odd exponent");
            Expo d = e;
            d.e[iv] = static_cast<std::uint8_t>(e.e[iv] / 2);
            r.terms_.push_back({d, c});
        }
        sort_terms(r.terms_);
        return r;
    }

    int lowest_degree() const { return terms_.empty() ? order_ + 1 : terms_.front().first.total(); }

    template <typename T>
    Jet<T> cast() const
    {
        Jet<T> r(order_);
        for (const auto& [e, c] : terms_) r.set_coeff(e, T(to_double(c)));
        return r;
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::string out;
        const char* names[3] = {"u", "v", "s"};
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) out += " + ";
            first = false;
            std::string mono;
            for (int v = 0; v < 3; ++v) {
                if (e.e[v] == 0) continue;
                if (!mono.empty()) mono += " ";
                mono += names[v];
                if (e.e[v] > 1) mono += "^" + std::to_string(e.e[v]);
            }
            std::string cs = scalar_to_string(c);
            if (mono.empty()) out += cs;
            else if (cs == "1") out += mono;
            else if (cs == "-1") out += "-" + mono;
            else out += cs + " " + mono;
        }
        return out;
    }

private:
    int order_;
    std::vector<Term> terms_;

    static void sort_terms(std::vector<Term>& ts)
    {
        std::sort(ts.begin(), ts.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
    }

    static Jet merge(const Jet& a, const Jet& b, bool subtract)
    {
        int n = std::min(a.order_, b.order_);
        Jet r(n);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            bool take_a;
            if (ia == a.terms_.end()) take_a = false;
            else if (ib == b.terms_.end()) take_a = true;
            else if (ia->first == ib->first) {
                S c = subtract ? ia->second - ib->second : ia->second + ib->second;
                if (!scalar_is_zero(c) && ia->first.total() <= n) r.terms_.push_back({ia->first, c});
                ++ia;
                ++ib;
                continue;
            } else take_a = ia->first < ib->first;
            if (take_a) {
                if (ia->first.total() <= n) r.terms_.push_back({ia->first, ia->second});
                ++ia;
            } else {
                S c = subtract ? -ib->second : ib->second;
                if (ib->first.total() <= n) r.terms_.push_back({ib->first, c});
                ++ib;
            }
        }
        return r;
    }

    /// Dense accumulator over the (order+1)^3 exponent box; collecting in
    /// index order yields graded-sorted terms.
    struct DenseScratch {
        int n;
        std::vector<S> slots;
        std::vector<std::uint32_t> touched;
        std::vector<bool> seen;
        explicit DenseScratch(int order)
            : n(order),
              slots((order + 1) * (order + 1) * (order + 1)),
              seen((order + 1) * (order + 1) * (order + 1), false)
        {
        }
        void add(const Expo& a, const Expo& b, S c)
        {
            int i = a.e[0] + b.e[0], j = a.e[1] + b.e[1], k = a.e[2] + b.e[2];
            std::uint32_t idx = static_cast<std::uint32_t>((i * (n + 1) + j) * (n + 1) + k);
            if (!seen[idx]) {
                seen[idx] = true;
                touched.push_back(idx);
                slots[idx] = std::move(c);
            } else {
                slots[idx] += c;
            }
        }
        void collect(std::vector<Term>& out)
        {
            std::sort(touched.begin(), touched.end());
            out.reserve(touched.size());
            std::vector<Term> tmp;
            tmp.reserve(touched.size());
            for (std::uint32_t idx : touched) {
                if (scalar_is_zero(slots[idx])) continue;
                int k = idx % (n + 1);
                int j = (idx / (n + 1)) % (n + 1);
                int i = idx / ((n + 1) * (n + 1));
                tmp.push_back({Expo(i, j, k), std::move(slots[idx])});
            }
            std::sort(tmp.begin(), tmp.end(),
                      [](const Term& a, const Term& b) { return a.first < b.first; });
            out = std::move(tmp);
        }
    };
};

using JetQ = Jet<Rat>;
using JetD = Jet<double>;

/// Convenience three-vector of jets (map components, normal fields).
template <typename S>
using JetVec3 = std::array<Jet<S>, 3>;

template <typename S>
Jet<S> dot(const JetVec3<S>& a, const JetVec3<S>& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <typename S>
JetVec3<S> cross(const JetVec3<S>& a, const JetVec3<S>& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <typename S>
Jet<S> det3(const JetVec3<S>& a, const JetVec3<S>& b, const JetVec3<S>& c)
{
    return dot(a, cross(b, c));
}

} // namespace cuspjet
