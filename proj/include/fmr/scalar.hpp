#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmr {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using Rng = std::mt19937_64;

// Portable bounded draw; std distributions differ between standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do { x = rng(); } while (x >= limit);
    return x % n;
}

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

// User-facing field descriptor: exact rationals or a prime field.
struct FieldSpec {
    enum class Kind { Rational, Prime };
    Kind kind = Kind::Rational;
    std::uint64_t modulus = 0;

    static FieldSpec rational() { return {}; }
    static FieldSpec prime(std::uint64_t p);
    static FieldSpec parse(const std::string& s);  // "rational" | "p:<prime>"
    std::string str() const;
    bool operator==(const FieldSpec&) const = default;
};

// Finite field F_{p^k}. Elements are integers in [0, p^k) read as base-p digit
// vectors of polynomials modulo a primitive polynomial; k = 1 is plain F_p.
class GfContext {
public:
    static const GfContext* get(std::uint64_t p, int k = 1);

    std::uint64_t characteristic() const { return p_; }
    int degree() const { return k_; }
    std::uint64_t order() const { return q_; }
    std::string name() const;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t from_int(long long n) const;
    // Same residue read in F_p for base-field elements, which embed as constants.
    bool in_base(std::uint64_t a) const { return a < p_; }
    const std::vector<std::uint64_t>& modulus_poly() const { return poly_; }

private:
    GfContext(std::uint64_t p, int k);
    std::uint64_t p_;
    int k_;
    std::uint64_t q_;
    std::vector<std::uint64_t> poly_;  // monic, low degree first
    std::vector<std::uint32_t> exp_, log_;
};

class Gf {
public:
    Gf() = default;
    Gf(int n) : raw_(n) {}  // unbound integer constant, adopts the context of the other operand
    Gf(const GfContext* c, std::uint64_t v) : ctx_(c), v_(v) {}

    const GfContext* context() const { return ctx_; }
    std::uint64_t value() const { return v_; }
    bool bound() const { return ctx_ != nullptr; }
    bool is_zero() const { return ctx_ ? v_ == 0 : raw_ == 0; }
    Gf bind(const GfContext* c) const { return ctx_ ? *this : Gf(c, c->from_int(raw_)); }
    Gf inverse() const;

    friend Gf operator+(const Gf& a, const Gf& b);
    friend Gf operator-(const Gf& a, const Gf& b);
    friend Gf operator*(const Gf& a, const Gf& b);
    friend Gf operator/(const Gf& a, const Gf& b);
    Gf operator-() const { return ctx_ ? Gf(ctx_, ctx_->neg(v_)) : Gf(static_cast<int>(-raw_)); }
    Gf& operator+=(const Gf& o) { return *this = *this + o; }
    Gf& operator-=(const Gf& o) { return *this = *this - o; }
    Gf& operator*=(const Gf& o) { return *this = *this * o; }
    Gf& operator/=(const Gf& o) { return *this = *this / o; }
    friend bool operator==(const Gf& a, const Gf& b);
    friend bool operator!=(const Gf& a, const Gf& b) { return !(a == b); }

private:
    const GfContext* ctx_ = nullptr;
    std::uint64_t v_ = 0;
    long long raw_ = 0;
};

struct RationalField {
    bool operator==(const RationalField&) const = default;
};

Rational parse_rational(const std::string& s);

template <class S>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    using Ctx = RationalField;
    static Rational zero(Ctx) { return 0; }
    static Rational one(Ctx) { return 1; }
    static Rational from_int(Ctx, long long n) { return n; }
    static Rational from_rational(Ctx, const Rational& r) { return r; }
    static const Rational& canon(Ctx, const Rational& x) { return x; }
    static Rational parse(Ctx, const std::string& s) { return parse_rational(s); }
    static bool is_zero(const Rational& x) { return x == 0; }
    static std::string str(const Rational& x) { return x.str(); }
    static Rational random(Ctx, Rng& rng) {
        return static_cast<long long>(uniform_below(rng, 19)) - 9;
    }
    static std::uint64_t characteristic(Ctx) { return 0; }
    static std::optional<std::uint64_t> order(Ctx) { return std::nullopt; }
    static FieldSpec spec(Ctx) { return FieldSpec::rational(); }
};

template <>
struct FieldTraits<Gf> {
    using Ctx = const GfContext*;
    static Gf zero(Ctx c) { return Gf(c, 0); }
    static Gf one(Ctx c) { return Gf(c, 1); }
    static Gf from_int(Ctx c, long long n) { return Gf(c, c->from_int(n)); }
    static Gf from_rational(Ctx c, const Rational& r);
    static Gf canon(Ctx c, const Gf& x) { return x.bind(c); }
    static Gf parse(Ctx c, const std::string& s) { return from_rational(c, parse_rational(s)); }
    static bool is_zero(const Gf& x) { return x.is_zero(); }
    static std::string str(const Gf& x);
    static Gf random(Ctx c, Rng& rng) { return Gf(c, uniform_below(rng, c->order())); }
    static std::uint64_t characteristic(Ctx c) { return c->characteristic(); }
    static std::optional<std::uint64_t> order(Ctx c) { return c->order(); }
    static FieldSpec spec(Ctx c);
    static std::vector<Gf> elements(Ctx c) {
        std::vector<Gf> out;
        out.reserve(c->order());
        for (std::uint64_t v = 0; v < c->order(); ++v) out.emplace_back(c, v);
        return out;
    }
};

// Nonzero random element.
template <class S>
S random_unit(typename FieldTraits<S>::Ctx c, Rng& rng) {
    for (;;) {
        S x = FieldTraits<S>::random(c, rng);
        if (!FieldTraits<S>::is_zero(x)) return x;
    }
}

}  // namespace fmr

#include <Eigen/Core>

namespace Eigen {
template <>
struct NumTraits<fmr::Gf> : GenericNumTraits<fmr::Gf> {
    using Real = fmr::Gf;
    using NonInteger = fmr::Gf;
    using Literal = fmr::Gf;
    using Nested = fmr::Gf;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4
    };
};
}  // namespace Eigen

#include <boost/multiprecision/eigen.hpp>
