#include "fmr/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace fmr {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit inputs.
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldSpec FieldSpec::prime(u64 p) {
    if (!is_prime(p)) throw FieldError("modulus " + std::to_string(p) + " is not prime");
    if (p >= (u64(1) << 62)) throw FieldError("modulus too large");
    return {Kind::Prime, p};
}

FieldSpec FieldSpec::parse(const std::string& s) {
    if (s == "rational") return rational();
    if (s.rfind("p:", 0) == 0) {
        const std::string digits = s.substr(2);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw FieldError("bad field '" + s + "'");
        return prime(std::stoull(digits));
    }
    throw FieldError("bad field '" + s + "' (expected rational or p:<prime>)");
}

std::string FieldSpec::str() const {
    return kind == Kind::Rational ? "rational" : "p:" + std::to_string(modulus);
}

Rational parse_rational(const std::string& s) {
    auto valid_int = [](const std::string& t) {
        size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        return i < t.size() && t.find_first_not_of("0123456789", i) == std::string::npos;
    };
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw FieldError("bad coefficient '" + s + "'");
        return Rational(BigInt(s[0] == '+' ? s.substr(1) : s));
    }
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw FieldError("bad coefficient '" + s + "'");
    BigInt d(den);
    if (d == 0) throw FieldError("zero denominator in '" + s + "'");
    return Rational(BigInt(num[0] == '+' ? num.substr(1) : num), d);
}

// ---- GfContext ----

const GfContext* GfContext::get(u64 p, int k) {
    static std::mutex mu;
    static std::map<std::pair<u64, int>, std::unique_ptr<GfContext>> cache;
    if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) throw FieldError("extension degree must be positive");
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, k}];
    if (!slot) slot.reset(new GfContext(p, k));
    return slot.get();
}

GfContext::GfContext(u64 p, int k) : p_(p), k_(k), q_(1) {
    for (int i = 0; i < k; ++i) {
        if (k > 1 && q_ > (u64(1) << 21) / p) throw FieldError("extension field too large for tables");
        q_ *= p;
    }
    if (k == 1) {
        if (p >= (u64(1) << 62)) throw FieldError("modulus too large");
        poly_ = {0, 1};
        return;
    }
    // Search for a primitive polynomial: x must generate the multiplicative group.
    std::vector<u64> coeff(k, 0);
    exp_.assign(2 * (q_ - 1), 0);
    log_.assign(q_, 0);
    for (u64 code = 0; code < q_; ++code) {
        u64 c = code;
        for (int i = 0; i < k; ++i) {
            coeff[i] = c % p;
            c /= p;
        }
        if (coeff[0] == 0) continue;
        // Multiply-by-x as digit shift with reduction by x^k = -sum coeff[i] x^i.
        std::vector<u64> cur(k, 0);
        cur[0] = 1;
        bool ok = true;
        for (u64 e = 0; e < q_ - 1; ++e) {
            u64 v = 0;
            for (int i = k - 1; i >= 0; --i) v = v * p + cur[i];
            if (e > 0 && v == 1) {
                ok = false;
                break;
            }
            exp_[e] = static_cast<std::uint32_t>(v);
            const u64 top = cur[k - 1];
            for (int i = k - 1; i > 0; --i) cur[i] = (cur[i - 1] + (p - coeff[i]) * top) % p;
            cur[0] = (p - coeff[0]) * top % p;
        }
        if (!ok) continue;
        u64 v = 0;
        for (int i = k - 1; i >= 0; --i) v = v * p + cur[i];
        if (v != 1) continue;
        for (u64 e = 0; e < q_ - 1; ++e) {
            exp_[e + q_ - 1] = exp_[e];
            log_[exp_[e]] = static_cast<std::uint32_t>(e);
        }
        poly_.assign(coeff.begin(), coeff.end());
        poly_.push_back(1);
        return;
    }
    throw FieldError("no primitive polynomial found");
}

std::string GfContext::name() const {
    return k_ == 1 ? "F_" + std::to_string(p_) : "F_" + std::to_string(p_) + "^" + std::to_string(k_);
}

u64 GfContext::add(u64 a, u64 b) const {
    if (k_ == 1) {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 r = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
        u64 d = a % p_ + b % p_;
        if (d >= p_) d -= p_;
        r += d * scale;
        scale *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

u64 GfContext::neg(u64 a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    u64 r = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
        u64 d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * scale;
        scale *= p_;
        a /= p_;
    }
    return r;
}

u64 GfContext::sub(u64 a, u64 b) const { return add(a, neg(b)); }

u64 GfContext::mul(u64 a, u64 b) const {
    if (k_ == 1) return p_ < (u64(1) << 32) ? a * b % p_ : mulmod(a, b, p_);
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
}

u64 GfContext::inv(u64 a) const {
    if (a == 0) throw FieldError("division by zero in " + name());
    if (k_ == 1) return powmod(a, p_ - 2, p_);
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

u64 GfContext::from_int(long long n) const {
    const long long m = n % static_cast<long long>(p_);
    return static_cast<u64>(m < 0 ? m + static_cast<long long>(p_) : m);
}

// ---- Gf ----

namespace {
const GfContext* common(const Gf& a, const Gf& b) {
    if (a.bound() && b.bound() && a.context() != b.context())
        throw FieldError("mixed finite fields " + a.context()->name() + " and " + b.context()->name());
    return a.bound() ? a.context() : b.context();
}
}  // namespace

Gf Gf::inverse() const {
    if (!ctx_) {
        if (raw_ == 1 || raw_ == -1) return *this;
        throw FieldError("inverse of an unbound constant");
    }
    return Gf(ctx_, ctx_->inv(v_));
}

Gf operator+(const Gf& a, const Gf& b) {
    const GfContext* c = common(a, b);
    if (!c) return Gf(static_cast<int>(a.raw_ + b.raw_));
    return Gf(c, c->add(a.bind(c).v_, b.bind(c).v_));
}

Gf operator-(const Gf& a, const Gf& b) {
    const GfContext* c = common(a, b);
    if (!c) return Gf(static_cast<int>(a.raw_ - b.raw_));
    return Gf(c, c->sub(a.bind(c).v_, b.bind(c).v_));
}

Gf operator*(const Gf& a, const Gf& b) {
    const GfContext* c = common(a, b);
    if (!c) return Gf(static_cast<int>(a.raw_ * b.raw_));
    return Gf(c, c->mul(a.bind(c).v_, b.bind(c).v_));
}

Gf operator/(const Gf& a, const Gf& b) {
    const GfContext* c = common(a, b);
    if (!c) return a * b.inverse();
    return Gf(c, c->mul(a.bind(c).v_, c->inv(b.bind(c).v_)));
}

bool operator==(const Gf& a, const Gf& b) {
    const GfContext* c = common(a, b);
    if (!c) return a.raw_ == b.raw_;
    return a.bind(c).v_ == b.bind(c).v_;
}

Gf FieldTraits<Gf>::from_rational(const GfContext* c, const Rational& r) {
    const u64 p = c->characteristic();
    BigInt num = boost::multiprecision::numerator(r) % p;
    BigInt den = boost::multiprecision::denominator(r) % p;
    if (num < 0) num += p;
    if (den == 0) throw FieldError("denominator of " + r.str() + " vanishes mod " + std::to_string(p));
    return Gf(c, c->mul(num.convert_to<u64>(), c->inv(den.convert_to<u64>())));
}

std::string FieldTraits<Gf>::str(const Gf& x) {
    if (!x.bound()) return "unbound";
    const GfContext* c = x.context();
    if (c->degree() == 1) return std::to_string(x.value());
    // Digit vector, low degree first, e.g. "[3,0,1]".
    std::string out = "[";
    u64 v = x.value();
    for (int i = 0; i < c->degree(); ++i) {
        if (i) out += ",";
        out += std::to_string(v % c->characteristic());
        v /= c->characteristic();
    }
    return out + "]";
}

FieldSpec FieldTraits<Gf>::spec(const GfContext* c) {
    if (c->degree() != 1) throw FieldError(c->name() + " has no prime-field descriptor");
    return FieldSpec::prime(c->characteristic());
}

}  // namespace fmr
