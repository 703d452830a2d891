#pragma once

#include "fmr/scalar.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fmr {

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<unsigned> e) : e_(std::move(e)) {
        deg_ = std::accumulate(e_.begin(), e_.end(), 0u);
    }
    static Monomial var(int nvars, int i, unsigned power = 1) {
        Monomial m(nvars);
        m.e_[i] = power;
        m.deg_ = power;
        return m;
    }

    int nvars() const { return static_cast<int>(e_.size()); }
    unsigned degree() const { return deg_; }
    unsigned operator[](int i) const { return e_[i]; }
    const std::vector<unsigned>& exponents() const { return e_; }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        r.deg_ += o.deg_;
        return r;
    }
    bool divides(const Monomial& o) const {
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }
    // Requires divides(o).
    Monomial quotient_into(const Monomial& o) const {
        Monomial r = o;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
        r.deg_ -= deg_;
        return r;
    }
    Monomial lcm(const Monomial& o) const {
        Monomial r(nvars());
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::max(e_[i], o.e_[i]);
        r.deg_ = std::accumulate(r.e_.begin(), r.e_.end(), 0u);
        return r;
    }
    bool coprime(const Monomial& o) const {
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i] && o.e_[i]) return false;
        return true;
    }
    // Support of the monomial as a bitmask (nvars <= 64).
    std::uint64_t support() const {
        std::uint64_t s = 0;
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i]) s |= std::uint64_t(1) << i;
        return s;
    }
    bool operator==(const Monomial& o) const { return e_ == o.e_; }

private:
    std::vector<unsigned> e_;
    unsigned deg_ = 0;
};

// Degree reverse lexicographic order as a strict "less than".
struct DegRevLex {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.nvars() - 1; i >= 0; --i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
};

// All exponent vectors of total degree d in n variables, in increasing order.
inline std::vector<Monomial> monomials_of_degree(int n, unsigned d) {
    std::vector<Monomial> out;
    std::vector<unsigned> e(n, 0);
    auto rec = [&](auto&& self, int i, unsigned left) -> void {
        if (i == n - 1) {
            e[i] = left;
            out.emplace_back(e);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[i] = k;
            self(self, i + 1, left - k);
        }
    };
    if (n == 0) {
        if (d == 0) out.emplace_back(std::vector<unsigned>{});
        return out;
    }
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(), DegRevLex());
    return out;
}

template <class S>
class MultiPoly {
public:
    using Traits = FieldTraits<S>;
    using Ctx = typename Traits::Ctx;
    using Terms = std::map<Monomial, S, DegRevLex>;

    MultiPoly() = default;
    MultiPoly(Ctx ctx, int nvars) : ctx_(ctx), n_(nvars) {}

    static MultiPoly constant(Ctx ctx, int nvars, const S& c) {
        MultiPoly p(ctx, nvars);
        p.add_term(Monomial(nvars), c);
        return p;
    }
    static MultiPoly var(Ctx ctx, int nvars, int i) {
        MultiPoly p(ctx, nvars);
        p.add_term(Monomial::var(nvars, i), Traits::one(ctx));
        return p;
    }
    static MultiPoly term(Ctx ctx, const Monomial& m, const S& c) {
        MultiPoly p(ctx, m.nvars());
        p.add_term(m, c);
        return p;
    }
    static MultiPoly linear(Ctx ctx, const std::vector<S>& coeffs) {
        const int n = static_cast<int>(coeffs.size());
        MultiPoly p(ctx, n);
        for (int i = 0; i < n; ++i) p.add_term(Monomial::var(n, i), coeffs[i]);
        return p;
    }
    static MultiPoly random_form(Ctx ctx, int nvars, unsigned d, Rng& rng) {
        MultiPoly p(ctx, nvars);
        for (const auto& m : monomials_of_degree(nvars, d)) p.add_term(m, Traits::random(ctx, rng));
        return p;
    }

    Ctx ctx() const { return ctx_; }
    int nvars() const { return n_; }
    const Terms& terms() const { return t_; }
    size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    int degree() const { return t_.empty() ? -1 : static_cast<int>(t_.rbegin()->first.degree()); }
    int min_degree() const { return t_.empty() ? -1 : static_cast<int>(t_.begin()->first.degree()); }
    bool is_homogeneous() const { return t_.empty() || degree() == min_degree(); }

    const Monomial& leading_monomial() const { return t_.rbegin()->first; }
    const S& leading_coeff() const { return t_.rbegin()->second; }

    S coeff(const Monomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? Traits::zero(ctx_) : it->second;
    }

    void add_term(const Monomial& m, const S& c) {
        if (m.nvars() != n_) throw FieldError("exponent vector length mismatch");
        if (Traits::is_zero(c)) return;
        auto [it, inserted] = t_.emplace(m, Traits::canon(ctx_, c));
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) t_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check(o);
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check(o);
        for (const auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& kv : r.t_) kv.second = -kv.second;
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check(b);
        MultiPoly r(a.ctx_, a.n_);
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    friend MultiPoly operator*(const S& s, const MultiPoly& a) {
        MultiPoly r(a.ctx_, a.n_);
        if (Traits::is_zero(s)) return r;
        for (const auto& [m, c] : a.t_) r.t_.emplace_hint(r.t_.end(), m, s * c);
        return r;
    }
    // Multiply by a single term c*m.
    MultiPoly times_term(const Monomial& m, const S& c) const {
        MultiPoly r(ctx_, n_);
        if (Traits::is_zero(c)) return r;
        for (const auto& [mm, cc] : t_) r.t_.emplace_hint(r.t_.end(), mm * m, c * cc);
        return r;
    }
    MultiPoly pow(unsigned e) const {
        MultiPoly r = constant(ctx_, n_, Traits::one(ctx_));
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    bool operator==(const MultiPoly& o) const {
        if (n_ != o.n_ || t_.size() != o.t_.size()) return false;
        auto it = o.t_.begin();
        for (const auto& [m, c] : t_) {
            if (!(m == it->first) || !(c == it->second)) return false;
            ++it;
        }
        return true;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    S eval(const std::vector<S>& x) const {
        if (static_cast<int>(x.size()) != n_) throw FieldError("evaluation point has wrong length");
        S acc = Traits::zero(ctx_);
        // Powers cache per variable.
        std::vector<std::vector<S>> pw(n_);
        for (const auto& [m, c] : t_) {
            S v = c;
            for (int i = 0; i < n_; ++i) {
                const unsigned e = m[i];
                if (!e) continue;
                auto& cache = pw[i];
                if (cache.empty()) cache.push_back(Traits::one(ctx_));
                while (cache.size() <= e) cache.push_back(cache.back() * x[i]);
                v *= cache[e];
            }
            acc += v;
        }
        return acc;
    }

    MultiPoly derivative(int i) const {
        MultiPoly r(ctx_, n_);
        for (const auto& [m, c] : t_) {
            if (!m[i]) continue;
            std::vector<unsigned> e = m.exponents();
            const unsigned k = e[i]--;
            r.add_term(Monomial(std::move(e)), Traits::from_int(ctx_, k) * c);
        }
        return r;
    }

    // Substitute x_i -> images[i]; all images share one ring.
    MultiPoly compose(const std::vector<MultiPoly>& images) const {
        if (static_cast<int>(images.size()) != n_) throw FieldError("substitution arity mismatch");
        const int m = images.empty() ? 0 : images[0].nvars();
        MultiPoly r(ctx_, m);
        std::vector<std::vector<MultiPoly>> pw(n_);
        for (const auto& [mono, c] : t_) {
            MultiPoly term = constant(ctx_, m, c);
            for (int i = 0; i < n_; ++i) {
                const unsigned e = mono[i];
                if (!e) continue;
                auto& cache = pw[i];
                if (cache.empty()) cache.push_back(constant(ctx_, m, Traits::one(ctx_)));
                while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
                term = term * cache[e];
            }
            r += term;
        }
        return r;
    }

    MultiPoly homogeneous_part(unsigned d) const {
        MultiPoly r(ctx_, n_);
        for (const auto& [m, c] : t_)
            if (m.degree() == d) r.t_.emplace_hint(r.t_.end(), m, c);
        return r;
    }

    // Pieces indexed by degree 0..deg; the zero polynomial gives an empty list.
    std::vector<MultiPoly> graded_pieces() const {
        std::vector<MultiPoly> out;
        if (is_zero()) return out;
        out.assign(degree() + 1, MultiPoly(ctx_, n_));
        for (const auto& [m, c] : t_) out[m.degree()].t_.emplace_hint(out[m.degree()].t_.end(), m, c);
        return out;
    }

    // Coefficient vector of a linear form (degree-1 part).
    std::vector<S> linear_coeffs() const {
        std::vector<S> v(n_, Traits::zero(ctx_));
        for (const auto& [m, c] : t_)
            if (m.degree() == 1)
                for (int i = 0; i < n_; ++i)
                    if (m[i]) v[i] = c;
        return v;
    }

    // Insert a new variable at position pos (e.g. a homogenizing coordinate).
    MultiPoly insert_variable(int pos) const {
        MultiPoly r(ctx_, n_ + 1);
        for (const auto& [m, c] : t_) {
            std::vector<unsigned> e = m.exponents();
            e.insert(e.begin() + pos, 0u);
            r.add_term(Monomial(std::move(e)), c);
        }
        return r;
    }

    // Homogenize to degree deg() with a new variable at position pos.
    MultiPoly homogenize(int pos) const {
        MultiPoly r(ctx_, n_ + 1);
        const unsigned d = std::max(degree(), 0);
        for (const auto& [m, c] : t_) {
            std::vector<unsigned> e = m.exponents();
            e.insert(e.begin() + pos, d - m.degree());
            r.add_term(Monomial(std::move(e)), c);
        }
        return r;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << Traits::str(it->second);
            for (int i = 0; i < n_; ++i) {
                if (!it->first[i]) continue;
                os << "*z" << (i + 1);
                if (it->first[i] > 1) os << "^" << it->first[i];
            }
        }
        return os.str();
    }

private:
    void check(const MultiPoly& o) const {
        if (n_ != o.n_) throw FieldError("polynomials live in different rings");
    }
    Ctx ctx_{};
    int n_ = 0;
    Terms t_;
};

// Exact quotient a / b, or nullopt when b does not divide a.
template <class S>
std::optional<MultiPoly<S>> divide_exact(MultiPoly<S> a, const MultiPoly<S>& b) {
    if (b.is_zero()) throw FieldError("division by the zero polynomial");
    MultiPoly<S> q(a.ctx(), a.nvars());
    const Monomial& lb = b.leading_monomial();
    const S inv = FieldTraits<S>::one(a.ctx()) / b.leading_coeff();
    while (!a.is_zero()) {
        const Monomial& la = a.leading_monomial();
        if (!lb.divides(la)) return std::nullopt;
        const Monomial t = lb.quotient_into(la);
        const S c = a.leading_coeff() * inv;
        q.add_term(t, c);
        a -= b.times_term(t, c);
    }
    return q;
}

}  // namespace fmr
