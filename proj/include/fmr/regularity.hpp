#pragma once

#include "fmr/dimension.hpp"
#include "fmr/family.hpp"
#include "fmr/irreducible.hpp"
#include "fmr/pencil.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace fmr {

enum class PointKind { Nonsingular, Singular };
enum class Verdict { Pass, Fail, PassSampled, Inconclusive };

inline const char* kind_name(PointKind k) { return k == PointKind::Nonsingular ? "nonsingular" : "singular"; }
inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::PassSampled: return "pass-sampled";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

// Rank thresholds for W1, W2, R1.2 and R2.2.
struct Thresholds {
    int w1 = 2, w2 = 4, r12 = 6, r22 = 8;
    bool operator==(const Thresholds&) const = default;
    std::string str() const {
        return std::to_string(w1) + "," + std::to_string(w2) + "," + std::to_string(r12) + "," + std::to_string(r22);
    }
    static Thresholds parse(const std::string& s);
};

inline Thresholds Thresholds::parse(const std::string& s) {
    std::vector<int> v;
    size_t pos = 0;
    while (pos <= s.size()) {
        const size_t comma = s.find(',', pos);
        const std::string part = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            size_t used = 0;
            v.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw FieldError("bad threshold list '" + s + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (v.size() != 4) throw FieldError("threshold list needs four values w1,w2,r12,r22");
    for (int t : v)
        if (t < 0) throw FieldError("thresholds must be non-negative");
    return {v[0], v[1], v[2], v[3]};
}

// Graded pieces of the local equation at a point, in M affine coordinates.
template <class S>
struct LocalExpansion {
    using Ctx = typename FieldTraits<S>::Ctx;
    int M = 0;
    Family family = Family::Hypersurface;
    Ctx field{};
    PointKind kind = PointKind::Nonsingular;
    std::vector<MultiPoly<S>> pieces;  // pieces[d] is q_d, d = 0..top_degree(); pieces[0] = 0
    std::string source;

    int top_degree() const { return family == Family::Double ? 2 * M : M; }
    const MultiPoly<S>& q(int d) const { return pieces.at(d); }

    static LocalExpansion from_pieces(Family family, Ctx field, int M, std::vector<MultiPoly<S>> qs, std::string source) {
        LocalExpansion e;
        e.M = M;
        e.family = family;
        e.field = field;
        e.source = std::move(source);
        if (M < 3) throw FieldError("expansions need M >= 3");
        const int top = e.top_degree();
        if (static_cast<int>(qs.size()) > top + 1) throw FieldError("piece of degree above the family degree");
        qs.resize(top + 1, MultiPoly<S>(field, M));
        for (int d = 0; d <= top; ++d) {
            if (qs[d].nvars() != M) throw FieldError("piece q" + std::to_string(d) + " has the wrong number of variables");
            if (!qs[d].is_zero() && (!qs[d].is_homogeneous() || qs[d].degree() != d))
                throw FieldError("piece q" + std::to_string(d) + " is not homogeneous of degree " + std::to_string(d));
        }
        if (!qs[0].is_zero()) throw FieldError("the point does not lie on the hypersurface");
        e.kind = qs[1].is_zero() ? PointKind::Singular : PointKind::Nonsingular;
        e.pieces = std::move(qs);
        return e;
    }

    // Same expansion in coordinates z = A z'.
    LocalExpansion transformed(const Mat<S>& a) const {
        std::vector<MultiPoly<S>> qs;
        for (const auto& p : pieces) qs.push_back(substitute_linear(p, a));
        return from_pieces(family, field, M, std::move(qs), source + "; linear change of coordinates");
    }
};

// The affine chart x_chart = 1 of a form in M + 1 variables.
template <class S>
MultiPoly<S> dehomogenize(const MultiPoly<S>& f, int chart) {
    const int n = f.nvars();
    if (chart < 0 || chart >= n) throw FieldError("chart index out of range");
    std::vector<MultiPoly<S>> images;
    for (int i = 0, j = 0; i < n; ++i)
        images.push_back(i == chart ? MultiPoly<S>::constant(f.ctx(), n - 1, FieldTraits<S>::one(f.ctx()))
                                    : MultiPoly<S>::var(f.ctx(), n - 1, j++));
    return f.compose(images);
}

// Affine coordinates of a projective point in the chart x_chart = 1.
template <class S>
std::vector<S> affine_point(const std::vector<S>& x, int chart) {
    if (chart < 0 || chart >= static_cast<int>(x.size())) throw FieldError("chart index out of range");
    if (FieldTraits<S>::is_zero(x[chart])) throw FieldError("point lies at infinity for chart " + std::to_string(chart));
    std::vector<S> a;
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        if (i != chart) a.push_back(x[i] / x[chart]);
    return a;
}

// Translate the affine equation f so that o becomes the origin and split into graded pieces.
template <class S>
LocalExpansion<S> expand_at_point(const MultiPoly<S>& f, const std::vector<S>& o, Family family) {
    const int n = f.nvars();
    if (static_cast<int>(o.size()) != n) throw FieldError("point has the wrong number of coordinates");
    if (!FieldTraits<S>::is_zero(f.eval(o))) throw FieldError("the point does not lie on the hypersurface");
    std::vector<MultiPoly<S>> images;
    for (int i = 0; i < n; ++i)
        images.push_back(MultiPoly<S>::var(f.ctx(), n, i) + MultiPoly<S>::constant(f.ctx(), n, o[i]));
    std::string src = "affine chart, origin moved to (";
    for (int i = 0; i < n; ++i) src += (i ? ", " : "") + FieldTraits<S>::str(o[i]);
    return LocalExpansion<S>::from_pieces(family, f.ctx(), n, f.compose(images).graded_pieces(), src + ")");
}

struct ConditionReport {
    std::string condition;
    Verdict verdict = Verdict::Inconclusive;
    std::string method;
    std::string evidence;  // witness on fail, certificate or trace otherwise
    std::string field;
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, long long>> parameters;
    // Re-runs the failing sub-check on the stored witness; set on every fail.
    std::function<bool()> recheck;
};

struct CheckOptions {
    Thresholds thresholds;
    std::uint64_t groebner_budget = kDefaultBudget;
    std::uint64_t search_budget = kDefaultPencilBudget;
    int hyperplanes = 25;       // random hyperplanes for R1.3
    int subspace_samples = 4;   // random subspaces per codimension for R2.1
    int cycle_trials = 4;       // slices per hyperplane for R1.3
    int component_slices = 6;   // sections searched for degenerate components in R1.2
};

namespace detail {

template <class S>
constexpr bool samples_points() {
    return std::is_same_v<S, Gf>;
}

template <class S>
std::string field_name(typename FieldTraits<S>::Ctx c) {
    return FieldTraits<S>::spec(c).str();
}

template <class S>
std::string columns_str(const Mat<S>& m) {
    std::string s = "[";
    for (int j = 0; j < m.cols(); ++j) {
        s += j ? ", (" : "(";
        for (int i = 0; i < m.rows(); ++i) s += (i ? ", " : "") + FieldTraits<S>::str(m(i, j));
        s += ")";
    }
    return s + "]";
}

template <class S>
ConditionReport base_report(const char* id, const LocalExpansion<S>& e) {
    ConditionReport r;
    r.condition = id;
    r.field = field_name<S>(e.field);
    r.parameters.emplace_back("M", e.M);
    return r;
}

template <class S>
void require_kind(const LocalExpansion<S>& e, Family f, PointKind k, const char* id) {
    if (e.family != f || e.kind != k)
        throw FieldError(std::string(id) + " applies to " + kind_name(k) + " points of the " + family_name(f) +
                         " family, got a " + kind_name(e.kind) + " point of the " + family_name(e.family) + " family");
}

// Rank >= threshold, decided exactly; a fail carries a basis of the radical.
template <class S>
ConditionReport rank_report(ConditionReport r, const MultiPoly<S>& q, int threshold, const std::string& what) {
    const auto form = quadratic_form_of(q);
    const int rank = form.rank();
    r.method = "exact rank of the Gram matrix";
    r.parameters.emplace_back("threshold", threshold);
    r.parameters.emplace_back("rank", rank);
    if (rank >= threshold) {
        r.verdict = Verdict::Pass;
        r.evidence = "rank(" + what + ") = " + std::to_string(rank) + " >= " + std::to_string(threshold);
        return r;
    }
    const Mat<S> radical = form.radical();
    r.verdict = Verdict::Fail;
    r.evidence = "rank(" + what + ") = " + std::to_string(rank) + " < " + std::to_string(threshold) +
                 "; radical spanned by " + columns_str(radical);
    r.recheck = [q, radical, threshold] {
        const auto g = quadratic_form_of(q).gram();
        for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < radical.cols(); ++j) {
                S acc = FieldTraits<S>::zero(q.ctx());
                for (int k = 0; k < g.cols(); ++k) acc += g(i, k) * radical(k, j);
                if (!FieldTraits<S>::is_zero(acc)) return false;
            }
        const int k = static_cast<int>(radical.cols());
        return (k == 0 || matrix_rank<S>(radical) == k) && g.rows() - k < threshold;
    };
    return r;
}

template <class S>
Mat<S> tangent_frame(const LocalExpansion<S>& e) {
    return LinearSubspace<S>(e.field, e.M, {e.q(1)}).parametrization();
}

template <class S>
std::vector<MultiPoly<S>> restricted_pieces(const LocalExpansion<S>& e, const Mat<S>& frame, int from, int to) {
    std::vector<MultiPoly<S>> out;
    for (int d = from; d <= to; ++d) out.push_back(substitute_linear(e.q(d), frame));
    return out;
}

template <class S>
ConditionReport inconclusive(ConditionReport r, const std::string& why) {
    r.verdict = Verdict::Inconclusive;
    r.evidence = why;
    return r;
}

template <class S>
MultiPoly<S> random_linear_form(typename FieldTraits<S>::Ctx c, int n, Rng& rng) {
    for (;;) {
        std::vector<S> v(n);
        for (auto& x : v) x = FieldTraits<S>::random(c, rng);
        auto l = MultiPoly<S>::linear(c, v);
        if (!l.is_zero()) return l;
    }
}

template <class S>
bool independent(const std::vector<MultiPoly<S>>& forms, int n) {
    Mat<S> m(static_cast<int>(forms.size()), n);
    for (size_t r = 0; r < forms.size(); ++r) {
        const auto v = forms[r].linear_coeffs();
        for (int c = 0; c < n; ++c) m(static_cast<int>(r), c) = v[c];
    }
    return matrix_rank<S>(m) == static_cast<int>(forms.size());
}

// The quadric and the homogenized equation on P(Pi) for Pi = {q1 = l = 0},
// with the homogenizing coordinate last.
inline std::pair<MultiPoly<Gf>, MultiPoly<Gf>> cycle_data(const LocalExpansion<Gf>& e, const MultiPoly<Gf>& l) {
    const LinearSubspace<Gf> pi(e.field, e.M, {e.q(1), l});
    const Mat<Gf> frame = pi.parametrization();
    const int m = pi.dim();
    MultiPoly<Gf> f(e.field, m + 1);
    const MultiPoly<Gf> z0 = MultiPoly<Gf>::var(e.field, m + 1, m);
    MultiPoly<Gf> quadric(e.field, m + 1);
    for (int d = 1; d <= e.M; ++d) {
        const MultiPoly<Gf> qd = substitute_linear(e.q(d), frame).insert_variable(m);
        if (d == 2) quadric = qd;
        f += qd * z0.pow(static_cast<unsigned>(e.M - d));
    }
    return {quadric, f};
}

}  // namespace detail

// ---- double spaces ----

template <class S>
ConditionReport check_W1(const LocalExpansion<S>& e, const Thresholds& th = {}) {
    detail::require_kind(e, Family::Double, PointKind::Nonsingular, "W1");
    const MultiPoly<S> qbar = substitute_linear(e.q(2), detail::tangent_frame(e));
    return detail::rank_report(detail::base_report("W1", e), qbar, th.w1, "q2 restricted to {q1 = 0}");
}

template <class S>
ConditionReport check_W2(const LocalExpansion<S>& e, const Thresholds& th = {}) {
    detail::require_kind(e, Family::Double, PointKind::Singular, "W2");
    return detail::rank_report(detail::base_report("W2", e), e.q(2), th.w2, "q2");
}

// ---- hypersurfaces, nonsingular point ----

template <class S>
ConditionReport check_R11(const LocalExpansion<S>& e, const CheckOptions& opt = {}) {
    detail::require_kind(e, Family::Hypersurface, PointKind::Nonsingular, "R1.1");
    auto r = detail::base_report("R1.1", e);
    r.method = "regular sequence by Groebner staircase on {q1 = 0}";
    r.parameters.emplace_back("budget", static_cast<long long>(opt.groebner_budget));
    const auto seq = detail::restricted_pieces(e, detail::tangent_frame(e), 2, e.M - 1);
    const int n = e.M - 1;
    try {
        const auto rep = is_regular_sequence(seq, n, opt.groebner_budget);
        r.evidence = rep.certificate;
        if (rep.regular) {
            r.verdict = Verdict::Pass;
            return r;
        }
        r.verdict = Verdict::Fail;
        r.evidence = "restricted sequence q2..q" + std::to_string(e.M - 1) + " fails at position " +
                     std::to_string(rep.failing_index) + ": " + rep.certificate;
        const int k = rep.failing_index;
        const std::uint64_t budget = opt.groebner_budget;
        r.recheck = [seq, k, n, budget] {
            std::vector<MultiPoly<S>> prefix(seq.begin(), seq.begin() + k);
            return dimension_groebner(prefix, n, budget).projective_dim != n - 1 - k;
        };
    } catch (const ResourceLimit& ex) {
        return detail::inconclusive<S>(std::move(r), std::string("budget exhausted: ") + ex.what());
    }
    return r;
}

template <class S>
ConditionReport check_R12(const LocalExpansion<S>& e, std::uint64_t seed, const CheckOptions& opt = {}) {
    detail::require_kind(e, Family::Hypersurface, PointKind::Nonsingular, "R1.2");
    auto r = detail::base_report("R1.2", e);
    const Mat<S> frame = detail::tangent_frame(e);
    const MultiPoly<S> q2 = substitute_linear(e.q(2), frame), q3 = substitute_linear(e.q(3), frame);
    r = detail::rank_report(std::move(r), q2, opt.thresholds.r12, "q2 restricted to {q1 = 0}");
    if (r.verdict == Verdict::Fail) return r;
    const std::string rank_part = r.evidence;
    r.seed = seed;
    if constexpr (!detail::samples_points<S>()) {
        return detail::inconclusive<S>(std::move(r), rank_part + "; component search needs a prime field");
    } else {
        if (e.M - 1 < 4) return detail::inconclusive<S>(std::move(r), rank_part + "; component search needs M >= 5");
        r.method = "exact rank; sampled search for hyperplane components of {q2 = q3 = 0} on {q1 = 0}";
        const auto w = find_degenerate_component(q2, q3, seed, opt.component_slices);
        if (!w) {
            r.verdict = Verdict::PassSampled;
            r.evidence = rank_part + "; no component spanning only a hyperplane found in " +
                         std::to_string(opt.component_slices) + " sections";
            return r;
        }
        r.verdict = Verdict::Fail;
        r.evidence = rank_part + "; degenerate component on the tangent hyperplane: " + w->str();
        const ComponentWitness cw = *w;
        r.recheck = [cw, q2, q3] { return cw.verify(q2, q3); };
        return r;
    }
}

template <class S>
ConditionReport check_R13(const LocalExpansion<S>& e, int hyperplanes, std::uint64_t seed, const CheckOptions& opt = {},
                          const std::vector<MultiPoly<S>>& user_hyperplanes = {}) {
    detail::require_kind(e, Family::Hypersurface, PointKind::Nonsingular, "R1.3");
    auto r = detail::base_report("R1.3", e);
    r.seed = seed;
    r.parameters.emplace_back("hyperplanes", hyperplanes);
    r.parameters.emplace_back("user_hyperplanes", static_cast<long long>(user_hyperplanes.size()));
    r.parameters.emplace_back("trials", opt.cycle_trials);
    r.method = "irreducibility sampling of the intersection cycle on sampled hyperplanes";
    if constexpr (!detail::samples_points<S>()) {
        return detail::inconclusive<S>(std::move(r), "cycle sampling needs a prime field");
    } else {
        if (e.field->characteristic() < kMinSamplingPrime)
            return detail::inconclusive<S>(std::move(r), "cycle sampling needs p >= " + std::to_string(kMinSamplingPrime));
        if (e.M < 5) return detail::inconclusive<S>(std::move(r), "cycle sampling needs M >= 5");
        std::vector<MultiPoly<Gf>> planes;
        for (const auto& l : user_hyperplanes) {
            if (l.nvars() != e.M || l.is_zero() || !l.is_homogeneous() || l.degree() != 1)
                throw FieldError("hyperplanes through the point are given by linear forms");
            if (!detail::independent<Gf>({e.q(1), l}, e.M)) throw FieldError("hyperplane coincides with the tangent hyperplane");
            planes.push_back(l);
        }
        Rng rng(seed);
        for (int i = 0; i < hyperplanes; ++i) {
            for (;;) {
                auto l = detail::random_linear_form<Gf>(e.field, e.M, rng);
                if (!detail::independent<Gf>({e.q(1), l}, e.M)) continue;
                planes.push_back(l);
                break;
            }
        }
        int passed = 0, unsure = 0;
        for (size_t i = 0; i < planes.size(); ++i) {
            const auto [quadric, f] = detail::cycle_data(e, planes[i]);
            const MultiPoly<Gf> l = planes[i];
            if (quadric.is_zero()) {
                r.verdict = Verdict::Fail;
                r.evidence = "hyperplane " + l.str() + ": q2 vanishes on {q1 = 0} intersected with it";
                const LocalExpansion<Gf> ec = e;
                r.recheck = [ec, l] { return detail::cycle_data(ec, l).first.is_zero(); };
                return r;
            }
            const auto rep = sample_cycle_irreducible_reduced(quadric, f, opt.cycle_trials, seed + i);
            if (rep.verdict == SampleVerdict::Pass) {
                ++passed;
            } else if (rep.verdict == SampleVerdict::Fail) {
                r.verdict = Verdict::Fail;
                const CurveWitness w = rep.witnesses.front();
                r.evidence = "hyperplane " + l.str() + ": " + w.str();
                const LocalExpansion<Gf> ec = e;
                r.recheck = [ec, l, w] {
                    const auto [qq, ff] = detail::cycle_data(ec, l);
                    return reverify_cycle_witness(qq, ff, w);
                };
                return r;
            } else {
                ++unsure;
            }
        }
        r.evidence = std::to_string(passed) + " of " + std::to_string(planes.size()) +
                     " hyperplanes certified irreducible and reduced";
        r.verdict = unsure ? Verdict::Inconclusive : Verdict::PassSampled;
        if (unsure) r.evidence += "; " + std::to_string(unsure) + " inconclusive";
        return r;
    }
}

template <class S>
std::vector<ConditionReport> check_R1(const LocalExpansion<S>& e, int hyperplanes, std::uint64_t seed,
                                      const CheckOptions& opt = {}, const std::vector<MultiPoly<S>>& user_hyperplanes = {}) {
    return {check_R11(e, opt), check_R12(e, seed, opt), check_R13(e, hyperplanes, seed, opt, user_hyperplanes)};
}

// ---- hypersurfaces, singular point ----

template <class S>
ConditionReport check_R21(const LocalExpansion<S>& e, int subspace_samples, std::uint64_t seed,
                          const CheckOptions& opt = {}, const std::vector<LinearSubspace<S>>& user_subspaces = {}) {
    detail::require_kind(e, Family::Hypersurface, PointKind::Singular, "R2.1");
    auto r = detail::base_report("R2.1", e);
    r.seed = seed;
    r.method = "finiteness on the whole space and on sampled subspaces of codimension 1 and 2";
    r.parameters.emplace_back("subspace_samples", subspace_samples);
    r.parameters.emplace_back("user_subspaces", static_cast<long long>(user_subspaces.size()));
    r.parameters.emplace_back("budget", static_cast<long long>(opt.groebner_budget));
    std::vector<LinearSubspace<S>> spaces{LinearSubspace<S>::whole(e.field, e.M)};
    for (const auto& s : user_subspaces) {
        if (s.ambient() != e.M || s.codim() > 2) throw FieldError("R2.1 subspaces have codimension 0, 1 or 2");
        spaces.push_back(s);
    }
    Rng rng(seed);
    for (int c = 1; c <= 2; ++c)
        for (int i = 0; i < subspace_samples; ++i) {
            for (;;) {
                std::vector<MultiPoly<S>> eqs;
                for (int j = 0; j < c; ++j) eqs.push_back(detail::random_linear_form<S>(e.field, e.M, rng));
                if (!detail::independent<S>(eqs, e.M)) continue;
                spaces.emplace_back(e.field, e.M, eqs);
                break;
            }
        }
    int checked = 0;
    for (const auto& pi : spaces) {
        const int c = pi.codim();
        std::vector<MultiPoly<S>> qs;
        for (int d = 2; d <= e.M - c; ++d) qs.push_back(e.q(d));
        DimensionVerdict v;
        bool finite;
        try {
            finite = finiteness_on_subspace(qs, pi, c, opt.groebner_budget, &v);
        } catch (const ResourceLimit& ex) {
            return detail::inconclusive<S>(std::move(r), std::string("budget exhausted: ") + ex.what());
        }
        ++checked;
        if (!finite) {
            std::string eqs;
            for (const auto& l : pi.equations()) eqs += (eqs.empty() ? "" : ", ") + l.str();
            r.verdict = Verdict::Fail;
            r.evidence = "codimension " + std::to_string(c) + " subspace {" + eqs + "}: q2..q" + std::to_string(e.M - c) +
                         " cut a set of projective dimension " + std::to_string(v.projective_dim) + "; " + v.certificate;
            const std::uint64_t budget = opt.groebner_budget;
            r.recheck = [qs, pi, c, budget] { return !finiteness_on_subspace(qs, pi, c, budget); };
            return r;
        }
    }
    r.verdict = Verdict::PassSampled;
    r.evidence = "finite on " + std::to_string(checked) + " subspaces (codimension 0 exact, others sampled)";
    return r;
}

template <class S>
ConditionReport check_R22(const LocalExpansion<S>& e, const Thresholds& th = {}) {
    detail::require_kind(e, Family::Hypersurface, PointKind::Singular, "R2.2");
    return detail::rank_report(detail::base_report("R2.2", e), e.q(2), th.r22, "q2");
}

template <class S>
ConditionReport check_R23(const LocalExpansion<S>& e, std::uint64_t seed, const CheckOptions& opt = {}) {
    detail::require_kind(e, Family::Hypersurface, PointKind::Singular, "R2.3");
    auto r = detail::base_report("R2.3", e);
    r.seed = seed;
    r.parameters.emplace_back("budget", static_cast<long long>(opt.search_budget));
    r.method = "pencil search: q3 = c(l1, l2) + q2 h";
    if constexpr (!detail::samples_points<S>()) {
        return detail::inconclusive<S>(std::move(r), "pencil search needs a prime field");
    } else {
        if (e.field->characteristic() <= 3) return detail::inconclusive<S>(std::move(r), "pencil search needs p > 3");
        if (quadratic_form_of(e.q(2)).rank() < 5)
            return detail::inconclusive<S>(std::move(r), "pencil search needs rank q2 >= 5");
        const auto rep = pencil_cubic_membership(e.q(2), e.q(3), opt.search_budget, seed);
        r.method += " (" + rep.method + ")";
        r.parameters.emplace_back("candidates", static_cast<long long>(rep.candidates));
        if (rep.violation) {
            r.verdict = Verdict::Fail;
            r.evidence = rep.witness->str();
            const PencilWitness<Gf> w = *rep.witness;
            const MultiPoly<Gf> q2 = e.q(2), q3 = e.q(3);
            r.recheck = [w, q2, q3] { return w.verify(q2, q3) && pencil_member(q2, q3, w.l1, w.l2).has_value(); };
            return r;
        }
        r.verdict = rep.exhaustive ? Verdict::Pass : Verdict::PassSampled;
        r.evidence = rep.exhaustive ? "no pencil: every linear form h was tried"
                                    : "no pencil found after " + std::to_string(rep.candidates) + " candidates";
        return r;
    }
}

template <class S>
std::vector<ConditionReport> check_R2(const LocalExpansion<S>& e, int subspace_samples, std::uint64_t seed,
                                      const CheckOptions& opt = {}, const std::vector<LinearSubspace<S>>& user_subspaces = {}) {
    return {check_R21(e, subspace_samples, seed, opt, user_subspaces), check_R22(e, opt.thresholds), check_R23(e, seed, opt)};
}

// Every condition that applies to the point.
template <class S>
std::vector<ConditionReport> check_all(const LocalExpansion<S>& e, std::uint64_t seed, const CheckOptions& opt = {},
                                       const std::vector<MultiPoly<S>>& user_hyperplanes = {},
                                       const std::vector<LinearSubspace<S>>& user_subspaces = {}) {
    if (e.family == Family::Double)
        return {e.kind == PointKind::Nonsingular ? check_W1(e, opt.thresholds) : check_W2(e, opt.thresholds)};
    if (e.kind == PointKind::Nonsingular) return check_R1(e, opt.hyperplanes, seed, opt, user_hyperplanes);
    return check_R2(e, opt.subspace_samples, seed, opt, user_subspaces);
}

// ---- surveys ----

struct SurveyConfig {
    Family family = Family::Double;
    int M = 6;
    const GfContext* field = nullptr;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    std::optional<Thresholds> thresholds;  // default: the standard values capped by M
    std::vector<std::string> conditions;   // default: the family battery without R1.3
    CheckOptions options;
};

struct SurveyRow {
    std::string condition;
    std::string point_kind;
    std::string mode;  // sampled | exhaustive
    std::uint64_t tested = 0, failed = 0, inconclusive = 0;
    std::string frequency;  // failed / tested, reduced
};

struct SurveyReport {
    std::string family;
    int M = 0;
    std::string field;
    std::uint64_t seed = 0, samples = 0;
    Thresholds thresholds;
    std::string threshold_note;
    std::vector<SurveyRow> rows;
};

// Paper thresholds capped by the number of variables each form lives in.
inline Thresholds scaled_thresholds(int M) {
    return {std::min(2, M - 1), std::min(4, M), std::min(6, M - 1), std::min(8, M)};
}

inline std::vector<std::string> default_conditions(Family f) {
    if (f == Family::Double) return {"W1", "W2"};
    return {"R1.1", "R1.2", "R2.1", "R2.2", "R2.3"};
}

namespace detail {

struct ConditionShape {
    Family family;
    PointKind kind;
    int top;  // highest piece read
};

inline ConditionShape condition_shape(const std::string& id, int M) {
    if (id == "W1") return {Family::Double, PointKind::Nonsingular, 2};
    if (id == "W2") return {Family::Double, PointKind::Singular, 2};
    if (id == "R1.1") return {Family::Hypersurface, PointKind::Nonsingular, M - 1};
    if (id == "R1.2") return {Family::Hypersurface, PointKind::Nonsingular, 3};
    if (id == "R1.3") return {Family::Hypersurface, PointKind::Nonsingular, M};
    if (id == "R2.1") return {Family::Hypersurface, PointKind::Singular, M};
    if (id == "R2.2") return {Family::Hypersurface, PointKind::Singular, 2};
    if (id == "R2.3") return {Family::Hypersurface, PointKind::Singular, 3};
    throw FieldError("unknown condition '" + id + "'");
}

// Number of expansions with pieces 1 (or 2) .. top, q1 nonzero; nullopt above cap.
inline std::optional<std::uint64_t> expansion_count(const GfContext* c, int M, PointKind kind, int top, std::uint64_t cap) {
    const std::uint64_t q = c->order();
    unsigned __int128 total = 1;
    for (int d = kind == PointKind::Nonsingular ? 1 : 2; d <= top; ++d) {
        const auto n = monomials_of_degree(M, static_cast<unsigned>(d)).size();
        unsigned __int128 size = 1;
        for (size_t i = 0; i < n; ++i) {
            size *= q;
            if (size > cap + 1) return std::nullopt;
        }
        if (d == 1) size -= 1;
        total *= size;
        if (total > cap) return std::nullopt;
    }
    return static_cast<std::uint64_t>(total);
}

// The index-th expansion in a fixed enumeration order.
inline LocalExpansion<Gf> enumerated_expansion(const GfContext* c, Family fam, int M, PointKind kind, int top,
                                               std::uint64_t index) {
    const std::uint64_t q = c->order();
    std::vector<MultiPoly<Gf>> qs(top + 1, MultiPoly<Gf>(c, M));
    for (int d = kind == PointKind::Nonsingular ? 1 : 2; d <= top; ++d) {
        const auto mons = monomials_of_degree(M, static_cast<unsigned>(d));
        if (d == 1) {
            // nonzero linear forms: digits of index % (q^M - 1) + 1
            std::uint64_t size = 1;
            for (size_t i = 0; i < mons.size(); ++i) size *= q;
            std::uint64_t code = index % (size - 1) + 1;
            index /= size - 1;
            for (const auto& m : mons) {
                qs[d].add_term(m, Gf(c, code % q));
                code /= q;
            }
            continue;
        }
        for (const auto& m : mons) {
            qs[d].add_term(m, Gf(c, index % q));
            index /= q;
        }
    }
    return LocalExpansion<Gf>::from_pieces(fam, c, M, std::move(qs), "enumerated, truncated at degree " + std::to_string(top));
}

inline LocalExpansion<Gf> random_expansion(const GfContext* c, Family fam, int M, PointKind kind, int top, Rng& rng) {
    std::vector<MultiPoly<Gf>> qs(top + 1, MultiPoly<Gf>(c, M));
    for (int d = kind == PointKind::Nonsingular ? 1 : 2; d <= top; ++d) {
        qs[d] = MultiPoly<Gf>::random_form(c, M, static_cast<unsigned>(d), rng);
        while (d == 1 && qs[d].is_zero()) qs[d] = MultiPoly<Gf>::random_form(c, M, 1, rng);
    }
    return LocalExpansion<Gf>::from_pieces(fam, c, M, std::move(qs), "random, truncated at degree " + std::to_string(top));
}

inline ConditionReport run_condition(const std::string& id, const LocalExpansion<Gf>& e, std::uint64_t seed,
                                     const CheckOptions& opt) {
    if (id == "W1") return check_W1(e, opt.thresholds);
    if (id == "W2") return check_W2(e, opt.thresholds);
    if (id == "R1.1") return check_R11(e, opt);
    if (id == "R1.2") return check_R12(e, seed, opt);
    if (id == "R1.3") return check_R13(e, opt.hyperplanes, seed, opt);
    if (id == "R2.1") return check_R21(e, opt.subspace_samples, seed, opt);
    if (id == "R2.2") return check_R22(e, opt.thresholds);
    if (id == "R2.3") return check_R23(e, seed, opt);
    throw FieldError("unknown condition '" + id + "'");
}

}  // namespace detail

// Failure frequencies over random local expansions. Sample i uses seed + i.
// A condition whose input space has at most `samples` elements is enumerated
// exhaustively instead, which makes its frequency exact.
inline SurveyReport survey(const SurveyConfig& cfg) {
    if (!cfg.field || cfg.field->degree() != 1) throw FieldError("surveys run over a prime field");
    if (cfg.samples < 1) throw FieldError("surveys need at least one sample");
    if (cfg.M < 3) throw FieldError("surveys need M >= 3");
    SurveyReport rep;
    rep.family = family_name(cfg.family);
    rep.M = cfg.M;
    rep.field = FieldTraits<Gf>::spec(cfg.field).str();
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    if (cfg.thresholds) {
        rep.thresholds = *cfg.thresholds;
        rep.threshold_note = "as given";
    } else {
        rep.thresholds = scaled_thresholds(cfg.M);
        rep.threshold_note = rep.thresholds == Thresholds{} ? "defaults 2,4,6,8"
                                                            : "defaults 2,4,6,8 capped by the number of variables";
    }
    CheckOptions opt = cfg.options;
    opt.thresholds = rep.thresholds;
    const auto ids = cfg.conditions.empty() ? default_conditions(cfg.family) : cfg.conditions;
    for (const auto& id : ids) {
        const auto shape = detail::condition_shape(id, cfg.M);
        if (shape.family != cfg.family) throw FieldError("condition " + id + " does not belong to the " + rep.family + " family");
        SurveyRow row;
        row.condition = id;
        row.point_kind = kind_name(shape.kind);
        const auto space = detail::expansion_count(cfg.field, cfg.M, shape.kind, shape.top, cfg.samples);
        row.mode = space ? "exhaustive" : "sampled";
        const std::uint64_t n = space ? *space : cfg.samples;
        for (std::uint64_t i = 0; i < n; ++i) {
            const std::uint64_t s = cfg.seed + i;
            LocalExpansion<Gf> e = [&] {
                if (space) return detail::enumerated_expansion(cfg.field, cfg.family, cfg.M, shape.kind, shape.top, i);
                Rng rng(s);
                return detail::random_expansion(cfg.field, cfg.family, cfg.M, shape.kind, shape.top, rng);
            }();
            const auto r = detail::run_condition(id, e, s, opt);
            ++row.tested;
            if (r.verdict == Verdict::Fail) ++row.failed;
            if (r.verdict == Verdict::Inconclusive) ++row.inconclusive;
        }
        row.frequency = (Rational(row.failed) / Rational(row.tested)).str();
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace fmr
