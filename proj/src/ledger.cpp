#include "fmr/ledger.hpp"

#include "fmr/hypertangent.hpp"

#include <algorithm>
#include <set>

namespace fmr {

const char* rel_symbol(Rel r) {
    switch (r) {
        case Rel::Lt: return "<";
        case Rel::Le: return "<=";
        case Rel::Eq: return "=";
        case Rel::Ge: return ">=";
        case Rel::Gt: return ">";
    }
    return "?";
}

const char* ledger_verdict_name(LedgerVerdict v) {
    switch (v) {
        case LedgerVerdict::Infeasible: return "infeasible";
        case LedgerVerdict::FeasibleWithWitness: return "feasible-with-witness";
        case LedgerVerdict::ImplicationGap: return "implication-gap";
    }
    return "?";
}

LinearRelation rel(std::map<std::string, Rational> coeffs, Rel r, Rational rhs, std::string anchor) {
    LinearRelation out;
    for (auto& [v, c] : coeffs)
        if (c != 0) out.coeffs.emplace(v, c);
    out.rel = r;
    out.rhs = std::move(rhs);
    out.anchor = std::move(anchor);
    return out;
}

bool LinearRelation::holds_at(const std::map<std::string, Rational>& x) const {
    Rational lhs = 0;
    for (const auto& [v, c] : coeffs) {
        auto it = x.find(v);
        if (it != x.end()) lhs += c * it->second;
    }
    switch (rel) {
        case Rel::Lt: return lhs < rhs;
        case Rel::Le: return lhs <= rhs;
        case Rel::Eq: return lhs == rhs;
        case Rel::Ge: return lhs >= rhs;
        case Rel::Gt: return lhs > rhs;
    }
    return false;
}

namespace {

std::string linear_str(const std::map<std::string, Rational>& coeffs) {
    std::string s;
    for (const auto& [v, c] : coeffs) {
        if (c == 0) continue;
        const bool neg = c < 0;
        const Rational a = neg ? Rational(-c) : c;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (a != 1) s += a.str() + "*";
        s += v;
    }
    return s.empty() ? "0" : s;
}

}  // namespace

std::string LinearRelation::str() const { return linear_str(coeffs) + " " + rel_symbol(rel) + " " + rhs.str(); }

LinearRelation negate(const LinearRelation& r) {
    LinearRelation n = r;
    switch (r.rel) {
        case Rel::Lt: n.rel = Rel::Ge; break;
        case Rel::Le: n.rel = Rel::Gt; break;
        case Rel::Ge: n.rel = Rel::Lt; break;
        case Rel::Gt: n.rel = Rel::Le; break;
        case Rel::Eq: throw FieldError("cannot negate an equality into a single relation");
    }
    n.anchor = "negation of: " + r.anchor;
    return n;
}

void IneqSystem::validate() const {
    std::set<std::string> vars(variables.begin(), variables.end());
    auto check = [&](const LinearRelation& r) {
        for (const auto& [v, c] : r.coeffs)
            if (!vars.count(v)) throw FieldError("relation '" + r.str() + "' uses undeclared variable " + v);
    };
    for (const auto& r : axioms) check(r);
    for (const auto& r : claims) {
        check(r);
        if (r.rel == Rel::Eq) throw FieldError("claims must be inequalities: " + r.str());
    }
    if (split && !vars.count(split->first)) throw FieldError("split variable " + split->first + " is undeclared");
    if (axioms.empty() && claims.empty()) throw FieldError("system has no relations");
}

namespace {

// sum c_j x_j >= b, or > b when strict; origin records the combination of input relations.
struct Row {
    std::vector<Rational> c;
    Rational b;
    bool strict = false;
    std::map<std::size_t, Rational> origin;

    bool ground() const {
        return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; });
    }
    bool contradictory() const { return ground() && (b > 0 || (strict && b == 0)); }
};

Row scaled(const Row& r, const Rational& s) {
    Row o = r;
    for (auto& x : o.c) x *= s;
    o.b *= s;
    for (auto& [k, v] : o.origin) v *= s;
    return o;
}

Row sum(const Row& x, const Row& y) {
    Row o = x;
    for (size_t j = 0; j < o.c.size(); ++j) o.c[j] += y.c[j];
    o.b += y.b;
    o.strict = x.strict || y.strict;
    for (const auto& [k, v] : y.origin) o.origin[k] += v;
    for (auto it = o.origin.begin(); it != o.origin.end();)
        it = it->second == 0 ? o.origin.erase(it) : std::next(it);
    return o;
}

// Keeps the tightest row per direction and drops satisfied ground rows.
std::vector<Row> prune(std::vector<Row> rows) {
    std::map<std::string, Row> best;
    std::vector<Row> bad;
    for (auto& r : rows) {
        if (r.ground()) {
            if (r.contradictory()) bad.push_back(std::move(r));
            continue;
        }
        Rational lead = 0;
        for (const auto& x : r.c)
            if (x != 0) {
                lead = x < 0 ? Rational(-x) : x;
                break;
            }
        Row n = scaled(r, 1 / lead);
        std::string key;
        for (const auto& x : n.c) key += x.str() + ",";
        auto it = best.find(key);
        if (it == best.end() || n.b > it->second.b || (n.b == it->second.b && n.strict && !it->second.strict))
            best[key] = std::move(n);
    }
    if (!bad.empty()) return {bad.front()};
    std::vector<Row> out;
    for (auto& [k, r] : best) out.push_back(std::move(r));
    return out;
}

std::map<std::string, Rational> back_substitute(const std::vector<std::vector<Row>>& levels,
                                                const std::vector<int>& order,
                                                const std::vector<std::string>& names) {
    std::vector<Rational> x(names.size(), Rational(0));
    for (int step = static_cast<int>(order.size()) - 1; step >= 0; --step) {
        const int j = order[step];
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const Row& r : levels[step]) {
            if (r.c[j] == 0) continue;
            Rational rest = r.b;
            for (size_t l = 0; l < names.size(); ++l)
                if (static_cast<int>(l) != j && r.c[l] != 0) rest -= r.c[l] * x[l];
            const Rational v = rest / r.c[j];
            if (r.c[j] > 0) {
                if (!lo || v > *lo || (v == *lo && r.strict)) {
                    lo_strict = (lo && v == *lo) ? (lo_strict || r.strict) : r.strict;
                    lo = v;
                }
            } else if (!hi || v < *hi || (v == *hi && r.strict)) {
                hi_strict = (hi && v == *hi) ? (hi_strict || r.strict) : r.strict;
                hi = v;
            }
        }
        if (lo && hi)
            x[j] = *lo == *hi ? *lo : (*lo + *hi) / 2;
        else if (lo)
            x[j] = lo_strict ? *lo + 1 : *lo;
        else if (hi)
            x[j] = hi_strict ? *hi - 1 : *hi;
    }
    std::map<std::string, Rational> w;
    for (size_t j = 0; j < names.size(); ++j) w[names[j]] = x[j];
    return w;
}

}  // namespace

std::string FMResult::contradiction() const {
    if (feasible) return "";
    return std::string("0 ") + (ground_strict ? ">" : ">=") + " " + ground_rhs.str();
}

FMResult fourier_motzkin(const std::vector<LinearRelation>& rels, const std::vector<std::string>& variables) {
    std::map<std::string, int> index;
    for (size_t j = 0; j < variables.size(); ++j) index[variables[j]] = static_cast<int>(j);
    const size_t n = variables.size();
    std::vector<Row> rows;
    for (size_t i = 0; i < rels.size(); ++i) {
        Row r;
        r.c.assign(n, Rational(0));
        for (const auto& [v, c] : rels[i].coeffs) {
            auto it = index.find(v);
            if (it == index.end()) throw FieldError("relation uses unknown variable " + v);
            r.c[it->second] = c;
        }
        r.b = rels[i].rhs;
        r.origin[i] = 1;
        switch (rels[i].rel) {
            case Rel::Gt: r.strict = true; [[fallthrough]];
            case Rel::Ge: rows.push_back(r); break;
            case Rel::Lt: r.strict = true; [[fallthrough]];
            case Rel::Le:
                rows.push_back(scaled(r, -1));
                rows.back().origin[i] = 1;
                break;
            case Rel::Eq:
                rows.push_back(r);
                rows.push_back(scaled(r, -1));
                break;
        }
    }
    FMResult res;
    auto finish_infeasible = [&](const Row& r) {
        res.feasible = false;
        res.multipliers = r.origin;
        res.ground_rhs = r.b;
        res.ground_strict = r.strict;
        return res;
    };
    rows = prune(std::move(rows));
    std::vector<std::vector<Row>> levels;
    std::vector<int> order;
    std::vector<bool> done(n, false);
    for (size_t step = 0; step < n; ++step) {
        if (rows.size() == 1 && rows[0].contradictory()) return finish_infeasible(rows[0]);
        // Cheapest variable first.
        int pick = -1;
        size_t cost = 0;
        for (size_t j = 0; j < n; ++j) {
            if (done[j]) continue;
            size_t p = 0, m = 0;
            for (const Row& r : rows) {
                if (r.c[j] > 0) ++p;
                if (r.c[j] < 0) ++m;
            }
            if (pick < 0 || p * m < cost) {
                pick = static_cast<int>(j);
                cost = p * m;
            }
        }
        levels.push_back(rows);
        order.push_back(pick);
        done[pick] = true;
        std::vector<Row> pos, neg, next;
        for (Row& r : rows) {
            if (r.c[pick] > 0)
                pos.push_back(std::move(r));
            else if (r.c[pick] < 0)
                neg.push_back(std::move(r));
            else
                next.push_back(std::move(r));
        }
        for (const Row& p : pos)
            for (const Row& m : neg) {
                Row r = sum(scaled(p, -m.c[pick]), scaled(m, p.c[pick]));
                r.c[pick] = 0;
                next.push_back(std::move(r));
            }
        const size_t before = levels.back().size();
        rows = prune(std::move(next));
        res.trace.push_back({variables[pick], before, rows.size()});
    }
    if (rows.size() == 1 && rows[0].contradictory()) return finish_infeasible(rows[0]);
    res.feasible = true;
    res.witness = back_substitute(levels, order, variables);
    return res;
}

bool replay(const std::vector<LinearRelation>& rels, const FMResult& r) {
    if (r.feasible) return false;
    std::map<std::string, Rational> total;
    Rational b = 0;
    bool strict = false;
    for (const auto& [i, lambda] : r.multipliers) {
        if (i >= rels.size() || lambda == 0) return false;
        const auto& rel = rels[i];
        // Bring every relation to the form lhs >= rhs (or >) before combining.
        Rational s = 1;
        bool st = false;
        switch (rel.rel) {
            case Rel::Gt: st = true; break;
            case Rel::Ge: break;
            case Rel::Lt: st = true; s = -1; break;
            case Rel::Le: s = -1; break;
            case Rel::Eq: break;
        }
        if (rel.rel != Rel::Eq && lambda < 0) return false;
        for (const auto& [v, c] : rel.coeffs) total[v] += lambda * s * c;
        b += lambda * s * rel.rhs;
        if (st) strict = true;
    }
    for (const auto& [v, c] : total)
        if (c != 0) return false;
    if (b != r.ground_rhs || strict != r.ground_strict) return false;
    return b > 0 || (strict && b == 0);
}

namespace {

bool witness_ok(const std::vector<LinearRelation>& rels, const FMResult& r) {
    if (!r.feasible) return false;
    for (const auto& x : rels)
        if (!x.holds_at(r.witness)) return false;
    return true;
}

bool run_ok(const std::vector<LinearRelation>& rels, const FMResult& r) {
    return r.feasible ? witness_ok(rels, r) : replay(rels, r);
}

}  // namespace

bool FMCertificate::system_infeasible() const {
    for (const auto& b : branches)
        if (b.system.feasible) return false;
    return !branches.empty();
}

bool FMCertificate::replays() const {
    for (const auto& b : branches) {
        if (!run_ok(b.relations, b.system)) return false;
        for (const auto& c : b.claims) {
            if (!run_ok(c.relations, c.proof)) return false;
            if (c.implied == c.proof.feasible) return false;
        }
    }
    return true;
}

FMCertificate certify(const IneqSystem& s) {
    s.validate();
    FMCertificate cert;
    cert.case_id = s.case_id;
    cert.M = s.M;
    std::vector<std::optional<std::pair<std::string, Rational>>> values;
    if (s.split)
        for (const auto& v : s.split->second) values.emplace_back(std::make_pair(s.split->first, v));
    else
        values.emplace_back(std::nullopt);
    std::set<std::string> gaps;
    for (size_t bi = 0; bi < values.size(); ++bi) {
        BranchCertificate br;
        br.split_value = values[bi];
        std::vector<LinearRelation> premises = s.axioms;
        if (values[bi]) {
            const bool last = bi + 1 == values.size();
            premises.push_back(rel({{values[bi]->first, 1}}, last ? Rel::Ge : Rel::Eq, values[bi]->second,
                                   "integrality split"));
        }
        std::vector<LinearRelation> everything = premises;
        for (const auto& c : s.claims) {
            ClaimAudit a;
            a.claim = c;
            a.relations = premises;
            a.relations.push_back(negate(c));
            a.proof = fourier_motzkin(a.relations, s.variables);
            a.implied = !a.proof.feasible;
            if (a.implied)
                premises.push_back(c);
            else
                gaps.insert(c.str() + " [" + c.anchor + "]");
            everything.push_back(c);
            br.claims.push_back(std::move(a));
        }
        br.relations = everything;
        br.system = fourier_motzkin(br.relations, s.variables);
        cert.branches.push_back(std::move(br));
    }
    cert.gaps.assign(gaps.begin(), gaps.end());
    if (!cert.gaps.empty())
        cert.verdict = LedgerVerdict::ImplicationGap;
    else
        cert.verdict = cert.system_infeasible() ? LedgerVerdict::Infeasible : LedgerVerdict::FeasibleWithWitness;
    return cert;
}

const std::vector<std::string> kLedgerCases = {"divisorial", "case1-general", "case1-special", "case2"};

namespace {

// Cap on mult_o of a cycle of degree M (times n = 1) on the variety the chain lives on.
Rational chain_cap(long long M, ChainVariant v) {
    const Rational b = chain_bound(M, v);
    const Rational target = chain_target(M, v);
    if (b > target) throw FieldError("chain bound does not reach its target at M = " + std::to_string(M));
    return target * M;
}

}  // namespace

IneqSystem build_case(const std::string& case_id, long long M, const CaseOptions& opt) {
    if (std::find(kLedgerCases.begin(), kLedgerCases.end(), case_id) == kLedgerCases.end())
        throw FieldError("unknown ledger case '" + case_id + "'");
    if (M < 9) throw FieldError("ledger cases need M >= 9, got M = " + std::to_string(M));
    IneqSystem s;
    s.case_id = case_id;
    s.M = M;
    const Rational nu_cap = mult_bound(M, 1).nu_bound;
    const Rational one = 1;
    auto& ax = s.axioms;
    auto& cl = s.claims;
    if (case_id == "divisorial") {
        s.variables = {"nu", "mu", "d_S", "t"};
        ax.push_back(rel({{"nu", 1}}, Rel::Le, nu_cap, "nu <= 4n/3 from the multiplicity bound"));
        ax.push_back(rel({{"nu", 1}, {"d_S", -1}}, Rel::Gt, 0, "D+|E ~ nu H_E contains S of degree d_S: nu > n d_S"));
        ax.push_back(rel({{"d_S", 1}}, Rel::Ge, 1, "S is cut out by a hypersurface of degree d_S >= 1"));
        ax.push_back(rel({{"mu", 1}}, Rel::Gt, 1, "mult_S D+ > n at a non log canonical centre"));
        ax.push_back(rel({{"t", 1}, {"nu", -2}, {"mu", -2}}, Rel::Ge, 0, "t = mult_o(D.Delta) >= 2nu + 2 mult_S D+"));
        ax.push_back(rel({{"t", 1}}, Rel::Le, chain_cap(M, ChainVariant::I), "chain (i) cap with deg(D.Delta) = nM"));
        cl.push_back(rel({{"t", 1}}, Rel::Gt, 4, "mult_o(D.Delta) > 4n"));
        s.split = std::make_pair(std::string("d_S"), std::vector<Rational>{1, 2});
    } else if (case_id == "case2") {
        s.variables = {"nu", "mu", "a", "m", "t"};
        ax.push_back(rel({{"nu", 1}}, Rel::Le, nu_cap, "nu <= 4n/3 from the multiplicity bound"));
        ax.push_back(rel({{"mu", 1}}, Rel::Gt, 1, "mu = mult_S D+ > n"));
        ax.push_back(rel({{"mu", 1}, {"nu", -2}}, Rel::Le, 0, "mu <= 2nu"));
        ax.push_back(rel({{"a", 1}}, Rel::Ge, 0, "a >= 0: multiplicity of P in D_Delta"));
        ax.push_back(rel({{"m", 1}, {"a", 1}}, Rel::Eq, one, "m = n - a"));
        ax.push_back(rel({{"m", 1}}, Rel::Ge, 0, "G in |mH_Delta| is effective"));
        ax.push_back(rel({{"mu", 1}, {"a", -1}, {"m", -1}}, Rel::Gt, 0, "mult_S G+ = mu - a > n - a = m"));
        ax.push_back(rel({{"t", 1}, {"nu", -2}, {"mu", -2}, {"a", 4}}, Rel::Ge, 0,
                         "t = mult_o G_P >= 2(nu - a) + 2 mult_S G+"));
        ax.push_back(rel({{"t", 1}, {"m", -chain_cap(M, ChainVariant::III)}}, Rel::Le, 0,
                         "chain (iii) cap with deg G_P = mM"));
        cl.push_back(rel({{"t", 1}, {"m", -4}}, Rel::Gt, 0, "mult_o G_P > 4m"));
    } else {
        s.variables = {"nu", "mu", "gamma", "a", "mu_S", "beta", "t"};
        ax.push_back(rel({{"nu", 1}}, Rel::Le, nu_cap, "nu <= 4n/3 from the multiplicity bound"));
        ax.push_back(rel({{"mu", 1}}, Rel::Gt, 1, "mu = mult_S D+ > n"));
        ax.push_back(rel({{"mu", 1}, {"nu", -2}}, Rel::Le, 0, "mu <= 2nu"));
        ax.push_back(rel({{"gamma", 3}, {"mu", -2}, {"nu", 1}}, Rel::Ge, 0, "secant lines: gamma >= (2mu - nu)/3"));
        ax.push_back(rel({{"a", 1}, {"gamma", -1}}, Rel::Ge, 0, "a >= gamma = mult_Lambda D+"));
        ax.push_back(rel({{"mu_S", 1}}, Rel::Ge, 0, "mu_S >= 0"));
        ax.push_back(rel({{"beta", 1}}, Rel::Ge, 0, "beta >= 0"));
        ax.push_back(rel({{"t", 1}, {"nu", -2}, {"a", -2}}, Rel::Eq, 0, "t = mult_o D_Delta = 2(nu + a)"));
        ax.push_back(rel({{"t", 1}}, Rel::Le, chain_cap(M, ChainVariant::II),
                         "chain (ii) cap with deg D_Delta = nM"));
        if (case_id == "case1-general") {
            ax.push_back(rel({{"mu_S", 1}, {"beta", 1}, {"a", 1}}, Rel::Gt, 2, "S_1 in general position: mu_S + beta + a > 2n"));
            ax.push_back(rel({{"mu_S", 1}, {"beta", -1}}, Rel::Ge, 0, "mu_S >= beta"));
            ax.push_back(rel({{"mu_S", 2}, {"nu", -1}, {"a", -1}}, Rel::Le, 0,
                             "D+_Delta contains S with multiplicity at most (nu + a)/d_S, d_S >= 2"));
            cl.push_back(rel({{"nu", 1}, {"a", 2}}, Rel::Gt, 2, "nu + 2a > 2n"));
            cl.push_back(rel({{"t", 1}, {"nu", -1}}, Rel::Gt, 2, "mult_o D_Delta > nu + 2n"));
            cl.push_back(rel({{"t", 1}}, Rel::Gt, 3, "mult_o D_Delta > nu + 2n > 3n"));
        } else {
            ax.push_back(rel({{"mu_S", 1}, {"beta", 1}, {"a", 2}}, Rel::Gt, 2, "S_1 on the strict transform of Lambda: mu_S + beta + 2a > 2n"));
            ax.push_back(rel({{"mu_S", 2}, {"beta", 2}, {"nu", -1}, {"a", -1}}, Rel::Le, 0,
                             "restriction to Lambda: 2mu_S + 2beta <= nu + a"));
            cl.push_back(rel({{"nu", 1}, {"a", 5}}, Rel::Gt, 4, "nu + 5a > 4n"));
            cl.push_back(rel({{"nu", 5}, {"a", 5}}, Rel::Gt, 8, "5(nu + a) > 8n"));
            cl.push_back(rel({{"t", 1}}, Rel::Gt, Rational(16) / 5, "mult_o D_Delta > 16n/5"));
        }
    }
    if (opt.auxiliary_mu_le_nu)
        ax.push_back(rel({{"mu", 1}, {"nu", -1}}, Rel::Le, 0, "auxiliary: mu <= nu"));
    s.validate();
    return s;
}

LedgerReport replay_all(long long M_lo, long long M_hi, const std::vector<std::string>& cases, const CaseOptions& opt) {
    if (M_lo < 9 || M_hi < M_lo) throw FieldError("replay range must satisfy 9 <= lo <= hi");
    LedgerReport rep;
    rep.M_lo = M_lo;
    rep.M_hi = M_hi;
    rep.auxiliary = opt.auxiliary_mu_le_nu;
    for (long long M = M_lo; M <= M_hi; ++M)
        for (const auto& c : cases) rep.certificates.push_back(certify(build_case(c, M, opt)));
    return rep;
}

}  // namespace fmr
