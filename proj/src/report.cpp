#include "fmr/report.hpp"

#include <algorithm>
#include <limits>

namespace fmr {

Json exact_json(const BigInt& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return x.convert_to<long long>();
    return x.str();
}

Json exact_json(const Rational& x) {
    if (boost::multiprecision::denominator(x) == 1) return exact_json(BigInt(boost::multiprecision::numerator(x)));
    return x.str();
}

Json to_json(const BoundTable& t) {
    Json j;
    j["M"] = t.M;
    j["family"] = family_name(t.family);
    j["bound"] = exact_json(t.at("family.bound"));
    Json entries = Json::array();
    for (const auto& e : t.entries) entries.push_back({{"id", e.id}, {"value", exact_json(e.value)}, {"note", e.note}});
    j["entries"] = entries;
    return j;
}

Json to_json(const RatioChain& c) {
    Json steps = Json::array();
    for (const auto& s : c.steps)
        steps.push_back({{"degree", s.degree}, {"factor", s.factor.str()}, {"cumulative", s.cumulative.str()}});
    return {{"variant", variant_name(c.variant)},
            {"M", c.M},
            {"start_codim", c.start_codim},
            {"steps", steps},
            {"product", c.product.str()},
            {"bound", c.bound.str()},
            {"closed_form", c.closed_form.str()},
            {"target", c.target.str()},
            {"meets_target", c.meets_target()},
            {"floor", c.floor},
            {"audit", c.audit()}};
}

Json to_json(const MultBound& b) {
    Json steps = Json::array();
    for (const auto& s : b.steps) steps.push_back({{"statement", s.statement}, {"value", s.value.str()}});
    return {{"M", b.M}, {"n", b.n}, {"steps", steps}, {"ratio_bound", b.ratio_bound.str()}, {"bound", b.bound.str()},
            {"nu_bound", b.nu_bound.str()}};
}

Json to_json(const LinearRelation& r) { return {{"relation", r.str()}, {"anchor", r.anchor}}; }

Json to_json(const FMResult& r) {
    Json trace = Json::array();
    for (const auto& s : r.trace)
        trace.push_back({{"eliminate", s.variable}, {"rows_before", s.rows_before}, {"rows_after", s.rows_after}});
    Json j{{"feasible", r.feasible}, {"trace", trace}};
    if (r.feasible) {
        Json w = Json::object();
        for (const auto& [k, v] : r.witness) w[k] = exact_json(v);
        j["witness"] = w;
    } else {
        Json m = Json::array();
        for (const auto& [i, v] : r.multipliers) m.push_back({{"relation", i}, {"multiplier", v.str()}});
        j["multipliers"] = m;
        j["contradiction"] = r.contradiction();
    }
    return j;
}

Json to_json(const FMCertificate& c) {
    Json branches = Json::array();
    for (const auto& b : c.branches) {
        Json rels = Json::array();
        for (const auto& r : b.relations) rels.push_back(to_json(r));
        Json claims = Json::array();
        for (const auto& a : b.claims)
            claims.push_back({{"claim", a.claim.str()}, {"anchor", a.claim.anchor}, {"implied", a.implied},
                              {a.implied ? "proof" : "counterexample", to_json(a.proof)}});
        Json br{{"split", nullptr}, {"relations", rels}, {"claims", claims}, {"system", to_json(b.system)}};
        if (b.split_value) br["split"] = {{"variable", b.split_value->first}, {"value", exact_json(b.split_value->second)}};
        branches.push_back(br);
    }
    return {{"case", c.case_id},
            {"M", c.M},
            {"verdict", ledger_verdict_name(c.verdict)},
            {"system_infeasible", c.system_infeasible()},
            {"replays", c.replays()},
            {"gaps", c.gaps},
            {"branches", branches}};
}

Json to_json(const LedgerReport& r) {
    Json certs = Json::array();
    std::map<std::string, int> counts;
    for (const auto& c : r.certificates) {
        certs.push_back(to_json(c));
        counts[ledger_verdict_name(c.verdict)]++;
    }
    Json summary = Json::object();
    for (const auto& [k, v] : counts) summary[k] = v;
    return {{"M_range", {r.M_lo, r.M_hi}}, {"auxiliary_mu_le_nu", r.auxiliary}, {"summary", summary}, {"certificates", certs}};
}

Json to_json(const ConditionReport& r) {
    Json th = Json::object();
    for (const auto& [k, v] : r.parameters) th[k] = v;
    Json witness = nullptr;
    if (r.verdict == Verdict::Fail) {
        witness = {{"description", r.evidence}, {"rechecked", nullptr}};
        if (r.recheck) witness["rechecked"] = r.recheck();
    }
    Json j{{"condition", r.condition}, {"verdict", verdict_name(r.verdict)}, {"witness", witness}, {"field", r.field},
           {"seed", nullptr},          {"thresholds", th},                    {"method", r.method}, {"evidence", r.evidence}};
    if (r.seed) j["seed"] = *r.seed;
    return j;
}

Json to_json(const SurveyReport& r) {
    Json rows = Json::array();
    for (const auto& x : r.rows)
        rows.push_back({{"condition", x.condition}, {"point_kind", x.point_kind}, {"mode", x.mode}, {"tested", x.tested},
                        {"failed", x.failed}, {"inconclusive", x.inconclusive}, {"frequency", x.frequency}});
    return {{"family", r.family},
            {"M", r.M},
            {"field", r.field},
            {"seed", r.seed},
            {"samples", r.samples},
            {"thresholds", {{"w1", r.thresholds.w1}, {"w2", r.thresholds.w2}, {"r12", r.thresholds.r12}, {"r22", r.thresholds.r22}}},
            {"threshold_note", r.threshold_note},
            {"rows", rows}};
}

Json to_json(const ConditionIII& c) {
    return {{"family", family_name(c.spec.family)},
            {"M", c.spec.M},
            {"m", c.spec.m},
            {"l", c.spec.l},
            {"delta", c.delta},
            {"cover_degree", c.cover_degree},
            {"classes",
             {{"K_X", c.K_X.str()}, {"divisor", c.divisor.str()}, {"K", c.K.str()}, {"L", c.L.str()}, {"curve", c.curve.str()}, {"cycle", c.cycle.str()}}},
            {"value", exact_json(c.value)},
            {"holds", c.holds}};
}

Json to_json(const RigidityThreshold& t) {
    Json j{{"family", family_name(t.family)}, {"M", t.M}, {"m", t.m}, {"closed_form", t.closed_form},
           {"scanned", t.scanned},            {"agree", t.agree}};
    if (t.family == Family::Hypersurface) j["m_plus_two_holds"] = t.m_plus_two_holds;
    if (!t.note.empty()) j["note"] = t.note;
    return j;
}

Json make_report(const std::string& command, Json config, Json field, Json seed, Json budgets, Json result) {
    return {{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"config", std::move(config)},
            {"field", std::move(field)}, {"seed", std::move(seed)}, {"budgets", std::move(budgets)}, {"result", std::move(result)}};
}

namespace {

void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        if (j.empty()) out.emplace_back(path, "{}");
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    } else if (j.is_array()) {
        if (j.empty()) out.emplace_back(path, "[]");
        for (size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else if (j.is_string()) {
        out.emplace_back(path, j.get<std::string>());
    } else {
        out.emplace_back(path, j.dump());
    }
}

}  // namespace

std::string render_text(const Json& j) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.first.size());
    std::string s;
    for (const auto& [k, v] : rows) s += k + std::string(w - k.size() + 2, ' ') + v + "\n";
    return s;
}

}  // namespace fmr
