#include "fmr/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace fmr {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& ex) {
        throw InputError(path + ": " + ex.what());
    }
}

FieldSpec input_field(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw InputError("field: expected {\"kind\":\"rational\"} or {\"kind\":\"prime\",\"p\":N}");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "rational") return FieldSpec::rational();
    if (kind != "prime") throw InputError("field.kind: unknown kind '" + kind + "'");
    if (!j.contains("p") || !j["p"].is_number_unsigned()) throw InputError("field.p: missing or not a positive integer");
    try {
        return FieldSpec::prime(j["p"].get<std::uint64_t>());
    } catch (const std::exception& ex) {
        throw InputError(std::string("field.p: ") + ex.what());
    }
}

namespace {

struct Options {
    std::optional<long long> M, m, l;
    std::string family = "hypersurface";
    std::optional<std::string> variant;
    std::string case_id = "all";
    std::optional<std::string> field;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    std::string input, out;
    std::uint64_t budget = kDefaultBudget;
    bool text = false;
    std::optional<std::string> thresholds;
    std::optional<std::string> conditions;
    bool auxiliary = false;
};

struct Outcome {
    Json config, field, result;
    int code = kExitPass;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

long long need(const std::optional<long long>& v, const char* flag) {
    if (!v) throw UsageError(std::string("missing required flag ") + flag);
    return *v;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ',');)
        if (!part.empty()) out.push_back(part);
    return out;
}

Json budgets_json(const Options& o) {
    return {{"groebner_reductions", o.budget}, {"pencil_candidates", kDefaultPencilBudget}};
}

Outcome run_bounds(const Options& o) {
    const long long M = need(o.M, "--M");
    const Family f = parse_family(o.family);
    return {{{"M", M}, {"family", family_name(f)}}, "rational", to_json(bound_table(M, f)), kExitPass};
}

Outcome run_chain(const Options& o) {
    const long long M = need(o.M, "--M");
    std::vector<ChainVariant> vs{ChainVariant::I, ChainVariant::II, ChainVariant::III};
    if (o.variant) vs = {parse_variant(*o.variant)};
    Outcome r;
    r.config = {{"M", M}, {"variant", o.variant ? Json(*o.variant) : Json("all")}};
    r.field = "rational";
    Json chains = Json::array();
    for (ChainVariant v : vs) {
        Json c;
        bool ok = false;
        try {
            const RatioChain ch = ratio_chain(M, v);
            c = to_json(ch);
            c["realizable"] = true;
            ok = ch.meets_target();
        } catch (const FieldError& ex) {
            // No step list exists; fall back to the telescoped value.
            const Rational cf = chain_closed_form(M, v), tg = chain_target(M, v);
            ok = cf <= tg;
            c = {{"variant", variant_name(v)}, {"M", M}, {"realizable", false}, {"reason", ex.what()},
                 {"closed_form", cf.str()}, {"target", tg.str()}, {"meets_target", ok}, {"floor", chain_floor(v)}};
        }
        if (!ok) r.code = kExitFail;
        chains.push_back(c);
    }
    r.result["chains"] = chains;
    if (chains.size() == 1) r.result["bound"] = chains[0].contains("bound") ? chains[0]["bound"] : chains[0]["closed_form"];
    if (M >= 5) r.result["multiplicity"] = to_json(mult_bound(M, 1));
    const D2Ratio d = d2_ratio(M);
    r.result["d2"] = {{"mult", d.mult}, {"degree", d.degree}, {"ratio", d.ratio.str()}, {"hyperplane_mult", d.hyperplane_mult},
                      {"split_refuted", d.split_refuted()}};
    return r;
}

Outcome run_exclude(const Options& o) {
    std::vector<std::string> cases = kLedgerCases;
    if (o.case_id != "all") {
        if (std::find(cases.begin(), cases.end(), o.case_id) == cases.end())
            throw UsageError("unknown case '" + o.case_id + "'");
        cases = {o.case_id};
    }
    const long long lo = o.M ? *o.M : 10, hi = o.M ? *o.M : 30;
    CaseOptions opt;
    opt.auxiliary_mu_le_nu = o.auxiliary;
    const LedgerReport rep = replay_all(lo, hi, cases, opt);
    Outcome r;
    r.config = {{"case", o.case_id}, {"M_range", {lo, hi}}, {"auxiliary_mu_le_nu", o.auxiliary}};
    r.field = "rational";
    r.result = to_json(rep);
    for (const auto& c : rep.certificates)
        if (c.verdict != LedgerVerdict::Infeasible || !c.replays()) r.code = kExitFail;
    return r;
}

Outcome run_fibre(const Options& o) {
    const Family f = parse_family(o.family);
    const long long M = need(o.M, "--M"), m = need(o.m, "--m");
    if (M < 3 || M > 1000 || m < 1 || m > 1000) throw UsageError("fibre needs 3 <= M <= 1000 and 1 <= m <= 1000");
    Outcome r;
    r.config = {{"family", family_name(f)}, {"M", M}, {"m", m}, {"l", o.l ? Json(*o.l) : Json(nullptr)}};
    r.field = "rational";
    const RigidityThreshold t = rigidity_threshold(f, static_cast<int>(M), static_cast<int>(m));
    const bool gate = dimension_gate(f, M, m);
    if (o.l) {
        const ConditionIII c = condition_iii_value({f, static_cast<int>(M), static_cast<int>(m), *o.l});
        r.result = {{"mode", "verdict"}, {"value", exact_json(c.value)}, {"holds", c.holds}, {"threshold", t.closed_form},
                    {"gate", gate}, {"detail", to_json(c)}};
        if (!c.holds) r.code = kExitFail;
    } else {
        r.result = {{"mode", "threshold"}, {"threshold", t.closed_form}, {"gate", gate}, {"detail", to_json(t)}};
        if (!t.agree) r.code = kExitFail;
    }
    return r;
}

CheckOptions check_options(const Options& o) {
    CheckOptions c;
    c.groebner_budget = o.budget;
    if (o.thresholds) c.thresholds = Thresholds::parse(*o.thresholds);
    return c;
}

template <class S>
Outcome check_in(const Options& o, const Json& doc, typename FieldTraits<S>::Ctx ctx, const FieldSpec& spec) {
    const Family fam = parse_family(o.family);
    PolyInput<S> in = parse_poly_input<S>(doc, ctx);
    if (in.points.empty()) throw InputError("points: at least one point is required");
    const MultiPoly<S> f = in.chart ? dehomogenize(in.f, *in.chart) : in.f;
    const CheckOptions opt = check_options(o);
    Outcome r;
    r.config = {{"family", family_name(fam)}, {"input", o.input}, {"nvars", in.f.nvars()},
                {"chart", in.chart ? Json(*in.chart) : Json(nullptr)}, {"thresholds", opt.thresholds.str()}};
    r.field = spec.str();
    Json points = Json::array();
    for (size_t i = 0; i < in.points.size(); ++i) {
        std::vector<S> x = in.points[i];
        if (in.chart) {
            try {
                x = affine_point(x, *in.chart);
            } catch (const FieldError& ex) {
                throw InputError("points[" + std::to_string(i) + "]: " + ex.what());
            }
        }
        LocalExpansion<S> e;
        try {
            e = expand_at_point(f, x, fam);
        } catch (const FieldError& ex) {
            throw InputError("points[" + std::to_string(i) + "]: " + ex.what());
        }
        Json reps = Json::array();
        for (const auto& c : check_all(e, o.seed + i, opt)) {
            if (c.verdict == Verdict::Fail) r.code = kExitFail;
            reps.push_back(to_json(c));
        }
        points.push_back({{"index", i}, {"kind", kind_name(e.kind)}, {"source", e.source}, {"conditions", reps}});
    }
    r.result["points"] = points;
    return r;
}

Outcome run_check(const Options& o) {
    if (o.input.empty()) throw UsageError("check needs --input PATH");
    const Json doc = read_json_file(o.input);
    FieldSpec spec;
    if (doc.is_object() && doc.contains("field")) {
        spec = input_field(doc["field"]);
        if (o.field && FieldSpec::parse(*o.field) != spec)
            throw UsageError("--field " + *o.field + " disagrees with the input file's field " + spec.str());
    } else {
        spec = o.field ? FieldSpec::parse(*o.field) : FieldSpec::rational();
    }
    if (spec.kind == FieldSpec::Kind::Rational) return check_in<Rational>(o, doc, RationalField{}, spec);
    return check_in<Gf>(o, doc, GfContext::get(spec.modulus), spec);
}

Outcome run_survey(const Options& o) {
    const FieldSpec spec = FieldSpec::parse(o.field.value_or("p:101"));
    if (spec.kind != FieldSpec::Kind::Prime) throw UsageError("survey needs a prime field (--field p:<prime>)");
    SurveyConfig cfg;
    cfg.family = parse_family(o.family);
    cfg.M = static_cast<int>(need(o.M, "--M"));
    cfg.field = GfContext::get(spec.modulus);
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    if (o.thresholds) cfg.thresholds = Thresholds::parse(*o.thresholds);
    if (o.conditions) cfg.conditions = split_list(*o.conditions);
    cfg.options = check_options(o);
    Outcome r;
    r.config = {{"family", family_name(cfg.family)}, {"M", cfg.M}, {"samples", cfg.samples},
                {"thresholds", o.thresholds ? Json(*o.thresholds) : Json("scaled")},
                {"conditions", o.conditions ? Json(*o.conditions) : Json("default")}};
    r.field = spec.str();
    r.result = to_json(survey(cfg));
    return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Regularity conditions and exclusion bounds for Fano families", "fmr"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Options o;
    const std::vector<std::string> families{"double", "hypersurface"};
    const std::vector<std::string> variants{"i", "ii", "iii"};
    std::vector<std::string> cases{"all"};
    cases.insert(cases.end(), kLedgerCases.begin(), kLedgerCases.end());

    auto common = [&](CLI::App* s) {
        s->add_option("--seed", o.seed, "Random seed (recorded in the report)");
        s->add_option("--out", o.out, "Write the report here instead of stdout");
        s->add_flag("--text", o.text, "Aligned text instead of JSON");
    };
    auto* bounds = app.add_subcommand("bounds", "Codimension bound table");
    bounds->add_option("--M", o.M, "Dimension M")->required();
    bounds->add_option("--family", o.family)->check(CLI::IsMember(families));
    auto* chain = app.add_subcommand("chain", "Hypertangent ratio chains");
    chain->add_option("--M", o.M)->required();
    chain->add_option("--variant", o.variant)->check(CLI::IsMember(variants));
    auto* exclude = app.add_subcommand("exclude", "Fourier-Motzkin exclusion certificates");
    exclude->add_option("--case", o.case_id)->check(CLI::IsMember(cases));
    exclude->add_option("--M", o.M, "Single M (default: 10..30)");
    exclude->add_flag("--auxiliary", o.auxiliary, "Add mu <= nu to every case");
    auto* fibre = app.add_subcommand("fibre", "Fibre-space condition (iii)");
    fibre->add_option("--family", o.family)->check(CLI::IsMember(families));
    fibre->add_option("--M", o.M)->required();
    fibre->add_option("--m", o.m)->required();
    fibre->add_option("--l", o.l, "Omit for threshold mode");
    auto* check = app.add_subcommand("check", "Regularity battery at points of an input hypersurface");
    check->add_option("--input", o.input)->required();
    check->add_option("--family", o.family)->check(CLI::IsMember(families));
    check->add_option("--field", o.field);
    check->add_option("--budget", o.budget, "Groebner reduction budget");
    check->add_option("--thresholds", o.thresholds, "w1,w2,r12,r22");
    auto* surv = app.add_subcommand("survey", "Seeded survey of random local equations");
    surv->add_option("--M", o.M)->required();
    surv->add_option("--family", o.family)->check(CLI::IsMember(families));
    surv->add_option("--field", o.field, "p:<prime> (default p:101)");
    surv->add_option("--samples", o.samples);
    surv->add_option("--budget", o.budget);
    surv->add_option("--thresholds", o.thresholds, "w1,w2,r12,r22 (default: scaled to M)");
    surv->add_option("--conditions", o.conditions, "Comma-separated condition ids");
    for (auto* s : {bounds, chain, exclude, fibre, check, surv}) common(s);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitPass;
    } catch (const CLI::ParseError& ex) {
        err << "fmr: " << ex.what() << "\n";
        return kExitError;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    Outcome r;
    try {
        if (name == "bounds") r = run_bounds(o);
        else if (name == "chain") r = run_chain(o);
        else if (name == "exclude") r = run_exclude(o);
        else if (name == "fibre") r = run_fibre(o);
        else if (name == "check") r = run_check(o);
        else r = run_survey(o);
    } catch (const std::exception& ex) {
        err << "fmr " << name << ": " << ex.what() << "\n";
        return kExitError;
    }

    const Json report = make_report(name, r.config, r.field, o.seed, budgets_json(o), r.result);
    const std::string body = o.text ? render_text(report) : report.dump(2) + "\n";
    if (o.out.empty()) {
        out << body;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!(f << body)) {
            err << "fmr: cannot write " << o.out << "\n";
            return kExitError;
        }
    }
    return r.code;
}

}  // namespace fmr
