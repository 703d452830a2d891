#pragma once

#include "fmr/report.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmr {

// Malformed input files; the message names the offending field.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path);

// {"kind":"rational"} or {"kind":"prime","p":N}.
FieldSpec input_field(const Json& j);

template <class S>
struct PolyInput {
    MultiPoly<S> f;
    std::vector<std::vector<S>> points;
    std::optional<int> chart;  // set: f is a form and points are projective
};

namespace detail {

template <class S>
S parse_scalar(typename FieldTraits<S>::Ctx ctx, const Json& v, const std::string& where) {
    std::string s;
    if (v.is_number_integer())
        s = v.dump();
    else if (v.is_string())
        s = v.get<std::string>();
    else
        throw InputError(where + ": expected an integer or a \"num/den\" string");
    try {
        return FieldTraits<S>::parse(ctx, s);
    } catch (const std::exception& ex) {
        throw InputError(where + ": " + ex.what());
    }
}

}  // namespace detail

template <class S>
PolyInput<S> parse_poly_input(const Json& j, typename FieldTraits<S>::Ctx ctx) {
    if (!j.is_object()) throw InputError("input: top level must be an object");
    if (!j.contains("nvars") || !j["nvars"].is_number_integer()) throw InputError("nvars: missing or not an integer");
    const long long n = j["nvars"].get<long long>();
    if (n < 1 || n > 64) throw InputError("nvars: must lie in 1..64");
    if (!j.contains("terms") || !j["terms"].is_array()) throw InputError("terms: missing or not an array");
    PolyInput<S> in{MultiPoly<S>(ctx, static_cast<int>(n)), {}, std::nullopt};
    const Json& terms = j["terms"];
    for (size_t i = 0; i < terms.size(); ++i) {
        const std::string where = "terms[" + std::to_string(i) + "]";
        const Json& t = terms[i];
        if (!t.is_object() || !t.contains("e") || !t.contains("c")) throw InputError(where + ": needs fields \"e\" and \"c\"");
        const Json& e = t["e"];
        if (!e.is_array()) throw InputError(where + ": exponent vector must be an array");
        if (static_cast<long long>(e.size()) != n)
            throw InputError(where + ": exponent vector has " + std::to_string(e.size()) + " entries, expected " + std::to_string(n));
        std::vector<unsigned> exps;
        for (size_t k = 0; k < e.size(); ++k) {
            if (!e[k].is_number_unsigned() || e[k].get<unsigned long long>() > 1000)
                throw InputError(where + ".e[" + std::to_string(k) + "]: exponent must be an integer in 0..1000");
            exps.push_back(e[k].get<unsigned>());
        }
        in.f.add_term(Monomial(exps), detail::parse_scalar<S>(ctx, t["c"], where + ".c"));
    }
    if (j.contains("chart")) {
        if (!j["chart"].is_number_integer()) throw InputError("chart: must be an integer");
        const long long c = j["chart"].get<long long>();
        if (c < 0 || c >= n) throw InputError("chart: index " + std::to_string(c) + " out of range 0.." + std::to_string(n - 1));
        in.chart = static_cast<int>(c);
        if (!in.f.is_zero() && !in.f.is_homogeneous()) throw InputError("terms: a chart index needs a homogeneous form");
    }
    if (j.contains("points")) {
        const Json& pts = j["points"];
        if (!pts.is_array()) throw InputError("points: must be an array of coordinate arrays");
        for (size_t i = 0; i < pts.size(); ++i) {
            const std::string where = "points[" + std::to_string(i) + "]";
            if (!pts[i].is_array() || static_cast<long long>(pts[i].size()) != n)
                throw InputError(where + ": needs " + std::to_string(n) + " coordinates");
            std::vector<S> x;
            for (size_t k = 0; k < pts[i].size(); ++k)
                x.push_back(detail::parse_scalar<S>(ctx, pts[i][k], where + "[" + std::to_string(k) + "]"));
            in.points.push_back(std::move(x));
        }
    }
    return in;
}

// Exit codes: 0 pass or holds, 2 a fail verdict, 1 usage or IO error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFail = 2;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fmr
