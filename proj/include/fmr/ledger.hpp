#pragma once

#include "fmr/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fmr {

enum class Rel { Lt, Le, Eq, Ge, Gt };
const char* rel_symbol(Rel r);

struct LinearRelation {
    std::map<std::string, Rational> coeffs;
    Rel rel = Rel::Ge;
    Rational rhs;
    std::string anchor;  // where the relation comes from in the argument

    bool holds_at(const std::map<std::string, Rational>& x) const;
    std::string str() const;
};

// Shorthand: rel({{"nu", 1}, {"a", 2}}, Rel::Gt, 2, "...").
LinearRelation rel(std::map<std::string, Rational> coeffs, Rel r, Rational rhs, std::string anchor = {});

struct IneqSystem {
    std::string case_id;
    long long M = 0;
    std::vector<std::string> variables;
    std::vector<LinearRelation> axioms;
    // Intermediate steps of the argument; each is audited against the axioms before use.
    std::vector<LinearRelation> claims;
    // Integrality split: one branch per value with variable = value; the last branch is variable >= value.
    std::optional<std::pair<std::string, std::vector<Rational>>> split;
    std::string normalization = "n = 1";

    void validate() const;
};

struct EliminationStep {
    std::string variable;
    std::size_t rows_before = 0, rows_after = 0;
};

struct FMResult {
    bool feasible = false;
    std::vector<EliminationStep> trace;
    std::map<std::string, Rational> witness;  // when feasible
    // When infeasible: nonnegative multipliers (any sign on equalities) per input relation.
    std::map<std::size_t, Rational> multipliers;
    Rational ground_rhs;  // the contradiction 0 > ground_rhs or 0 >= ground_rhs
    bool ground_strict = false;
    std::string contradiction() const;
};

// Fourier-Motzkin with strictness propagation over exact rationals.
FMResult fourier_motzkin(const std::vector<LinearRelation>& rels, const std::vector<std::string>& variables);
// Recombines the input relations with the recorded multipliers; true iff a ground contradiction results.
bool replay(const std::vector<LinearRelation>& rels, const FMResult& r);
// Negation of a non-equality relation.
LinearRelation negate(const LinearRelation& r);

struct ClaimAudit {
    LinearRelation claim;
    bool implied = false;
    std::vector<LinearRelation> relations;  // premises plus the negated claim
    FMResult proof;  // infeasibility of axioms + earlier claims + negated claim, or a counterexample
};

struct BranchCertificate {
    std::optional<std::pair<std::string, Rational>> split_value;
    std::vector<ClaimAudit> claims;
    std::vector<LinearRelation> relations;  // axioms, split value, claims: what the system run saw
    FMResult system;
};

enum class LedgerVerdict { Infeasible, FeasibleWithWitness, ImplicationGap };
const char* ledger_verdict_name(LedgerVerdict v);

struct FMCertificate {
    std::string case_id;
    long long M = 0;
    LedgerVerdict verdict = LedgerVerdict::Infeasible;
    std::vector<BranchCertificate> branches;
    std::vector<std::string> gaps;  // claims not implied by the axioms
    // The full transcription (axioms and claims together) is contradictory in every branch.
    bool system_infeasible() const;
    // Every infeasible run, claim proofs included, recombines to a ground contradiction;
    // every feasible run's witness satisfies its relations.
    bool replays() const;
};

FMCertificate certify(const IneqSystem& s);

extern const std::vector<std::string> kLedgerCases;
struct CaseOptions {
    bool auxiliary_mu_le_nu = false;
};
IneqSystem build_case(const std::string& case_id, long long M, const CaseOptions& opt = {});

struct LedgerReport {
    long long M_lo = 0, M_hi = 0;
    bool auxiliary = false;
    std::vector<FMCertificate> certificates;
};
LedgerReport replay_all(long long M_lo, long long M_hi, const std::vector<std::string>& cases = kLedgerCases,
                        const CaseOptions& opt = {});

}  // namespace fmr
