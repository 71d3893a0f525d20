#pragma once

// Equivalence checking of two sentences over every structure of a signature,
// domain sizes ascending, structures in enumeration order.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <variant>

#include "deplog/eso_eval.hpp"
#include "deplog/json_io.hpp"
#include "deplog/parser.hpp"
#include "deplog/structures.hpp"
#include "deplog/team_eval.hpp"

namespace deplog {

struct Budgets {
    std::uint64_t structures = default_structure_budget;
    std::uint64_t checks = default_check_budget;
};

/// DEPLOG_BUDGET, when set to a positive integer, replaces both caps.
inline Budgets budgets_from_env(Budgets b = {}) {
    if (const char* env = std::getenv("DEPLOG_BUDGET")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) b.structures = b.checks = v;
    }
    return b;
}

/// Truth of either kind of sentence in m.
inline bool sentence_holds(const Structure& m, const Sentence& s, std::uint64_t check_budget = default_check_budget) {
    if (const auto* f = std::get_if<DFormula>(&s)) {
        EvalOptions options;
        options.budget = check_budget;
        return sentence_truth(m, *f, options);
    }
    return eso_satisfies(m, std::get<EsoSentence>(s), check_budget);
}

struct EquivOptions {
    Budgets budgets;
    /// On a budget overrun, report the sizes completed so far instead of failing.
    bool degrade = false;
};

struct Verdict {
    enum class Outcome { Equivalent, Counterexample };
    Outcome outcome = Outcome::Equivalent;
    int max_size = 0;       ///< largest domain size checked completely
    int requested_size = 0; ///< the size the caller asked for
    bool budget_limited = false;
    std::string budget_note;
    std::optional<Structure> counterexample;
    bool left_verdict = false;
    bool right_verdict = false;
    std::uint64_t structures_checked = 0;
    double wall_seconds = 0;

    bool equivalent() const { return outcome == Outcome::Equivalent; }
};

inline Json to_json(const Verdict& v) {
    Json j;
    j["outcome"] = v.equivalent() ? "equivalent" : "counterexample";
    j["max_size"] = v.max_size;
    j["requested_size"] = v.requested_size;
    j["budget_limited"] = v.budget_limited;
    if (v.budget_limited) j["budget_note"] = v.budget_note;
    if (v.counterexample) {
        j["counterexample"] = to_json(*v.counterexample);
        j["left"] = v.left_verdict;
        j["right"] = v.right_verdict;
    }
    j["structures_checked"] = v.structures_checked;
    j["wall_seconds"] = v.wall_seconds;
    return j;
}

namespace detail {

inline Signature symbols_of(const Sentence& s) {
    Signature sig;
    auto add = [&](const DFormula& f, const EsoSentence* e) {
        std::function<void(const DFormula&)> walk = [&](const DFormula& g) {
            if (g.kind == FormulaKind::Relation || g.kind == FormulaKind::NegRelation)
                sig.relations[g.symbol] = static_cast<int>(g.terms.size());
            for (const auto& c : g.children) walk(c);
        };
        walk(f);
        for_each_subterm(f, [&](const Term& t) {
            if (t.kind == TermKind::Constant) sig.constants.insert(t.name);
            if (t.kind == TermKind::Application && !(e && e->function(t.name)))
                sig.functions[t.name] = static_cast<int>(t.args.size());
        });
    };
    if (const auto* f = std::get_if<DFormula>(&s)) add(*f, nullptr);
    else {
        const auto& e = std::get<EsoSentence>(s);
        add(first_order_part(e), &e);
    }
    return sig;
}

inline void check_covered(const Sentence& s, const Signature& sig, const char* side) {
    auto used = symbols_of(s);
    auto complain = [&](const std::string& what) {
        throw PreconditionError(std::string(side) + " sentence uses " + what + " outside the signature");
    };
    for (const auto& [name, arity] : used.relations) {
        auto it = sig.relations.find(name);
        if (it == sig.relations.end() || it->second != arity) complain("relation '" + name + "'");
    }
    for (const auto& [name, arity] : used.functions) {
        auto it = sig.functions.find(name);
        if (it == sig.functions.end() || it->second != arity) complain("function '" + name + "'");
    }
    for (const auto& c : used.constants) {
        if (!sig.constants.count(c)) complain("constant '" + c + "'");
    }
    if (const auto* e = std::get_if<EsoSentence>(&s)) {
        for (const auto& fq : e->functions) {
            if (sig.declares(fq.name)) throw PreconditionError("quantified function '" + fq.name + "' is a signature symbol");
        }
    }
}

} // namespace detail

/// Compares a and b on every structure of `sig` with domain size 1..max_n.
/// The first disagreement found is the reported counterexample; it is the
/// least one in (size, enumeration order).
inline Verdict equiv_check(const Sentence& a, const Sentence& b, const Signature& sig, int max_n,
                           const EquivOptions& options = {}) {
    if (max_n < 1) throw PreconditionError("max size must be at least 1");
    detail::check_covered(a, sig, "left");
    detail::check_covered(b, sig, "right");
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    v.requested_size = max_n;
    auto finish = [&] {
        v.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return v;
    };
    for (int n = 1; n <= max_n; ++n) {
        std::uint64_t checked_here = 0;
        try {
            StructureEnumerator structures(sig, n, options.budgets.structures);
            for (const auto* s : {&a, &b}) {
                if (const auto* e = std::get_if<EsoSentence>(s)) {
                    auto count = eso_candidate_count(*e, n);
                    if (count > options.budgets.checks)
                        throw BudgetExceeded("function-table enumeration on domain size " + std::to_string(n), count,
                                             options.budgets.checks);
                }
            }
            while (auto m = structures.next()) {
                bool left = sentence_holds(*m, a, options.budgets.checks);
                bool right = sentence_holds(*m, b, options.budgets.checks);
                ++checked_here;
                if (left != right) {
                    v.structures_checked += checked_here;
                    v.outcome = Verdict::Outcome::Counterexample;
                    v.counterexample = std::move(*m);
                    v.left_verdict = left;
                    v.right_verdict = right;
                    return finish();
                }
            }
        } catch (const BudgetExceeded& e) {
            if (!options.degrade || n == 1) throw;
            v.budget_limited = true;
            v.budget_note = std::string("stopped before size ") + std::to_string(n) + ": " + e.what();
            v.structures_checked += checked_here;
            return finish();
        }
        v.structures_checked += checked_here;
        v.max_size = n;
    }
    return finish();
}

} // namespace deplog
