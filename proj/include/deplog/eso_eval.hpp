#pragma once

// Tarski semantics for first-order formulas and brute-force evaluation of
// ESO sentences. Shares no code with team_eval beyond term evaluation, so it
// can serve as an oracle for the translations.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "deplog/error.hpp"
#include "deplog/structures.hpp"
#include "deplog/syntax.hpp"

namespace deplog {

namespace detail {

class FoEvaluator {
  public:
    explicit FoEvaluator(const Structure& m) : m_(m) {}

    void bind(const std::string& v, Element a) { env_.emplace_back(v, a); }

    bool eval(const DFormula& f) {
        switch (f.kind) {
        case FormulaKind::Verum: return true;
        case FormulaKind::Falsum: return false;
        case FormulaKind::Relation:
        case FormulaKind::NegRelation: {
            auto it = m_.relations.find(f.symbol);
            if (it == m_.relations.end()) throw PreconditionError("uninterpreted relation '" + f.symbol + "'");
            if (it->second.arity != static_cast<int>(f.terms.size()))
                throw PreconditionError("arity mismatch for relation '" + f.symbol + "'");
            Tuple t;
            t.reserve(f.terms.size());
            for (const auto& term : f.terms) t.push_back(value(term));
            return it->second.contains(t, m_.domain) == (f.kind == FormulaKind::Relation);
        }
        case FormulaKind::Equality:
        case FormulaKind::NegEquality:
            return (value(f.terms[0]) == value(f.terms[1])) == (f.kind == FormulaKind::Equality);
        case FormulaKind::Dependence:
        case FormulaKind::NegDependence:
            throw PreconditionError("dependence atom in a first-order formula");
        case FormulaKind::And: return eval(f.lhs()) && eval(f.rhs());
        case FormulaKind::Or: return eval(f.lhs()) || eval(f.rhs());
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            bool want = f.kind == FormulaKind::Exists;
            env_.emplace_back(f.symbol, 0);
            bool result = !want;
            for (Element a = 0; a < m_.domain; ++a) {
                env_.back().second = a;
                if (eval(f.body()) == want) {
                    result = want;
                    break;
                }
            }
            env_.pop_back();
            return result;
        }
        }
        return false;
    }

  private:
    Element value(const Term& t) {
        return eval_term_with(m_, t, [&](const std::string& name) -> Element {
            for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
                if (it->first == name) return it->second;
            }
            throw PreconditionError("unbound variable '" + name + "'");
        });
    }

    const Structure& m_;
    std::vector<std::pair<std::string, Element>> env_;
};

} // namespace detail

/// Classical satisfaction of a dependence-free formula by one assignment.
inline bool fo_satisfies(const Structure& m, const Assignment& s, const DFormula& f) {
    detail::FoEvaluator ev(m);
    for (const auto& [v, a] : s) ev.bind(v, a);
    return ev.eval(f);
}

/// Number of candidate interpretations of the quantified functions (saturating).
inline std::uint64_t eso_candidate_count(const EsoSentence& e, int n) {
    std::uint64_t count = 1;
    for (const auto& fq : e.functions)
        count = saturating_mul(count, saturating_pow(static_cast<std::uint64_t>(n),
                                                     saturating_pow(static_cast<std::uint64_t>(n),
                                                                    static_cast<std::uint64_t>(fq.arity))));
    return count;
}

/// Is there an interpretation of e's quantified functions making its
/// first-order part true in m? Tables are tried in lexicographic order.
inline bool eso_satisfies(const Structure& m, const EsoSentence& e, std::uint64_t cap = default_check_budget) {
    for (const auto& fq : e.functions) {
        if (m.functions.count(fq.name) || m.constants.count(fq.name) || m.relations.count(fq.name))
            throw PreconditionError("quantified function '" + fq.name + "' clashes with a structure symbol");
    }
    std::uint64_t count = eso_candidate_count(e, m.domain);
    if (count > cap)
        throw BudgetExceeded("function-table enumeration on domain size " + std::to_string(m.domain), count, cap);

    Structure work = m;
    std::vector<std::vector<Element>*> tables;
    for (const auto& fq : e.functions) {
        work.functions[fq.name] = FunctionTable{fq.arity, std::vector<Element>(table_size(fq.arity, m.domain), 0)};
    }
    for (const auto& fq : e.functions) tables.push_back(&work.functions[fq.name].values);

    const DFormula fo = first_order_part(e);
    while (true) {
        detail::FoEvaluator ev(work);
        if (ev.eval(fo)) return true;
        // Odometer: the last entry of the last table varies fastest.
        bool carried = true;
        for (std::size_t t = tables.size(); carried && t-- > 0;) {
            auto& values = *tables[t];
            for (std::size_t i = values.size(); i-- > 0;) {
                if (++values[i] < m.domain) {
                    carried = false;
                    break;
                }
                values[i] = 0;
            }
        }
        if (carried) return false;
    }
}

} // namespace deplog
