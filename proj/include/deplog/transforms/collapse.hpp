#pragma once

// Rewrites that remove dependence atoms or universal variables entirely.

#include <set>
#include <string>

#include "deplog/syntax.hpp"
#include "deplog/transforms/normal_form.hpp"

namespace deplog {

/// For sentences without universal quantifiers: every team reached from the
/// unit team has at most one row, so dependence atoms are true and negated
/// ones are false exactly when the team is nonempty.
inline DFormula collapse_existential_to_fo(const DFormula& f) {
    if (forall_count(f) > 0) throw PreconditionError("collapse_existential_to_fo needs a sentence without universals");
    std::function<DFormula(const DFormula&)> walk = [&](const DFormula& g) -> DFormula {
        if (g.kind == FormulaKind::Dependence) return verum();
        if (g.kind == FormulaKind::NegDependence) return falsum();
        DFormula out = g;
        for (auto& c : out.children) c = walk(c);
        return out;
    };
    return walk(f);
}

/// For sentences whose dependence atoms have width at most one: translate to
/// ESO, where every quantified function is a constant, and turn each
/// constant into a leading first-order existential.
inline DFormula eliminate_width1(const DFormula& f) {
    if (max_dependence_width(f) > 1) throw PreconditionError("eliminate_width1 needs dependence atoms of width at most 1");
    if (!contains_dependence_atoms(f)) return f;
    EsoSentence e = d_to_eso(f);
    NameSupply names(identifiers(e));
    Prefix prefix;
    DFormula matrix = e.matrix;
    for (const auto& fq : e.functions) {
        auto z = names.fresh("z");
        prefix.push_back({Quantifier::Exists, z});
        matrix = map_terms(matrix, [&](const Term& t) {
            return rewrite_bottom_up(t, [&](const Term& s) { return s.kind == TermKind::Application && s.name == fq.name ? var(z) : s; });
        });
    }
    prefix.insert(prefix.end(), e.prefix.begin(), e.prefix.end());
    return with_prefix(prefix, std::move(matrix));
}

/// Every universal quantifier forall y. psi becomes
/// forall x. exists y. (x = y & psi'), so x is the only universally
/// quantified variable, rebound as often as needed.
inline DFormula single_forall_reuse(const DFormula& f, const std::string& x = "x") {
    if (identifiers(f).count(x)) throw PreconditionError("variable '" + x + "' already occurs in the formula");
    std::function<DFormula(const DFormula&)> walk = [&](const DFormula& g) -> DFormula {
        if (g.kind == FormulaKind::Forall) return forall(x, exists(g.symbol, conj(eq(var(x), var(g.symbol)), walk(g.body()))));
        DFormula out = g;
        for (auto& c : out.children) c = walk(c);
        return out;
    };
    return walk(f);
}

} // namespace deplog
