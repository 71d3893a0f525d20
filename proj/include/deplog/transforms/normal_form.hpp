#pragma once

// Dependence-logic sentences to ESO and back, through the normal form
//
//   Q1 x1 ... Qm xm  exists y1 ... exists yn ( =(z1, y1) & ... & =(zn, yn) & theta )
//
// where every zj is a tuple of distinct prefix variables and theta is
// quantifier-free and dependence-free. Replacing each yj by fj(zj) gives the
// ESO sentence; reading the replacement backwards gives the converse.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "deplog/error.hpp"
#include "deplog/syntax.hpp"
#include "deplog/transforms/prenex.hpp"

namespace deplog {

/// One conjunct =(z..., y) of the normal form.
struct DepBinding {
    std::vector<std::string> determiners;
    std::string variable;

    bool operator==(const DepBinding&) const = default;
};

struct NormalFormD {
    Prefix prefix;
    std::vector<DepBinding> bindings;
    DFormula matrix;

    bool operator==(const NormalFormD&) const = default;
};

inline DFormula binding_atom(const DepBinding& b) {
    auto terms = vars(b.determiners);
    terms.push_back(var(b.variable));
    return dep(std::move(terms));
}

/// The normal form as a dependence-logic sentence.
inline DFormula to_dformula(const NormalFormD& nf) {
    Prefix prefix = nf.prefix;
    std::vector<DFormula> parts;
    for (const auto& b : nf.bindings) {
        prefix.push_back({Quantifier::Exists, b.variable});
        parts.push_back(binding_atom(b));
    }
    parts.push_back(nf.matrix);
    return with_prefix(prefix, nf.bindings.empty() ? nf.matrix : conj_all(std::move(parts)));
}

inline void validate(const NormalFormD& nf) {
    std::set<std::string> prefix_vars;
    for (const auto& p : nf.prefix) {
        if (!prefix_vars.insert(p.variable).second) throw PreconditionError("prefix variable '" + p.variable + "' repeated");
    }
    std::set<std::string> ys;
    for (const auto& b : nf.bindings) {
        if (prefix_vars.count(b.variable) || !ys.insert(b.variable).second)
            throw PreconditionError("binding variable '" + b.variable + "' is not fresh");
        std::set<std::string> seen;
        for (const auto& z : b.determiners) {
            if (!prefix_vars.count(z)) throw PreconditionError("determiner '" + z + "' is not a prefix variable");
            if (!seen.insert(z).second) throw PreconditionError("determiner '" + z + "' repeated");
        }
    }
    if (!is_quantifier_free(nf.matrix) || contains_dependence_atoms(nf.matrix))
        throw PreconditionError("normal-form matrix must be quantifier-free and dependence-free");
}

// ---------------------------------------------------------------------------
// Dependence atoms over arbitrary terms

/// Rewrites every dependence atom that is not over distinct variables:
/// =(t1..tp) becomes =(z1..zp) under new trailing existentials, with
/// zi = ti conjoined in front of the matrix. Identical atoms share their zs.
inline DFormula simplify_atom_terms(const DFormula& f) {
    auto [prefix, matrix] = split_prefix(f);
    if (!is_quantifier_free(matrix)) throw PreconditionError("simplify_atom_terms needs a prenex formula");
    NameSupply names(identifiers(f));
    std::map<std::vector<Term>, std::vector<std::string>> renamed;
    std::vector<DFormula> equations;
    std::function<DFormula(const DFormula&)> walk = [&](const DFormula& g) -> DFormula {
        if (g.is_dependence_literal() && !distinct_variables(g.terms)) {
            auto [it, fresh] = renamed.emplace(g.terms, std::vector<std::string>{});
            if (fresh) {
                for (std::size_t i = 0; i < g.terms.size(); ++i) {
                    auto z = names.fresh("z" + std::to_string(i + 1));
                    it->second.push_back(z);
                    prefix.push_back({Quantifier::Exists, z});
                    equations.push_back(eq(var(z), g.terms[i]));
                }
            }
            DFormula out = g;
            out.terms = vars(it->second);
            return out;
        }
        DFormula out = g;
        for (auto& c : out.children) c = walk(c);
        return out;
    };
    DFormula body = walk(matrix);
    if (equations.empty()) return f;
    equations.push_back(std::move(body));
    return with_prefix(prefix, conj_all(std::move(equations)));
}

// ---------------------------------------------------------------------------
// Extraction of dependence atoms from a quantifier-free formula

struct Extraction {
    std::vector<DepBinding> bindings;
    DFormula matrix;
};

/// psi == exists y1..yn (=(z1,y1) & ... & =(zn,yn) & matrix). Atom count and
/// widths are preserved; the ys are drawn from `names`.
inline Extraction extract_dep_atoms(const DFormula& body, NameSupply& names) {
    switch (body.kind) {
    case FormulaKind::Dependence: {
        if (!distinct_variables(body.terms))
            throw PreconditionError("extract_dep_atoms needs dependence atoms over distinct variables: " + render(body));
        if (body.terms.empty()) return {{}, verum()};
        DepBinding b;
        for (std::size_t i = 0; i + 1 < body.terms.size(); ++i) b.determiners.push_back(body.terms[i].name);
        b.variable = names.fresh("y");
        return {{b}, eq(var(b.variable), body.terms.back())};
    }
    case FormulaKind::NegDependence: return {{}, falsum()};
    case FormulaKind::And:
    case FormulaKind::Or: {
        auto left = extract_dep_atoms(body.lhs(), names);
        auto right = extract_dep_atoms(body.rhs(), names);
        left.bindings.insert(left.bindings.end(), right.bindings.begin(), right.bindings.end());
        left.matrix = body.kind == FormulaKind::And ? conj(std::move(left.matrix), std::move(right.matrix))
                                                    : disj(std::move(left.matrix), std::move(right.matrix));
        return left;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: throw PreconditionError("extract_dep_atoms needs a quantifier-free formula");
    default: return {{}, body};
    }
}

inline Extraction extract_dep_atoms(const DFormula& body) {
    NameSupply names(identifiers(body));
    return extract_dep_atoms(body, names);
}

namespace detail {

inline void flatten_conjuncts(const DFormula& f, std::vector<DFormula>& out) {
    if (f.kind == FormulaKind::And) {
        flatten_conjuncts(f.lhs(), out);
        flatten_conjuncts(f.rhs(), out);
    } else {
        out.push_back(f);
    }
}

inline bool mentions(const DFormula& f, const std::string& v) {
    bool found = false;
    for_each_term(f, [&](const Term& t) { found = found || term_vars(t).count(v) > 0; });
    return found;
}

} // namespace detail

/// Normal form of a prenex sentence whose dependence atoms are over distinct
/// variables. Trailing existentials that already carry their own top-level
/// conjunct =(z..., y) are taken over as bindings unchanged; every other
/// dependence atom is extracted with a fresh variable.
inline NormalFormD normal_form(const DFormula& f) {
    auto [prefix, matrix] = split_prefix(f);
    if (!is_quantifier_free(matrix)) throw PreconditionError("normal_form needs a prenex formula");
    std::vector<DFormula> conjuncts;
    detail::flatten_conjuncts(matrix, conjuncts);

    std::vector<DepBinding> peeled;
    std::vector<bool> used(conjuncts.size(), false);
    while (!prefix.empty() && prefix.back().quantifier == Quantifier::Exists) {
        const std::string& y = prefix.back().variable;
        std::set<std::string> before;
        for (std::size_t i = 0; i + 1 < prefix.size(); ++i) before.insert(prefix[i].variable);
        bool blocked = false;
        for (const auto& b : peeled) {
            for (const auto& z : b.determiners) blocked = blocked || z == y;
        }
        std::size_t pick = conjuncts.size();
        for (std::size_t i = 0; i < conjuncts.size() && !blocked; ++i) {
            const auto& c = conjuncts[i];
            if (used[i] || c.kind != FormulaKind::Dependence || c.terms.empty() || !distinct_variables(c.terms)) continue;
            if (c.terms.back().name != y) continue;
            bool ok = true;
            for (std::size_t j = 0; j + 1 < c.terms.size(); ++j) ok = ok && before.count(c.terms[j].name);
            if (ok) {
                pick = i;
                break;
            }
        }
        if (blocked || pick == conjuncts.size()) break;
        // y must not occur in any dependence atom that stays behind.
        bool clash = false;
        for (std::size_t i = 0; i < conjuncts.size(); ++i) {
            if (i == pick || used[i]) continue;
            std::function<void(const DFormula&)> scan = [&](const DFormula& g) {
                if (g.is_dependence_literal() && detail::mentions(g, y)) clash = true;
                for (const auto& c : g.children) scan(c);
            };
            scan(conjuncts[i]);
        }
        if (clash) break;
        used[pick] = true;
        DepBinding b;
        for (std::size_t j = 0; j + 1 < conjuncts[pick].terms.size(); ++j) b.determiners.push_back(conjuncts[pick].terms[j].name);
        b.variable = y;
        peeled.insert(peeled.begin(), std::move(b));
        prefix.pop_back();
    }

    std::vector<DFormula> rest;
    for (std::size_t i = 0; i < conjuncts.size(); ++i) {
        if (!used[i]) rest.push_back(conjuncts[i]);
    }
    DFormula remaining = peeled.empty() ? matrix : conj_all(std::move(rest));
    NameSupply names(identifiers(f));
    auto extracted = extract_dep_atoms(remaining, names);
    NormalFormD nf{std::move(prefix), std::move(peeled), std::move(extracted.matrix)};
    nf.bindings.insert(nf.bindings.end(), extracted.bindings.begin(), extracted.bindings.end());
    return nf;
}

// ---------------------------------------------------------------------------
// Skolemization of the normal form and its converse

/// Replaces each binding variable yj by fj(zj) and quantifies fj.
inline EsoSentence skolemize_prop31(const NormalFormD& nf) {
    validate(nf);
    NameSupply names(identifiers(to_dformula(nf)));
    EsoSentence e;
    e.prefix = nf.prefix;
    e.matrix = nf.matrix;
    for (const auto& b : nf.bindings) {
        auto name = names.fresh(b.determiners.empty() ? "c" : "f");
        e.functions.push_back({name, static_cast<int>(b.determiners.size())});
        e.matrix = substitute(e.matrix, b.variable, apply(name, vars(b.determiners)));
    }
    return e;
}

/// Argument tuple of each quantified function, if every occurrence of it is
/// the same tuple of distinct prefix variables. Functions that never occur
/// are absent from the map.
inline std::map<std::string, std::vector<std::string>> unique_argument_tuples(const EsoSentence& e) {
    std::set<std::string> bound;
    for (const auto& p : e.prefix) bound.insert(p.variable);
    std::map<std::string, std::vector<std::string>> tuples;
    for_each_subterm(e.matrix, [&](const Term& t) {
        if (t.kind != TermKind::Application || !e.function(t.name)) return;
        if (!distinct_variables(t.args)) {
            throw ShapeError("function '" + t.name + "' applied to " +
                             (std::all_of(t.args.begin(), t.args.end(), [](const Term& a) { return a.is_variable(); })
                                  ? "a repeated variable"
                                  : "a non-variable argument"));
        }
        std::vector<std::string> args;
        for (const auto& a : t.args) {
            if (!bound.count(a.name)) throw ShapeError("function '" + t.name + "' applied to unbound '" + a.name + "'");
            args.push_back(a.name);
        }
        auto [it, fresh] = tuples.emplace(t.name, args);
        if (!fresh && it->second != args) throw ShapeError("two argument tuples for function '" + t.name + "'");
    });
    return tuples;
}

/// Converse of skolemize_prop31 for sentences in which every quantified
/// function has a unique argument tuple of distinct prefix variables.
inline DFormula deskolemize_prop31(const EsoSentence& e) {
    validate(e);
    auto tuples = unique_argument_tuples(e);
    NameSupply names(identifiers(e));
    NormalFormD nf;
    nf.prefix = e.prefix;
    std::map<std::string, std::string> replacement;
    for (const auto& fq : e.functions) {
        auto it = tuples.find(fq.name);
        if (it == tuples.end()) continue;
        auto y = names.fresh("y");
        replacement[fq.name] = y;
        nf.bindings.push_back({it->second, y});
    }
    nf.matrix = map_terms(e.matrix, [&](const Term& t) {
        return rewrite_bottom_up(t, [&](const Term& s) {
            if (s.kind == TermKind::Application) {
                auto it = replacement.find(s.name);
                if (it != replacement.end()) return var(it->second);
            }
            return s;
        });
    });
    return to_dformula(nf);
}

/// Prenex form, atom simplification, extraction, Skolemization.
/// A sentence that reuses variables is renamed apart first.
inline EsoSentence d_to_eso(const DFormula& f) {
    if (!is_sentence(f)) throw PreconditionError("d_to_eso needs a sentence");
    DFormula g = single_quantification(f) ? f : rename_apart(f);
    return skolemize_prop31(normal_form(simplify_atom_terms(to_prenex(g))));
}

} // namespace deplog
