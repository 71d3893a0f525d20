#pragma once

// Bringing an ESO sentence into the shape where every quantified function
// has one fixed argument tuple of distinct variables, and from there back to
// dependence logic.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "deplog/syntax.hpp"
#include "deplog/transforms/normal_form.hpp"

namespace deplog {

/// Every quantified function occurs with one tuple of distinct prefix variables.
inline bool has_star_shape(const EsoSentence& e) {
    try {
        unique_argument_tuples(e);
        return true;
    } catch (const ShapeError&) {
        return false;
    }
}

namespace detail {

inline std::set<std::string> star_violators(const EsoSentence& e) {
    std::set<std::string> bound;
    for (const auto& p : e.prefix) bound.insert(p.variable);
    std::map<std::string, std::vector<Term>> first;
    std::set<std::string> bad;
    for_each_subterm(e.matrix, [&](const Term& t) {
        if (t.kind != TermKind::Application || !e.function(t.name)) return;
        bool simple = distinct_variables(t.args);
        for (const auto& a : t.args) simple = simple && bound.count(a.name);
        auto [it, fresh] = first.emplace(t.name, t.args);
        if (!simple || (!fresh && it->second != t.args)) bad.insert(t.name);
    });
    return bad;
}

} // namespace detail

/// Occurrences of offending functions are flattened onto fresh universal
/// variables behind an equality guard, one variable tuple per distinct
/// argument tuple. The first tuple of distinct universals keeps the function;
/// each further tuple gets a copy tied to the original by a coherence clause.
/// New universals are appended to the prefix, new functions after the old.
inline EsoSentence star_normalize(const EsoSentence& e) {
    validate(e);
    auto bad = detail::star_violators(e);
    if (bad.empty()) return e;

    NameSupply names(identifiers(e));
    std::set<std::string> universals;
    for (const auto& p : e.prefix) {
        if (p.quantifier == Quantifier::Forall) universals.insert(p.variable);
    }
    EsoSentence out = e;
    std::map<std::vector<Term>, std::vector<std::string>> flattened;
    std::vector<std::pair<Term, Term>> guards;
    // Argument tuples per offending function, in order of first occurrence.
    std::map<std::string, std::vector<std::vector<Term>>> tuples;

    auto universal_tuple = [&](const std::vector<Term>& args) {
        if (!distinct_variables(args)) return false;
        for (const auto& a : args) {
            if (!universals.count(a.name)) return false;
        }
        return true;
    };
    auto disjoint = [](const std::vector<Term>& a, const std::vector<Term>& b) {
        for (const auto& s : a) {
            for (const auto& t : b) {
                if (s == t) return false;
            }
        }
        return true;
    };

    auto rewrite = [&](const Term& s) -> Term {
        if (s.kind != TermKind::Application || !bad.count(s.name) || s.args.empty()) return s;
        auto& seen = tuples[s.name];
        bool keep = universal_tuple(s.args) &&
                    (seen.empty() || seen.front() == s.args || disjoint(seen.front(), s.args));
        Term result = s;
        if (!keep) {
            auto [it, fresh] = flattened.emplace(s.args, std::vector<std::string>{});
            if (fresh) {
                for (std::size_t i = 0; i < s.args.size(); ++i) {
                    auto z = names.fresh("z");
                    it->second.push_back(z);
                    universals.insert(z);
                    out.prefix.push_back({Quantifier::Forall, z});
                    guards.emplace_back(var(z), s.args[i]);
                }
            }
            result.args = vars(it->second);
        }
        if (std::find(seen.begin(), seen.end(), result.args) == seen.end()) seen.push_back(result.args);
        return result;
    };
    DFormula body = map_terms(e.matrix, [&](const Term& t) { return rewrite_bottom_up(t, rewrite); });

    // Tuples after the first get their own copy of the function.
    std::map<std::pair<std::string, std::vector<Term>>, std::string> copy_of;
    std::vector<DFormula> coherence;
    for (const auto& fq : e.functions) {
        auto it = tuples.find(fq.name);
        if (it == tuples.end()) continue;
        const auto& list = it->second;
        for (std::size_t i = 1; i < list.size(); ++i) {
            auto name = names.fresh(fq.name);
            out.functions.push_back({name, fq.arity});
            copy_of[{fq.name, list[i]}] = name;
            std::vector<std::pair<Term, Term>> same;
            for (std::size_t p = 0; p < list[i].size(); ++p) same.emplace_back(list[0][p], list[i][p]);
            coherence.push_back(guarded(same, eq(apply(fq.name, list[0]), apply(name, list[i]))));
        }
    }
    auto rename = [&](const Term& s) -> Term {
        if (s.kind != TermKind::Application) return s;
        auto it = copy_of.find({s.name, s.args});
        if (it == copy_of.end()) return s;
        return apply(it->second, s.args);
    };
    auto rename_all = [&](const Term& t) { return rewrite_bottom_up(t, rename); };
    body = map_terms(body, rename_all);
    for (auto& [z, t] : guards) t = rename_all(t);

    coherence.push_back(guarded(guards, std::move(body)));
    out.matrix = conj_all(std::move(coherence));
    return out;
}

inline DFormula eso_to_d(const EsoSentence& e) { return deskolemize_prop31(star_normalize(e)); }

} // namespace deplog
