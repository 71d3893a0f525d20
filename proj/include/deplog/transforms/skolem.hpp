#pragma once

// Skolem normal form for ESO sentences and the normalization that bounds the
// universal prefix by twice the function arity.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "deplog/syntax.hpp"
#include "deplog/transforms/star.hpp"

namespace deplog {

/// Replaces every first-order existential by a new function of the
/// universals preceding it. The result has a purely universal prefix.
inline EsoSentence skolemize_prefix_existentials(const EsoSentence& e) {
    validate(e);
    NameSupply names(identifiers(e));
    EsoSentence out;
    out.functions = e.functions;
    out.matrix = e.matrix;
    std::vector<std::string> universals;
    for (const auto& p : e.prefix) {
        if (p.quantifier == Quantifier::Forall) {
            universals.push_back(p.variable);
            out.prefix.push_back(p);
            continue;
        }
        auto g = names.fresh("g");
        out.functions.push_back({g, static_cast<int>(universals.size())});
        out.matrix = substitute(out.matrix, p.variable, apply(g, vars(universals)));
    }
    return out;
}

namespace detail {

// State of the stepwise normalization of  exists f... forall x1..xk psi.
class Prop36 {
  public:
    Prop36(const EsoSentence& e, int k) : out_(e), names_(identifiers(e)) {
        for (const auto& p : e.prefix) x_.push_back(p.variable);
        while (static_cast<int>(x_.size()) < k) {
            auto v = names_.fresh("x");
            x_.push_back(v);
            out_.prefix.push_back({Quantifier::Forall, v});
        }
        for (const auto& f : e.functions) so_[f.name] = f.arity;
    }

    EsoSentence run() {
        bound_depth();
        separate();
        ensure_simple_occurrences();
        final_rewrite();
        return out_;
    }

  private:
    std::vector<Term> xs(std::size_t n) const { return vars(std::vector<std::string>(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n))); }

    bool quantified(const Term& t) const { return t.kind == TermKind::Application && so_.count(t.name); }

    // f(x1..x_ar(f)): the one argument pattern a function may keep.
    bool simple(const Term& t) const { return quantified(t) && t.args == xs(t.args.size()); }

    bool is_universal(const Term& t) const {
        return t.is_variable() && std::find(x_.begin(), x_.end(), t.name) != x_.end();
    }

    // f(a1..am), each ai a universal or a simple term of a quantified g != f,
    // the gs pairwise distinct.
    bool composed(const Term& t) const {
        if (!quantified(t) || simple(t)) return false;
        std::set<std::string> inner;
        for (const auto& a : t.args) {
            if (is_universal(a)) continue;
            if (!simple(a) || a.name == t.name || !inner.insert(a.name).second) return false;
        }
        return true;
    }

    std::string new_function(int arity) {
        auto h = names_.fresh("h");
        so_[h] = arity;
        out_.functions.push_back({h, arity});
        return h;
    }

    void add_conjunct(DFormula c) { out_.matrix = conj(std::move(out_.matrix), std::move(c)); }

    // Step 1: every quantified term that is neither simple nor composed gets
    // its arguments replaced by new functions of all universals.
    void bound_depth() {
        std::map<Term, Term> memo;
        std::vector<DFormula> definitions;
        const auto k = x_.size();
        auto step = [&](const Term& s) -> Term {
            if (!quantified(s) || simple(s) || composed(s)) return s;
            auto it = memo.find(s);
            if (it != memo.end()) return it->second;
            Term replaced = s;
            for (auto& a : replaced.args) {
                auto h = new_function(static_cast<int>(k));
                definitions.push_back(eq(apply(h, xs(k)), a));
                a = apply(h, xs(k));
            }
            memo.emplace(s, replaced);
            return replaced;
        };
        out_.matrix = map_terms(out_.matrix, [&](const Term& t) { return rewrite_bottom_up(t, step); });
        for (auto& d : definitions) add_conjunct(std::move(d));
    }

    void scan_composed(const std::function<void(const Term&)>& fn) const {
        for_each_subterm(out_.matrix, [&](const Term& t) {
            if (composed(t)) fn(t);
        });
    }

    // Step 2: no symbol is both an outer and an inner symbol of composed terms.
    void separate() {
        std::set<std::string> outer, inner;
        scan_composed([&](const Term& t) {
            outer.insert(t.name);
            for (const auto& a : t.args) {
                if (!a.is_variable()) inner.insert(a.name);
            }
        });
        std::map<std::string, std::string> rename;
        for (const auto& [g, arity] : so_) {
            if (outer.count(g) && inner.count(g)) rename[g] = "";
        }
        if (rename.empty()) return;
        for (auto& [g, h] : rename) h = new_function(so_.at(g));
        auto step = [&](const Term& s) -> Term {
            if (!composed(s)) return s;
            Term out = s;
            for (auto& a : out.args) {
                if (a.is_variable()) continue;
                auto it = rename.find(a.name);
                if (it != rename.end()) a = apply(it->second, a.args);
            }
            return out;
        };
        out_.matrix = map_terms(out_.matrix, [&](const Term& t) { return rewrite_bottom_up(t, step); });
        for (const auto& [g, h] : rename) {
            auto args = xs(static_cast<std::size_t>(so_.at(g)));
            add_conjunct(eq(apply(g, args), apply(h, args)));
        }
    }

    std::vector<std::string> outer_symbols() const {
        std::vector<std::string> outer;
        scan_composed([&](const Term& t) {
            if (std::find(outer.begin(), outer.end(), t.name) == outer.end()) outer.push_back(t.name);
        });
        return outer;
    }

    // Step 3: every outer symbol occurs at least once in simple form.
    void ensure_simple_occurrences() {
        for (const auto& f : outer_symbols()) {
            bool found = false;
            for_each_subterm(out_.matrix, [&](const Term& t) { found = found || (t.name == f && simple(t)); });
            if (found) continue;
            auto args = xs(static_cast<std::size_t>(so_.at(f)));
            auto h = new_function(so_.at(f));
            add_conjunct(eq(apply(f, args), apply(h, args)));
        }
    }

    // Simple occurrences of an outer f move to the primed universals; each
    // composed occurrence becomes a new h_i(x) tied to f by a guarded clause.
    void final_rewrite() {
        auto outer = outer_symbols();
        if (outer.empty()) return;
        const auto k = x_.size();
        std::vector<std::string> primed;
        for (std::size_t j = 0; j < k; ++j) {
            primed.push_back(names_.fresh(x_[j] + "p"));
            out_.prefix.push_back({Quantifier::Forall, primed.back()});
        }
        auto primed_args = [&](std::size_t n) { return vars(std::vector<std::string>(primed.begin(), primed.begin() + static_cast<std::ptrdiff_t>(n))); };

        std::set<std::string> outer_set(outer.begin(), outer.end());
        std::map<Term, Term> replacement;
        std::vector<DFormula> clauses;
        for (const auto& f : outer) {
            std::vector<Term> occurrences;
            scan_composed([&](const Term& t) {
                if (t.name == f && std::find(occurrences.begin(), occurrences.end(), t) == occurrences.end())
                    occurrences.push_back(t);
            });
            for (const auto& tau : occurrences) {
                auto h = new_function(static_cast<int>(k));
                replacement.emplace(tau, apply(h, xs(k)));
                std::vector<std::pair<Term, Term>> premise;
                for (std::size_t p = 0; p < tau.args.size(); ++p) premise.emplace_back(var(primed[p]), tau.args[p]);
                clauses.push_back(guarded(premise, eq(apply(f, primed_args(tau.args.size())), apply(h, xs(k)))));
            }
        }
        auto step = [&](const Term& s) -> Term {
            auto it = replacement.find(s);
            if (it != replacement.end()) return it->second;
            if (simple(s) && outer_set.count(s.name)) return apply(s.name, primed_args(s.args.size()));
            return s;
        };
        // Composed terms are matched before their simple arguments are touched.
        std::function<Term(const Term&)> top_down = [&](const Term& s) -> Term {
            auto it = replacement.find(s);
            if (it != replacement.end()) return it->second;
            Term out = s;
            for (auto& a : out.args) a = top_down(a);
            return step(out);
        };
        DFormula body = map_terms(out_.matrix, top_down);
        std::vector<std::pair<Term, Term>> same;
        for (std::size_t j = 0; j < k; ++j) same.emplace_back(var(x_[j]), var(primed[j]));
        clauses.push_back(guarded(same, std::move(body)));
        out_.matrix = conj_all(std::move(clauses));
    }

    EsoSentence out_;
    NameSupply names_;
    std::vector<std::string> x_;
    std::map<std::string, int> so_;
};

} // namespace detail

/// Normalizes a Skolem-normal-form sentence with k universals into one with
/// at most 2k universals in which every function has a single argument tuple.
/// A function of arity m keeps the tuple of the first m universals. Sentences
/// that already have that property are returned unchanged.
inline EsoSentence prop36_normalize(const EsoSentence& e, std::optional<int> k = std::nullopt) {
    validate(e);
    if (!e.is_skolem_normal_form()) throw PreconditionError("prop36_normalize needs a Skolem normal form input");
    int universals = e.universal_count();
    int bound = k.value_or(universals);
    if (bound < universals) throw PreconditionError("k is smaller than the number of universals");
    for (const auto& f : e.functions) {
        if (f.arity > bound) throw PreconditionError("function '" + f.name + "' has arity above k");
    }
    if (has_star_shape(e)) return e;
    return detail::Prop36(e, bound).run();
}

} // namespace deplog
