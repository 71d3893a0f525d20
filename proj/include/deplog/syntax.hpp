#pragma once

// Abstract syntax of dependence-logic formulas (negation normal form) and
// existential second-order sentences over function quantifiers, plus the
// purely syntactic analyses the rest of the library relies on.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "deplog/error.hpp"

namespace deplog {

/// Relation, function and constant symbols with their arities.
struct Signature {
    std::map<std::string, int> relations;
    std::map<std::string, int> functions;
    std::set<std::string> constants;

    bool declares(const std::string& name) const {
        return relations.count(name) || functions.count(name) || constants.count(name);
    }

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Checks arities and that no name is declared twice.
inline void validate(const Signature& sig) {
    for (const auto& [name, arity] : sig.relations) {
        if (arity < 1) throw PreconditionError("relation '" + name + "' must have arity >= 1");
        if (sig.functions.count(name) || sig.constants.count(name))
            throw PreconditionError("symbol '" + name + "' declared twice");
    }
    for (const auto& [name, arity] : sig.functions) {
        if (arity < 0) throw PreconditionError("function '" + name + "' has negative arity");
        if (sig.constants.count(name)) throw PreconditionError("symbol '" + name + "' declared twice");
    }
}

/// Union of two signatures; conflicting declarations are an error.
inline Signature merge(const Signature& a, const Signature& b) {
    Signature out = a;
    for (const auto& [name, arity] : b.relations) {
        auto [it, fresh] = out.relations.emplace(name, arity);
        if (!fresh && it->second != arity) throw PreconditionError("relation '" + name + "' has conflicting arities");
    }
    for (const auto& [name, arity] : b.functions) {
        auto [it, fresh] = out.functions.emplace(name, arity);
        if (!fresh && it->second != arity) throw PreconditionError("function '" + name + "' has conflicting arities");
    }
    out.constants.insert(b.constants.begin(), b.constants.end());
    validate(out);
    return out;
}

// ---------------------------------------------------------------------------
// Terms

enum class TermKind { Variable, Constant, Application };

struct Term {
    TermKind kind = TermKind::Variable;
    std::string name;
    std::vector<Term> args;

    bool is_variable() const { return kind == TermKind::Variable; }

    bool operator==(const Term&) const = default;
    // Spelled out: a defaulted <=> over vector<Term> recurses on its own constraint.
    std::strong_ordering operator<=>(const Term& other) const {
        if (auto c = kind <=> other.kind; c != 0) return c;
        if (auto c = name <=> other.name; c != 0) return c;
        for (std::size_t i = 0; i < args.size() && i < other.args.size(); ++i) {
            if (auto c = args[i] <=> other.args[i]; c != 0) return c;
        }
        return args.size() <=> other.args.size();
    }
    bool operator<(const Term& other) const { return (*this <=> other) < 0; }
};

inline Term var(std::string name) { return Term{TermKind::Variable, std::move(name), {}}; }
inline Term constant(std::string name) { return Term{TermKind::Constant, std::move(name), {}}; }
inline Term apply(std::string fn, std::vector<Term> args) {
    return Term{TermKind::Application, std::move(fn), std::move(args)};
}

inline std::vector<Term> vars(const std::vector<std::string>& names) {
    std::vector<Term> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(var(n));
    return out;
}

inline void collect_vars(const Term& t, std::set<std::string>& out) {
    if (t.kind == TermKind::Variable) {
        out.insert(t.name);
        return;
    }
    for (const auto& a : t.args) collect_vars(a, out);
}

inline std::set<std::string> term_vars(const Term& t) {
    std::set<std::string> out;
    collect_vars(t, out);
    return out;
}

/// Replaces every occurrence of variable `name` by `replacement`.
inline Term substitute(const Term& t, const std::string& name, const Term& replacement) {
    if (t.kind == TermKind::Variable) return t.name == name ? replacement : t;
    Term out = t;
    for (auto& a : out.args) a = substitute(a, name, replacement);
    return out;
}

/// Bottom-up rewrite: children first, then `fn` on the rebuilt node.
inline Term rewrite_bottom_up(const Term& t, const std::function<Term(const Term&)>& fn) {
    Term out = t;
    for (auto& a : out.args) a = rewrite_bottom_up(a, fn);
    return fn(out);
}

/// True iff `terms` are plain variables with no repetition.
inline bool distinct_variables(const std::vector<Term>& terms) {
    std::set<std::string> seen;
    for (const auto& t : terms) {
        if (!t.is_variable() || !seen.insert(t.name).second) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Dependence-logic formulas

enum class Quantifier { Exists, Forall };

enum class FormulaKind {
    Relation,
    Equality,
    Dependence,
    NegRelation,
    NegEquality,
    NegDependence,
    Verum,
    Falsum,
    And,
    Or,
    Exists,
    Forall,
};

/// A formula in negation normal form. Negation only exists as the three
/// negated-atom kinds, so every value of this type is NNF by construction.
///
/// `symbol` holds the relation name for (negated) relation atoms and the
/// bound variable for quantifiers. `terms` holds atom arguments (two for
/// equalities). `children` holds the operands of connectives and the body of
/// quantifiers.
struct DFormula {
    FormulaKind kind = FormulaKind::Verum;
    std::string symbol;
    std::vector<Term> terms;
    std::vector<DFormula> children;

    bool is_quantifier() const { return kind == FormulaKind::Exists || kind == FormulaKind::Forall; }
    bool is_connective() const { return kind == FormulaKind::And || kind == FormulaKind::Or; }
    bool is_literal() const { return !is_quantifier() && !is_connective(); }
    bool is_dependence_literal() const {
        return kind == FormulaKind::Dependence || kind == FormulaKind::NegDependence;
    }

    const DFormula& body() const { return children.front(); }
    const DFormula& lhs() const { return children[0]; }
    const DFormula& rhs() const { return children[1]; }

    bool operator==(const DFormula&) const = default;
};

inline DFormula rel(std::string name, std::vector<Term> args) {
    return DFormula{FormulaKind::Relation, std::move(name), std::move(args), {}};
}
inline DFormula eq(Term a, Term b) { return DFormula{FormulaKind::Equality, {}, {std::move(a), std::move(b)}, {}}; }
inline DFormula dep(std::vector<Term> args) { return DFormula{FormulaKind::Dependence, {}, std::move(args), {}}; }
inline DFormula neq(Term a, Term b) {
    return DFormula{FormulaKind::NegEquality, {}, {std::move(a), std::move(b)}, {}};
}
inline DFormula verum() { return DFormula{FormulaKind::Verum, {}, {}, {}}; }
inline DFormula falsum() { return DFormula{FormulaKind::Falsum, {}, {}, {}}; }

/// Negation of an atom; anything else violates NNF.
inline DFormula negate_atom(const DFormula& atom) {
    DFormula out = atom;
    switch (atom.kind) {
    case FormulaKind::Relation: out.kind = FormulaKind::NegRelation; break;
    case FormulaKind::Equality: out.kind = FormulaKind::NegEquality; break;
    case FormulaKind::Dependence: out.kind = FormulaKind::NegDependence; break;
    case FormulaKind::NegRelation: out.kind = FormulaKind::Relation; break;
    case FormulaKind::NegEquality: out.kind = FormulaKind::Equality; break;
    case FormulaKind::Verum: out.kind = FormulaKind::Falsum; break;
    case FormulaKind::Falsum: out.kind = FormulaKind::Verum; break;
    default: throw PreconditionError("negation applied to a non-atom");
    }
    return out;
}

inline DFormula conj(DFormula a, DFormula b) {
    return DFormula{FormulaKind::And, {}, {}, {std::move(a), std::move(b)}};
}
inline DFormula disj(DFormula a, DFormula b) {
    return DFormula{FormulaKind::Or, {}, {}, {std::move(a), std::move(b)}};
}
inline DFormula quantify(Quantifier q, std::string v, DFormula body) {
    return DFormula{q == Quantifier::Exists ? FormulaKind::Exists : FormulaKind::Forall, std::move(v), {},
                    {std::move(body)}};
}
inline DFormula exists(std::string v, DFormula body) { return quantify(Quantifier::Exists, std::move(v), std::move(body)); }
inline DFormula forall(std::string v, DFormula body) { return quantify(Quantifier::Forall, std::move(v), std::move(body)); }

/// Left-associated conjunction; the empty conjunction is verum.
inline DFormula conj_all(std::vector<DFormula> parts) {
    if (parts.empty()) return verum();
    DFormula acc = std::move(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(std::move(acc), std::move(parts[i]));
    return acc;
}

/// Left-associated disjunction; the empty disjunction is falsum.
inline DFormula disj_all(std::vector<DFormula> parts) {
    if (parts.empty()) return falsum();
    DFormula acc = std::move(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(std::move(acc), std::move(parts[i]));
    return acc;
}

/// `(a1 = b1 & ... & an = bn) -> body`, written in NNF as a disjunction.
inline DFormula guarded(const std::vector<std::pair<Term, Term>>& equalities, DFormula body) {
    if (equalities.empty()) return body;
    std::vector<DFormula> parts;
    for (const auto& [a, b] : equalities) parts.push_back(neq(a, b));
    parts.push_back(std::move(body));
    return disj_all(std::move(parts));
}

inline Quantifier quantifier_of(const DFormula& f) {
    return f.kind == FormulaKind::Exists ? Quantifier::Exists : Quantifier::Forall;
}

/// Applies `fn` to every term position of every atom.
inline DFormula map_terms(const DFormula& f, const std::function<Term(const Term&)>& fn) {
    DFormula out = f;
    for (auto& t : out.terms) t = fn(t);
    for (auto& c : out.children) c = map_terms(c, fn);
    return out;
}

/// Visits every term position of every atom, in source order.
inline void for_each_term(const DFormula& f, const std::function<void(const Term&)>& fn) {
    for (const auto& t : f.terms) fn(t);
    for (const auto& c : f.children) for_each_term(c, fn);
}

/// Visits every subterm (pre-order) of every atom, in source order.
inline void for_each_subterm(const DFormula& f, const std::function<void(const Term&)>& fn) {
    std::function<void(const Term&)> walk = [&](const Term& t) {
        fn(t);
        for (const auto& a : t.args) walk(a);
    };
    for_each_term(f, walk);
}

inline void collect_free_vars(const DFormula& f, std::set<std::string>& out) {
    if (f.is_quantifier()) {
        std::set<std::string> inner;
        collect_free_vars(f.body(), inner);
        inner.erase(f.symbol);
        out.insert(inner.begin(), inner.end());
        return;
    }
    for (const auto& t : f.terms) collect_vars(t, out);
    for (const auto& c : f.children) collect_free_vars(c, out);
}

/// Free variables; empty iff `f` is a sentence.
inline std::set<std::string> free_vars(const DFormula& f) {
    std::set<std::string> out;
    collect_free_vars(f, out);
    return out;
}

inline bool is_sentence(const DFormula& f) { return free_vars(f).empty(); }

/// Every variable that occurs anywhere, bound or free.
inline std::set<std::string> all_vars(const DFormula& f) {
    std::set<std::string> out;
    for_each_term(f, [&](const Term& t) { collect_vars(t, out); });
    std::function<void(const DFormula&)> binders = [&](const DFormula& g) {
        if (g.is_quantifier()) out.insert(g.symbol);
        for (const auto& c : g.children) binders(c);
    };
    binders(f);
    return out;
}

/// Every identifier in the formula: variables, relation, function and constant names.
inline std::set<std::string> identifiers(const DFormula& f) {
    std::set<std::string> out = all_vars(f);
    std::function<void(const DFormula&)> walk = [&](const DFormula& g) {
        if (g.kind == FormulaKind::Relation || g.kind == FormulaKind::NegRelation) out.insert(g.symbol);
        for (const auto& c : g.children) walk(c);
    };
    walk(f);
    for_each_subterm(f, [&](const Term& t) {
        if (t.kind != TermKind::Variable) out.insert(t.name);
    });
    return out;
}

inline std::map<std::string, int> binding_counts(const DFormula& f) {
    std::map<std::string, int> counts;
    std::function<void(const DFormula&)> walk = [&](const DFormula& g) {
        if (g.is_quantifier()) ++counts[g.symbol];
        for (const auto& c : g.children) walk(c);
    };
    walk(f);
    return counts;
}

/// True iff no variable is bound twice and no bound name also occurs free
/// outside its binder.
inline bool single_quantification(const DFormula& f) {
    auto counts = binding_counts(f);
    for (const auto& [name, n] : counts) {
        if (n > 1) return false;
    }
    for (const auto& v : free_vars(f)) {
        if (counts.count(v)) return false;
    }
    return true;
}

inline bool contains_dependence_atoms(const DFormula& f) {
    if (f.is_dependence_literal()) return true;
    return std::any_of(f.children.begin(), f.children.end(), [](const auto& c) { return contains_dependence_atoms(c); });
}

inline bool is_quantifier_free(const DFormula& f) {
    if (f.is_quantifier()) return false;
    return std::all_of(f.children.begin(), f.children.end(), [](const auto& c) { return is_quantifier_free(c); });
}

inline int forall_count(const DFormula& f) {
    int n = f.kind == FormulaKind::Forall ? 1 : 0;
    for (const auto& c : f.children) n += forall_count(c);
    return n;
}

inline int exists_count(const DFormula& f) {
    int n = f.kind == FormulaKind::Exists ? 1 : 0;
    for (const auto& c : f.children) n += exists_count(c);
    return n;
}

/// Largest number of terms in a (possibly negated) dependence atom; 0 if none.
inline int max_dependence_width(const DFormula& f) {
    int w = f.is_dependence_literal() ? static_cast<int>(f.terms.size()) : 0;
    for (const auto& c : f.children) w = std::max(w, max_dependence_width(c));
    return w;
}

/// Capture-free substitution of a variable by a term. Binders of `name` stop
/// the substitution; the caller guarantees no binder captures `replacement`.
inline DFormula substitute(const DFormula& f, const std::string& name, const Term& replacement) {
    if (f.is_quantifier() && f.symbol == name) return f;
    DFormula out = f;
    for (auto& t : out.terms) t = substitute(t, name, replacement);
    for (auto& c : out.children) c = substitute(c, name, replacement);
    return out;
}

/// First of `hint`, `hint_1`, `hint_2`, ... not in `used`.
inline std::string fresh_var(const std::set<std::string>& used, const std::string& hint) {
    if (!used.count(hint)) return hint;
    for (std::size_t i = 1;; ++i) {
        std::string candidate = hint + "_" + std::to_string(i);
        if (!used.count(candidate)) return candidate;
    }
}

/// Draws fresh names and remembers them, so successive calls never collide.
class NameSupply {
  public:
    NameSupply() = default;
    explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}

    std::string fresh(const std::string& hint) {
        auto name = fresh_var(used_, hint);
        used_.insert(name);
        return name;
    }
    void reserve(const std::string& name) { used_.insert(name); }
    void reserve(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }
    const std::set<std::string>& used() const { return used_; }

  private:
    std::set<std::string> used_;
};

/// Renames binders so that every variable is bound at most once and no bound
/// name clashes with a free one. The first binding occurrence of a name (in
/// pre-order) keeps its name.
inline DFormula rename_apart(const DFormula& f) {
    NameSupply names(identifiers(f));
    std::set<std::string> taken = free_vars(f);
    std::function<DFormula(const DFormula&)> walk = [&](const DFormula& g) -> DFormula {
        if (g.is_quantifier()) {
            if (taken.insert(g.symbol).second) return quantify(quantifier_of(g), g.symbol, walk(g.body()));
            auto renamed = names.fresh(g.symbol);
            taken.insert(renamed);
            auto body = substitute(g.body(), g.symbol, var(renamed));
            return quantify(quantifier_of(g), renamed, walk(body));
        }
        DFormula out = g;
        for (auto& c : out.children) c = walk(c);
        return out;
    };
    return walk(f);
}

// ---------------------------------------------------------------------------
// Existential second-order sentences

struct FunctionQuantifier {
    std::string name;
    int arity = 0;

    bool operator==(const FunctionQuantifier&) const = default;
};

struct PrefixEntry {
    Quantifier quantifier = Quantifier::Forall;
    std::string variable;

    bool operator==(const PrefixEntry&) const = default;
};

using Prefix = std::vector<PrefixEntry>;

/// `exists fn f1/a1. ... exists fn fn/an. Q1 x1. ... Qm xm. matrix`, with a
/// quantifier-free, dependence-free matrix.
struct EsoSentence {
    std::vector<FunctionQuantifier> functions;
    Prefix prefix;
    DFormula matrix;

    const FunctionQuantifier* function(const std::string& name) const {
        for (const auto& f : functions) {
            if (f.name == name) return &f;
        }
        return nullptr;
    }
    int universal_count() const {
        return static_cast<int>(std::count_if(prefix.begin(), prefix.end(),
                                              [](const auto& p) { return p.quantifier == Quantifier::Forall; }));
    }
    bool is_skolem_normal_form() const { return universal_count() == static_cast<int>(prefix.size()); }

    bool operator==(const EsoSentence&) const = default;
};

/// Wraps `body` in the quantifiers of `prefix` (outermost first).
inline DFormula with_prefix(const Prefix& prefix, DFormula body) {
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) body = quantify(it->quantifier, it->variable, std::move(body));
    return body;
}

/// Splits leading quantifiers off a formula.
inline std::pair<Prefix, DFormula> split_prefix(const DFormula& f) {
    Prefix prefix;
    const DFormula* cur = &f;
    while (cur->is_quantifier()) {
        prefix.push_back({quantifier_of(*cur), cur->symbol});
        cur = &cur->body();
    }
    return {prefix, *cur};
}

/// The first-order part `Q1 x1 ... Qm xm matrix` as a formula.
inline DFormula first_order_part(const EsoSentence& e) { return with_prefix(e.prefix, e.matrix); }

inline std::set<std::string> identifiers(const EsoSentence& e) {
    auto out = identifiers(first_order_part(e));
    for (const auto& f : e.functions) out.insert(f.name);
    return out;
}

/// Checks the structural invariants of an ESO sentence.
inline void validate(const EsoSentence& e) {
    std::set<std::string> names;
    for (const auto& f : e.functions) {
        if (f.arity < 0) throw PreconditionError("function quantifier '" + f.name + "' has negative arity");
        if (!names.insert(f.name).second) throw PreconditionError("function '" + f.name + "' quantified twice");
    }
    if (!is_quantifier_free(e.matrix)) throw PreconditionError("ESO matrix must be quantifier-free");
    if (contains_dependence_atoms(e.matrix)) throw PreconditionError("dependence atom inside ESO matrix");
    std::set<std::string> bound;
    for (const auto& p : e.prefix) bound.insert(p.variable);
    for (const auto& v : free_vars(e.matrix)) {
        if (!bound.count(v)) throw PreconditionError("free variable '" + v + "' in ESO matrix");
    }
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string render(const Term& t) {
    switch (t.kind) {
    case TermKind::Variable:
    case TermKind::Constant: return t.name;
    case TermKind::Application: break;
    }
    std::string out = t.name + "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ",";
        out += render(t.args[i]);
    }
    return out + ")";
}

namespace detail {

inline std::string render_args(const std::vector<Term>& terms) {
    std::string out = "(";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += ",";
        out += render(terms[i]);
    }
    return out + ")";
}

inline std::string render_formula(const DFormula& f);

// Operand of a binary connective. A quantifier always needs parentheses
// because its scope would otherwise swallow the rest of the connective.
inline std::string render_operand(const DFormula& f, FormulaKind parent, bool right) {
    bool parens = f.is_quantifier();
    if (parent == FormulaKind::And && f.kind == FormulaKind::Or) parens = true;
    if (right && f.kind == parent) parens = true;
    auto text = render_formula(f);
    return parens ? "(" + text + ")" : text;
}

inline std::string render_formula(const DFormula& f) {
    switch (f.kind) {
    case FormulaKind::Relation: return f.symbol + render_args(f.terms);
    case FormulaKind::NegRelation: return "~" + f.symbol + render_args(f.terms);
    case FormulaKind::Equality: return render(f.terms[0]) + " = " + render(f.terms[1]);
    case FormulaKind::NegEquality: return "~" + render(f.terms[0]) + " = " + render(f.terms[1]);
    case FormulaKind::Dependence: return "=" + render_args(f.terms);
    case FormulaKind::NegDependence: return "~=" + render_args(f.terms);
    case FormulaKind::Verum: return "true";
    case FormulaKind::Falsum: return "false";
    case FormulaKind::And:
        return render_operand(f.lhs(), f.kind, false) + " & " + render_operand(f.rhs(), f.kind, true);
    case FormulaKind::Or:
        return render_operand(f.lhs(), f.kind, false) + " | " + render_operand(f.rhs(), f.kind, true);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        std::string head = (f.kind == FormulaKind::Exists ? "exists " : "forall ") + f.symbol + ". ";
        const auto& b = f.body();
        return head + (b.is_connective() ? "(" + render_formula(b) + ")" : render_formula(b));
    }
    }
    return {};
}

} // namespace detail

inline std::string render(const DFormula& f) { return detail::render_formula(f); }

inline std::string render(const EsoSentence& e) {
    std::string out;
    for (const auto& f : e.functions) out += "exists fn " + f.name + "/" + std::to_string(f.arity) + ". ";
    return out + render(first_order_part(e));
}

} // namespace deplog
