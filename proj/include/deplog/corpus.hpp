#pragma once

// Named sentences used by the tests, the acceptance run and the CLI.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "deplog/error.hpp"
#include "deplog/parser.hpp"
#include "deplog/syntax.hpp"

namespace deplog {

struct CorpusItem {
    std::string name;
    std::string description;
    std::string text;
    Signature signature;
    /// Non-empty for open formulas: the variables of the intended teams.
    std::vector<std::string> team_vars;
    /// "d", "eso", "open", "fo", "forall-free", "width1", "snf".
    std::vector<std::string> tags;

    bool has_tag(const std::string& tag) const { return std::find(tags.begin(), tags.end(), tag) != tags.end(); }

    Sentence parse() const {
        std::set<std::string> free(team_vars.begin(), team_vars.end());
        return parse_any(text, &signature, free).value;
    }
    DFormula dformula() const {
        auto s = parse();
        if (!std::holds_alternative<DFormula>(s)) throw PreconditionError("corpus item '" + name + "' is not a dependence formula");
        return std::get<DFormula>(s);
    }
    EsoSentence eso() const {
        auto s = parse();
        if (!std::holds_alternative<EsoSentence>(s)) throw PreconditionError("corpus item '" + name + "' is not an ESO sentence");
        return std::get<EsoSentence>(s);
    }
};

namespace detail {

inline Signature sig(std::map<std::string, int> relations, std::map<std::string, int> functions = {},
                     std::set<std::string> constants = {}) {
    return Signature{std::move(relations), std::move(functions), std::move(constants)};
}

} // namespace detail

inline const std::vector<CorpusItem>& corpus() {
    using detail::sig;
    static const std::vector<CorpusItem> items = {
        // Open formulas, evaluated on teams over x, y, u, v.
        {"phi1", "a disjunction of two dependence atoms", "=(x,y) | =(u,v)", sig({}), {"x", "y", "u", "v"}, {"open"}},
        {"phi2", "a disjunction of three dependence atoms", "=(x,y) | =(u,v) | =(u,v)", sig({}), {"x", "y", "u", "v"},
         {"open"}},

        // Dependence-logic sentences.
        {"phi1_closed", "phi1 with universal x, u and existential y, v",
         "forall x. forall u. exists y. exists v. (=(x,y) | =(u,v))", sig({}), {}, {"d"}},
        {"phi2_closed", "phi2 with universal x, u and existential y, v",
         "forall x. forall u. exists y. exists v. (=(x,y) | =(u,v) | =(u,v))", sig({}), {}, {"d"}},
        {"henkin", "x3 depends on x2 only",
         "forall x0. exists x1. forall x2. exists x3. (=(x2,x3) & P(x0,x1,x2,x3))", sig({{"P", 4}}), {}, {"d"}},
        {"henkin_eq", "x3 depends on x2 only and equals x1",
         "forall x0. exists x1. forall x2. exists x3. (=(x2,x3) & x1 = x3)", sig({}), {}, {"d"}},
        {"skolem_basic", "every x has an E-successor chosen as a function of x",
         "forall x. exists y. (=(x,y) & E(x,y))", sig({{"E", 2}}), {}, {"d"}},
        {"const_choice", "one y works for every x", "forall x. exists y. (=(y) & P(x,y))", sig({{"P", 2}}), {}, {"d", "width1"}},
        {"complex_term_dep", "y depends on the value of g(x)", "forall x. exists y. (=(g(x),y) & E(x,y))",
         sig({{"E", 2}}, {{"g", 1}}), {}, {"d"}},
        {"nested_prenex", "quantifiers below connectives",
         "(exists x. P(x)) & (forall y. exists z. (=(y,z) & E(y,z)))", sig({{"P", 1}, {"E", 2}}), {}, {"d"}},
        {"disj_dep", "a dependence atom under a disjunction",
         "forall x. exists y. ((=(x,y) & E(x,y)) | P(x))", sig({{"P", 1}, {"E", 2}}), {}, {"d"}},
        {"requantified", "x is quantified twice", "forall x. (P(x) | (exists y. (=(y) & (forall x. E(x,y)))))",
         sig({{"P", 1}, {"E", 2}}), {}, {"d", "width1"}},
        {"wide_dep", "a width-3 dependence atom", "forall x. forall y. exists z. (=(x,y,z) & (E(x,z) | E(y,z)))",
         sig({{"E", 2}}), {}, {"d"}},
        {"neg_dep_branch", "a negated dependence atom as a disjunct", "forall x. exists y. (=(x,y) & (E(x,y) | ~=(x,y)))",
         sig({{"E", 2}}), {}, {"d"}},
        {"zero_absorbing", "F is 0 whenever its last argument is 0, k = 1, h = 3",
         "forall a1. forall a2. F(a1,a2,zero) = zero", sig({}, {{"F", 3}}, {"zero"}), {}, {"d", "fo"}},

        // Sentences without universal quantifiers.
        {"exists_dep", "an E-edge, with a trivial dependence", "exists x. exists y. (=(x,y) & E(x,y))", sig({{"E", 2}}), {},
         {"d", "forall-free"}},
        {"exists_neg", "a negated dependence atom on a one-row team", "exists x. (P(x) | ~=(x))", sig({{"P", 1}}), {},
         {"d", "forall-free", "width1"}},
        {"exists_nested", "dependence atoms in both disjuncts",
         "(exists x. (=(x) & P(x))) | (exists y. exists z. (=(y,z) & ~E(y,z)))", sig({{"P", 1}, {"E", 2}}), {},
         {"d", "forall-free"}},
        {"exists_wide", "a width-3 atom without universals", "exists x. exists y. exists z. (=(x,y,z) & E(x,y) & ~E(y,z))",
         sig({{"E", 2}}), {}, {"d", "forall-free"}},

        // Width-1 dependence atoms.
        {"width1_const", "y is constant and equals every x", "forall x. exists y. (=(y) & y = x)", sig({}), {}, {"d", "width1"}},
        {"width1_exists", "a constant witness for P", "exists x. (=(x) & P(x))", sig({{"P", 1}}), {},
         {"d", "width1", "forall-free"}},
        {"width1_mix", "a constant y with P(x) or P(y) for all x", "forall x. exists y. (=(y) & (P(x) | P(y)))",
         sig({{"P", 1}}), {}, {"d", "width1"}},
        {"width1_pair", "a constant y reached from x or from z", "forall x. forall z. exists y. (=(y) & (E(x,y) | E(z,y)))",
         sig({{"E", 2}}), {}, {"d", "width1"}},

        // ESO sentences.
        {"even_R", "|R| is even: f1, f2 form a fixed-point-free involution on R",
         "exists fn f1/2. exists fn f2/2. forall x. forall y. (~R(x,y) | (R(f1(x,y),f2(x,y)) & (~f1(x,y) = x | ~f2(x,y) = y) "
         "& f1(f1(x,y),f2(x,y)) = x & f2(f1(x,y),f2(x,y)) = y))",
         sig({{"R", 2}}), {}, {"eso", "snf"}},
        {"eso_identity", "some function is the identity", "exists fn f/1. forall x. f(x) = x", sig({}), {}, {"eso", "snf"}},
        {"eso_skolem", "every x has an E-successor", "exists fn f/1. forall x. E(x,f(x))", sig({{"E", 2}}), {}, {"eso", "snf"}},
        {"eso_const", "one y works for every x", "exists fn c/0. forall x. P(x,c())", sig({{"P", 2}}), {}, {"eso", "snf"}},
        {"eso_compose", "P holds on the image of f twice", "exists fn f/1. forall x. P(f(f(x)))", sig({{"P", 1}}), {},
         {"eso", "snf"}},
        {"eso_coloring", "E-edges join differently coloured ends", "exists fn f/1. forall x. forall y. (~E(x,y) | ~f(x) = f(y))",
         sig({{"E", 2}}), {}, {"eso", "snf"}},
        {"eso_fpf_bijection", "a fixed-point-free function with a right inverse",
         "exists fn f/1. exists fn g/1. forall x. (f(g(x)) = x & ~f(x) = x)", sig({}), {}, {"eso", "snf"}},
        {"eso_exists_prefix", "a binary function under a mixed prefix", "exists fn f/2. forall x. exists y. E(x,f(x,y))",
         sig({{"E", 2}}), {}, {"eso"}},
        {"henkin_skolem", "the Henkin sentence with x3 Skolemized",
         "exists fn f/1. forall x0. exists x1. forall x2. P(x0,x1,x2,f(x2))", sig({{"P", 4}}), {}, {"eso"}},
    };
    return items;
}

inline const CorpusItem& corpus_item(const std::string& name) {
    for (const auto& item : corpus()) {
        if (item.name == name) return item;
    }
    throw PreconditionError("no corpus item named '" + name + "'");
}

} // namespace deplog
