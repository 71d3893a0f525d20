#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace testutil;

namespace {

const Signature sig_P1 = sig_of({{"P", 1}});
const Signature sig_P2 = sig_of({{"P", 2}});
const Signature sig_E = sig_of({{"E", 2}});

// ---------------------------------------------------------------------------
// Prenex form

TEST(ToPrenex, PullsPastConnectives) {
    EXPECT_EQ(render(to_prenex(D("(exists x. P(x)) & Q(c)"))), "exists x. (P(x) & Q(c))");
    EXPECT_EQ(render(to_prenex(D("(forall x. P(x)) | Q(c)"))), "forall x. (P(x) | Q(c))");
}

TEST(ToPrenex, PrenexInputIsFixed) {
    auto f = corpus_item("henkin").dformula();
    EXPECT_EQ(to_prenex(f), f);
    EXPECT_TRUE(is_prenex(f));
}

TEST(ToPrenex, KeepsCountsAndAtoms) {
    auto f = corpus_item("nested_prenex").dformula();
    auto g = to_prenex(f);
    EXPECT_TRUE(is_prenex(g));
    EXPECT_EQ(forall_count(g), forall_count(f));
    EXPECT_EQ(max_dependence_width(g), max_dependence_width(f));
    EXPECT_EQ(naive_disagreements(f, g, sig_of({{"P", 1}, {"E", 2}}), 2), 0);
}

TEST(ToPrenex, NeedsSingleQuantification) {
    EXPECT_THROW(to_prenex(corpus_item("requantified").dformula()), PreconditionError);
}

// ---------------------------------------------------------------------------
// Atom simplification and extraction

TEST(SimplifyAtomTerms, ComplexTerms) {
    EXPECT_EQ(render(simplify_atom_terms(D("forall x. exists y. =(g(x), y)"))),
              "forall x. exists y. exists z1. exists z2. (z1 = g(x) & z2 = y & =(z1,z2))");
}

TEST(SimplifyAtomTerms, RepeatedVariable) {
    auto f = D("forall x. =(x, x)");
    auto g = simplify_atom_terms(f);
    EXPECT_EQ(render(g), "forall x. exists z1. exists z2. (z1 = x & z2 = x & =(z1,z2))");
    EXPECT_EQ(naive_disagreements(f, g, Signature{}, 2), 0);
}

TEST(SimplifyAtomTerms, DistinctVariablesUnchanged) {
    auto f = corpus_item("skolem_basic").dformula();
    EXPECT_EQ(simplify_atom_terms(f), f);
}

TEST(SimplifyAtomTerms, NeedsPrenexInput) {
    EXPECT_THROW(simplify_atom_terms(D("(exists x. =(x,x)) & (exists y. P(y))")), PreconditionError);
}

std::string show(const Extraction& x) {
    std::string s;
    for (const auto& b : x.bindings) s += render(binding_atom(b)) + " ";
    return s + "| " + render(x.matrix);
}

TEST(ExtractDepAtoms, SingleAtom) {
    EXPECT_EQ(show(extract_dep_atoms(open_formula("=(z1,z2)", {"z1", "z2"}))), "=(z1,y) | y = z2");
}

TEST(ExtractDepAtoms, LiteralHasNoBindings) {
    EXPECT_EQ(show(extract_dep_atoms(open_formula("P(x)", {"x"}))), "| P(x)");
}

TEST(ExtractDepAtoms, NegatedAtomIsFalse) {
    EXPECT_EQ(show(extract_dep_atoms(open_formula("~=(x,y)", {"x", "y"}))), "| false");
}

TEST(ExtractDepAtoms, DisjunctionConcatenatesBindings) {
    auto phi1 = corpus_item("phi1").dformula();
    auto x = extract_dep_atoms(phi1);
    EXPECT_EQ(show(x), "=(x,y_1) =(u,y_2) | y_1 = y | y_2 = v");
}

TEST(ExtractDepAtoms, Phi1EquivalentOnAllSmallTeams) {
    // exists y_1 y_2 (bindings & matrix) against phi1, on every team of at
    // most three rows, in structures of size 1 and 2.
    auto phi1 = corpus_item("phi1").dformula();
    auto x = extract_dep_atoms(phi1);
    std::vector<DFormula> parts;
    for (const auto& b : x.bindings) parts.push_back(binding_atom(b));
    parts.push_back(x.matrix);
    DFormula nf = conj_all(parts);
    for (auto it = x.bindings.rbegin(); it != x.bindings.rend(); ++it) nf = exists(it->variable, nf);
    for (int n = 1; n <= 2; ++n) {
        Structure m(n);
        std::vector<Tuple> all;
        for (int i = 0; i < n * n * n * n; ++i) all.push_back({i / (n * n * n) % n, i / (n * n) % n, i / n % n, i % n});
        const auto size = all.size();
        for (std::size_t a = 0; a < size; ++a)
            for (std::size_t b = a; b < size; ++b)
                for (std::size_t c = b; c < size; ++c) {
                    NaiveTeam t{};
                    for (auto i : {a, b, c}) {
                        const auto& r = all[i];
                        t.insert({{"x", r[0]}, {"y", r[1]}, {"u", r[2]}, {"v", r[3]}});
                    }
                    ASSERT_EQ(naive_sat(m, t, phi1), naive_sat(m, t, nf)) << n << " " << a << b << c;
                }
    }
}

TEST(NormalForm, PeelsExistingBindings) {
    auto nf = normal_form(D("forall x. exists y. (=(x,y) & P(x,y))"));
    ASSERT_EQ(nf.bindings.size(), 1u);
    EXPECT_EQ(nf.bindings[0].variable, "y");
    EXPECT_EQ(render(nf.matrix), "P(x,y)");
    EXPECT_EQ(render(to_dformula(nf)), "forall x. exists y. (=(x,y) & P(x,y))");
}

// ---------------------------------------------------------------------------
// Skolemization and its converse

TEST(SkolemizeProp31, Examples) {
    EXPECT_EQ(render(d_to_eso(D("forall x. exists y. (=(x,y) & P(x,y))"))), "exists fn f/1. forall x. P(x,f(x))");
    EXPECT_EQ(render(d_to_eso(corpus_item("henkin").dformula())),
              "exists fn f/1. forall x0. exists x1. forall x2. P(x0,x1,x2,f(x2))");
    auto constant_choice = D("forall x. exists y. (=(y) & P(x,y))");
    auto e = d_to_eso(constant_choice);
    EXPECT_EQ(render(e), "exists fn c/0. forall x. P(x,c())");
    EXPECT_EQ(naive_disagreements(constant_choice, e, sig_P2, 2), 0);
}

TEST(SkolemizeProp31, ArityIsWidthMinusOne) {
    auto f = corpus_item("phi2_closed").dformula();
    auto nf = normal_form(simplify_atom_terms(to_prenex(f)));
    auto e = skolemize_prop31(nf);
    ASSERT_EQ(e.functions.size(), nf.bindings.size());
    for (std::size_t i = 0; i < nf.bindings.size(); ++i)
        EXPECT_EQ(e.functions[i].arity, static_cast<int>(nf.bindings[i].determiners.size()));
}

TEST(DToEso, DependenceFreeSentenceHasNoFunctions) {
    auto e = d_to_eso(D("forall x. exists y. E(x,y)"));
    EXPECT_TRUE(e.functions.empty());
    EXPECT_EQ(render(e), "forall x. exists y. E(x,y)");
}

TEST(DToEso, Phi2KeepsThreeFunctionsOfWidthTwo) {
    auto f = corpus_item("phi2_closed").dformula();
    auto e = d_to_eso(f);
    ASSERT_EQ(e.functions.size(), 3u);
    for (const auto& fq : e.functions) EXPECT_EQ(fq.arity, 1);
    EXPECT_TRUE(equiv_check(f, e, Signature{}, 3).equivalent());
}

TEST(DToEso, NeedsSentence) {
    EXPECT_THROW(d_to_eso(open_formula("=(x,y)", {"x", "y"})), PreconditionError);
}

TEST(DeskolemizeProp31, Examples) {
    EXPECT_EQ(render(deskolemize_prop31(E("exists fn f/1. forall x. P(x, f(x))"))),
              "forall x. exists y. (=(x,y) & P(x,y))");
    auto c = E("exists fn c/0. forall x. P(x, c())");
    auto d = deskolemize_prop31(c);
    EXPECT_EQ(render(d), "forall x. exists y. (=(y) & P(x,y))");
    EXPECT_EQ(naive_disagreements(c, d, sig_P2, 2), 0);
}

TEST(DeskolemizeProp31, RejectsTwoArgumentTuples) {
    EXPECT_THROW(deskolemize_prop31(E("exists fn f/1. forall x. forall y. P(f(x), f(y))")), ShapeError);
}

// ---------------------------------------------------------------------------
// (⋆) normalization

TEST(StarNormalize, StarInputUnchanged) {
    auto e = E("exists fn f/1. forall x. P(x, f(x))");
    EXPECT_TRUE(has_star_shape(e));
    EXPECT_EQ(star_normalize(e), e);
}

TEST(StarNormalize, FlattensComposition) {
    auto e = E("exists fn f/1. forall x. P(f(f(x)))");
    EXPECT_FALSE(has_star_shape(e));
    auto s = star_normalize(e);
    EXPECT_TRUE(has_star_shape(s));
    EXPECT_EQ(render(s),
              "exists fn f/1. exists fn f_1/1. forall x. forall z. ((~x = z | f(x) = f_1(z)) & (~z = f(x) | P(f_1(z))))");
    EXPECT_EQ(naive_disagreements(e, s, sig_P1, 2), 0);
}

TEST(StarNormalize, SplitsDuplicateTuples) {
    auto e = E("exists fn f/1. forall x. forall y. (f(x) = f(y))");
    auto s = star_normalize(e);
    EXPECT_TRUE(has_star_shape(s));
    EXPECT_EQ(render(s), "exists fn f/1. exists fn f_1/1. forall x. forall y. ((~x = y | f(x) = f_1(y)) & f(x) = f_1(y))");
    EXPECT_EQ(naive_disagreements(e, s, Signature{}, 3), 0);
}

TEST(EsoToD, Examples) {
    EXPECT_EQ(render(eso_to_d(E("exists fn f/1. forall x. P(x, f(x))"))), "forall x. exists y. (=(x,y) & P(x,y))");
    auto plain = E("forall x. exists y. E(x,y)", sig_E);
    EXPECT_EQ(eso_to_d(plain), first_order_part(plain));
}

TEST(EsoToD, EvenRMatchesParity) {
    auto d = eso_to_d(corpus_item("even_R").eso());
    EXPECT_LE(max_dependence_width(d), 3);
    for (int n = 1; n <= 2; ++n) {
        for (const auto& m : all_structures(sig_of({{"R", 2}}), n))
            EXPECT_EQ(sentence_truth(m, d), relation_size(m, "R") % 2 == 0) << to_json(m).dump();
    }
}

// ---------------------------------------------------------------------------
// Skolem normal form and the 2k-universal normalization

TEST(SkolemizePrefixExistentials, Examples) {
    EXPECT_EQ(render(skolemize_prefix_existentials(E("forall x. exists y. P(x,y)", sig_P2))),
              "exists fn g/1. forall x. P(x,g(x))");
    EXPECT_EQ(render(skolemize_prefix_existentials(E("exists y. P(y)", sig_P1))), "exists fn g/0. P(g())");
    auto h = E("exists fn f/1. forall x0. exists x1. forall x2. P(x0,x1,x2,f(x2))");
    auto s = skolemize_prefix_existentials(h);
    EXPECT_EQ(render(s), "exists fn f/1. exists fn g/1. forall x0. forall x2. P(x0,g(x0),x2,f(x2))");
    EXPECT_TRUE(s.is_skolem_normal_form());
    EXPECT_EQ(naive_disagreements(h, s, sig_of({{"P", 4}}), 2), 0);
}

TEST(Prop36, SkipsStarInputs) {
    auto e = E("exists fn f/1. forall x. P(x, f(x))");
    EXPECT_EQ(prop36_normalize(e, 1), e);
}

TEST(Prop36, CompositionNormalized) {
    auto e = E("exists fn f/1. forall x. P(f(f(x)))");
    auto p = prop36_normalize(e, 1);
    EXPECT_TRUE(has_star_shape(p));
    EXPECT_TRUE(p.is_skolem_normal_form());
    EXPECT_LE(p.universal_count(), 2);
    EXPECT_GT(p.functions.size(), e.functions.size());
    EXPECT_EQ(naive_disagreements(e, p, sig_P1, 2), 0);
}

TEST(Prop36, InnerAndOuterSymbolSeparated) {
    // f occurs inside f: the output introduces fresh functions h so that no
    // symbol is both inner and outer.
    auto e = E("exists fn f/1. forall x. f(f(x)) = x");
    auto p = prop36_normalize(e, 1);
    EXPECT_TRUE(has_star_shape(p));
    EXPECT_LE(p.universal_count(), 2);
    bool introduced_h = false;
    for (const auto& fq : p.functions) introduced_h = introduced_h || fq.name.rfind("h", 0) == 0;
    EXPECT_TRUE(introduced_h);
    // Three unary functions at size 3 are out of the naive oracle's reach.
    EXPECT_EQ(naive_disagreements(e, p, Signature{}, 2), 0);
    EXPECT_TRUE(equiv_check(e, p, Signature{}, 3).equivalent());
}

TEST(Prop36, Preconditions) {
    EXPECT_THROW(prop36_normalize(E("exists fn f/1. forall x. exists y. P(f(f(x)))"), 1), PreconditionError);
    EXPECT_THROW(prop36_normalize(E("exists fn f/1. forall x. forall y. P(f(f(x)))"), 1), PreconditionError);
    EXPECT_THROW(prop36_normalize(E("exists fn f/2. forall x. P(f(x,f(x,x)))"), 1), PreconditionError);
}

TEST(Prop36, LargerBoundAddsDummyUniversals) {
    auto e = E("exists fn f/1. forall x. P(f(f(x)))");
    auto p = prop36_normalize(e, 2);
    EXPECT_TRUE(has_star_shape(p));
    EXPECT_LE(p.universal_count(), 4);
    EXPECT_EQ(naive_disagreements(e, p, sig_P1, 2), 0);
}

// ---------------------------------------------------------------------------
// Collapses

TEST(CollapseExistential, Examples) {
    EXPECT_EQ(render(collapse_existential_to_fo(D("exists x. exists y. (=(x,y) & P(x,y))"))),
              "exists x. exists y. (true & P(x,y))");
    auto plain = D("exists x. P(x)");
    EXPECT_EQ(collapse_existential_to_fo(plain), plain);
    auto neg = D("exists x. ~=(x)");
    auto c = collapse_existential_to_fo(neg);
    EXPECT_EQ(render(c), "exists x. false");
    for (int n = 1; n <= 3; ++n) EXPECT_FALSE(naive_sentence(Structure(n), neg));
    EXPECT_THROW(collapse_existential_to_fo(D("forall x. =(x)")), PreconditionError);
}

TEST(EliminateWidth1, Examples) {
    auto f = D("forall x. exists y. (=(y) & y = x)");
    auto g = eliminate_width1(f);
    EXPECT_EQ(render(g), "exists z. forall x. z = x");
    EXPECT_FALSE(contains_dependence_atoms(g));
    EXPECT_EQ(naive_disagreements(f, g, Signature{}, 3), 0);

    auto plain = D("exists x. P(x)");
    EXPECT_EQ(eliminate_width1(plain), plain);

    auto w = D("exists x. (=(x) & P(x))");
    auto v = eliminate_width1(w);
    EXPECT_FALSE(contains_dependence_atoms(v));
    EXPECT_EQ(naive_disagreements(w, v, sig_P1, 3), 0);
    EXPECT_EQ(naive_disagreements(v, plain, sig_P1, 3), 0);

    EXPECT_THROW(eliminate_width1(corpus_item("skolem_basic").dformula()), PreconditionError);
}

TEST(SingleForallReuse, Examples) {
    EXPECT_EQ(render(single_forall_reuse(D("forall y. P(y)"))), "forall x. exists y. (x = y & P(y))");
    auto atom = D("P(c)");
    EXPECT_EQ(single_forall_reuse(atom), atom);
    auto two = D("forall y1. forall y2. E(y1,y2)");
    auto r = single_forall_reuse(two);
    EXPECT_EQ(render(r), "forall x. exists y1. (x = y1 & (forall x. exists y2. (x = y2 & E(y1,y2))))");
    EXPECT_EQ(naive_disagreements(two, r, sig_E, 2), 0);
    EXPECT_THROW(single_forall_reuse(D("forall x. P(x)")), PreconditionError);
}

} // namespace
