#pragma once

// Syntactic measurements and the fragment memberships derived from them.

#include <algorithm>
#include <string>
#include <vector>

#include "deplog/syntax.hpp"
#include "deplog/transforms/star.hpp"

namespace deplog {

enum class SentenceKind { Dependence, Eso };

struct FragmentReport {
    SentenceKind kind = SentenceKind::Dependence;

    // Dependence-logic measurements.
    int forall_count = 0; ///< occurrences of the universal quantifier
    bool single_quantification = false;
    int max_dep_width = 0; ///< 0 when there are no dependence atoms

    // ESO measurements.
    int max_arity = 0;
    bool skolem_normal_form = false;
    int universal_count = 0;
    bool star_shape = false;
    bool exists_star_shape = false;

    /// Memberships at the minimal parameters, e.g. "D(2-forall)".
    std::vector<std::string> memberships;

    bool in_d_forall(int k) const { return kind == SentenceKind::Dependence && single_quantification && forall_count <= k; }
    bool in_d_dep(int k) const { return kind == SentenceKind::Dependence && max_dep_width <= k + 1; }
    bool in_eso_k_ary(int k) const { return kind == SentenceKind::Eso && max_arity <= k; }
    bool in_eso_k_ary_m_forall(int k, int m) const { return in_eso_m_forall(m) && max_arity <= k; }
    bool in_eso_m_forall(int m) const { return kind == SentenceKind::Eso && skolem_normal_form && universal_count <= m; }
    bool in_eso1_k_ary(int k) const { return in_eso_k_ary(k) && star_shape; }
    bool in_eso1_m_forall(int m) const { return in_eso_m_forall(m) && star_shape; }
    bool in_eso1_m_forall_exists(int m) const {
        return kind == SentenceKind::Eso && star_shape && exists_star_shape && universal_count <= m;
    }
};

inline std::string fragment_name(const std::string& logic, const std::string& params) { return logic + "(" + params + ")"; }

inline FragmentReport classify_d(const DFormula& f) {
    if (!is_sentence(f)) throw PreconditionError("classify_d needs a sentence");
    FragmentReport r;
    r.kind = SentenceKind::Dependence;
    r.forall_count = forall_count(f);
    r.single_quantification = single_quantification(f);
    r.max_dep_width = max_dependence_width(f);
    if (r.single_quantification) r.memberships.push_back(fragment_name("D", std::to_string(r.forall_count) + "-forall"));
    r.memberships.push_back(fragment_name("D", std::to_string(std::max(r.max_dep_width - 1, 0)) + "-dep"));
    return r;
}

inline FragmentReport classify_eso(const EsoSentence& e) {
    FragmentReport r;
    r.kind = SentenceKind::Eso;
    for (const auto& fq : e.functions) r.max_arity = std::max(r.max_arity, fq.arity);
    r.skolem_normal_form = e.is_skolem_normal_form();
    r.universal_count = e.universal_count();
    r.star_shape = has_star_shape(e);
    // The first-order part is a prefix over a quantifier-free matrix by construction.
    r.exists_star_shape = is_quantifier_free(e.matrix);
    r.forall_count = r.universal_count;
    auto a = std::to_string(r.max_arity);
    auto u = std::to_string(r.universal_count);
    r.memberships.push_back(fragment_name("ESO_f", a + "-ary"));
    if (r.skolem_normal_form) {
        r.memberships.push_back(fragment_name("ESO_f", a + "-ary," + u + "-forall"));
        r.memberships.push_back(fragment_name("ESO_f", u + "-forall"));
    }
    if (r.star_shape) {
        r.memberships.push_back(fragment_name("ESO_f^1", a + "-ary"));
        if (r.skolem_normal_form) r.memberships.push_back(fragment_name("ESO_f^1", u + "-forall"));
        if (r.exists_star_shape) r.memberships.push_back(fragment_name("ESO_f^1", u + "-forall,exists*"));
    }
    return r;
}

struct ComplexityBound {
    bool first_order = false;
    int exponent = 0; ///< k in NTIME_RAM(n^k); 0 when first_order
    std::string bound;
    std::string derivation;
};

/// Tightest upper bound the inclusion chain gives for the measured sentence.
inline ComplexityBound complexity_bound(const FragmentReport& r) {
    ComplexityBound b;
    auto ntime = [](int k) { return "NTIME_RAM(n^" + std::to_string(k) + ")"; };
    if (r.kind == SentenceKind::Dependence) {
        if (r.forall_count == 0 || r.max_dep_width <= 1) {
            b.first_order = true;
            b.bound = "FO";
            b.derivation = r.forall_count == 0 ? "no universal quantifier: equivalent to a first-order sentence"
                                               : "dependence atoms of width at most 1: equivalent to a first-order sentence";
            return b;
        }
        // Translation keeps the universal count, so both routes end at the same exponent.
        b.exponent = r.forall_count;
        b.bound = "<= " + ntime(b.exponent);
        auto k = std::to_string(r.forall_count);
        auto dep = std::to_string(std::max(r.max_dep_width - 1, 0));
        if (r.single_quantification) {
            b.derivation = "D(" + k + "-forall) <= ESO_f^1(" + k + "-forall,exists*) <= ESO_f(" + k +
                           "-forall) = " + ntime(b.exponent);
        } else {
            b.derivation = "D(" + dep + "-dep) <= ESO_f(" + dep + "-ary); its Skolem normal form has " + k +
                           " universals, ESO_f(" + k + "-forall) = " + ntime(b.exponent);
        }
        return b;
    }
    b.exponent = std::max(r.universal_count, 1);
    b.bound = "<= " + ntime(b.exponent);
    b.derivation = (r.skolem_normal_form ? std::string("Skolem normal form with ")
                                         : std::string("Skolemizing the existentials keeps ")) +
                   std::to_string(r.universal_count) + " universals, ESO_f(" + std::to_string(b.exponent) +
                   "-forall) = " + ntime(b.exponent);
    return b;
}

} // namespace deplog
