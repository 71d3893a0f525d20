#pragma once

// Team semantics by exhaustive search.
//
// The reference configuration follows the satisfaction clauses literally:
// disjunctions try every split of the team, existentials try every
// extension function F : X -> A. The default configuration adds three
// verdict-preserving shortcuts, each of which is cross-checked against the
// reference configuration in the test suite:
//   * dependence-free subformulas are evaluated row by row (flatness);
//   * a disjunction with a dependence-free side only tries the split that
//     gives that side every row it accepts (downward closure);
//   * an existential whose scope conjoins a dependence atom =(w..., v) only
//     tries extension functions that factor through the values of w.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "deplog/error.hpp"
#include "deplog/structures.hpp"
#include "deplog/syntax.hpp"

namespace deplog {


enum class DisjunctionSearch {
    DisjointSplit, ///< X = Y ∪ Z with Y ∩ Z = ∅: 2^|X| candidates.
    FullCover,     ///< every covering pair, overlap allowed: 3^|X| candidates.
};

struct EvalOptions {
    std::uint64_t budget = default_check_budget;
    DisjunctionSearch disjunction = DisjunctionSearch::DisjointSplit;
    bool flat_shortcut = true;
    bool dependence_pruning = true;

    /// Literal reading of the satisfaction clauses, no shortcuts.
    static EvalOptions reference() {
        EvalOptions o;
        o.flat_shortcut = false;
        o.dependence_pruning = false;
        return o;
    }
};

class TeamEvaluator {
  public:
    TeamEvaluator(const Structure& m, EvalOptions options = {}) : m_(m), options_(options) {}

    bool satisfies(const Team& x, const DFormula& f) {
        for (const auto& v : free_vars(f)) {
            if (x.column(v) < 0) throw PreconditionError("free variable '" + v + "' is not in the team domain");
        }
        return sat(x, f);
    }

    /// Candidate checks spent so far (splits, extension functions).
    std::uint64_t checks() const { return checks_; }

  private:
    void charge(const char* clause, std::size_t team_size) {
        if (++checks_ > options_.budget)
            throw BudgetExceeded(std::string("team search budget exceeded in ") + clause + " clause on a team of size " +
                                     std::to_string(team_size),
                                 checks_, options_.budget);
    }

    template <class F>
    auto with_row(const Team& x, std::size_t row, F&& f) const {
        const auto& vars = x.vars();
        const auto& r = x.rows()[row];
        auto lookup = [&](const std::string& name) -> Element {
            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (vars[i] == name) return r[i];
            }
            throw PreconditionError("unbound variable '" + name + "'");
        };
        return f(lookup);
    }

    bool literal_holds(const Team& x, std::size_t row, const DFormula& f) const {
        return with_row(x, row, [&](auto& lookup) {
            switch (f.kind) {
            case FormulaKind::Relation:
            case FormulaKind::NegRelation: {
                auto it = m_.relations.find(f.symbol);
                if (it == m_.relations.end()) throw PreconditionError("uninterpreted relation '" + f.symbol + "'");
                if (it->second.arity != static_cast<int>(f.terms.size()))
                    throw PreconditionError("arity mismatch for relation '" + f.symbol + "'");
                Tuple t;
                t.reserve(f.terms.size());
                for (const auto& term : f.terms) t.push_back(eval_term_with(m_, term, lookup));
                bool in = it->second.contains(t, m_.domain);
                return f.kind == FormulaKind::Relation ? in : !in;
            }
            case FormulaKind::Equality:
            case FormulaKind::NegEquality: {
                bool same = eval_term_with(m_, f.terms[0], lookup) == eval_term_with(m_, f.terms[1], lookup);
                return f.kind == FormulaKind::Equality ? same : !same;
            }
            case FormulaKind::Verum: return true;
            case FormulaKind::Falsum: return false;
            default: return false;
            }
        });
    }

    bool dependence_holds(const Team& x, const DFormula& f) const {
        if (f.terms.empty()) return true;
        std::map<Tuple, Element> seen;
        for (std::size_t i = 0; i < x.size(); ++i) {
            auto [key, value] = with_row(x, i, [&](auto& lookup) {
                Tuple k;
                for (std::size_t j = 0; j + 1 < f.terms.size(); ++j) k.push_back(eval_term_with(m_, f.terms[j], lookup));
                return std::pair<Tuple, Element>(std::move(k), eval_term_with(m_, f.terms.back(), lookup));
            });
            auto [it, fresh] = seen.emplace(std::move(key), value);
            if (!fresh && it->second != value) return false;
        }
        return true;
    }

    bool is_flat(const DFormula& f) {
        auto it = flat_.find(&f);
        if (it != flat_.end()) return it->second;
        bool flat = !contains_dependence_atoms(f);
        flat_.emplace(&f, flat);
        return flat;
    }

    bool sat(const Team& x, const DFormula& f) {
        switch (f.kind) {
        case FormulaKind::Relation:
        case FormulaKind::NegRelation:
        case FormulaKind::Equality:
        case FormulaKind::NegEquality:
        case FormulaKind::Falsum:
        case FormulaKind::Verum:
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (!literal_holds(x, i, f)) return false;
            }
            return true;
        case FormulaKind::Dependence: return dependence_holds(x, f);
        case FormulaKind::NegDependence: return x.empty();
        default: break;
        }
        if (options_.flat_shortcut && x.size() > 1 && is_flat(f)) {
            std::vector<bool> keep(x.size(), false);
            for (std::size_t i = 0; i < x.size(); ++i) {
                keep[i] = true;
                bool ok = sat(x.select(keep), f);
                keep[i] = false;
                if (!ok) return false;
            }
            return true;
        }
        switch (f.kind) {
        case FormulaKind::And: return sat(x, f.lhs()) && sat(x, f.rhs());
        case FormulaKind::Or: return disjunction(x, f);
        case FormulaKind::Exists: return existential(x, f);
        case FormulaKind::Forall: return sat(x.assign_all(f.symbol, m_.domain), f.body());
        default: return false;
        }
    }

    bool disjunction(const Team& x, const DFormula& f) {
        const std::size_t n = x.size();
        if (options_.flat_shortcut && (is_flat(f.lhs()) || is_flat(f.rhs()))) {
            // Give the flat side every row it accepts; the other side gets the
            // smallest team any valid split could leave it.
            bool left_flat = is_flat(f.lhs());
            const DFormula& flat_side = left_flat ? f.lhs() : f.rhs();
            const DFormula& other = left_flat ? f.rhs() : f.lhs();
            std::vector<bool> rest(n, false);
            std::vector<bool> single(n, false);
            for (std::size_t i = 0; i < n; ++i) {
                single[i] = true;
                rest[i] = !sat(x.select(single), flat_side);
                single[i] = false;
            }
            charge("disjunction", n);
            return sat(x.select(rest), other);
        }
        if (n >= 40) throw BudgetExceeded("disjunction split search on a team of size " + std::to_string(n), saturated, options_.budget);
        if (options_.disjunction == DisjunctionSearch::DisjointSplit) {
            std::vector<bool> left(n), right(n);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                charge("disjunction", n);
                for (std::size_t i = 0; i < n; ++i) {
                    left[i] = (mask >> i) & 1U;
                    right[i] = !left[i];
                }
                if (sat(x.select(left), f.lhs()) && sat(x.select(right), f.rhs())) return true;
            }
            return false;
        }
        // Full cover: each row goes left, right, or both.
        std::vector<int> code(n, 0);
        std::vector<bool> left(n), right(n);
        while (true) {
            charge("disjunction", n);
            for (std::size_t i = 0; i < n; ++i) {
                left[i] = code[i] != 1;
                right[i] = code[i] != 0;
            }
            if (sat(x.select(left), f.lhs()) && sat(x.select(right), f.rhs())) return true;
            std::size_t i = 0;
            while (i < n && ++code[i] == 3) code[i++] = 0;
            if (i == n) return false;
        }
    }

    // Dependence atoms =(w..., v) conjoined with the scope of `exists v`,
    // reachable through conjunctions and quantifiers that bind neither v nor w.
    const std::vector<std::vector<std::string>>& guards(const DFormula& f) {
        auto it = guards_.find(&f);
        if (it != guards_.end()) return it->second;
        std::vector<std::vector<std::string>> found;
        const std::string& v = f.symbol;
        std::vector<std::string> rebound;
        std::function<void(const DFormula&)> walk = [&](const DFormula& g) {
            if (g.kind == FormulaKind::And) {
                walk(g.lhs());
                walk(g.rhs());
            } else if (g.is_quantifier()) {
                rebound.push_back(g.symbol);
                walk(g.body());
                rebound.pop_back();
            } else if (g.kind == FormulaKind::Dependence && !g.terms.empty()) {
                const auto& last = g.terms.back();
                if (!last.is_variable() || last.name != v) return;
                auto bound_here = [&](const std::string& name) {
                    return std::find(rebound.begin(), rebound.end(), name) != rebound.end();
                };
                if (bound_here(v)) return;
                std::vector<std::string> w;
                for (std::size_t i = 0; i + 1 < g.terms.size(); ++i) {
                    const auto& t = g.terms[i];
                    if (!t.is_variable() || t.name == v || bound_here(t.name)) return;
                    w.push_back(t.name);
                }
                found.push_back(std::move(w));
            }
        };
        walk(f.body());
        return guards_.emplace(&f, std::move(found)).first->second;
    }

    bool existential(const Team& x, const DFormula& f) {
        const std::size_t rows = x.size();
        // class_of[i]: which block of the candidate partition row i is in.
        std::vector<std::size_t> class_of(rows);
        std::size_t classes = rows;
        for (std::size_t i = 0; i < rows; ++i) class_of[i] = i;
        if (options_.dependence_pruning) {
            for (const auto& w : guards(f)) {
                std::vector<int> cols;
                bool usable = true;
                for (const auto& name : w) {
                    int c = x.column(name);
                    if (c < 0) usable = false;
                    cols.push_back(c);
                }
                if (!usable) continue;
                std::map<Tuple, std::size_t> blocks;
                std::vector<std::size_t> cls(rows);
                for (std::size_t i = 0; i < rows; ++i) {
                    Tuple key;
                    for (int c : cols) key.push_back(x.rows()[i][static_cast<std::size_t>(c)]);
                    cls[i] = blocks.emplace(std::move(key), blocks.size()).first->second;
                }
                if (blocks.size() < classes) {
                    classes = blocks.size();
                    class_of = std::move(cls);
                }
            }
        }
        const auto n = static_cast<Element>(m_.domain);
        std::vector<Element> choice(classes, 0);
        std::vector<Element> values(rows);
        while (true) {
            charge("existential", rows);
            for (std::size_t i = 0; i < rows; ++i) values[i] = choice[class_of[i]];
            if (sat(x.assign(f.symbol, values), f.body())) return true;
            std::size_t i = classes;
            while (i > 0 && ++choice[i - 1] == n) choice[--i] = 0;
            if (i == 0) return false;
        }
    }

    const Structure& m_;
    EvalOptions options_;
    std::uint64_t checks_ = 0;
    std::unordered_map<const DFormula*, bool> flat_;
    std::unordered_map<const DFormula*, std::vector<std::vector<std::string>>> guards_;
};

/// Does team `x` satisfy `f` in `m`?
inline bool team_satisfies(const Structure& m, const Team& x, const DFormula& f, const EvalOptions& options = {}) {
    return TeamEvaluator(m, options).satisfies(x, f);
}

/// Truth of a sentence: satisfaction by the team holding only the empty assignment.
inline bool sentence_truth(const Structure& m, const DFormula& f, const EvalOptions& options = {}) {
    if (!is_sentence(f)) throw PreconditionError("sentence_truth needs a sentence; free: " + *free_vars(f).begin());
    return team_satisfies(m, Team::unit(), f, options);
}

} // namespace deplog
