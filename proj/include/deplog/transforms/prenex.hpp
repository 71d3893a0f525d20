#pragma once

#include <string>
#include <utility>

#include "deplog/syntax.hpp"

namespace deplog {

namespace detail {

inline std::pair<Prefix, DFormula> pull_quantifiers(const DFormula& f) {
    if (f.is_quantifier()) {
        auto [prefix, matrix] = pull_quantifiers(f.body());
        prefix.insert(prefix.begin(), PrefixEntry{quantifier_of(f), f.symbol});
        return {std::move(prefix), std::move(matrix)};
    }
    if (f.is_connective()) {
        auto [left_prefix, left] = pull_quantifiers(f.lhs());
        auto [right_prefix, right] = pull_quantifiers(f.rhs());
        left_prefix.insert(left_prefix.end(), right_prefix.begin(), right_prefix.end());
        DFormula matrix = f.kind == FormulaKind::And ? conj(std::move(left), std::move(right))
                                                     : disj(std::move(left), std::move(right));
        return {std::move(left_prefix), std::move(matrix)};
    }
    return {{}, f};
}

} // namespace detail

/// Prenex normal form. Quantifiers are pulled out leftmost-outermost in
/// source order; connectives and atoms keep their relative order.
///
/// Requires single quantification: with every variable bound once, a
/// quantified variable is never free in the sibling operand it is pulled
/// past, which is the side condition of every pull rule.
inline DFormula to_prenex(const DFormula& f) {
    if (!single_quantification(f))
        throw PreconditionError("to_prenex requires every variable to be quantified once; rename bound variables first");
    auto [prefix, matrix] = detail::pull_quantifiers(f);
    return with_prefix(prefix, std::move(matrix));
}

inline bool is_prenex(const DFormula& f) { return is_quantifier_free(split_prefix(f).second); }

} // namespace deplog
