#pragma once

// Finite structures over the domain {0, ..., n-1}, assignments, teams and
// the team-building operations, plus exhaustive structure enumeration.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "deplog/error.hpp"
#include "deplog/syntax.hpp"

namespace deplog {

using Element = int;
using Tuple = std::vector<Element>;
using Assignment = std::map<std::string, Element>;

/// Index of a tuple in the lexicographic order of {0..n-1}^k.
inline std::size_t tuple_index(std::span<const Element> tuple, int n) {
    std::size_t idx = 0;
    for (Element e : tuple) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(e);
    return idx;
}

/// Inverse of tuple_index.
inline Tuple tuple_at(std::size_t index, int arity, int n) {
    Tuple t(static_cast<std::size_t>(arity));
    for (int i = arity - 1; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = static_cast<Element>(index % static_cast<std::size_t>(n));
        index /= static_cast<std::size_t>(n);
    }
    return t;
}

inline std::size_t table_size(int arity, int n) {
    std::size_t size = 1;
    for (int i = 0; i < arity; ++i) size *= static_cast<std::size_t>(n);
    return size;
}

/// Characteristic vector of a relation, indexed by tuple_index.
struct Relation {
    int arity = 1;
    std::vector<std::uint8_t> bits;

    bool contains(std::span<const Element> t, int n) const { return bits[tuple_index(t, n)] != 0; }
    bool operator==(const Relation&) const = default;
};

/// Total function table, values listed in lexicographic argument order.
struct FunctionTable {
    int arity = 0;
    std::vector<Element> values;

    Element at(std::span<const Element> args, int n) const { return values[tuple_index(args, n)]; }
    bool operator==(const FunctionTable&) const = default;
};

struct Structure {
    int domain = 1;
    std::map<std::string, Relation> relations;
    std::map<std::string, FunctionTable> functions;
    std::map<std::string, Element> constants;

    Structure() = default;
    explicit Structure(int n) : domain(n) {
        if (n < 1) throw PreconditionError("structures need a nonempty domain");
    }

    Structure& set_relation(const std::string& name, int arity, const std::set<Tuple>& tuples) {
        Relation r{arity, std::vector<std::uint8_t>(table_size(arity, domain), 0)};
        for (const auto& t : tuples) {
            check_tuple(t, arity);
            r.bits[tuple_index(t, domain)] = 1;
        }
        relations[name] = std::move(r);
        return *this;
    }

    Structure& set_function(const std::string& name, int arity, std::vector<Element> values) {
        if (values.size() != table_size(arity, domain))
            throw PreconditionError("function table for '" + name + "' is not total");
        for (Element v : values) check_element(v);
        functions[name] = FunctionTable{arity, std::move(values)};
        return *this;
    }

    Structure& set_constant(const std::string& name, Element value) {
        check_element(value);
        constants[name] = value;
        return *this;
    }

    std::set<Tuple> tuples(const std::string& relation) const {
        const auto& r = relations.at(relation);
        std::set<Tuple> out;
        for (std::size_t i = 0; i < r.bits.size(); ++i) {
            if (r.bits[i]) out.insert(tuple_at(i, r.arity, domain));
        }
        return out;
    }

    bool operator==(const Structure&) const = default;

  private:
    void check_element(Element e) const {
        if (e < 0 || e >= domain) throw PreconditionError("element " + std::to_string(e) + " outside the domain");
    }
    void check_tuple(const Tuple& t, int arity) const {
        if (static_cast<int>(t.size()) != arity) throw PreconditionError("tuple has the wrong arity");
        for (Element e : t) check_element(e);
    }
};

inline Signature signature_of(const Structure& m) {
    Signature sig;
    for (const auto& [name, r] : m.relations) sig.relations[name] = r.arity;
    for (const auto& [name, f] : m.functions) sig.functions[name] = f.arity;
    for (const auto& [name, c] : m.constants) sig.constants.insert(name);
    return sig;
}

/// True iff every symbol of `sig` is interpreted with the right arity.
inline bool interprets(const Structure& m, const Signature& sig) {
    for (const auto& [name, arity] : sig.relations) {
        auto it = m.relations.find(name);
        if (it == m.relations.end() || it->second.arity != arity) return false;
    }
    for (const auto& [name, arity] : sig.functions) {
        auto it = m.functions.find(name);
        if (it == m.functions.end() || it->second.arity != arity) return false;
    }
    for (const auto& c : sig.constants) {
        if (!m.constants.count(c)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Term evaluation

/// Value of `t` where variables are resolved by `lookup(name) -> Element`.
template <class Lookup>
Element eval_term_with(const Structure& m, const Term& t, Lookup&& lookup) {
    switch (t.kind) {
    case TermKind::Variable: return lookup(t.name);
    case TermKind::Constant: {
        auto it = m.constants.find(t.name);
        if (it == m.constants.end()) throw PreconditionError("uninterpreted constant '" + t.name + "'");
        return it->second;
    }
    case TermKind::Application: break;
    }
    auto it = m.functions.find(t.name);
    if (it == m.functions.end()) throw PreconditionError("uninterpreted function '" + t.name + "'");
    if (it->second.arity != static_cast<int>(t.args.size()))
        throw PreconditionError("arity mismatch for function '" + t.name + "'");
    Element buf[8];
    std::vector<Element> heap;
    Element* args = buf;
    if (t.args.size() > 8) {
        heap.resize(t.args.size());
        args = heap.data();
    }
    for (std::size_t i = 0; i < t.args.size(); ++i) args[i] = eval_term_with(m, t.args[i], lookup);
    return it->second.at(std::span<const Element>(args, t.args.size()), m.domain);
}

inline Element eval_term(const Structure& m, const Assignment& s, const Term& t) {
    return eval_term_with(m, t, [&](const std::string& v) {
        auto it = s.find(v);
        if (it == s.end()) throw PreconditionError("unbound variable '" + v + "'");
        return it->second;
    });
}

// ---------------------------------------------------------------------------
// Teams

/// A set of assignments over a fixed, ordered variable domain. Rows are kept
/// sorted and duplicate-free, so equal teams compare equal.
class Team {
  public:
    Team() = default;

    Team(std::vector<std::string> vars, std::vector<Tuple> rows) : vars_(std::move(vars)), rows_(std::move(rows)) {
        std::set<std::string> seen(vars_.begin(), vars_.end());
        if (seen.size() != vars_.size()) throw PreconditionError("team variables must be distinct");
        for (const auto& r : rows_) {
            if (r.size() != vars_.size()) throw PreconditionError("team row does not bind exactly the team variables");
        }
        canonicalize();
    }

    /// The team {∅}: one empty assignment, empty variable domain.
    static Team unit() { return Team({}, {Tuple{}}); }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Tuple>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    /// Column of `var`, or -1.
    int column(const std::string& var) const {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == var) return static_cast<int>(i);
        }
        return -1;
    }

    Assignment assignment(std::size_t row) const {
        Assignment s;
        for (std::size_t i = 0; i < vars_.size(); ++i) s[vars_[i]] = rows_[row][i];
        return s;
    }

    /// Sub-team made of the rows selected by `keep`.
    Team select(const std::vector<bool>& keep) const {
        Team out;
        out.vars_ = vars_;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (keep[i]) out.rows_.push_back(rows_[i]);
        }
        return out;
    }

    /// s(values[i]/var) for each row i; overwrites `var` when already present.
    Team assign(const std::string& var, const std::vector<Element>& values) const {
        Team out;
        out.vars_ = vars_;
        int col = column(var);
        if (col < 0) {
            out.vars_.push_back(var);
            out.rows_.reserve(rows_.size());
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                Tuple r = rows_[i];
                r.push_back(values[i]);
                out.rows_.push_back(std::move(r));
            }
            // Appending a column keeps rows sorted and distinct.
            return out;
        }
        out.rows_ = rows_;
        for (std::size_t i = 0; i < rows_.size(); ++i) out.rows_[i][static_cast<std::size_t>(col)] = values[i];
        out.canonicalize();
        return out;
    }

    /// {s(a/var) : s in X, a in A}; overwrites `var` when already present.
    Team assign_all(const std::string& var, int domain) const {
        Team out;
        out.vars_ = vars_;
        int col = column(var);
        if (col < 0) out.vars_.push_back(var);
        out.rows_.reserve(rows_.size() * static_cast<std::size_t>(domain));
        for (const auto& r : rows_) {
            for (Element a = 0; a < domain; ++a) {
                Tuple t = r;
                if (col < 0) {
                    t.push_back(a);
                } else {
                    t[static_cast<std::size_t>(col)] = a;
                }
                out.rows_.push_back(std::move(t));
            }
        }
        if (col >= 0) out.canonicalize();
        return out;
    }

    bool operator==(const Team&) const = default;

  private:
    void canonicalize() {
        std::sort(rows_.begin(), rows_.end());
        rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
    }

    std::vector<std::string> vars_;
    std::vector<Tuple> rows_;
};

/// rel(X): the tuples of the team's rows, in its variable order.
inline std::set<Tuple> rel_of_team(const Team& x) { return {x.rows().begin(), x.rows().end()}; }

/// X restricted to the variables in `v`, keeping the team's column order.
inline Team restrict_team(const Team& x, const std::set<std::string>& v) {
    std::vector<std::size_t> cols;
    std::vector<std::string> vars;
    for (const auto& name : v) {
        if (x.column(name) < 0) throw PreconditionError("restriction variable '" + name + "' not in the team domain");
    }
    for (std::size_t i = 0; i < x.vars().size(); ++i) {
        if (v.count(x.vars()[i])) {
            cols.push_back(i);
            vars.push_back(x.vars()[i]);
        }
    }
    std::vector<Tuple> rows;
    rows.reserve(x.size());
    for (const auto& r : x.rows()) {
        Tuple t;
        t.reserve(cols.size());
        for (auto c : cols) t.push_back(r[c]);
        rows.push_back(std::move(t));
    }
    return Team(std::move(vars), std::move(rows));
}

/// X(A/var) for a variable not yet in the team.
inline Team extend_universal(const Team& x, const std::string& var, const Structure& m) {
    if (x.column(var) >= 0) throw PreconditionError("variable '" + var + "' already in the team domain");
    return x.assign_all(var, m.domain);
}

/// X(F/var) for a variable not yet in the team; `f` must be defined on every row.
inline Team extend_function(const Team& x, const std::string& var, const std::map<Assignment, Element>& f) {
    if (x.column(var) >= 0) throw PreconditionError("variable '" + var + "' already in the team domain");
    std::vector<Element> values;
    values.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto it = f.find(x.assignment(i));
        if (it == f.end()) throw PreconditionError("extension function is not total on the team");
        values.push_back(it->second);
    }
    return x.assign(var, values);
}

// ---------------------------------------------------------------------------
// Enumeration

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > saturated / b) return saturated;
    return a * b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        out = saturating_mul(out, base);
        if (out == saturated) break;
    }
    return out;
}

/// Number of structures of `sig` over a domain of size n (saturating).
inline std::uint64_t structure_count(const Signature& sig, int n) {
    std::uint64_t count = 1;
    auto un = static_cast<std::uint64_t>(n);
    for (const auto& [name, arity] : sig.relations)
        count = saturating_mul(count, saturating_pow(2, saturating_pow(un, static_cast<std::uint64_t>(arity))));
    for (const auto& [name, arity] : sig.functions)
        count = saturating_mul(count, saturating_pow(un, saturating_pow(un, static_cast<std::uint64_t>(arity))));
    for (std::size_t i = 0; i < sig.constants.size(); ++i) count = saturating_mul(count, un);
    return count;
}

constexpr std::uint64_t default_structure_budget = 1'000'000;
constexpr std::uint64_t default_check_budget = 10'000'000;

/// Restartable stream of every structure of a signature over {0..n-1}, in
/// lexicographic order of (relation characteristic vectors, function tables,
/// constant values), symbols in name order, last position varying fastest.
class StructureEnumerator {
  public:
    StructureEnumerator(Signature sig, int n, std::uint64_t cap = default_structure_budget)
        : sig_(std::move(sig)), n_(n) {
        if (n < 1) throw PreconditionError("structures need a nonempty domain");
        validate(sig_);
        count_ = structure_count(sig_, n);
        if (count_ > cap)
            throw BudgetExceeded("structure enumeration for domain size " + std::to_string(n), count_, cap);
        for (const auto& [name, arity] : sig_.relations) {
            slots_.push_back({Slot::Relation, name, arity, digits_, table_size(arity, n)});
            digits_ += table_size(arity, n);
            radix_.resize(digits_, 2);
        }
        for (const auto& [name, arity] : sig_.functions) {
            slots_.push_back({Slot::Function, name, arity, digits_, table_size(arity, n)});
            digits_ += table_size(arity, n);
            radix_.resize(digits_, n);
        }
        for (const auto& name : sig_.constants) {
            slots_.push_back({Slot::Constant, name, 0, digits_, 1});
            digits_ += 1;
            radix_.resize(digits_, n);
        }
        reset();
    }

    std::uint64_t count() const { return count_; }
    int domain_size() const { return n_; }
    const Signature& signature() const { return sig_; }

    void reset() {
        state_.assign(digits_, 0);
        done_ = false;
    }

    std::optional<Structure> next() {
        if (done_) return std::nullopt;
        Structure m = build();
        advance();
        return m;
    }

  private:
    struct Slot {
        enum Kind { Relation, Function, Constant } kind;
        std::string name;
        int arity;
        std::size_t offset;
        std::size_t width;
    };

    Structure build() const {
        Structure m(n_);
        for (const auto& s : slots_) {
            auto first = state_.begin() + static_cast<std::ptrdiff_t>(s.offset);
            auto last = first + static_cast<std::ptrdiff_t>(s.width);
            switch (s.kind) {
            case Slot::Relation: {
                deplog::Relation r{s.arity, {}};
                r.bits.assign(first, last);
                m.relations.emplace(s.name, std::move(r));
                break;
            }
            case Slot::Function: m.functions.emplace(s.name, FunctionTable{s.arity, std::vector<Element>(first, last)}); break;
            case Slot::Constant: m.constants.emplace(s.name, *first); break;
            }
        }
        return m;
    }

    void advance() {
        for (std::size_t i = digits_; i-- > 0;) {
            if (++state_[i] < radix_[i]) return;
            state_[i] = 0;
        }
        done_ = true;
    }

    Signature sig_;
    int n_;
    std::uint64_t count_ = 0;
    std::vector<Slot> slots_;
    std::size_t digits_ = 0;
    std::vector<int> radix_;
    std::vector<int> state_;
    bool done_ = false;
};

inline StructureEnumerator enumerate_structures(const Signature& sig, int n,
                                                std::uint64_t cap = default_structure_budget) {
    return StructureEnumerator(sig, n, cap);
}

} // namespace deplog
