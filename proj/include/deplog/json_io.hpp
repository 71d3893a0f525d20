#pragma once

// JSON encodings of signatures, structures, teams and reports.
//
//   signature: {"relations": {"R": 2}, "functions": {"f": 1}, "constants": ["c"]}
//   structure: {"domain": 3, "relations": {"R": [[0,1]]}, "functions": {"f": [1,2,0]},
//               "constants": {"c": 0}}
//   team:      {"vars": ["x","y"], "rows": [[0,0],[0,1]]}

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "deplog/error.hpp"
#include "deplog/fragments.hpp"
#include "deplog/structures.hpp"
#include "deplog/syntax.hpp"

namespace deplog {

using Json = nlohmann::ordered_json;

inline Json to_json(const Signature& sig) {
    Json j;
    j["relations"] = Json::object();
    for (const auto& [name, arity] : sig.relations) j["relations"][name] = arity;
    j["functions"] = Json::object();
    for (const auto& [name, arity] : sig.functions) j["functions"][name] = arity;
    j["constants"] = Json::array();
    for (const auto& c : sig.constants) j["constants"].push_back(c);
    return j;
}

inline Signature signature_from_json(const Json& j) {
    try {
        Signature sig;
        if (j.contains("relations"))
            for (const auto& [name, arity] : j.at("relations").items()) sig.relations[name] = arity.get<int>();
        if (j.contains("functions"))
            for (const auto& [name, arity] : j.at("functions").items()) sig.functions[name] = arity.get<int>();
        if (j.contains("constants"))
            for (const auto& c : j.at("constants")) sig.constants.insert(c.get<std::string>());
        validate(sig);
        return sig;
    } catch (const Json::exception& e) {
        throw PreconditionError(std::string("malformed signature JSON: ") + e.what());
    }
}

inline Json to_json(const Structure& m) {
    Json j;
    j["domain"] = m.domain;
    j["relations"] = Json::object();
    for (const auto& [name, r] : m.relations) {
        Json tuples = Json::array();
        for (const auto& t : m.tuples(name)) tuples.push_back(t);
        j["relations"][name] = tuples;
    }
    j["functions"] = Json::object();
    for (const auto& [name, f] : m.functions) j["functions"][name] = f.values;
    j["constants"] = Json::object();
    for (const auto& [name, c] : m.constants) j["constants"][name] = c;
    return j;
}

/// Reads a structure. Arities come from `hint` when it declares the symbol,
/// otherwise from the tuples and table sizes themselves.
inline Structure structure_from_json(const Json& j, const Signature* hint = nullptr) {
    try {
        Structure m(j.at("domain").get<int>());
        if (j.contains("relations")) {
            for (const auto& [name, tuples] : j.at("relations").items()) {
                std::set<Tuple> set;
                for (const auto& t : tuples) set.insert(t.get<Tuple>());
                int arity = -1;
                if (hint && hint->relations.count(name)) arity = hint->relations.at(name);
                else if (!set.empty()) arity = static_cast<int>(set.begin()->size());
                if (arity < 1) throw PreconditionError("cannot determine the arity of relation '" + name + "'");
                m.set_relation(name, arity, set);
            }
        }
        if (j.contains("functions")) {
            for (const auto& [name, table] : j.at("functions").items()) {
                auto values = table.get<std::vector<Element>>();
                int arity = -1;
                if (hint && hint->functions.count(name)) {
                    arity = hint->functions.at(name);
                } else if (m.domain > 1) {
                    // Every arity has a table of size 1 on a one-element domain.
                    for (int a = 0; table_size(a, m.domain) <= values.size(); ++a) {
                        if (table_size(a, m.domain) == values.size()) arity = a;
                    }
                }
                if (arity < 0) throw PreconditionError("cannot determine the arity of function '" + name + "'");
                m.set_function(name, arity, std::move(values));
            }
        }
        if (j.contains("constants"))
            for (const auto& [name, value] : j.at("constants").items()) m.set_constant(name, value.get<Element>());
        return m;
    } catch (const Json::exception& e) {
        throw PreconditionError(std::string("malformed structure JSON: ") + e.what());
    }
}

inline Json to_json(const Team& x) {
    Json j;
    j["vars"] = x.vars();
    j["rows"] = Json::array();
    for (const auto& r : x.rows()) j["rows"].push_back(r);
    return j;
}

inline Team team_from_json(const Json& j) {
    try {
        return Team(j.at("vars").get<std::vector<std::string>>(), j.at("rows").get<std::vector<Tuple>>());
    } catch (const Json::exception& e) {
        throw PreconditionError(std::string("malformed team JSON: ") + e.what());
    }
}

inline Json to_json(const FragmentReport& r) {
    Json j;
    auto bound = complexity_bound(r);
    if (r.kind == SentenceKind::Dependence) {
        j["kind"] = "dependence";
        j["forall_count"] = r.forall_count;
        j["single_quantification"] = r.single_quantification;
        j["max_dep_width"] = r.max_dep_width;
    } else {
        j["kind"] = "eso";
        j["forall_count"] = r.universal_count;
        j["max_dep_width"] = 0;
        j["max_arity"] = r.max_arity;
        j["skolem_normal_form"] = r.skolem_normal_form;
        j["universal_count"] = r.universal_count;
        j["star_shape"] = r.star_shape;
        j["exists_star_shape"] = r.exists_star_shape;
    }
    j["memberships"] = r.memberships;
    j["upper_bound"] = bound.first_order ? "FO" : "NTIME_RAM(n^" + std::to_string(bound.exponent) + ")";
    j["derivation"] = bound.derivation;
    return j;
}

} // namespace deplog
