// Command-line front end. Exit codes: 0 success (true, equivalent),
// 1 false, 2 error, 3 counterexample, 4 budget exceeded.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "deplog/deplog.hpp"

namespace {

using namespace deplog;

constexpr int exit_false = 1;
constexpr int exit_error = 2;
constexpr int exit_counterexample = 3;
constexpr int exit_budget = 4;

std::string read_file(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw PreconditionError("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::optional<Signature> read_signature(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return signature_from_json(read_json(path));
}

ParsedSentence read_sentence(const std::string& path, const std::optional<Signature>& sig,
                             const std::set<std::string>& free = {}) {
    return parse_any(read_file(path), sig ? &*sig : nullptr, free);
}

DFormula need_d(const Sentence& s, const std::string& pass) {
    if (!std::holds_alternative<DFormula>(s)) throw PreconditionError("pass '" + pass + "' needs a dependence-logic sentence");
    return std::get<DFormula>(s);
}

// A prenex first-order sentence parses as a dependence formula; it is also an
// ESO sentence with no quantified functions.
EsoSentence need_eso(const Sentence& s, const std::string& pass) {
    if (const auto* e = std::get_if<EsoSentence>(&s)) return *e;
    const auto& f = std::get<DFormula>(s);
    auto [prefix, matrix] = split_prefix(f);
    if (contains_dependence_atoms(f) || !is_quantifier_free(matrix))
        throw PreconditionError("pass '" + pass + "' needs an ESO sentence");
    return EsoSentence{{}, std::move(prefix), std::move(matrix)};
}

Sentence run_pass(const std::string& pass, const Sentence& in, std::optional<int> k, const std::string& reuse_var) {
    if (pass == "prenex") return to_prenex(need_d(in, pass));
    if (pass == "simplify-atoms") {
        DFormula f = need_d(in, pass);
        return simplify_atom_terms(is_prenex(f) ? f : to_prenex(f));
    }
    if (pass == "extract") return to_dformula(normal_form(need_d(in, pass)));
    if (pass == "skolemize") return skolemize_prop31(normal_form(need_d(in, pass)));
    if (pass == "d2eso") return d_to_eso(need_d(in, pass));
    if (pass == "star") return star_normalize(need_eso(in, pass));
    if (pass == "eso2d") return eso_to_d(need_eso(in, pass));
    if (pass == "snf") return skolemize_prefix_existentials(need_eso(in, pass));
    if (pass == "prop36") return prop36_normalize(need_eso(in, pass), k);
    if (pass == "fo-collapse") return collapse_existential_to_fo(need_d(in, pass));
    if (pass == "width1") return eliminate_width1(need_d(in, pass));
    if (pass == "single-forall") return single_forall_reuse(need_d(in, pass), reuse_var);
    throw PreconditionError("unknown pass '" + pass + "'");
}

FragmentReport classify(const Sentence& s) {
    if (const auto* f = std::get_if<DFormula>(&s)) return classify_d(*f);
    return classify_eso(std::get<EsoSentence>(s));
}

void print_error(const std::exception& e) { std::cerr << "deplog: " << e.what() << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dependence logic and ESO: parsing, team semantics, translations, equivalence checking"};
    app.require_subcommand(1);

    std::string file, sig_file, formula_file, structure_file, team_file, pass, left_file, right_file, name;
    std::string reuse_var = "x";
    int max_size = 1, size = 1, k = 0;
    std::uint64_t budget = 0;
    bool degrade = false, show_signature = false;

    auto* parse = app.add_subcommand("parse", "parse a sentence and print its canonical rendering");
    parse->add_option("file", file, "sentence file, - for standard input")->required();
    parse->add_option("--sig", sig_file, "signature JSON");

    auto* check = app.add_subcommand("check", "truth of a sentence in a structure (exit 0 true, 1 false)");
    check->add_option("--formula", formula_file)->required();
    check->add_option("--structure", structure_file)->required();
    check->add_option("--sig", sig_file);

    auto* eval = app.add_subcommand("eval", "team satisfaction of an open formula (exit 0 true, 1 false)");
    eval->add_option("--formula", formula_file)->required();
    eval->add_option("--structure", structure_file)->required();
    eval->add_option("--team", team_file)->required();
    eval->add_option("--sig", sig_file);

    auto* translate = app.add_subcommand("translate", "apply one rewrite and print the result");
    translate->add_option("--pass", pass)
        ->required()
        ->check(CLI::IsMember({"prenex", "simplify-atoms", "extract", "skolemize", "d2eso", "star", "eso2d", "snf",
                               "prop36", "fo-collapse", "width1", "single-forall"}));
    translate->add_option("--input", file)->required();
    translate->add_option("--sig", sig_file);
    auto* k_opt = translate->add_option("--k", k, "universal bound for prop36 (default: the input's count)");
    translate->add_option("--var", reuse_var, "the reused universal of single-forall");

    auto* classify_cmd = app.add_subcommand("classify", "fragment report as JSON");
    classify_cmd->add_option("--input", file)->required();
    classify_cmd->add_option("--sig", sig_file);

    auto* equiv = app.add_subcommand("equiv", "compare two sentences on all small structures (exit 0 equivalent, 3 not)");
    equiv->add_option("--left", left_file)->required();
    equiv->add_option("--right", right_file)->required();
    equiv->add_option("--sig", sig_file)->required();
    equiv->add_option("--max-size", max_size)->required()->check(CLI::PositiveNumber);
    equiv->add_option("--budget", budget, "cap on structures and on semantic checks");
    equiv->add_flag("--degrade", degrade, "on a budget overrun, report the sizes completed (still exit 4)");

    auto* corpus_cmd = app.add_subcommand("corpus", "list the corpus, or print one item");
    corpus_cmd->add_option("--name", name);
    corpus_cmd->add_flag("--signature", show_signature, "print the item's signature JSON instead of its text");

    auto* enum_cmd = app.add_subcommand("enum", "print every structure of a size as JSON lines");
    enum_cmd->add_option("--sig", sig_file)->required();
    enum_cmd->add_option("--size", size)->required()->check(CLI::PositiveNumber);
    enum_cmd->add_option("--budget", budget, "cap on the number of structures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_error;
    }

    Budgets budgets = budgets_from_env();
    if (budget > 0) budgets.structures = budgets.checks = budget;

    try {
        auto sig = read_signature(sig_file);
        if (parse->parsed()) {
            std::cout << render(read_sentence(file, sig).value) << "\n";
            return 0;
        }
        if (check->parsed()) {
            auto parsed = read_sentence(formula_file, sig);
            auto m = structure_from_json(read_json(structure_file), &parsed.signature);
            bool holds = sentence_holds(m, parsed.value, budgets.checks);
            std::cout << (holds ? "true" : "false") << "\n";
            return holds ? 0 : exit_false;
        }
        if (eval->parsed()) {
            Team x = team_from_json(read_json(team_file));
            std::set<std::string> free(x.vars().begin(), x.vars().end());
            auto parsed = read_sentence(formula_file, sig, free);
            auto m = structure_from_json(read_json(structure_file), &parsed.signature);
            EvalOptions options;
            options.budget = budgets.checks;
            bool holds = team_satisfies(m, x, need_d(parsed.value, "eval"), options);
            std::cout << (holds ? "true" : "false") << "\n";
            return holds ? 0 : exit_false;
        }
        if (translate->parsed()) {
            auto parsed = read_sentence(file, sig);
            std::optional<int> bound;
            if (k_opt->count() > 0) bound = k;
            std::cout << render(run_pass(pass, parsed.value, bound, reuse_var)) << "\n";
            return 0;
        }
        if (classify_cmd->parsed()) {
            std::cout << to_json(classify(read_sentence(file, sig).value)).dump(2) << "\n";
            return 0;
        }
        if (equiv->parsed()) {
            auto left = read_sentence(left_file, sig).value;
            auto right = read_sentence(right_file, sig).value;
            EquivOptions options{budgets, degrade};
            auto verdict = equiv_check(left, right, *sig, max_size, options);
            std::cout << to_json(verdict).dump(2) << "\n";
            if (verdict.budget_limited) return exit_budget;
            return verdict.equivalent() ? 0 : exit_counterexample;
        }
        if (corpus_cmd->parsed()) {
            if (name.empty()) {
                for (const auto& item : corpus()) {
                    Json j;
                    j["name"] = item.name;
                    j["tags"] = item.tags;
                    j["description"] = item.description;
                    std::cout << j.dump() << "\n";
                }
                return 0;
            }
            const auto& item = corpus_item(name);
            if (show_signature) std::cout << to_json(item.signature).dump(2) << "\n";
            else std::cout << item.text << "\n";
            return 0;
        }
        if (enum_cmd->parsed()) {
            StructureEnumerator structures(*sig, size, budgets.structures);
            while (auto m = structures.next()) std::cout << to_json(*m).dump() << "\n";
            return 0;
        }
    } catch (const BudgetExceeded& e) {
        print_error(e);
        return exit_budget;
    } catch (const std::exception& e) {
        print_error(e);
        return exit_error;
    }
    return exit_error;
}
