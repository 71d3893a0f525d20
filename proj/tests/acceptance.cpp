// Acceptance run: one PASS/FAIL line per criterion, details indented above it.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "deplog/deplog.hpp"
#include "formula_gen.hpp"

namespace {

using namespace deplog;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double grid_seconds = 300;        // criteria 1 and 2 together
constexpr double translation_seconds = 600; // criterion 3
constexpr double even_seconds = 120;        // criterion 6
constexpr std::size_t grid_sample_per_depth = 200;
constexpr std::size_t grid_max_rows = 3;
constexpr int grid_max_domain = 2;
constexpr int min_d_sentences = 8;
constexpr int min_eso_sentences = 5;
constexpr int min_forall_free = 4;
constexpr int min_width1 = 3;
constexpr int even_structures = 2 + 16;
constexpr int determinism_runs = 3;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int criterion, bool ok, const std::string& summary) {
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, summary.c_str());
    std::fflush(stdout);
}

void note(const std::string& line) {
    std::printf("  %s\n", line.c_str());
    std::fflush(stdout);
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2: the semantics grid

struct GridResult {
    std::uint64_t instances = 0;
    std::uint64_t downward = 0, locality = 0, flatness = 0, empty = 0;
    std::uint64_t cover_disagreements = 0;
    std::size_t formulas = 0;
    double seconds = 0;       // criterion 1 work: reference evaluation and property checks
    double cover_seconds = 0; // criterion 2 work: the full-cover evaluations
};

GridResult run_grid() {
    GridResult r;
    auto start = Clock::now();
    Clock::duration cover_time{};
    auto formulas = gen::grid_formulas(grid_sample_per_depth);
    r.formulas = formulas.size();

    EvalOptions reference = EvalOptions::reference();
    reference.budget = saturated;
    EvalOptions cover = reference;
    cover.disjunction = DisjunctionSearch::FullCover;

    for (int n = 1; n <= grid_max_domain; ++n) {
        StructureEnumerator structures(gen::grid_signature(), n);
        std::vector<Structure> models;
        while (auto m = structures.next()) models.push_back(std::move(*m));
        auto teams = gen::all_teams(gen::grid_vars(), n, grid_max_rows);
        std::map<std::vector<Tuple>, std::size_t> index;
        for (std::size_t i = 0; i < teams.size(); ++i) index[teams[i].rows()] = i;

        for (const auto& f : formulas) {
            auto fv = free_vars(f);
            bool flat = !contains_dependence_atoms(f);
            for (const auto& m : models) {
                TeamEvaluator ref(m, reference);
                TeamEvaluator full(m, cover);
                std::vector<bool> holds(teams.size());
                for (std::size_t i = 0; i < teams.size(); ++i) {
                    holds[i] = ref.satisfies(teams[i], f);
                    ++r.instances;
                    auto cover_start = Clock::now();
                    if (full.satisfies(teams[i], f) != holds[i]) ++r.cover_disagreements;
                    cover_time += Clock::now() - cover_start;
                    if (ref.satisfies(restrict_team(teams[i], fv), f) != holds[i]) ++r.locality;
                }
                for (std::size_t i = 0; i < teams.size(); ++i) {
                    const auto& rows = teams[i].rows();
                    if (rows.empty()) {
                        if (!holds[i]) ++r.empty;
                        continue;
                    }
                    bool all_singletons = true;
                    for (std::size_t drop = 0; drop < rows.size(); ++drop) {
                        std::vector<Tuple> smaller;
                        for (std::size_t j = 0; j < rows.size(); ++j)
                            if (j != drop) smaller.push_back(rows[j]);
                        // Every proper subteam is reached by dropping rows one at a time.
                        if (holds[i] && !holds[index.at(smaller)]) ++r.downward;
                        all_singletons = all_singletons && holds[index.at({rows[drop]})];
                    }
                    if (flat && holds[i] != all_singletons) ++r.flatness;
                }
            }
        }
    }
    r.cover_seconds = std::chrono::duration<double>(cover_time).count();
    r.seconds = seconds_since(start) - r.cover_seconds;
    return r;
}

// ---------------------------------------------------------------------------
// Equivalence runs

struct EquivRow {
    std::string name;
    Verdict verdict;
    std::string error;
};

bool acceptable(const Verdict& v, int min_size) { return v.equivalent() && v.max_size >= min_size; }

std::string describe(const EquivRow& row) {
    if (!row.error.empty()) return row.name + ": error: " + row.error;
    std::ostringstream out;
    out << row.name << ": " << (row.verdict.equivalent() ? "equivalent" : "COUNTEREXAMPLE") << " up to size "
        << row.verdict.max_size << " (" << row.verdict.structures_checked << " structures, "
        << fixed(row.verdict.wall_seconds) << " s)";
    if (row.verdict.budget_limited) out << " [" << row.verdict.budget_note << "]";
    return out.str();
}

EquivRow run_equiv(const std::string& name, const Sentence& a, const Sentence& b, const Signature& sig, int n) {
    EquivRow row{name, {}, {}};
    try {
        row.verdict = equiv_check(a, b, sig, n, EquivOptions{Budgets{}, true});
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

// ---------------------------------------------------------------------------
// Criterion 8: every pass on every corpus item

using Pass = std::function<std::string(const Sentence&)>;

DFormula as_d(const Sentence& s) {
    if (!std::holds_alternative<DFormula>(s)) throw PreconditionError("not a dependence formula");
    return std::get<DFormula>(s);
}

EsoSentence as_eso(const Sentence& s) {
    if (const auto* e = std::get_if<EsoSentence>(&s)) return *e;
    const auto& f = std::get<DFormula>(s);
    auto [prefix, matrix] = split_prefix(f);
    if (contains_dependence_atoms(f) || !is_quantifier_free(matrix)) throw PreconditionError("not an ESO sentence");
    return EsoSentence{{}, prefix, matrix};
}

std::vector<std::pair<std::string, Pass>> passes() {
    return {
        {"prenex", [](const Sentence& s) { return render(to_prenex(as_d(s))); }},
        {"simplify-atoms",
         [](const Sentence& s) {
             auto f = as_d(s);
             return render(simplify_atom_terms(is_prenex(f) ? f : to_prenex(f)));
         }},
        {"extract", [](const Sentence& s) { return render(to_dformula(normal_form(as_d(s)))); }},
        {"skolemize", [](const Sentence& s) { return render(skolemize_prop31(normal_form(as_d(s)))); }},
        {"d2eso", [](const Sentence& s) { return render(d_to_eso(as_d(s))); }},
        {"star", [](const Sentence& s) { return render(star_normalize(as_eso(s))); }},
        {"eso2d", [](const Sentence& s) { return render(eso_to_d(as_eso(s))); }},
        {"snf", [](const Sentence& s) { return render(skolemize_prefix_existentials(as_eso(s))); }},
        {"prop36", [](const Sentence& s) { return render(prop36_normalize(as_eso(s))); }},
        {"fo-collapse", [](const Sentence& s) { return render(collapse_existential_to_fo(as_d(s))); }},
        {"width1", [](const Sentence& s) { return render(eliminate_width1(as_d(s))); }},
        {"single-forall", [](const Sentence& s) { return render(single_forall_reuse(as_d(s))); }},
    };
}

std::string run_pass(const Pass& pass, const CorpusItem& item) {
    // Reparse on every run so no state is shared between runs.
    try {
        return "ok:" + pass(item.parse());
    } catch (const std::exception& e) {
        return std::string("error:") + e.what();
    }
}

} // namespace

int main() {
    auto total_start = Clock::now();

    // 1 and 2 ----------------------------------------------------------------
    {
        auto g = run_grid();
        note(std::to_string(g.formulas) + " formulas, " + std::to_string(g.instances) + " (structure, team, formula) instances, " +
               fixed(g.seconds) + " s");
        note("violations: downward closure " + std::to_string(g.downward) + ", locality " + std::to_string(g.locality) +
               ", flatness " + std::to_string(g.flatness) + ", empty team " + std::to_string(g.empty));
        bool in_time = g.seconds <= grid_seconds;
        report(1, g.downward + g.locality + g.flatness + g.empty == 0 && in_time,
               "team-semantics properties on the grid, " + std::to_string(g.downward + g.locality + g.flatness + g.empty) +
                   " violations, " + fixed(g.seconds) + " s (limit " + fixed(grid_seconds) + " s)");
        report(2, g.cover_disagreements == 0,
               "disjoint-split vs full-cover disjunction, " + std::to_string(g.cover_disagreements) + " disagreements, " +
                   fixed(g.cover_seconds) + " s");
    }

    // 3 ------------------------------------------------------------------------
    {
        auto start = Clock::now();
        int ok = 0, total = 0;
        bool required_seen[3] = {false, false, false};
        const char* required[3] = {"henkin", "phi1_closed", "phi2_closed"};
        for (const auto& item : corpus()) {
            if (!item.has_tag("d")) continue;
            auto f = item.dformula();
            auto row = run_equiv(item.name, f, d_to_eso(f), item.signature, 3);
            note(describe(row));
            ++total;
            // Size 2 is acceptable only when the budget stopped size 3.
            bool good = row.error.empty() && acceptable(row.verdict, row.verdict.budget_limited ? 2 : 3);
            ok += good;
            for (int i = 0; i < 3; ++i) required_seen[i] = required_seen[i] || (good && item.name == required[i]);
        }
        double secs = seconds_since(start);
        bool pass = ok == total && ok >= min_d_sentences && required_seen[0] && required_seen[1] && required_seen[2] &&
                    secs <= translation_seconds;
        report(3, pass,
               std::to_string(ok) + "/" + std::to_string(total) + " D sentences equivalent to d_to_eso, " + fixed(secs) +
                   " s (limit " + fixed(translation_seconds) + " s)");
    }

    // 4 ------------------------------------------------------------------------
    {
        int ok = 0, total = 0;
        bool even_seen = false;
        for (const auto& item : corpus()) {
            if (!item.has_tag("eso")) continue;
            auto e = item.eso();
            auto row = run_equiv(item.name, e, eso_to_d(e), item.signature, 2);
            note(describe(row));
            ++total;
            bool good = row.error.empty() && acceptable(row.verdict, 2);
            ok += good;
            even_seen = even_seen || (good && item.name == "even_R");
        }
        report(4, ok == total && ok >= min_eso_sentences && even_seen,
               std::to_string(ok) + "/" + std::to_string(total) + " ESO sentences equivalent to eso_to_d up to size 2");
    }

    // 5 ------------------------------------------------------------------------
    {
        int dep_checked = 0, dep_bad = 0, forall_checked = 0, forall_bad = 0, p36_checked = 0, p36_bad = 0;
        std::vector<EsoSentence> snf_inputs;
        for (const auto& item : corpus()) {
            if (!item.has_tag("d")) continue;
            auto f = item.dformula();
            auto d = classify_d(f);
            auto e = d_to_eso(f);
            auto r = classify_eso(e);
            int k = std::max(d.max_dep_width - 1, 0);
            ++dep_checked;
            if (!(r.max_arity <= k)) {
                ++dep_bad;
                note(item.name + ": D(" + std::to_string(k) + "-dep) gave arity " + std::to_string(r.max_arity));
            }
            if (d.single_quantification) {
                ++forall_checked;
                if (!(r.universal_count <= d.forall_count && r.star_shape && r.exists_star_shape)) {
                    ++forall_bad;
                    note(item.name + ": D(" + std::to_string(d.forall_count) + "-forall) gave " +
                           std::to_string(r.universal_count) + " universals, star " + std::to_string(r.star_shape));
                }
            }
            snf_inputs.push_back(skolemize_prefix_existentials(e));
        }
        for (const auto& item : corpus()) {
            if (item.has_tag("eso")) snf_inputs.push_back(skolemize_prefix_existentials(item.eso()));
        }
        for (const auto& e : snf_inputs) {
            auto r = classify_eso(e);
            int k = r.universal_count;
            // Inputs outside the domain (a function wider than the universal count) are skipped.
            if (r.max_arity > k) continue;
            ++p36_checked;
            auto out = classify_eso(prop36_normalize(e, k));
            if (!(out.skolem_normal_form && out.universal_count <= 2 * k && out.star_shape)) {
                ++p36_bad;
                note("prop36 on " + render(e) + " gave " + std::to_string(out.universal_count) + " universals, star " +
                       std::to_string(out.star_shape));
            }
        }
        note("D(k-dep) -> arity <= k: " + std::to_string(dep_checked - dep_bad) + "/" + std::to_string(dep_checked));
        note("D(k-forall) -> <= k universals, star, exists*: " + std::to_string(forall_checked - forall_bad) + "/" +
               std::to_string(forall_checked));
        note("prop36 on SNF with k universals -> <= 2k universals, star: " + std::to_string(p36_checked - p36_bad) + "/" +
               std::to_string(p36_checked));
        report(5, dep_bad + forall_bad + p36_bad == 0 && dep_checked > 0 && forall_checked > 0 && p36_checked > 0,
               "fragment preservation, " + std::to_string(dep_bad + forall_bad + p36_bad) + " violations in " +
                   std::to_string(dep_checked + forall_checked + p36_checked) + " checks");
    }

    // 6 ------------------------------------------------------------------------
    {
        auto start = Clock::now();
        auto even = corpus_item("even_R").eso();
        auto image = eso_to_d(even);
        int structures = 0, eso_bad = 0, d_bad = 0;
        for (int n = 1; n <= 2; ++n) {
            StructureEnumerator all(Signature{{{"R", 2}}, {}, {}}, n);
            while (auto m = all.next()) {
                int size = 0;
                for (auto b : m->relations.at("R").bits) size += b != 0;
                bool parity = size % 2 == 0;
                eso_bad += eso_satisfies(*m, even) != parity;
                d_bad += sentence_truth(*m, image) != parity;
                ++structures;
            }
        }
        double secs = seconds_since(start);
        note("structures " + std::to_string(structures) + ", ESO mismatches " + std::to_string(eso_bad) +
               ", eso_to_d mismatches " + std::to_string(d_bad));
        report(6, structures == even_structures && eso_bad == 0 && d_bad == 0 && secs <= even_seconds,
               "even_R verdict equals |R| even on " + std::to_string(structures) + " structures, " + fixed(secs) +
                   " s (limit " + fixed(even_seconds) + " s)");
    }

    // 7 ------------------------------------------------------------------------
    {
        int free_ok = 0, free_total = 0, w1_ok = 0, w1_total = 0;
        for (const auto& item : corpus()) {
            if (!item.has_tag("d")) continue;
            auto f = item.dformula();
            if (item.has_tag("forall-free")) {
                auto g = collapse_existential_to_fo(f);
                auto row = run_equiv(item.name + " (fo-collapse)", f, g, item.signature, 3);
                note(describe(row));
                ++free_total;
                free_ok += row.error.empty() && acceptable(row.verdict, 3) && !contains_dependence_atoms(g);
            }
            if (item.has_tag("width1")) {
                auto g = eliminate_width1(f);
                auto row = run_equiv(item.name + " (width1)", f, g, item.signature, 3);
                note(describe(row));
                ++w1_total;
                w1_ok += row.error.empty() && acceptable(row.verdict, 3) && !contains_dependence_atoms(g);
            }
        }
        report(7, free_ok == free_total && w1_ok == w1_total && free_ok >= min_forall_free && w1_ok >= min_width1,
               std::to_string(free_ok) + "/" + std::to_string(free_total) + " forall-free and " + std::to_string(w1_ok) +
                   "/" + std::to_string(w1_total) + " width-1 collapses equivalent up to size 3");
    }

    // 8 ------------------------------------------------------------------------
    {
        int pairs = 0, applicable = 0, unstable = 0;
        for (const auto& [name, pass] : passes()) {
            for (const auto& item : corpus()) {
                auto first = run_pass(pass, item);
                bool stable = true;
                for (int i = 1; i < determinism_runs; ++i) stable = stable && run_pass(pass, item) == first;
                ++pairs;
                applicable += first.rfind("ok:", 0) == 0;
                if (!stable) {
                    ++unstable;
                    note("unstable: " + name + " on " + item.name);
                }
            }
        }
        note(std::to_string(pairs) + " (pass, item) pairs, " + std::to_string(applicable) + " in the pass's domain");
        report(8, unstable == 0 && applicable > 0,
               std::to_string(unstable) + " of " + std::to_string(pairs) + " pass outputs differ across " +
                   std::to_string(determinism_runs) + " runs");
    }

    std::printf("total %.1f s, %d criteria failed\n", seconds_since(total_start), failures);
    return failures == 0 ? 0 : 1;
}
