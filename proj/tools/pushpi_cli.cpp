// Command-line workbench: parse, typecheck, reduce, encode, trace and check
// terms of the lambda / value-computation calculi and their process images.
//
// Output is JSON-lines: one {"step","action","state","note"?} record per
// line, closed by a {"verdict","counts"} summary.  --format pretty renders
// the same stream for humans.  Exit codes: 0 pass, 1 check failure, 2 usage
// or syntax error.

#include "pushpi/checks.hpp"
#include "pushpi/gen.hpp"
#include "pushpi/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <deque>
#include <map>
#include <random>
#include <string>
#include <vector>

using nlohmann::json;
using namespace pushpi;

namespace {

struct Emitter {
    bool pretty = false;
    unsigned step = 0;

    void record(const std::string& action, const std::string& state,
                const std::string& note = "") {
        if (pretty) {
            std::printf("%4u  %-12s %s%s%s\n", step, action.c_str(), state.c_str(),
                        note.empty() ? "" : "   # ", note.c_str());
        } else {
            json j{{"step", step}, {"action", action}, {"state", state}};
            if (!note.empty()) j["note"] = note;
            std::printf("%s\n", j.dump().c_str());
        }
        ++step;
    }

    int summary(const std::string& verdict, const std::map<std::string, std::int64_t>& counts) {
        if (pretty) {
            std::string cs;
            for (const auto& [k, v] : counts) cs += " " + k + "=" + std::to_string(v);
            std::printf("verdict: %s%s\n", verdict.c_str(), cs.c_str());
        } else {
            json j{{"verdict", verdict}, {"counts", json::object()}};
            for (const auto& [k, v] : counts) j["counts"][k] = v;
            std::printf("%s\n", j.dump().c_str());
        }
        return verdict == "pass" ? 0 : 1;
    }
};

std::pair<std::string, std::string> split_handles(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == s.size())
        throw CLI::ValidationError("--handles", "expected two comma-separated names, e.g. u,r");
    return {s.substr(0, comma), s.substr(comma + 1)};
}

// Terms driven through a check suite: the --term argument when given,
// otherwise a deterministic generated batch.
std::vector<TermP> suite_terms(const std::string& term_text, std::uint64_t seed,
                               unsigned count, unsigned max_size) {
    std::vector<TermP> out;
    if (!term_text.empty()) {
        out.push_back(parse_cbpv(term_text));
        return out;
    }
    for (unsigned i = 0; i < count; ++i)
        out.push_back(gen_typed_term(seed + i, max_size).term);
    return out;
}

int cmd_typecheck(Emitter& em, const std::string& term_text, const std::string& type_text) {
    TermP m = parse_cbpv(term_text);
    if (!type_text.empty()) {
        TypeP b = parse_type(type_text);
        bool ok = check_comp(TypeCtx{}, m, b);
        em.record("typecheck", print_cbpv(m), (ok ? "checks against " : "does not check against ") + print_type(b));
        return em.summary(ok ? "pass" : "fail", {{"checked", ok ? 1 : 0}});
    }
    auto b = synth_comp(TypeCtx{}, m);
    if (b) {
        em.record("typecheck", print_cbpv(m), "synthesized type " + print_type(*b));
        return em.summary("pass", {{"checked", 1}});
    }
    em.record("typecheck", print_cbpv(m),
              "no type synthesized; supply --type or an annotation (M : B)");
    return em.summary("fail", {{"checked", 0}});
}

int cmd_reduce(Emitter& em, const std::string& calc, const std::string& strategy,
               const std::string& term_text, unsigned fuel) {
    unsigned steps = 0;
    bool exhausted = false;
    if (calc == "cbpv") {
        TermP m = strip_annotations(parse_cbpv(term_text));
        em.record("start", print_cbpv(m));
        while (auto s = step_cbpv(m)) {
            m = *s;
            if (++steps > fuel) { exhausted = true; break; }
            em.record("step", print_cbpv(m));
        }
        if (exhausted) --steps;
    } else { // lambda
        LTermP m = parse_lambda(term_text);
        auto stepper = (strategy == "cbv") ? step_cbv : step_cbn;
        em.record("start", print_lambda(m));
        while (auto s = stepper(m)) {
            m = *s;
            if (++steps > fuel) { exhausted = true; break; }
            em.record("step", print_lambda(m));
        }
        if (exhausted) --steps;
    }
    return em.summary("pass", {{"steps", steps}, {"exhausted", exhausted ? 1 : 0}});
}

int cmd_encode(Emitter& em, const std::string& from, const std::string& to,
               const std::string& term_text, const std::string& u, const std::string& r) {
    TermP m;
    if (from == "cbpv") {
        m = parse_cbpv(term_text);
    } else {
        LTermP l = parse_lambda(term_text);
        m = (from == "cbv") ? cbv_to_cbpv(l) : cbn_to_cbpv(l);
        em.record("encode", print_cbpv(m), "intermediate value-computation term");
    }
    m = strip_annotations(m);
    std::string image;
    if (to == "pi") image = print_pi(cbpv_to_pi(m, u, r));
    else if (to == "pi-poly") image = print_poly(cbpv_to_pi_poly(m, u, r));
    else if (to == "pii-named") image = print_poly_i(cbpv_to_pii_named(m, u, r));
    else image = print_pii(encode_entry(to_db(m)));  // pii: index-based image at entry handles
    em.record("encode", image, "target " + to);
    return em.summary("pass", {{"encoded", 1}});
}

// Shortest silent path from the encoding to a stable (no silent successor)
// process, found breadth-first; deterministic for fixed input.
int cmd_trace(Emitter& em, const std::string& engine, const std::string& term_text,
              const std::string& u, const std::string& r, unsigned depth) {
    TermP m = strip_annotations(parse_cbpv(term_text));

    auto run = [&em, depth](auto start, auto succs, auto key, auto show) -> int {
        using P = decltype(start);
        std::map<std::string, std::pair<std::string, P>> parent;  // key -> (parent key, state)
        std::deque<std::pair<P, unsigned>> frontier{{start, 0}};
        parent[key(start)] = {"", start};
        std::string found;
        while (!frontier.empty()) {
            auto [p, d] = frontier.front();
            frontier.pop_front();
            auto next = succs(p);
            if (next.empty()) { found = key(p); break; }
            if (d == depth) continue;
            for (auto& q : next) {
                auto k = key(q);
                if (parent.emplace(k, std::make_pair(key(p), q)).second)
                    frontier.emplace_back(q, d + 1);
            }
        }
        std::vector<P> path;
        if (!found.empty())
            for (std::string k = found; !k.empty(); k = parent[k].first)
                path.push_back(parent[k].second);
        if (path.empty()) {
            em.record("trace", show(start), "no stable state within depth");
            return em.summary("unknown", {{"taus", 0}});
        }
        em.record("start", show(path.back()));
        for (auto it = path.rbegin() + 1; it != path.rend(); ++it) em.record("tau", show(*it));
        return em.summary("pass", {{"taus", static_cast<std::int64_t>(path.size() - 1)}});
    };

    if (engine == "pii") {
        ProcIP p0 = normalize_i(encode_entry(to_db(m)));
        return run(
            p0,
            [](const ProcIP& p) {
                std::vector<ProcIP> out;
                for (auto& q : tau_successors_i(p)) out.push_back(normalize_i(q));
                return out;
            },
            [](const ProcIP& p) { return canon_i(p); },
            [](const ProcIP& p) { return print_pii(p); });
    }
    ProcP p0 = normalize(cbpv_to_pi(m, u, r));
    return run(
        p0,
        [](const ProcP& p) {
            std::vector<ProcP> out;
            for (auto& [a, q] : transitions(p, free_names(p)))
                if (a.tag == PiAction::Tag::Tau) out.push_back(normalize(q));
            return out;
        },
        [](const ProcP& p) { return print_pi(normalize(p)); },
        [](const ProcP& p) { return print_pi(p); });
}

int cmd_check(Emitter& em, const std::string& sub, const std::string& term_text,
              const std::string& u, const std::string& r, unsigned fuel,
              std::uint64_t seed, unsigned count, unsigned max_size) {
    std::map<std::string, std::int64_t> counts;
    bool all_pass = true;

    if (sub == "lemmas") {
        CheckReport rep = check_lemma_suite();
        for (const auto& note : rep.notes) em.record("lemma", note);
        if (!rep.pass) em.record("counterexample", rep.failure);
        counts["cases"] = static_cast<std::int64_t>(rep.notes.size());
        return em.summary(rep.pass ? "pass" : "fail", counts);
    }

    std::vector<TermP> terms = suite_terms(term_text, seed, count, max_size);
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    counts["terms"] = static_cast<std::int64_t>(terms.size());

    for (const auto& raw : terms) {
        TermP m = strip_annotations(raw);
        const std::string shown = print_cbpv(m);
        if (sub == "soundness") {
            CheckReport rep = check_soundness(m, u, r, fuel);
            std::int64_t taus = 0;
            for (const auto& s : rep.steps) taus += s.taus;
            counts["steps"] += static_cast<std::int64_t>(rep.steps.size());
            counts["taus"] += taus;
            em.record("soundness", shown,
                      (rep.pass ? "pass" : "FAIL: " + rep.failure) + " (" +
                          std::to_string(rep.steps.size()) + " steps, " +
                          std::to_string(taus) + " tau-steps)");
            all_pass = all_pass && rep.pass;
        } else if (sub == "completeness") {
            CheckReport rep = check_completeness_one_step(m, u, r);
            em.record("completeness", shown, rep.pass ? "pass" : "FAIL: " + rep.failure);
            all_pass = all_pass && rep.pass;
        } else if (sub == "bounds") {
            CheckReport named = check_step_bound(m, u, r, StepEngine::Pi);
            CheckReport internal = check_step_bound(m, u, r, StepEngine::Pii);
            bool ok = named.pass && internal.pass;
            em.record("bounds", shown,
                      ok ? "pass" : "FAIL: " + (named.pass ? internal.failure : named.failure));
            all_pass = all_pass && ok;
        } else if (sub == "success") {
            bool ok = check_success_sensitive(m, u, r);
            em.record("success", shown, ok ? "pass" : "FAIL: success barb disagrees");
            all_pass = all_pass && ok;
        } else { // gorla: name invariance under a random injective renaming
            std::vector<std::pair<std::string, std::string>> renaming;
            unsigned salt = rng();
            renaming.emplace_back(u, "#n" + std::to_string(salt % 1000));
            renaming.emplace_back(r, "#n" + std::to_string(salt % 1000 + 1));
            bool ok = check_name_invariance(m, u, r, renaming);
            em.record("gorla", shown, ok ? "pass" : "FAIL: renaming not structural");
            all_pass = all_pass && ok;
        }
    }
    counts["failures"] = 0;
    if (!all_pass) counts["failures"] = 1;
    return em.summary(all_pass ? "pass" : "fail", counts);
}

int cmd_gen(Emitter& em, std::uint64_t seed, unsigned count, unsigned max_size) {
    for (unsigned i = 0; i < count; ++i) {
        GenResult g = gen_typed_term(seed + i, max_size);
        em.record("gen", print_cbpv(g.term), "type " + print_type(g.type));
    }
    return em.summary("pass", {{"terms", count}});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for value-computation terms and their process encodings"};
    app.require_subcommand(1);

    std::string term_text, type_text, handles = "u,r", format = "json";
    std::string calc = "cbpv", strategy = "cbn", from = "cbpv", to = "pi", engine = "pi";
    unsigned fuel = 64, depth = 16, tau_budget = 4, count = 20, max_size = 6;
    std::uint64_t seed = 1;

    app.add_option("--format", format, "json (default) or pretty")
        ->check(CLI::IsMember({"json", "pretty"}));

    auto add_common = [&](CLI::App* c, bool with_term) {
        c->add_option("--format", format)->check(CLI::IsMember({"json", "pretty"}));
        if (with_term) c->add_option("--term", term_text, "input term");
        return c;
    };

    auto* tc = add_common(app.add_subcommand("typecheck", "check or synthesize a type"), true);
    tc->get_option("--term")->required();
    tc->add_option("--type", type_text, "candidate computation type");

    auto* rd = add_common(app.add_subcommand("reduce", "small-step reduction trace"), true);
    rd->get_option("--term")->required();
    rd->add_option("--calc", calc)->check(CLI::IsMember({"cbpv", "lambda"}));
    rd->add_option("--strategy", strategy)->check(CLI::IsMember({"cbn", "cbv"}));
    rd->add_option("--fuel", fuel);

    auto* en = add_common(app.add_subcommand("encode", "translate into a process"), true);
    en->get_option("--term")->required();
    en->add_option("--from", from)->check(CLI::IsMember({"cbpv", "cbv", "cbn"}));
    en->add_option("--to", to)->check(CLI::IsMember({"pi", "pi-poly", "pii", "pii-named"}));
    en->add_option("--handles", handles);

    auto* tr = add_common(app.add_subcommand("trace", "silent-step run of the encoding"), true);
    tr->get_option("--term")->required();
    tr->add_option("--engine", engine)->check(CLI::IsMember({"pi", "pii"}));
    tr->add_option("--handles", handles);
    tr->add_option("--depth", depth);

    auto* ck = add_common(app.add_subcommand("check", "property checks"), true);
    std::string sub;
    ck->add_option("kind", sub, "soundness|completeness|bounds|success|lemmas|gorla")
        ->required()
        ->check(CLI::IsMember({"soundness", "completeness", "bounds", "success", "lemmas", "gorla"}));
    ck->add_option("--handles", handles);
    ck->add_option("--fuel", fuel);
    ck->add_option("--depth", depth);
    ck->add_option("--tau-budget", tau_budget);
    ck->add_option("--seed", seed);
    ck->add_option("--count", count);
    ck->add_option("--max-size", max_size);

    auto* gn = add_common(app.add_subcommand("gen", "random well-typed terms"), false);
    gn->add_option("--seed", seed);
    gn->add_option("--count", count);
    gn->add_option("--max-size", max_size);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Emitter em;
    em.pretty = (format == "pretty");
    try {
        auto [u, r] = split_handles(handles);
        if (tc->parsed()) return cmd_typecheck(em, term_text, type_text);
        if (rd->parsed()) return cmd_reduce(em, calc, strategy, term_text, fuel);
        if (en->parsed()) return cmd_encode(em, from, to, term_text, u, r);
        if (tr->parsed()) return cmd_trace(em, engine, term_text, u, r, depth);
        if (ck->parsed()) return cmd_check(em, sub, term_text, u, r, fuel, seed, count, max_size);
        if (gn->parsed()) return cmd_gen(em, seed, count, max_size);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "syntax error: %s\n", e.what());
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
