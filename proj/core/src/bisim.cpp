#include "pushpi/bisim.hpp"

#include <climits>
#include <map>
#include <set>
#include <stdexcept>

namespace pushpi {

std::set<Barb> barbs(const ProcP& p) {
    std::set<Barb> out;
    for (const auto& [act, res] : transitions(p, {"#probe"})) {
        switch (act.tag) {
        case PiAction::Tag::Input: out.insert({false, act.subj}); break;
        case PiAction::Tag::FreeOutput:
        case PiAction::Tag::BoundOutput: out.insert({true, act.subj}); break;
        case PiAction::Tag::Tau: break;
        }
    }
    return out;
}

std::set<Barb> barbs(const ProcIP& p) {
    std::set<Barb> out;
    for (const auto& [act, res] : transitions_i(p)) {
        switch (act.tag) {
        case ActionI::Tag::Input: out.insert({false, print_chan(act.ch)}); break;
        case ActionI::Tag::Output: out.insert({true, print_chan(act.ch)}); break;
        case ActionI::Tag::Tau: break;
        }
    }
    return out;
}

namespace {

void spine(const ProcP& p, std::vector<ProcP>& out) {
    if (p->tag == Proc::Tag::Par) {
        spine(p->a, out);
        spine(p->b, out);
    } else if (p->tag != Proc::Tag::Nil) {
        out.push_back(p);
    }
}
void spine(const ProcIP& p, std::vector<ProcIP>& out) {
    if (p->tag == ProcI::Tag::Par) {
        spine(p->a, out);
        spine(p->b, out);
    } else if (p->tag != ProcI::Tag::Nil) {
        out.push_back(p);
    }
}

// Remove parallel components present on both sides (multiset intersection).
// Returns true when anything was cancelled.
template <typename State, typename Nil, typename Par, typename Key>
bool cancel_impl(State& p, State& q, Nil nil, Par par, Key key) {
    std::vector<State> cp, cq;
    spine(p, cp);
    spine(q, cq);
    std::multiset<std::string> kq;
    for (const auto& c : cq) kq.insert(key(c));
    std::vector<State> np, nq;
    std::multiset<std::string> cancelled;
    for (const auto& c : cp) {
        std::string k = key(c);
        auto it = kq.find(k);
        if (it != kq.end()) {
            kq.erase(it);
            cancelled.insert(k);
        } else {
            np.push_back(c);
        }
    }
    if (cancelled.empty()) return false;
    for (const auto& c : cq) {
        std::string k = key(c);
        auto it = cancelled.find(k);
        if (it != cancelled.end()) cancelled.erase(it);
        else nq.push_back(c);
    }
    auto rebuild = [&](std::vector<State>& v) {
        if (v.empty()) return nil();
        State r = v.back();
        for (size_t i = v.size() - 1; i-- > 0;) r = par(v[i], r);
        return r;
    };
    p = rebuild(np);
    q = rebuild(nq);
    return true;
}

// ---- joint renaming of free references to canonical placeholders ----
// Weak bisimilarity is invariant under injective renamings applied to both
// processes, so a pair may be keyed (and played) up to such a renaming.

void collect_free_order(const ProcP& p, std::set<std::string>& bound,
                        std::vector<std::string>& order,
                        std::set<std::string>& seen) {
    auto see = [&](const std::string& n) {
        if (!bound.count(n) && seen.insert(n).second) order.push_back(n);
    };
    switch (p->tag) {
    case Proc::Tag::Nil: return;
    case Proc::Tag::Par:
        collect_free_order(p->a, bound, order, seen);
        collect_free_order(p->b, bound, order, seen);
        return;
    case Proc::Tag::Rep:
        collect_free_order(p->a, bound, order, seen);
        return;
    case Proc::Tag::Res: {
        bool fresh = bound.insert(p->subj).second;
        collect_free_order(p->a, bound, order, seen);
        if (fresh) bound.erase(p->subj);
        return;
    }
    case Proc::Tag::In: {
        see(p->subj);
        bool fresh = bound.insert(p->obj).second;
        collect_free_order(p->a, bound, order, seen);
        if (fresh) bound.erase(p->obj);
        return;
    }
    case Proc::Tag::Out:
        see(p->subj);
        see(p->obj);
        collect_free_order(p->a, bound, order, seen);
        return;
    }
}

ProcP rename_free(const ProcP& p, const std::map<std::string, std::string>& m) {
    auto look = [&](const std::string& n) {
        auto it = m.find(n);
        return it == m.end() ? n : it->second;
    };
    switch (p->tag) {
    case Proc::Tag::Nil: return p;
    case Proc::Tag::Par: return ppar(rename_free(p->a, m), rename_free(p->b, m));
    case Proc::Tag::Rep: return prep(rename_free(p->a, m));
    case Proc::Tag::Res: {
        auto m2 = m;
        m2.erase(p->subj);
        return pres(p->subj, rename_free(p->a, m2));
    }
    case Proc::Tag::In: {
        auto m2 = m;
        m2.erase(p->obj);
        return pin(look(p->subj), p->obj, rename_free(p->a, m2));
    }
    case Proc::Tag::Out:
        return pout(look(p->subj), look(p->obj), rename_free(p->a, m));
    }
    return p;
}

// For the nameless calculus a "free reference" is a free name or an index
// pointing past every enclosing binder; both kinds rename to placeholders.
struct FreeRefMap {
    std::map<std::string, std::string> names;
    std::map<unsigned, std::string> indices;  // top-level index
    unsigned next = 0;
    std::string alloc() { return "~" + std::to_string(next++); }
};

void collect_free_order_i(const ProcIP& p, unsigned depth, FreeRefMap& m) {
    auto see = [&](const ChanRef& c) {
        if (c.is_bound) {
            if (c.idx >= depth) {
                unsigned top = c.idx - depth;
                if (!m.indices.count(top)) m.indices[top] = m.alloc();
            }
        } else if (!m.names.count(c.name)) {
            m.names[c.name] = m.alloc();
        }
    };
    switch (p->tag) {
    case ProcI::Tag::Nil: return;
    case ProcI::Tag::Par:
        collect_free_order_i(p->a, depth, m);
        collect_free_order_i(p->b, depth, m);
        return;
    case ProcI::Tag::Res: collect_free_order_i(p->a, depth + 1, m); return;
    case ProcI::Tag::Rep: collect_free_order_i(p->a, depth, m); return;
    case ProcI::Tag::In:
    case ProcI::Tag::Out:
        see(p->ch);
        collect_free_order_i(p->a, depth + 1, m);
        return;
    case ProcI::Tag::Link:
        see(p->ch);
        see(p->ch2);
        return;
    }
}

ProcIP rename_free_i(const ProcIP& p, unsigned depth, const FreeRefMap& m) {
    auto look = [&](const ChanRef& c) -> ChanRef {
        if (c.is_bound) {
            if (c.idx >= depth) return cr_free(m.indices.at(c.idx - depth));
            return c;
        }
        auto it = m.names.find(c.name);
        return it == m.names.end() ? c : cr_free(it->second);
    };
    switch (p->tag) {
    case ProcI::Tag::Nil: return p;
    case ProcI::Tag::Par:
        return ipar(rename_free_i(p->a, depth, m), rename_free_i(p->b, depth, m));
    case ProcI::Tag::Res: return ires(rename_free_i(p->a, depth + 1, m));
    case ProcI::Tag::Rep: return irep(rename_free_i(p->a, depth, m));
    case ProcI::Tag::In: return iin(look(p->ch), rename_free_i(p->a, depth + 1, m));
    case ProcI::Tag::Out: return iout(look(p->ch), rename_free_i(p->a, depth + 1, m));
    case ProcI::Tag::Link: return ilink(look(p->ch), look(p->ch2));
    }
    return p;
}

// Shared game skeleton; Engine supplies states, labels and moves.
template <typename Engine>
struct Game {
    using State = typename Engine::State;
    using Label = typename Engine::Label;

    const BisimOptions& opt;
    Engine eng;
    std::map<std::string, BisimVerdict::Kind> memo;
    std::map<std::string, unsigned> onpath;
    std::map<std::string, std::vector<State>> tau_memo;
    size_t explored = 0;

    Game(const BisimOptions& o, Engine e) : opt(o), eng(std::move(e)) {}

    std::string pair_key(const State& p, const State& q) {
        return eng.key(p) + " ||| " + eng.key(q);
    }

    // All states reachable by at most tau_budget silent steps (inclusive).
    std::vector<State> tau_closure(const State& s) {
        std::string k = eng.key(s);
        auto it = tau_memo.find(k);
        if (it != tau_memo.end()) return it->second;
        std::vector<State> acc{s};
        std::set<std::string> seen{k};
        std::vector<State> frontier{s};
        for (unsigned d = 0; d < opt.tau_budget && !frontier.empty(); ++d) {
            std::vector<State> next;
            for (const auto& t : frontier) {
                for (const auto& [lab, res] : eng.moves(t)) {
                    if (!eng.is_tau(lab)) continue;
                    if (seen.insert(eng.key(res)).second) {
                        next.push_back(res);
                        acc.push_back(res);
                    }
                }
            }
            frontier = std::move(next);
        }
        tau_memo.emplace(k, acc);
        return acc;
    }

    // Responder answers to a challenger label.
    std::vector<State> answers(const State& q, const Label& mu) {
        std::vector<State> acc;
        std::set<std::string> seen;
        auto add = [&](const State& s) {
            if (seen.insert(eng.key(s)).second) acc.push_back(s);
        };
        if (!opt.weak) {
            for (const auto& [lab, res] : eng.moves(q)) {
                State r = res;
                if (eng.match(mu, lab, r)) add(r);
            }
            return acc;
        }
        if (eng.is_tau(mu)) {
            for (const auto& s : tau_closure(q)) add(s);
            return acc;
        }
        for (const auto& pre : tau_closure(q)) {
            for (const auto& [lab, res] : eng.moves(pre)) {
                State r = res;
                if (!eng.match(mu, lab, r)) continue;
                for (const auto& post : tau_closure(r)) add(post);
            }
        }
        return acc;
    }

    struct R {
        BisimVerdict::Kind kind;
        unsigned dep;  // smallest on-path index this verdict leans on
        std::vector<std::string> witness;
    };

    R play(const State& p0, const State& q0, unsigned depth) {
        State p = eng.norm(p0), q = eng.norm(q0);
        // Key the pair up to a joint injective renaming of free references,
        // so structurally recurring pairs with drifting names coincide.
        eng.pair_canon(p, q);
        p = eng.norm(p);
        q = eng.norm(q);
        if (eng.key(p) == eng.key(q))  // reflexivity, up to the cleanup laws
            return {BisimVerdict::Kind::Yes, UINT_MAX, {}};
        std::string k = pair_key(p, q);
        if (auto it = memo.find(k); it != memo.end())
            return {it->second, UINT_MAX, {}};
        if (auto it = onpath.find(k); it != onpath.end())
            return {BisimVerdict::Kind::Yes, it->second, {}};
        if (depth == 0) return {BisimVerdict::Kind::Unknown, UINT_MAX, {}};

        unsigned idx = static_cast<unsigned>(onpath.size());
        onpath.emplace(k, idx);
        ++explored;

        auto conclude_yes = [&](unsigned d) -> R {
            onpath.erase(k);
            if (d >= idx) {
                memo[k] = BisimVerdict::Kind::Yes;
                return {BisimVerdict::Kind::Yes, UINT_MAX, {}};
            }
            return {BisimVerdict::Kind::Yes, d, {}};
        };

        // Up-to-context shortcut: identical parallel components on both
        // sides can be cancelled;  a Yes on the reduced pair carries over.
        // (A No does not — the context could mask the difference — so we
        // fall through to the full game in that case.)
        {
            State rp = p, rq = q;
            if (eng.cancel_common(rp, rq)) {
                R r = play(rp, rq, depth);
                if (r.kind == BisimVerdict::Kind::Yes) return conclude_yes(r.dep);
            }
        }

        // Congruence shortcut: if the parallel components pair off into
        // bisimilar couples, the composites are bisimilar.
        {
            auto cp = eng.decompose(p);
            auto cq = eng.decompose(q);
            if (cp.size() == cq.size() && cp.size() >= 2 && cp.size() <= 8) {
                std::vector<bool> used(cq.size(), false);
                bool all = true;
                unsigned d = UINT_MAX;
                for (const auto& c : cp) {
                    bool matched = false;
                    for (size_t j = 0; j < cq.size(); ++j) {
                        if (used[j]) continue;
                        R r = play(c, cq[j], depth);
                        if (r.kind == BisimVerdict::Kind::Yes) {
                            used[j] = true;
                            matched = true;
                            d = std::min(d, r.dep);
                            break;
                        }
                    }
                    if (!matched) { all = false; break; }
                }
                if (all) return conclude_yes(d);
            }
        }

        BisimVerdict::Kind verdict = BisimVerdict::Kind::Yes;
        unsigned dep = UINT_MAX;
        std::vector<std::string> witness;

        auto challenge = [&](const State& ch, const State& re, bool swapped) {
            for (const auto& [lab, res] : eng.moves(ch)) {
                if (verdict == BisimVerdict::Kind::No) return;
                bool any_yes = false, any_unknown = false;
                std::vector<std::string> child_wit;
                for (const auto& ans : answers(re, lab)) {
                    R r = swapped ? play(ans, res, depth - 1)
                                  : play(res, ans, depth - 1);
                    if (r.kind == BisimVerdict::Kind::Yes) {
                        any_yes = true;
                        dep = std::min(dep, r.dep);
                        break;
                    }
                    if (r.kind == BisimVerdict::Kind::Unknown) any_unknown = true;
                    else if (child_wit.empty()) child_wit = r.witness;
                }
                if (any_yes) continue;
                if (any_unknown) {
                    if (verdict == BisimVerdict::Kind::Yes)
                        verdict = BisimVerdict::Kind::Unknown;
                    continue;
                }
                verdict = BisimVerdict::Kind::No;
                witness.clear();
                witness.push_back(eng.label_str(lab));
                witness.insert(witness.end(), child_wit.begin(), child_wit.end());
            }
        };
        challenge(p, q, false);
        if (verdict != BisimVerdict::Kind::No) challenge(q, p, true);

        onpath.erase(k);
        if (verdict == BisimVerdict::Kind::No) {
            memo[k] = verdict;  // definitive even under optimistic assumptions
            return {verdict, UINT_MAX, witness};
        }
        if (verdict == BisimVerdict::Kind::Yes) {
            if (dep >= idx) {
                memo[k] = verdict;  // self-contained: no reliance on callers
                return {verdict, UINT_MAX, {}};
            }
            return {verdict, dep, {}};
        }
        return {verdict, UINT_MAX, {}};
    }

    BisimVerdict run(const State& p, const State& q) {
        R r = play(p, q, opt.depth);
        BisimVerdict v;
        v.kind = r.kind;
        v.relation_size = explored;
        v.witness = r.witness;
        return v;
    }
};

// ---- named pi engine ----
struct PiEngine {
    using State = ProcP;
    using Label = PiAction;
    std::optional<std::set<std::string>> fixed_candidates;

    std::string key(const State& s) const { return canon_pi(s); }
    State norm(const State& s) const { return compress_inert(s); }

    std::vector<std::pair<Label, State>> moves(const State& s) const {
        std::set<std::string> cands;
        if (fixed_candidates) {
            cands = *fixed_candidates;
        } else {
            cands = free_names(s);
            for (unsigned k = 0;; ++k) {
                std::string w = "#w" + std::to_string(k);
                if (!cands.count(w)) { cands.insert(w); break; }
            }
        }
        return transitions(s, cands);
    }
    bool is_tau(const Label& l) const { return l.tag == PiAction::Tag::Tau; }
    std::string label_str(const Label& l) const { return print_action(l); }
    bool cancel_common(State& p, State& q) const {
        return cancel_impl(p, q, &pnil, [](ProcP a, ProcP b) { return ppar(a, b); },
                           [](const ProcP& s) { return canon_pi(s); });
    }
    std::vector<State> decompose(const State& s) const {
        std::vector<State> v;
        spine(s, v);
        return v;
    }
    void pair_canon(State& p, State& q) const {
        std::vector<std::string> order;
        std::set<std::string> bound, seen;
        collect_free_order(p, bound, order, seen);
        collect_free_order(q, bound, order, seen);
        std::map<std::string, std::string> m;
        unsigned i = 0;
        for (const auto& n : order) m[n] = "~" + std::to_string(i++);
        p = rename_free(p, m);
        q = rename_free(q, m);
    }

    // Bound outputs extrude fresh names on both sides; align the responder's
    // name with the challenger's before comparing residuals.
    bool match(const Label& mu, const Label& nu, State& residual) const {
        if (mu.tag != nu.tag) return false;
        switch (mu.tag) {
        case PiAction::Tag::Tau: return true;
        case PiAction::Tag::Input:
        case PiAction::Tag::FreeOutput:
            return mu.subj == nu.subj && mu.obj == nu.obj;
        case PiAction::Tag::BoundOutput:
            if (mu.subj != nu.subj) return false;
            if (mu.obj != nu.obj) residual = subst_pi(residual, mu.obj, nu.obj);
            return true;
        }
        return false;
    }
};

// ---- internal pi engine ----
struct PiiEngine {
    using State = ProcIP;
    using Label = ActionI;

    std::string key(const State& s) const { return canon_i(s); }
    State norm(const State& s) const { return compress_inert_i(s); }
    std::vector<std::pair<Label, State>> moves(const State& s) const {
        return transitions_i(s);
    }
    bool is_tau(const Label& l) const { return l.tag == ActionI::Tag::Tau; }
    std::string label_str(const Label& l) const { return print_action_i(l); }
    bool match(const Label& mu, const Label& nu, State&) const {
        return action_i_eq(mu, nu);
    }
    bool cancel_common(State& p, State& q) const {
        return cancel_impl(p, q, &inil, [](ProcIP a, ProcIP b) { return ipar(a, b); },
                           [](const ProcIP& s) { return print_pii(s); });
    }
    std::vector<State> decompose(const State& s) const {
        std::vector<State> v;
        spine(s, v);
        return v;
    }
    void pair_canon(State& p, State& q) const {
        FreeRefMap m;
        collect_free_order_i(p, 0, m);
        collect_free_order_i(q, 0, m);
        p = rename_free_i(p, 0, m);
        q = rename_free_i(q, 0, m);
    }
};

} // namespace

BisimVerdict bisim_game(const ProcP& p, const ProcP& q, const BisimOptions& opt) {
    Game<PiEngine> g(opt, PiEngine{opt.candidates});
    return g.run(p, q);
}

BisimVerdict weak_bisim(const ProcP& p, const ProcP& q, unsigned depth,
                        unsigned tau_budget) {
    BisimOptions opt;
    opt.depth = depth;
    opt.tau_budget = tau_budget;
    return bisim_game(p, q, opt);
}

BisimVerdict bisim_game_i(const ProcIP& p, const ProcIP& q, const BisimOptions& opt) {
    Game<PiiEngine> g(opt, PiiEngine{});
    return g.run(p, q);
}

BisimVerdict weak_bisim_i(const ProcIP& p, const ProcIP& q, unsigned depth,
                          unsigned tau_budget) {
    BisimOptions opt;
    opt.depth = depth;
    opt.tau_budget = tau_budget;
    return bisim_game_i(p, q, opt);
}

// ---- finite-state oracle ----
namespace {
struct FiniteGraph {
    std::vector<std::string> keys;
    std::map<std::string, unsigned> index;
    // edges[s] = list of (label, target)
    std::vector<std::vector<std::pair<std::string, unsigned>>> edges;
};

// Rename an extruded name deterministically so distinct explorations of the
// same state agree on labels and residuals.
ProcP canon_extrusion(const ProcP& res, std::string& obj) {
    for (unsigned k = 0;; ++k) {
        std::string e = "#e" + std::to_string(k);
        if (e == obj) return res;
        if (!free_names(res).count(e)) {
            ProcP r = subst_pi(res, e, obj);
            obj = e;
            return r;
        }
    }
}

unsigned intern(FiniteGraph& g, const std::string& key) {
    auto it = g.index.find(key);
    if (it != g.index.end()) return it->second;
    unsigned id = static_cast<unsigned>(g.keys.size());
    g.keys.push_back(key);
    g.index.emplace(key, id);
    g.edges.emplace_back();
    return id;
}
} // namespace

std::optional<bool> weak_bisim_oracle(const ProcP& p, const ProcP& q,
                                      const std::set<std::string>& alphabet,
                                      size_t max_states) {
    FiniteGraph g;
    std::map<std::string, ProcP> rep;
    std::vector<unsigned> work;
    auto add_state = [&](const ProcP& s) {
        ProcP n = normalize(s);
        std::string k = canon_pi(n);
        bool fresh = !g.index.count(k);
        unsigned id = intern(g, k);
        if (fresh) {
            rep[k] = n;
            work.push_back(id);
        }
        return id;
    };
    unsigned ip = add_state(p);
    unsigned iq = add_state(q);
    while (!work.empty()) {
        unsigned id = work.back();
        work.pop_back();
        if (g.keys.size() > max_states) return std::nullopt;
        ProcP s = rep[g.keys[id]];
        for (auto [act, res] : transitions(s, alphabet)) {
            if (act.tag == PiAction::Tag::BoundOutput)
                res = canon_extrusion(res, act.obj);
            unsigned t = add_state(res);
            std::string lab = act.tag == PiAction::Tag::Tau ? "tau" : print_action(act);
            g.edges[id].push_back({lab, t});
        }
    }

    size_t n = g.keys.size();
    // tau-closure per state
    std::vector<std::set<unsigned>> tclo(n);
    for (unsigned s = 0; s < n; ++s) {
        std::vector<unsigned> stack{s};
        tclo[s].insert(s);
        while (!stack.empty()) {
            unsigned t = stack.back();
            stack.pop_back();
            for (const auto& [lab, u] : g.edges[t])
                if (lab == "tau" && tclo[s].insert(u).second) stack.push_back(u);
        }
    }
    // saturated weak edges: label -> targets, with "tau" meaning tau-star
    std::vector<std::map<std::string, std::set<unsigned>>> weak(n);
    for (unsigned s = 0; s < n; ++s) {
        for (unsigned m : tclo[s]) weak[s]["tau"].insert(m);
        for (unsigned m : tclo[s])
            for (const auto& [lab, t] : g.edges[m]) {
                if (lab == "tau") continue;
                for (unsigned u : tclo[t]) weak[s][lab].insert(u);
            }
    }
    // partition refinement on the saturated graph
    std::vector<unsigned> block(n, 0);
    for (;;) {
        std::map<std::string, unsigned> sigs;
        std::vector<unsigned> nb(n);
        for (unsigned s = 0; s < n; ++s) {
            std::string sig = std::to_string(block[s]) + ";";
            for (const auto& [lab, targets] : weak[s]) {
                std::set<unsigned> tb;
                for (unsigned t : targets) tb.insert(block[t]);
                sig += lab + ":";
                for (unsigned b : tb) sig += std::to_string(b) + ",";
                sig += ";";
            }
            auto it = sigs.find(sig);
            if (it == sigs.end())
                it = sigs.emplace(sig, static_cast<unsigned>(sigs.size())).first;
            nb[s] = it->second;
        }
        bool changed = false;
        for (unsigned s = 0; s < n; ++s)
            if (nb[s] != block[s]) { changed = true; break; }
        block = std::move(nb);
        if (!changed) break;
    }
    return block[ip] == block[iq];
}

} // namespace pushpi
