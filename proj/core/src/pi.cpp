#include "pushpi/pi.hpp"
#include "pushpi/gensym.hpp"

#include <algorithm>
#include <map>

namespace pushpi {

ProcP pnil() {
    static ProcP nil = std::make_shared<const Proc>(Proc{Proc::Tag::Nil, "", "", nullptr, nullptr});
    return nil;
}
ProcP ppar(ProcP p, ProcP q) {
    return std::make_shared<const Proc>(Proc{Proc::Tag::Par, "", "", std::move(p), std::move(q)});
}
ProcP pres(std::string x, ProcP body) {
    return std::make_shared<const Proc>(Proc{Proc::Tag::Res, std::move(x), "", std::move(body), nullptr});
}
ProcP prep(ProcP p) {
    return std::make_shared<const Proc>(Proc{Proc::Tag::Rep, "", "", std::move(p), nullptr});
}
ProcP pin(std::string subj, std::string binder, ProcP cont) {
    return std::make_shared<const Proc>(Proc{Proc::Tag::In, std::move(subj), std::move(binder), std::move(cont), nullptr});
}
ProcP pout(std::string subj, std::string obj, ProcP cont) {
    return std::make_shared<const Proc>(Proc{Proc::Tag::Out, std::move(subj), std::move(obj), std::move(cont), nullptr});
}

std::string print_action(const PiAction& a) {
    switch (a.tag) {
    case PiAction::Tag::Input: return a.subj + "(" + a.obj + ")";
    case PiAction::Tag::FreeOutput: return a.subj + "<" + a.obj + ">";
    case PiAction::Tag::BoundOutput: return a.subj + "<(" + a.obj + ")>";
    case PiAction::Tag::Tau: return "tau";
    }
    return "?";
}

namespace {
void collect_sets(const ProcP& p, NameSets& s) {
    switch (p->tag) {
    case Proc::Tag::Nil: return;
    case Proc::Tag::Par:
        collect_sets(p->a, s);
        collect_sets(p->b, s);
        return;
    case Proc::Tag::Rep:
        collect_sets(p->a, s);
        return;
    case Proc::Tag::Res: {
        NameSets inner;
        collect_sets(p->a, inner);
        // Restriction filters free names and subject sets, but object sets
        // record every object position regardless of binding.
        inner.fn.erase(p->subj);
        inner.sub_in.erase(p->subj);
        inner.sub_out.erase(p->subj);
        inner.bn.insert(p->subj);
        s.fn.insert(inner.fn.begin(), inner.fn.end());
        s.bn.insert(inner.bn.begin(), inner.bn.end());
        s.sub_in.insert(inner.sub_in.begin(), inner.sub_in.end());
        s.sub_out.insert(inner.sub_out.begin(), inner.sub_out.end());
        s.obj_in.insert(inner.obj_in.begin(), inner.obj_in.end());
        s.obj_out.insert(inner.obj_out.begin(), inner.obj_out.end());
        return;
    }
    case Proc::Tag::In: {
        NameSets inner;
        collect_sets(p->a, inner);
        inner.fn.erase(p->obj);
        inner.fn.insert(p->subj);
        inner.bn.insert(p->obj);
        inner.sub_in.insert(p->subj);
        inner.obj_in.insert(p->obj);
        s.fn.insert(inner.fn.begin(), inner.fn.end());
        s.bn.insert(inner.bn.begin(), inner.bn.end());
        s.sub_in.insert(inner.sub_in.begin(), inner.sub_in.end());
        s.sub_out.insert(inner.sub_out.begin(), inner.sub_out.end());
        s.obj_in.insert(inner.obj_in.begin(), inner.obj_in.end());
        s.obj_out.insert(inner.obj_out.begin(), inner.obj_out.end());
        return;
    }
    case Proc::Tag::Out:
        s.fn.insert(p->subj);
        s.fn.insert(p->obj);
        s.sub_out.insert(p->subj);
        s.obj_out.insert(p->obj);
        collect_sets(p->a, s);
        return;
    }
}
} // namespace

NameSets name_sets(const ProcP& p) {
    NameSets s;
    collect_sets(p, s);
    return s;
}

namespace {
void fn_rec(const ProcP& p, std::set<std::string>& out) {
    switch (p->tag) {
    case Proc::Tag::Nil: return;
    case Proc::Tag::Par: fn_rec(p->a, out); fn_rec(p->b, out); return;
    case Proc::Tag::Rep: fn_rec(p->a, out); return;
    case Proc::Tag::Res: {
        std::set<std::string> inner;
        fn_rec(p->a, inner);
        inner.erase(p->subj);
        out.insert(inner.begin(), inner.end());
        return;
    }
    case Proc::Tag::In: {
        out.insert(p->subj);
        std::set<std::string> inner;
        fn_rec(p->a, inner);
        inner.erase(p->obj);
        out.insert(inner.begin(), inner.end());
        return;
    }
    case Proc::Tag::Out:
        out.insert(p->subj);
        out.insert(p->obj);
        fn_rec(p->a, out);
        return;
    }
}
} // namespace

std::set<std::string> free_names(const ProcP& p) {
    std::set<std::string> s;
    fn_rec(p, s);
    return s;
}

ProcP subst_pi(const ProcP& p, const std::string& u, const std::string& v) {
    if (u == v) return p;
    switch (p->tag) {
    case Proc::Tag::Nil: return p;
    case Proc::Tag::Par: return ppar(subst_pi(p->a, u, v), subst_pi(p->b, u, v));
    case Proc::Tag::Rep: return prep(subst_pi(p->a, u, v));
    case Proc::Tag::Res: {
        if (p->subj == v) return p;
        if (p->subj == u) {
            std::string z = default_gensym().fresh("z");
            return pres(z, subst_pi(subst_pi(p->a, z, p->subj), u, v));
        }
        return pres(p->subj, subst_pi(p->a, u, v));
    }
    case Proc::Tag::In: {
        std::string subj = p->subj == v ? u : p->subj;
        if (p->obj == v) return pin(subj, p->obj, p->a);
        if (p->obj == u) {
            std::string z = default_gensym().fresh("z");
            return pin(subj, z, subst_pi(subst_pi(p->a, z, p->obj), u, v));
        }
        return pin(subj, p->obj, subst_pi(p->a, u, v));
    }
    case Proc::Tag::Out: {
        std::string subj = p->subj == v ? u : p->subj;
        std::string obj = p->obj == v ? u : p->obj;
        return pout(subj, obj, subst_pi(p->a, u, v));
    }
    }
    return p;
}

bool proc_eq(const ProcP& p, const ProcP& q) {
    if (p == q) return true;
    if (p->tag != q->tag) return false;
    switch (p->tag) {
    case Proc::Tag::Nil: return true;
    case Proc::Tag::Par: return proc_eq(p->a, q->a) && proc_eq(p->b, q->b);
    case Proc::Tag::Rep: return proc_eq(p->a, q->a);
    case Proc::Tag::Res: return p->subj == q->subj && proc_eq(p->a, q->a);
    case Proc::Tag::In:
    case Proc::Tag::Out:
        return p->subj == q->subj && p->obj == q->obj && proc_eq(p->a, q->a);
    }
    return false;
}

namespace {
using Env = std::map<std::string, std::string>;

std::string canon_rec(const ProcP& p, const Env& env, unsigned d) {
    auto look = [&](const std::string& n) {
        auto it = env.find(n);
        return it == env.end() ? n : it->second;
    };
    switch (p->tag) {
    case Proc::Tag::Nil: return "0";
    case Proc::Tag::Par:
        return "(" + canon_rec(p->a, env, d) + "|" + canon_rec(p->b, env, d) + ")";
    case Proc::Tag::Rep: return "!" + canon_rec(p->a, env, d);
    case Proc::Tag::Res: {
        Env e = env;
        e[p->subj] = "%" + std::to_string(d);
        return "(v)" + canon_rec(p->a, e, d + 1);
    }
    case Proc::Tag::In: {
        Env e = env;
        e[p->obj] = "%" + std::to_string(d);
        return look(p->subj) + "(.)" + canon_rec(p->a, e, d + 1);
    }
    case Proc::Tag::Out:
        return look(p->subj) + "!" + look(p->obj) + "." + canon_rec(p->a, env, d);
    }
    return "?";
}
} // namespace

std::string canon_pi(const ProcP& p) { return canon_rec(p, {}, 0); }

bool alpha_eq(const ProcP& p, const ProcP& q) { return canon_pi(p) == canon_pi(q); }

// ---- transitions (late-style internally, instantiated at the boundary) ----
namespace {
struct LTrans {
    enum class Tag { Out, BOut, Inp, Tau };
    Tag tag;
    std::string a;  // subject
    std::string b;  // Out: object; BOut: extruded name; Inp: binder
    ProcP cont;
};

std::vector<LTrans> trans_late(const ProcP& p);

void combine_par(const ProcP& left, const ProcP& right,
                 const std::vector<LTrans>& tl, const std::vector<LTrans>& tr,
                 std::vector<LTrans>& out) {
    for (const auto& t : tl) {
        switch (t.tag) {
        case LTrans::Tag::Tau: out.push_back({t.tag, "", "", ppar(t.cont, right)}); break;
        default: out.push_back({t.tag, t.a, t.b, ppar(t.cont, right)}); break;
        }
    }
    for (const auto& t : tr) {
        switch (t.tag) {
        case LTrans::Tag::Tau: out.push_back({t.tag, "", "", ppar(left, t.cont)}); break;
        default: out.push_back({t.tag, t.a, t.b, ppar(left, t.cont)}); break;
        }
    }
    // Com and Close, both directions.
    auto pair_up = [&](const std::vector<LTrans>& ins, const std::vector<LTrans>& outs,
                       bool input_is_left) {
        for (const auto& i : ins) {
            if (i.tag != LTrans::Tag::Inp) continue;
            for (const auto& o : outs) {
                if (o.tag == LTrans::Tag::Out && o.a == i.a) {
                    ProcP ic = subst_pi(i.cont, o.b, i.b);
                    ProcP res = input_is_left ? ppar(ic, o.cont) : ppar(o.cont, ic);
                    out.push_back({LTrans::Tag::Tau, "", "", res});
                } else if (o.tag == LTrans::Tag::BOut && o.a == i.a) {
                    // Extruded names are globally fresh, so they never occur
                    // free on the receiving side.
                    ProcP ic = subst_pi(i.cont, o.b, i.b);
                    ProcP res = input_is_left ? ppar(ic, o.cont) : ppar(o.cont, ic);
                    out.push_back({LTrans::Tag::Tau, "", "", pres(o.b, res)});
                }
            }
        }
    };
    pair_up(tl, tr, true);
    pair_up(tr, tl, false);
}

std::vector<LTrans> trans_late(const ProcP& p) {
    std::vector<LTrans> out;
    switch (p->tag) {
    case Proc::Tag::Nil: return out;
    case Proc::Tag::Out:
        out.push_back({LTrans::Tag::Out, p->subj, p->obj, p->a});
        return out;
    case Proc::Tag::In:
        out.push_back({LTrans::Tag::Inp, p->subj, p->obj, p->a});
        return out;
    case Proc::Tag::Rep: {
        // Single unfolding: actions of one copy beside the replication,
        // plus internal communication between two copies.
        auto base = trans_late(p->a);
        for (const auto& t : base)
            out.push_back({t.tag, t.a, t.b, ppar(t.cont, p)});
        for (const auto& i : base) {
            if (i.tag != LTrans::Tag::Inp) continue;
            for (const auto& o : base) {
                if (o.tag == LTrans::Tag::Out && o.a == i.a) {
                    ProcP ic = subst_pi(i.cont, o.b, i.b);
                    out.push_back({LTrans::Tag::Tau, "", "", ppar(ppar(ic, o.cont), p)});
                } else if (o.tag == LTrans::Tag::BOut && o.a == i.a) {
                    ProcP ic = subst_pi(i.cont, o.b, i.b);
                    out.push_back({LTrans::Tag::Tau, "", "",
                                   ppar(pres(o.b, ppar(ic, o.cont)), p)});
                }
            }
        }
        return out;
    }
    case Proc::Tag::Res: {
        // Rename the restricted name globally fresh first, so side
        // conditions reduce to simple identity checks.
        std::string z = default_gensym().fresh("n");
        ProcP body = subst_pi(p->a, z, p->subj);
        for (const auto& t : trans_late(body)) {
            switch (t.tag) {
            case LTrans::Tag::Tau:
                out.push_back({t.tag, "", "", pres(z, t.cont)});
                break;
            case LTrans::Tag::Out:
                if (t.a == z) break;
                if (t.b == z)
                    out.push_back({LTrans::Tag::BOut, t.a, z, t.cont});  // Open
                else
                    out.push_back({t.tag, t.a, t.b, pres(z, t.cont)});
                break;
            case LTrans::Tag::BOut:
                if (t.a == z) break;
                out.push_back({t.tag, t.a, t.b, pres(z, t.cont)});
                break;
            case LTrans::Tag::Inp:
                if (t.a == z) break;
                out.push_back({t.tag, t.a, t.b, pres(z, t.cont)});
                break;
            }
        }
        return out;
    }
    case Proc::Tag::Par: {
        auto tl = trans_late(p->a);
        auto tr = trans_late(p->b);
        combine_par(p->a, p->b, tl, tr, out);
        return out;
    }
    }
    return out;
}
} // namespace

std::vector<std::pair<PiAction, ProcP>>
transitions(const ProcP& p, const std::set<std::string>& candidates) {
    std::vector<std::pair<PiAction, ProcP>> out;
    for (const auto& t : trans_late(p)) {
        switch (t.tag) {
        case LTrans::Tag::Tau:
            out.push_back({PiAction{PiAction::Tag::Tau, "", ""}, t.cont});
            break;
        case LTrans::Tag::Out:
            out.push_back({PiAction{PiAction::Tag::FreeOutput, t.a, t.b}, t.cont});
            break;
        case LTrans::Tag::BOut:
            out.push_back({PiAction{PiAction::Tag::BoundOutput, t.a, t.b}, t.cont});
            break;
        case LTrans::Tag::Inp:
            for (const auto& c : candidates)
                out.push_back({PiAction{PiAction::Tag::Input, t.a, c},
                               subst_pi(t.cont, c, t.b)});
            break;
        }
    }
    return out;
}

std::vector<ProcP> tau_successors(const ProcP& p) {
    std::vector<ProcP> out;
    for (const auto& t : trans_late(p))
        if (t.tag == LTrans::Tag::Tau) out.push_back(t.cont);
    return out;
}

// ---- normalization ----
namespace {
void flatten(const ProcP& p, std::vector<ProcP>& acc) {
    if (p->tag == Proc::Tag::Par) {
        flatten(p->a, acc);
        flatten(p->b, acc);
    } else if (p->tag != Proc::Tag::Nil) {
        acc.push_back(p);
    }
}

ProcP rebuild_par(std::vector<ProcP> comps) {
    if (comps.empty()) return pnil();
    // Compute each component's canonical key once; sorting and absorption
    // both work off the keys.
    std::vector<std::pair<std::string, ProcP>> keyed;
    keyed.reserve(comps.size());
    std::set<std::string> rep_bodies;
    for (const auto& c : comps) {
        keyed.emplace_back(canon_pi(c), c);
        if (c->tag == Proc::Tag::Rep) rep_bodies.insert(canon_pi(c->a));
    }
    // Replication absorption: !P | !P behaves as !P, and P | !P as !P.
    std::set<std::string> kept_reps;
    std::vector<std::pair<std::string, ProcP>> pruned;
    for (auto& [k, c] : keyed) {
        if (c->tag == Proc::Tag::Rep) {
            if (kept_reps.insert(k).second) pruned.emplace_back(std::move(k), c);
            continue;
        }
        if (rep_bodies.count(k)) continue;
        pruned.emplace_back(std::move(k), c);
    }
    if (pruned.empty()) return pnil();
    std::sort(pruned.begin(), pruned.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    ProcP r = pruned.back().second;
    for (size_t i = pruned.size() - 1; i-- > 0;) r = ppar(pruned[i].second, r);
    return r;
}

bool guarded_on(const ProcP& c, const std::string& x) {
    if ((c->tag == Proc::Tag::In || c->tag == Proc::Tag::Out) && c->subj == x) return true;
    if (c->tag == Proc::Tag::Rep &&
        (c->a->tag == Proc::Tag::In || c->a->tag == Proc::Tag::Out) && c->a->subj == x)
        return true;
    return false;
}
} // namespace

namespace {
// Processes are immutable DAGs (transition residuals share subterms), so
// memoize per node within one normalization pass to avoid re-walking
// shared subtrees.
using NormMemo = std::map<ProcP, ProcP>;  // keys keep nodes alive: no address reuse
ProcP norm_rec(const ProcP& p, NormMemo& memo);

ProcP norm_rec_uncached(const ProcP& p, NormMemo& memo) {
    auto normalize = [&memo](const ProcP& q) { return norm_rec(q, memo); };
    switch (p->tag) {
    case Proc::Tag::Nil: return p;
    case Proc::Tag::In: return pin(p->subj, p->obj, normalize(p->a));
    case Proc::Tag::Out: return pout(p->subj, p->obj, normalize(p->a));
    case Proc::Tag::Rep: {
        ProcP b = normalize(p->a);
        if (b->tag == Proc::Tag::Nil) return pnil();
        if (b->tag == Proc::Tag::Rep) return b;
        return prep(b);
    }
    case Proc::Tag::Par: {
        // Flatten the whole spine first so the parallel composition is
        // rebuilt (and its components canonized) exactly once.
        std::vector<ProcP> raw, comps;
        flatten(p, raw);
        for (const auto& c : raw) flatten(normalize(c), comps);
        return rebuild_par(std::move(comps));
    }
    case Proc::Tag::Res: {
        ProcP b = normalize(p->a);
        auto fns = free_names(b);
        if (!fns.count(p->subj)) return b;
        std::vector<ProcP> comps;
        flatten(b, comps);
        // A restriction over nothing but a process guarded on the restricted
        // name is inert.
        if (comps.size() == 1 && guarded_on(comps[0], p->subj)) return pnil();
        // Scope shrink: keep only the components that mention the name
        // under the restriction.
        std::vector<ProcP> inside, outside;
        for (const auto& c : comps) {
            if (free_names(c).count(p->subj)) inside.push_back(c);
            else outside.push_back(c);
        }
        if (!outside.empty() && !inside.empty()) {
            ProcP shrunk = pres(p->subj, rebuild_par(std::move(inside)));
            outside.push_back(normalize(shrunk));
            std::vector<ProcP> flat;
            flatten(rebuild_par(std::move(outside)), flat);
            return rebuild_par(std::move(flat));
        }
        if (inside.size() == 1 && guarded_on(inside[0], p->subj) && outside.empty())
            return pnil();
        return pres(p->subj, b);
    }
    }
    return p;
}

ProcP norm_rec(const ProcP& p, NormMemo& memo) {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    ProcP r = norm_rec_uncached(p, memo);
    memo.emplace(p, r);
    return r;
}
} // namespace

ProcP normalize(const ProcP& p) {
    NormMemo memo;
    return norm_rec(p, memo);
}

// ---- inert-communication compression ----
namespace {
// Does free name y occur anywhere in input-subject position?
bool inputs_on_name(const ProcP& p, const std::string& y) {
    switch (p->tag) {
    case Proc::Tag::Nil: return false;
    case Proc::Tag::Par: return inputs_on_name(p->a, y) || inputs_on_name(p->b, y);
    case Proc::Tag::Res:
        if (p->subj == y) return false;
        return inputs_on_name(p->a, y);
    case Proc::Tag::Rep: return inputs_on_name(p->a, y);
    case Proc::Tag::In:
        if (p->subj == y) return true;
        if (p->obj == y) return false;
        return inputs_on_name(p->a, y);
    case Proc::Tag::Out: return inputs_on_name(p->a, y);
    }
    return false;
}

// Within the body of a restriction over x: if the only receiver on x is a
// single persistent replicated input and some output on x is enabled, fire
// that communication.  Nothing observable is lost: the receiver survives
// unchanged and no other receiver ever competes for the output.
bool fire_inert_pi(const std::string& x, std::vector<ProcP>& comps) {
    int rep_in = -1;
    std::vector<size_t> outs;
    for (size_t j = 0; j < comps.size(); ++j) {
        const ProcP& c = comps[j];
        bool is_rep_in = c->tag == Proc::Tag::Rep &&
                         c->a->tag == Proc::Tag::In && c->a->subj == x &&
                         (c->a->obj == x || !free_names(c->a->a).count(x));
        if (is_rep_in) {
            if (rep_in >= 0) return false;
            rep_in = (int)j;
            continue;
        }
        if (c->tag == Proc::Tag::Out && c->subj == x &&
            !inputs_on_name(c->a, x)) {
            outs.push_back(j);
            continue;
        }
        if (inputs_on_name(c, x)) return false;
    }
    if (rep_in < 0 || outs.empty()) return false;
    auto succ = tau_successors(ppar(comps[outs[0]], comps[(size_t)rep_in]));
    if (succ.empty()) return false;
    ProcP fired = succ[0];
    std::vector<ProcP> next;
    for (size_t j = 0; j < comps.size(); ++j)
        if (j != outs[0] && j != (size_t)rep_in) next.push_back(comps[j]);
    next.push_back(fired);
    comps = std::move(next);
    return true;
}
} // namespace

ProcP compress_inert(const ProcP& p0) {
    ProcP p = normalize(p0);
    switch (p->tag) {
    case Proc::Tag::Par: {
        std::vector<ProcP> comps;
        flatten(p, comps);
        bool changed = false;
        for (auto& c : comps) {
            ProcP c2 = compress_inert(c);
            if (canon_pi(c2) != canon_pi(c)) {
                c = c2;
                changed = true;
            }
        }
        if (!changed) return p;
        return compress_inert(rebuild_par(std::move(comps)));
    }
    case Proc::Tag::Res: {
        std::vector<ProcP> comps;
        flatten(p->a, comps);
        if (fire_inert_pi(p->subj, comps))
            return compress_inert(pres(p->subj, rebuild_par(std::move(comps))));
        bool changed = false;
        for (auto& c : comps) {
            ProcP c2 = compress_inert(c);
            if (canon_pi(c2) != canon_pi(c)) {
                c = c2;
                changed = true;
            }
        }
        if (changed)
            return compress_inert(pres(p->subj, rebuild_par(std::move(comps))));
        return p;
    }
    default: return p;
    }
}

std::string print_pi(const ProcP& p) {
    switch (p->tag) {
    case Proc::Tag::Nil: return "0";
    case Proc::Tag::Par:
        return print_pi(p->a) + " | " + print_pi(p->b);
    case Proc::Tag::Rep: {
        std::string s = print_pi(p->a);
        if (p->a->tag == Proc::Tag::Par) return "!(" + s + ")";
        return "!" + s;
    }
    case Proc::Tag::Res: {
        std::string s = print_pi(p->a);
        if (p->a->tag == Proc::Tag::Par) return "new " + p->subj + ". (" + s + ")";
        return "new " + p->subj + ". " + s;
    }
    case Proc::Tag::In: {
        std::string s = print_pi(p->a);
        if (p->a->tag == Proc::Tag::Par) return p->subj + "(" + p->obj + "). (" + s + ")";
        return p->subj + "(" + p->obj + "). " + s;
    }
    case Proc::Tag::Out: {
        std::string s = print_pi(p->a);
        if (p->a->tag == Proc::Tag::Par) return p->subj + "<" + p->obj + ">. (" + s + ")";
        return p->subj + "<" + p->obj + ">. " + s;
    }
    }
    return "?";
}

TauRun tau_run(const ProcP& p, unsigned fuel, TauPolicy policy) {
    TauRun run;
    if (policy == TauPolicy::Deterministic) {
        ProcP cur = p;
        run.nodes.push_back({cur, 0});
        for (unsigned d = 1; d <= fuel; ++d) {
            auto succs = tau_successors(cur);
            std::map<std::string, ProcP> uniq;
            for (const auto& s : succs) uniq.emplace(canon_pi(normalize(s)), s);
            if (uniq.empty()) return run;
            if (uniq.size() > 1) {
                run.error = true;
                auto it = uniq.begin();
                std::string first = print_pi(normalize(it->second));
                ++it;
                std::string second = print_pi(normalize(it->second));
                run.message = "nondeterministic tau: " + first + " vs " + second;
                return run;
            }
            cur = uniq.begin()->second;
            run.nodes.push_back({cur, d});
        }
        return run;
    }
    // BFS over tau-reachable states, deduplicated up to normalization.
    std::set<std::string> seen;
    std::vector<TauNode> frontier{{p, 0}};
    seen.insert(canon_pi(normalize(p)));
    run.nodes.push_back({p, 0});
    for (unsigned d = 1; d <= fuel && !frontier.empty(); ++d) {
        std::vector<TauNode> next;
        for (const auto& node : frontier) {
            for (const auto& s : tau_successors(node.proc)) {
                std::string key = canon_pi(normalize(s));
                if (seen.insert(key).second) {
                    next.push_back({s, d});
                    run.nodes.push_back({s, d});
                }
            }
        }
        frontier = std::move(next);
    }
    return run;
}

} // namespace pushpi
