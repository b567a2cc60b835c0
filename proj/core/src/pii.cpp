#include "pushpi/pii.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pushpi {

std::string print_chan(const ChanRef& c) {
    return c.is_bound ? "%" + std::to_string(c.idx) : c.name;
}

ProcIP inil() {
    static ProcIP nil = std::make_shared<const ProcI>(
        ProcI{ProcI::Tag::Nil, {}, {}, nullptr, nullptr});
    return nil;
}
ProcIP ipar(ProcIP p, ProcIP q) {
    return std::make_shared<const ProcI>(
        ProcI{ProcI::Tag::Par, {}, {}, std::move(p), std::move(q)});
}
ProcIP ires(ProcIP body) {
    return std::make_shared<const ProcI>(
        ProcI{ProcI::Tag::Res, {}, {}, std::move(body), nullptr});
}
ProcIP irep(ProcIP p) {
    return std::make_shared<const ProcI>(
        ProcI{ProcI::Tag::Rep, {}, {}, std::move(p), nullptr});
}
ProcIP iin(ChanRef ch, ProcIP cont) {
    return std::make_shared<const ProcI>(
        ProcI{ProcI::Tag::In, std::move(ch), {}, std::move(cont), nullptr});
}
ProcIP iout(ChanRef ch, ProcIP cont) {
    return std::make_shared<const ProcI>(
        ProcI{ProcI::Tag::Out, std::move(ch), {}, std::move(cont), nullptr});
}
ProcIP ilink(ChanRef from, ChanRef to) {
    return std::make_shared<const ProcI>(
        ProcI{ProcI::Tag::Link, std::move(from), std::move(to), nullptr, nullptr});
}

bool proci_eq(const ProcIP& p, const ProcIP& q) {
    if (p == q) return true;
    if (p->tag != q->tag) return false;
    switch (p->tag) {
    case ProcI::Tag::Nil: return true;
    case ProcI::Tag::Par: return proci_eq(p->a, q->a) && proci_eq(p->b, q->b);
    case ProcI::Tag::Res:
    case ProcI::Tag::Rep: return proci_eq(p->a, q->a);
    case ProcI::Tag::In:
    case ProcI::Tag::Out: return p->ch == q->ch && proci_eq(p->a, q->a);
    case ProcI::Tag::Link: return p->ch == q->ch && p->ch2 == q->ch2;
    }
    return false;
}

std::string print_action_i(const ActionI& a) {
    switch (a.tag) {
    case ActionI::Tag::Input: return print_chan(a.ch) + "()";
    case ActionI::Tag::Output: return print_chan(a.ch) + "!()";
    case ActionI::Tag::Tau: return "tau";
    }
    return "?";
}

bool action_i_eq(const ActionI& x, const ActionI& y) {
    if (x.tag != y.tag) return false;
    if (x.tag == ActionI::Tag::Tau) return true;
    return x.ch == y.ch;
}

// ---- renamings ----
namespace {
RenIP mk_ren(RenI r) { return std::make_shared<const RenI>(std::move(r)); }
} // namespace

RenIP ren_id() {
    static RenIP r = mk_ren({RenI::Tag::Id, {}, nullptr, nullptr});
    return r;
}
RenIP ren_shift() {
    static RenIP r = mk_ren({RenI::Tag::Shift, {}, nullptr, nullptr});
    return r;
}
RenIP ren_extend(ChanRef head, RenIP tail) {
    return mk_ren({RenI::Tag::Extend, std::move(head), nullptr, std::move(tail)});
}
RenIP ren_lift(RenIP s) {
    return mk_ren({RenI::Tag::Lift, {}, nullptr, std::move(s)});
}
RenIP ren_swap() {
    static RenIP r = mk_ren({RenI::Tag::Swap, {}, nullptr, nullptr});
    return r;
}
RenIP ren_comp(RenIP f, RenIP g) {
    return mk_ren({RenI::Tag::Comp, {}, std::move(f), std::move(g)});
}

ChanRef ren_apply(const RenIP& s, const ChanRef& c) {
    if (!c.is_bound) return c;
    unsigned n = c.idx;
    switch (s->tag) {
    case RenI::Tag::Id: return c;
    case RenI::Tag::Shift: return cr_bound(n + 1);
    case RenI::Tag::Extend:
        return n == 0 ? s->head : ren_apply(s->g, cr_bound(n - 1));
    case RenI::Tag::Lift: {
        if (n == 0) return cr_bound(0);
        ChanRef r = ren_apply(s->g, cr_bound(n - 1));
        return r.is_bound ? cr_bound(r.idx + 1) : r;
    }
    case RenI::Tag::Swap:
        if (n == 0) return cr_bound(1);
        if (n == 1) return cr_bound(0);
        return c;
    case RenI::Tag::Comp:
        return ren_apply(s->f, ren_apply(s->g, c));
    }
    return c;
}

ProcIP inst_proc(const ProcIP& p, const RenIP& s) {
    switch (p->tag) {
    case ProcI::Tag::Nil: return p;
    case ProcI::Tag::Par: return ipar(inst_proc(p->a, s), inst_proc(p->b, s));
    case ProcI::Tag::Res: return ires(inst_proc(p->a, ren_lift(s)));
    case ProcI::Tag::Rep: return irep(inst_proc(p->a, s));
    case ProcI::Tag::In:
        return iin(ren_apply(s, p->ch), inst_proc(p->a, ren_lift(s)));
    case ProcI::Tag::Out:
        return iout(ren_apply(s, p->ch), inst_proc(p->a, ren_lift(s)));
    case ProcI::Tag::Link:
        return ilink(ren_apply(s, p->ch), ren_apply(s, p->ch2));
    }
    return p;
}

ActionI inst_action(const ActionI& a, const RenIP& s) {
    if (a.tag == ActionI::Tag::Tau) return a;
    return ActionI{a.tag, ren_apply(s, a.ch)};
}

bool wf_proc(unsigned n, const ProcIP& p) {
    auto ok = [n](const ChanRef& c) { return !c.is_bound || c.idx < n; };
    switch (p->tag) {
    case ProcI::Tag::Nil: return true;
    case ProcI::Tag::Par: return wf_proc(n, p->a) && wf_proc(n, p->b);
    case ProcI::Tag::Res: return wf_proc(n + 1, p->a);
    case ProcI::Tag::Rep: return wf_proc(n, p->a);
    case ProcI::Tag::In:
    case ProcI::Tag::Out: return ok(p->ch) && wf_proc(n + 1, p->a);
    case ProcI::Tag::Link: return ok(p->ch) && ok(p->ch2);
    }
    return false;
}

bool ref_in_proc(unsigned n, const ProcIP& p) {
    auto hit = [n](const ChanRef& c) { return c.is_bound && c.idx == n; };
    switch (p->tag) {
    case ProcI::Tag::Nil: return false;
    case ProcI::Tag::Par: return ref_in_proc(n, p->a) || ref_in_proc(n, p->b);
    case ProcI::Tag::Res: return ref_in_proc(n + 1, p->a);
    case ProcI::Tag::Rep: return ref_in_proc(n, p->a);
    case ProcI::Tag::In:
    case ProcI::Tag::Out: return hit(p->ch) || ref_in_proc(n + 1, p->a);
    case ProcI::Tag::Link: return hit(p->ch) || hit(p->ch2);
    }
    return false;
}

// ---- transitions ----
namespace {
using TransI = std::pair<ActionI, ProcIP>;

ProcIP link_unfolding(const ChanRef& from, const ChanRef& to) {
    // a -> b behaves as !a().(b+1)!().(0 -> 1): receive a session on a,
    // emit a fresh session on b, and tie the two together.
    ChanRef shifted = to.is_bound ? cr_bound(to.idx + 1) : to;
    return irep(iin(from, iout(shifted, ilink(cr_bound(0), cr_bound(1)))));
}

void com_pairs(const std::vector<TransI>& tl, const std::vector<TransI>& tr,
               bool left_first, std::vector<TransI>& out) {
    for (const auto& [ai, pi] : tl) {
        if (ai.tag != ActionI::Tag::Input) continue;
        for (const auto& [ao, po] : tr) {
            if (ao.tag != ActionI::Tag::Output || !(ao.ch == ai.ch)) continue;
            ProcIP body = left_first ? ipar(pi, po) : ipar(po, pi);
            out.push_back({ActionI{ActionI::Tag::Tau, {}}, ires(body)});
        }
    }
}
} // namespace

std::vector<TransI> transitions_i(const ProcIP& p) {
    std::vector<TransI> out;
    switch (p->tag) {
    case ProcI::Tag::Nil: return out;
    case ProcI::Tag::In:
        out.push_back({ActionI{ActionI::Tag::Input, p->ch}, p->a});
        return out;
    case ProcI::Tag::Out:
        out.push_back({ActionI{ActionI::Tag::Output, p->ch}, p->a});
        return out;
    case ProcI::Tag::Link:
        for (const auto& t : transitions_i(link_unfolding(p->ch, p->ch2)))
            out.push_back(t);
        return out;
    case ProcI::Tag::Rep: {
        // Single unfolding of P | !P.
        auto base = transitions_i(p->a);
        ProcIP lifted = irep(inst_proc(p->a, ren_shift()));
        for (const auto& [act, res] : base) {
            if (act.tag == ActionI::Tag::Tau)
                out.push_back({act, ipar(res, p)});
            else
                out.push_back({act, ipar(res, lifted)});
        }
        // Internal communication between two copies, replication kept beside.
        std::vector<TransI> selfcom;
        com_pairs(base, base, true, selfcom);
        for (const auto& [act, res] : selfcom)
            out.push_back({act, ipar(res, p)});
        return out;
    }
    case ProcI::Tag::Res: {
        for (const auto& [act, res] : transitions_i(p->a)) {
            if (act.tag == ActionI::Tag::Tau) {
                out.push_back({act, ires(res)});
                continue;
            }
            // A visible action escapes the restriction only if its channel
            // is not the bound index 0; the action is unshifted and the
            // residual's two outermost binders are swapped.
            if (act.ch.is_bound) {
                if (act.ch.idx == 0) continue;
                out.push_back({ActionI{act.tag, cr_bound(act.ch.idx - 1)},
                               ires(inst_proc(res, ren_swap()))});
            } else {
                out.push_back({act, ires(inst_proc(res, ren_swap()))});
            }
        }
        return out;
    }
    case ProcI::Tag::Par: {
        auto tl = transitions_i(p->a);
        auto tr = transitions_i(p->b);
        for (const auto& [act, res] : tl) {
            if (act.tag == ActionI::Tag::Tau)
                out.push_back({act, ipar(res, p->b)});
            else
                out.push_back({act, ipar(res, inst_proc(p->b, ren_shift()))});
        }
        for (const auto& [act, res] : tr) {
            if (act.tag == ActionI::Tag::Tau)
                out.push_back({act, ipar(p->a, res)});
            else
                out.push_back({act, ipar(inst_proc(p->a, ren_shift()), res)});
        }
        com_pairs(tl, tr, true, out);
        com_pairs(tr, tl, false, out);
        return out;
    }
    }
    return out;
}

std::vector<ProcIP> tau_successors_i(const ProcIP& p) {
    std::vector<ProcIP> out;
    for (const auto& [act, res] : transitions_i(p))
        if (act.tag == ActionI::Tag::Tau) out.push_back(res);
    return out;
}

// ---- normalization ----
namespace {
void flatten_i(const ProcIP& p, std::vector<ProcIP>& acc) {
    if (p->tag == ProcI::Tag::Par) {
        flatten_i(p->a, acc);
        flatten_i(p->b, acc);
    } else if (p->tag != ProcI::Tag::Nil) {
        acc.push_back(p);
    }
}

ProcIP rebuild_par_i(std::vector<ProcIP> comps) {
    if (comps.empty()) return inil();
    // Compute each component's print key once; sorting and absorption both
    // work off the keys.
    std::vector<std::pair<std::string, ProcIP>> keyed;
    keyed.reserve(comps.size());
    std::set<std::string> rep_bodies;
    for (const auto& c : comps) {
        keyed.emplace_back(print_pii(c), c);
        if (c->tag == ProcI::Tag::Rep) rep_bodies.insert(print_pii(c->a));
    }
    // Replication absorption: !P | !P behaves as !P, and P | !P as !P.
    std::set<std::string> kept_reps;
    std::vector<std::pair<std::string, ProcIP>> pruned;
    for (auto& [k, c] : keyed) {
        if (c->tag == ProcI::Tag::Rep) {
            if (kept_reps.insert(k).second) pruned.emplace_back(std::move(k), c);
            continue;
        }
        if (rep_bodies.count(k)) continue;
        pruned.emplace_back(std::move(k), c);
    }
    if (pruned.empty()) return inil();
    std::sort(pruned.begin(), pruned.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    ProcIP r = pruned.back().second;
    for (size_t i = pruned.size() - 1; i-- > 0;) r = ipar(pruned[i].second, r);
    return r;
}

bool guarded_on_zero(const ProcIP& c) {
    auto is0 = [](const ChanRef& ch) { return ch.is_bound && ch.idx == 0; };
    if ((c->tag == ProcI::Tag::In || c->tag == ProcI::Tag::Out) && is0(c->ch)) return true;
    if (c->tag == ProcI::Tag::Link && is0(c->ch)) return true;
    if (c->tag == ProcI::Tag::Rep) {
        const ProcIP& b = c->a;
        if ((b->tag == ProcI::Tag::In || b->tag == ProcI::Tag::Out) && is0(b->ch))
            return true;
        if (b->tag == ProcI::Tag::Link && is0(b->ch)) return true;
    }
    return false;
}

// Remove an unused binder: valid only when index 0 does not occur.
ProcIP unshift(const ProcIP& p) {
    return inst_proc(p, ren_extend(cr_bound(0), ren_id()));
}
} // namespace

namespace {
// Processes are immutable DAGs (transition residuals share subterms), so
// memoize per node within one normalization pass to avoid re-walking
// shared subtrees.
using NormMemoI = std::map<ProcIP, ProcIP>;  // keys keep nodes alive: no address reuse
ProcIP norm_rec_i(const ProcIP& p, NormMemoI& memo);

ProcIP norm_rec_i_uncached(const ProcIP& p, NormMemoI& memo) {
    auto normalize_i = [&memo](const ProcIP& q) { return norm_rec_i(q, memo); };
    switch (p->tag) {
    case ProcI::Tag::Nil:
    case ProcI::Tag::Link: return p;
    case ProcI::Tag::In: return iin(p->ch, normalize_i(p->a));
    case ProcI::Tag::Out: return iout(p->ch, normalize_i(p->a));
    case ProcI::Tag::Rep: {
        ProcIP b = normalize_i(p->a);
        if (b->tag == ProcI::Tag::Nil) return inil();
        if (b->tag == ProcI::Tag::Rep) return b;
        // Refold a spent link unfolding into the link itself (they have the
        // same transitions).
        if (b->tag == ProcI::Tag::In && b->a->tag == ProcI::Tag::Out &&
            b->a->a->tag == ProcI::Tag::Link &&
            b->a->a->ch == cr_bound(0) && b->a->a->ch2 == cr_bound(1)) {
            const ChanRef& to = b->a->ch;
            if (!to.is_bound) return ilink(b->ch, to);
            if (to.idx >= 1) return ilink(b->ch, cr_bound(to.idx - 1));
        }
        return irep(b);
    }
    case ProcI::Tag::Par: {
        // Flatten the whole spine first so the parallel composition is
        // rebuilt (and its components printed) exactly once.
        std::vector<ProcIP> raw, comps;
        flatten_i(p, raw);
        for (const auto& c : raw) flatten_i(normalize_i(c), comps);
        return rebuild_par_i(std::move(comps));
    }
    case ProcI::Tag::Res: {
        ProcIP b = normalize_i(p->a);
        if (!ref_in_proc(0, b)) return normalize_i(unshift(b));
        std::vector<ProcIP> comps;
        flatten_i(b, comps);
        if (comps.size() == 1 && guarded_on_zero(comps[0])) return inil();
        std::vector<ProcIP> inside, outside;
        for (const auto& c : comps) {
            if (ref_in_proc(0, c)) inside.push_back(c);
            else outside.push_back(c);
        }
        if (!outside.empty() && !inside.empty()) {
            ProcIP shrunk = normalize_i(ires(rebuild_par_i(std::move(inside))));
            std::vector<ProcIP> flat;
            for (auto& c : outside) flat.push_back(unshift(c));
            flat.push_back(shrunk);
            std::vector<ProcIP> flat2;
            flatten_i(rebuild_par_i(std::move(flat)), flat2);
            return rebuild_par_i(std::move(flat2));
        }
        return ires(b);
    }
    }
    return p;
}

ProcIP norm_rec_i(const ProcIP& p, NormMemoI& memo) {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    ProcIP r = norm_rec_i_uncached(p, memo);
    memo.emplace(p, r);
    return r;
}
} // namespace

ProcIP normalize_i(const ProcIP& p) {
    NormMemoI memo;
    return norm_rec_i(p, memo);
}

std::string print_pii(const ProcIP& p) {
    switch (p->tag) {
    case ProcI::Tag::Nil: return "0";
    case ProcI::Tag::Par: return print_pii(p->a) + " | " + print_pii(p->b);
    case ProcI::Tag::Rep: {
        std::string s = print_pii(p->a);
        if (p->a->tag == ProcI::Tag::Par || p->a->tag == ProcI::Tag::Link)
            return "!(" + s + ")";
        return "!" + s;
    }
    case ProcI::Tag::Res: {
        std::string s = print_pii(p->a);
        if (p->a->tag == ProcI::Tag::Par) return "nu. (" + s + ")";
        return "nu. " + s;
    }
    case ProcI::Tag::In: {
        std::string s = print_pii(p->a);
        if (p->a->tag == ProcI::Tag::Par)
            return print_chan(p->ch) + "(). (" + s + ")";
        return print_chan(p->ch) + "(). " + s;
    }
    case ProcI::Tag::Out: {
        std::string s = print_pii(p->a);
        if (p->a->tag == ProcI::Tag::Par)
            return print_chan(p->ch) + "!(). (" + s + ")";
        return print_chan(p->ch) + "!(). " + s;
    }
    case ProcI::Tag::Link:
        return print_chan(p->ch) + " -> " + print_chan(p->ch2);
    }
    return "?";
}

std::string canon_i(const ProcIP& p) { return print_pii(normalize_i(p)); }

// ---- inert-communication compression ----
namespace {
// Does outer index n occur anywhere in input-subject position?
bool inputs_on_idx(const ProcIP& p, unsigned n) {
    switch (p->tag) {
    case ProcI::Tag::Nil: return false;
    case ProcI::Tag::Par: return inputs_on_idx(p->a, n) || inputs_on_idx(p->b, n);
    case ProcI::Tag::Res: return inputs_on_idx(p->a, n + 1);
    case ProcI::Tag::Rep: return inputs_on_idx(p->a, n);
    case ProcI::Tag::In:
        if (p->ch == cr_bound(n)) return true;
        return inputs_on_idx(p->a, n + 1);
    case ProcI::Tag::Out: return inputs_on_idx(p->a, n + 1);
    case ProcI::Tag::Link: return p->ch == cr_bound(n);
    }
    return false;
}

// Within the body of a restriction (binder = index 0): if the only receiver
// on the restricted channel is a single persistent replicated input (a link
// counts) and some output on the channel is enabled, fire that communication.
// Nothing observable is lost: the receiver survives unchanged and no other
// receiver ever competes for the output.
bool fire_inert(std::vector<ProcIP>& comps) {
    int rep_in = -1;
    std::vector<size_t> outs;
    for (size_t j = 0; j < comps.size(); ++j) {
        const ProcIP& c = comps[j];
        bool is_rep_in =
            (c->tag == ProcI::Tag::Link && c->ch == cr_bound(0) &&
             c->ch2 != cr_bound(0)) ||
            (c->tag == ProcI::Tag::Rep && c->a->tag == ProcI::Tag::In &&
             c->a->ch == cr_bound(0) && !ref_in_proc(1, c->a->a));
        if (is_rep_in) {
            if (rep_in >= 0) return false;
            rep_in = (int)j;
            continue;
        }
        if (c->tag == ProcI::Tag::Out && c->ch == cr_bound(0) &&
            !inputs_on_idx(c->a, 1)) {
            outs.push_back(j);
            continue;
        }
        if (inputs_on_idx(c, 0)) return false;
    }
    if (rep_in < 0 || outs.empty()) return false;
    auto succ = tau_successors_i(ipar(comps[outs[0]], comps[(size_t)rep_in]));
    if (succ.empty()) return false;
    ProcIP fired = succ[0];
    std::vector<ProcIP> next;
    for (size_t j = 0; j < comps.size(); ++j)
        if (j != outs[0] && j != (size_t)rep_in) next.push_back(comps[j]);
    next.push_back(fired);
    comps = std::move(next);
    return true;
}
} // namespace

ProcIP compress_inert_i(const ProcIP& p0) {
    ProcIP p = normalize_i(p0);
    switch (p->tag) {
    case ProcI::Tag::Par: {
        std::vector<ProcIP> comps;
        flatten_i(p, comps);
        bool changed = false;
        for (auto& c : comps) {
            ProcIP c2 = compress_inert_i(c);
            if (print_pii(c2) != print_pii(c)) {
                c = c2;
                changed = true;
            }
        }
        if (!changed) return p;
        return compress_inert_i(rebuild_par_i(std::move(comps)));
    }
    case ProcI::Tag::Res: {
        std::vector<ProcIP> comps;
        flatten_i(p->a, comps);
        if (fire_inert(comps))
            return compress_inert_i(ires(rebuild_par_i(std::move(comps))));
        bool changed = false;
        for (auto& c : comps) {
            ProcIP c2 = compress_inert_i(c);
            if (print_pii(c2) != print_pii(c)) {
                c = c2;
                changed = true;
            }
        }
        if (changed)
            return compress_inert_i(ires(rebuild_par_i(std::move(comps))));
        return p;
    }
    default: return p;
    }
}

} // namespace pushpi
