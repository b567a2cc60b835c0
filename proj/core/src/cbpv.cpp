#include "pushpi/cbpv.hpp"
#include "pushpi/gensym.hpp"

#include <map>

namespace pushpi {

ValueP vvar(std::string x) {
    return std::make_shared<const Value>(Value{Value::Tag::Var, std::move(x), nullptr});
}
ValueP vthunk(TermP m) {
    return std::make_shared<const Value>(Value{Value::Tag::Thunk, "", std::move(m)});
}
TermP tval(ValueP v) {
    return std::make_shared<const Term>(Term{Term::Tag::Val, "", std::move(v), nullptr, nullptr, nullptr});
}
TermP tabs(std::string x, TermP body) {
    return std::make_shared<const Term>(Term{Term::Tag::Abs, std::move(x), nullptr, std::move(body), nullptr, nullptr});
}
TermP tapp(TermP fn, ValueP arg) {
    return std::make_shared<const Term>(Term{Term::Tag::App, "", std::move(arg), std::move(fn), nullptr, nullptr});
}
TermP tforce(ValueP v) {
    return std::make_shared<const Term>(Term{Term::Tag::Force, "", std::move(v), nullptr, nullptr, nullptr});
}
TermP tret(ValueP v) {
    return std::make_shared<const Term>(Term{Term::Tag::Ret, "", std::move(v), nullptr, nullptr, nullptr});
}
TermP tbind(TermP lhs, std::string x, TermP rhs) {
    return std::make_shared<const Term>(Term{Term::Tag::Bind, std::move(x), nullptr, std::move(lhs), std::move(rhs), nullptr});
}
TermP tann(TermP m, TypeP b) {
    return std::make_shared<const Term>(Term{Term::Tag::Ann, "", nullptr, std::move(m), nullptr, std::move(b)});
}

// ---- variable sets ----
namespace {
enum class VarKind { Free, Bound, All };

void vars_term(const TermP& m, VarKind k, std::set<std::string>& out);

void vars_value(const ValueP& v, VarKind k, std::set<std::string>& out) {
    if (v->tag == Value::Tag::Var) {
        if (k != VarKind::Bound) out.insert(v->name);
    } else {
        vars_term(v->body, k, out);
    }
}

void vars_term(const TermP& m, VarKind k, std::set<std::string>& out) {
    switch (m->tag) {
    case Term::Tag::Val: vars_value(m->v, k, out); break;
    case Term::Tag::Abs: {
        if (k == VarKind::Free) {
            std::set<std::string> inner;
            vars_term(m->m, k, inner);
            inner.erase(m->binder);
            out.insert(inner.begin(), inner.end());
        } else {
            out.insert(m->binder);
            vars_term(m->m, k, out);
        }
        break;
    }
    case Term::Tag::App:
        vars_term(m->m, k, out);
        vars_value(m->v, k, out);
        break;
    case Term::Tag::Force:
    case Term::Tag::Ret:
        vars_value(m->v, k, out);
        break;
    case Term::Tag::Bind: {
        vars_term(m->m, k, out);
        if (k == VarKind::Free) {
            std::set<std::string> inner;
            vars_term(m->n, k, inner);
            inner.erase(m->binder);
            out.insert(inner.begin(), inner.end());
        } else {
            out.insert(m->binder);
            vars_term(m->n, k, out);
        }
        break;
    }
    case Term::Tag::Ann:
        vars_term(m->m, k, out);
        break;
    }
}
} // namespace

std::set<std::string> free_vars(const TermP& m) {
    std::set<std::string> s;
    vars_term(m, VarKind::Free, s);
    return s;
}
std::set<std::string> free_vars(const ValueP& v) {
    std::set<std::string> s;
    vars_value(v, VarKind::Free, s);
    return s;
}
std::set<std::string> bound_vars(const TermP& m) {
    std::set<std::string> s;
    vars_term(m, VarKind::Bound, s);
    return s;
}
std::set<std::string> bound_vars(const ValueP& v) {
    std::set<std::string> s;
    vars_value(v, VarKind::Bound, s);
    return s;
}
std::set<std::string> all_vars(const TermP& m) {
    auto s = free_vars(m);
    auto b = bound_vars(m);
    s.insert(b.begin(), b.end());
    return s;
}
std::set<std::string> all_vars(const ValueP& v) {
    auto s = free_vars(v);
    auto b = bound_vars(v);
    s.insert(b.begin(), b.end());
    return s;
}

// ---- substitution ----
namespace {
// Shared handling for the two binding constructs: binder identical to the
// substituted variable shields the body; capture is avoided by renaming the
// binder only when it actually occurs free in the payload.
std::pair<std::string, TermP> subst_under_binder(const std::string& binder,
                                                 const TermP& body,
                                                 const ValueP& v,
                                                 const std::string& x) {
    if (binder == x) return {binder, body};
    auto fvv = free_vars(v);
    if (!fvv.count(binder)) return {binder, subst_cbpv(body, v, x)};
    std::string z = default_gensym().fresh("z");
    TermP renamed = subst_cbpv(body, vvar(z), binder);
    return {z, subst_cbpv(renamed, v, x)};
}
} // namespace

ValueP subst_cbpv(const ValueP& w, const ValueP& v, const std::string& x) {
    if (w->tag == Value::Tag::Var)
        return w->name == x ? v : w;
    return vthunk(subst_cbpv(w->body, v, x));
}

TermP subst_cbpv(const TermP& m, const ValueP& v, const std::string& x) {
    switch (m->tag) {
    case Term::Tag::Val: return tval(subst_cbpv(m->v, v, x));
    case Term::Tag::Abs: {
        auto [b, body] = subst_under_binder(m->binder, m->m, v, x);
        return tabs(b, body);
    }
    case Term::Tag::App:
        return tapp(subst_cbpv(m->m, v, x), subst_cbpv(m->v, v, x));
    case Term::Tag::Force: return tforce(subst_cbpv(m->v, v, x));
    case Term::Tag::Ret: return tret(subst_cbpv(m->v, v, x));
    case Term::Tag::Bind: {
        auto [b, rhs] = subst_under_binder(m->binder, m->n, v, x);
        return tbind(subst_cbpv(m->m, v, x), b, rhs);
    }
    case Term::Tag::Ann:
        return tann(subst_cbpv(m->m, v, x), m->type);
    }
    return m;
}

// ---- small step ----
std::optional<TermP> step_cbpv(const TermP& m) {
    switch (m->tag) {
    case Term::Tag::Ann:
        return step_cbpv(m->m);
    case Term::Tag::Force:
        if (m->v->tag == Value::Tag::Thunk) return m->v->body;
        return std::nullopt;
    case Term::Tag::App:
        if (m->m->tag == Term::Tag::Abs)
            return subst_cbpv(m->m->m, m->v, m->m->binder);
        if (auto s = step_cbpv(m->m)) return tapp(*s, m->v);
        return std::nullopt;
    case Term::Tag::Bind:
        if (m->m->tag == Term::Tag::Ret)
            return subst_cbpv(m->n, m->m->v, m->binder);
        if (auto s = step_cbpv(m->m)) return tbind(*s, m->binder, m->n);
        return std::nullopt;
    default:
        return std::nullopt;
    }
}

CbpvReduceResult reduce_cbpv(const TermP& m, unsigned fuel) {
    CbpvReduceResult res;
    res.final = m;
    for (unsigned i = 0; i < fuel; ++i) {
        auto s = step_cbpv(res.final);
        if (!s) return res;
        res.final = *s;
        ++res.steps;
    }
    res.exhausted = step_cbpv(res.final).has_value();
    return res;
}

bool is_terminal(const TermP& m) {
    switch (m->tag) {
    case Term::Tag::Val:
    case Term::Tag::Abs:
    case Term::Tag::Ret:
        return true;
    case Term::Tag::Ann:
        return is_terminal(m->m);
    default:
        return false;
    }
}

bool value_eq(const ValueP& a, const ValueP& b) {
    if (a->tag != b->tag) return false;
    if (a->tag == Value::Tag::Var) return a->name == b->name;
    return term_eq(a->body, b->body);
}

bool term_eq(const TermP& a, const TermP& b) {
    if (a == b) return true;
    if (a->tag != b->tag) return false;
    switch (a->tag) {
    case Term::Tag::Val: return value_eq(a->v, b->v);
    case Term::Tag::Abs: return a->binder == b->binder && term_eq(a->m, b->m);
    case Term::Tag::App: return term_eq(a->m, b->m) && value_eq(a->v, b->v);
    case Term::Tag::Force:
    case Term::Tag::Ret: return value_eq(a->v, b->v);
    case Term::Tag::Bind:
        return a->binder == b->binder && term_eq(a->m, b->m) && term_eq(a->n, b->n);
    case Term::Tag::Ann:
        return term_eq(a->m, b->m) && type_eq(a->type, b->type);
    }
    return false;
}

namespace {
using Env = std::map<std::string, std::string>;

bool aeq_term(const TermP& a, const TermP& b, Env ea, Env eb, unsigned& d);

bool aeq_value(const ValueP& a, const ValueP& b, Env ea, Env eb, unsigned& d) {
    if (a->tag != b->tag) return false;
    if (a->tag == Value::Tag::Var) {
        auto ia = ea.find(a->name), ib = eb.find(b->name);
        if (ia != ea.end() || ib != eb.end())
            return ia != ea.end() && ib != eb.end() && ia->second == ib->second;
        return a->name == b->name;
    }
    return aeq_term(a->body, b->body, ea, eb, d);
}

bool aeq_term(const TermP& a, const TermP& b, Env ea, Env eb, unsigned& d) {
    if (a->tag != b->tag) return false;
    switch (a->tag) {
    case Term::Tag::Val: return aeq_value(a->v, b->v, ea, eb, d);
    case Term::Tag::Abs: {
        std::string c = "%" + std::to_string(d++);
        ea[a->binder] = c;
        eb[b->binder] = c;
        return aeq_term(a->m, b->m, ea, eb, d);
    }
    case Term::Tag::App:
        return aeq_term(a->m, b->m, ea, eb, d) && aeq_value(a->v, b->v, ea, eb, d);
    case Term::Tag::Force:
    case Term::Tag::Ret:
        return aeq_value(a->v, b->v, ea, eb, d);
    case Term::Tag::Bind: {
        if (!aeq_term(a->m, b->m, ea, eb, d)) return false;
        std::string c = "%" + std::to_string(d++);
        ea[a->binder] = c;
        eb[b->binder] = c;
        return aeq_term(a->n, b->n, ea, eb, d);
    }
    case Term::Tag::Ann:
        return type_eq(a->type, b->type) && aeq_term(a->m, b->m, ea, eb, d);
    }
    return false;
}
} // namespace

bool term_alpha_eq(const TermP& a, const TermP& b) {
    unsigned d = 0;
    return aeq_term(a, b, {}, {}, d);
}

namespace {
ValueP strip_ann_value(const ValueP& v) {
    if (v->tag == Value::Tag::Thunk) return vthunk(strip_annotations(v->body));
    return v;
}
} // namespace

TermP strip_annotations(const TermP& m) {
    switch (m->tag) {
    case Term::Tag::Val: return tval(strip_ann_value(m->v));
    case Term::Tag::Abs: return tabs(m->binder, strip_annotations(m->m));
    case Term::Tag::App: return tapp(strip_annotations(m->m), strip_ann_value(m->v));
    case Term::Tag::Force: return tforce(strip_ann_value(m->v));
    case Term::Tag::Ret: return tret(strip_ann_value(m->v));
    case Term::Tag::Bind:
        return tbind(strip_annotations(m->m), m->binder, strip_annotations(m->n));
    case Term::Tag::Ann: return strip_annotations(m->m);
    }
    return m;
}

// ---- printing (the parser accepts exactly this grammar) ----
namespace {
std::string print_term_atom(const TermP& m) {
    if (m->tag == Term::Tag::Val && m->v->tag == Value::Tag::Var) return m->v->name;
    return "(" + print_cbpv(m) + ")";
}

std::string print_value_inline(const ValueP& v) {
    if (v->tag == Value::Tag::Var) return v->name;
    return "thunk " + print_term_atom(v->body);
}

std::string print_app_head(const TermP& m) {
    if (m->tag == Term::Tag::App)
        return print_app_head(m->m) + " " + print_value_inline(m->v);
    return print_term_atom(m);
}
} // namespace

std::string print_cbpv(const ValueP& v) { return print_value_inline(v); }

std::string print_cbpv(const TermP& m) {
    switch (m->tag) {
    case Term::Tag::Val: return print_value_inline(m->v);
    case Term::Tag::Abs: return "\\" + m->binder + ". " + print_cbpv(m->m);
    case Term::Tag::App: return print_app_head(m->m) + " " + print_value_inline(m->v);
    case Term::Tag::Force: return "force " + print_value_inline(m->v);
    case Term::Tag::Ret: return "return " + print_value_inline(m->v);
    case Term::Tag::Bind: {
        std::string lhs = (m->m->tag == Term::Tag::Bind || m->m->tag == Term::Tag::Abs)
                              ? "(" + print_cbpv(m->m) + ")"
                              : print_cbpv(m->m);
        return lhs + " >>= \\" + m->binder + ". " + print_cbpv(m->n);
    }
    case Term::Tag::Ann:
        return "(" + print_cbpv(m->m) + " : " + print_type(m->type) + ")";
    }
    return "?";
}

} // namespace pushpi
