#include "pushpi/encode.hpp"
#include "pushpi/gensym.hpp"

#include <stdexcept>

namespace pushpi {

// ---- lambda -> combined calculus ----
TermP cbv_to_cbpv(const LTermP& m) {
    switch (m->tag) {
    case LTerm::Tag::Var:
        return tret(vvar(m->name));
    case LTerm::Tag::Abs:
        return tret(vthunk(tabs(m->name, cbv_to_cbpv(m->a))));
    case LTerm::Tag::App: {
        std::string f = default_gensym().fresh("f");
        std::string x = default_gensym().fresh("x");
        return tbind(cbv_to_cbpv(m->a), f,
                     tbind(cbv_to_cbpv(m->b), x,
                           tapp(tforce(vvar(f)), vvar(x))));
    }
    }
    throw std::logic_error("cbv_to_cbpv: unreachable");
}

TermP cbn_to_cbpv(const LTermP& m) {
    switch (m->tag) {
    case LTerm::Tag::Var:
        return tforce(vvar(m->name));
    case LTerm::Tag::Abs:
        return tabs(m->name, cbn_to_cbpv(m->a));
    case LTerm::Tag::App:
        return tapp(cbn_to_cbpv(m->a), vthunk(cbn_to_cbpv(m->b)));
    }
    throw std::logic_error("cbn_to_cbpv: unreachable");
}

// ---- combined calculus -> named pi (monadic) ----
namespace {
ProcP pi_enc(const TermP& m, const std::string& u, const std::string& r);

ProcP pi_assign(const std::string& y, const ValueP& v) {
    if (v->tag == Value::Tag::Var) {
        std::string w = default_gensym().fresh("w");
        return prep(pin(y, w, pout(v->name, w, pnil())));
    }
    std::string s = default_gensym().fresh("s");
    return prep(pin(y, s, pin(s, "u", pin(s, "r", pi_enc(v->body, "u", "r")))));
}

ProcP pi_enc_val(const ValueP& v, const std::string& u) {
    std::string y = default_gensym().fresh("y");
    return pres(y, pout(u, y, pi_assign(y, v)));
}

ProcP pi_enc(const TermP& m, const std::string& u, const std::string& r) {
    switch (m->tag) {
    case Term::Tag::Ann:
        return pi_enc(m->m, u, r);
    case Term::Tag::Val:
        return pi_enc_val(m->v, u);
    case Term::Tag::Ret:
        return pi_enc_val(m->v, r);
    case Term::Tag::Abs: {
        std::string s = default_gensym().fresh("s");
        return pin(u, s, pin(s, "u", pin(s, "r", pin(s, m->binder,
                         pi_enc(m->m, "u", "r")))));
    }
    case Term::Tag::App: {
        std::string p = default_gensym().fresh("p");
        std::string q = default_gensym().fresh("q");
        std::string s = default_gensym().fresh("s");
        return pres(p, pres(q, ppar(
            pi_enc(m->m, p, q),
            pres(s, pout(p, s, pout(s, u, pout(s, r, pi_enc_val(m->v, s))))))));
    }
    case Term::Tag::Force: {
        std::string p = default_gensym().fresh("p");
        std::string y = default_gensym().fresh("y");
        std::string s = default_gensym().fresh("s");
        return pres(p, ppar(
            pi_enc_val(m->v, p),
            pin(p, y, pres(s, pout(y, s, pout(s, u, pout(s, r, pnil())))))));
    }
    case Term::Tag::Bind: {
        std::string z = default_gensym().fresh("z");
        return pres(z, ppar(pres(u, pi_enc(m->m, u, z)),
                            pin(z, m->binder, pi_enc(m->n, u, r))));
    }
    }
    throw std::logic_error("cbpv_to_pi: unreachable");
}
} // namespace

ProcP cbpv_assign_pi(const std::string& y, const ValueP& v) {
    return pi_assign(y, v);
}

ProcP cbpv_to_pi(const TermP& m, const std::string& u, const std::string& r) {
    if (u == r) throw std::invalid_argument("handles must be distinct");
    auto fv = free_vars(m);
    if (fv.count(u) || fv.count(r))
        throw std::invalid_argument("handle clashes with a free variable");
    return pi_enc(m, u, r);
}

// The abstraction and thunk clauses rebind the handle names "u" and "r";
// they must therefore stay distinct from the term's variables at the entry
// point.  Recursive calls re-enter through pi_enc, where the rebinding is
// intentional.

// ---- combined calculus -> named pi (polyadic sugar) ----
namespace {
PolyProcP mk_poly(PolyProc p) { return std::make_shared<const PolyProc>(std::move(p)); }
PolyProcP ynil() { return mk_poly({PolyProc::Tag::Nil, "", {}, nullptr, nullptr}); }
PolyProcP ypar(PolyProcP a, PolyProcP b) {
    return mk_poly({PolyProc::Tag::Par, "", {}, std::move(a), std::move(b)});
}
PolyProcP yres(std::string x, PolyProcP a) {
    return mk_poly({PolyProc::Tag::Res, std::move(x), {}, std::move(a), nullptr});
}
PolyProcP yrep(PolyProcP a) {
    return mk_poly({PolyProc::Tag::Rep, "", {}, std::move(a), nullptr});
}
PolyProcP yin(std::string subj, std::vector<std::string> binders, PolyProcP a) {
    return mk_poly({PolyProc::Tag::In, std::move(subj), std::move(binders),
                    std::move(a), nullptr});
}
PolyProcP yout(std::string subj, std::vector<std::string> objs, PolyProcP a) {
    return mk_poly({PolyProc::Tag::Out, std::move(subj), std::move(objs),
                    std::move(a), nullptr});
}

PolyProcP poly_enc(const TermP& m, const std::string& u, const std::string& r);

PolyProcP poly_assign(const std::string& y, const ValueP& v) {
    std::string u = default_gensym().fresh("u");
    std::string r = default_gensym().fresh("r");
    if (v->tag == Value::Tag::Var)
        return yrep(yin(y, {u, r}, yout(v->name, {u, r}, ynil())));
    return yrep(yin(y, {u, r}, poly_enc(v->body, u, r)));
}

PolyProcP poly_enc_val(const ValueP& v, const std::string& u) {
    std::string y = default_gensym().fresh("y");
    return yres(y, yout(u, {y}, poly_assign(y, v)));
}

PolyProcP poly_enc(const TermP& m, const std::string& u, const std::string& r) {
    switch (m->tag) {
    case Term::Tag::Ann: return poly_enc(m->m, u, r);
    case Term::Tag::Val: return poly_enc_val(m->v, u);
    case Term::Tag::Ret: return poly_enc_val(m->v, r);
    case Term::Tag::Abs: {
        std::string v = default_gensym().fresh("v");
        return yin(u, {v, r}, yin(u, {m->binder}, poly_enc(m->m, v, r)));
    }
    case Term::Tag::App: {
        std::string p = default_gensym().fresh("p");
        std::string q = default_gensym().fresh("q");
        return yres(p, yres(q, ypar(
            poly_enc(m->m, p, q),
            yout(p, {u, r}, poly_enc_val(m->v, p)))));
    }
    case Term::Tag::Force: {
        std::string p = default_gensym().fresh("p");
        std::string y = default_gensym().fresh("y");
        return yres(p, ypar(poly_enc_val(m->v, p),
                            yin(p, {y}, yout(y, {u, r}, ynil()))));
    }
    case Term::Tag::Bind: {
        std::string z = default_gensym().fresh("z");
        return yres(z, ypar(yres(u, poly_enc(m->m, u, z)),
                            yin(z, {m->binder}, poly_enc(m->n, u, r))));
    }
    }
    throw std::logic_error("cbpv_to_pi_poly: unreachable");
}

std::string join_names(const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i];
    }
    return s;
}
} // namespace

PolyProcP cbpv_to_pi_poly(const TermP& m, const std::string& u, const std::string& r) {
    if (u == r) throw std::invalid_argument("handles must be distinct");
    return poly_enc(m, u, r);
}

std::string print_poly(const PolyProcP& p) {
    switch (p->tag) {
    case PolyProc::Tag::Nil: return "0";
    case PolyProc::Tag::Par: return print_poly(p->a) + " | " + print_poly(p->b);
    case PolyProc::Tag::Rep: {
        std::string s = print_poly(p->a);
        return p->a->tag == PolyProc::Tag::Par ? "!(" + s + ")" : "!" + s;
    }
    case PolyProc::Tag::Res: {
        std::string s = print_poly(p->a);
        if (p->a->tag == PolyProc::Tag::Par) return "new " + p->subj + ". (" + s + ")";
        return "new " + p->subj + ". " + s;
    }
    case PolyProc::Tag::In: {
        std::string s = print_poly(p->a);
        std::string head = p->subj + "(" + join_names(p->objs) + ")";
        if (p->a->tag == PolyProc::Tag::Par) return head + ". (" + s + ")";
        return head + ". " + s;
    }
    case PolyProc::Tag::Out: {
        std::string s = print_poly(p->a);
        std::string head = p->subj + "<" + join_names(p->objs) + ">";
        if (p->a->tag == PolyProc::Tag::Par) return head + ". (" + s + ")";
        return head + ". " + s;
    }
    }
    return "?";
}

// ---- classic lambda encodings ----
ProcP milner_cbn(const LTermP& m, const std::string& u) {
    switch (m->tag) {
    case LTerm::Tag::Var:
        return pout(m->name, u, pnil());
    case LTerm::Tag::Abs: {
        std::string v = default_gensym().fresh("v");
        return pin(u, m->name, pin(u, v, milner_cbn(m->a, v)));
    }
    case LTerm::Tag::App: {
        std::string v = default_gensym().fresh("v");
        std::string x = default_gensym().fresh("x");
        std::string w = default_gensym().fresh("w");
        ProcP env = prep(pin(x, w, milner_cbn(m->b, w)));
        return pres(v, ppar(milner_cbn(m->a, v),
                            pres(x, pout(v, x, pout(v, u, env)))));
    }
    }
    throw std::logic_error("milner_cbn: unreachable");
}

namespace {
ProcP milner_cbv_assign(const std::string& y, const LTermP& v) {
    if (v->tag == LTerm::Tag::Var) {
        std::string w = default_gensym().fresh("w");
        return prep(pin(y, w, pout(v->name, w, pnil())));
    }
    // abstraction
    std::string w = default_gensym().fresh("w");
    std::string q = default_gensym().fresh("q");
    return prep(pin(y, w, pin(w, v->name, pin(w, q, milner_cbv(v->a, q)))));
}
} // namespace

ProcP milner_cbv(const LTermP& m, const std::string& p) {
    if (is_lvalue(m)) {
        std::string y = default_gensym().fresh("y");
        return pres(y, pout(p, y, milner_cbv_assign(y, m)));
    }
    // application
    std::string q = default_gensym().fresh("q");
    std::string r = default_gensym().fresh("r");
    std::string y = default_gensym().fresh("y");
    std::string v = default_gensym().fresh("v");
    std::string z = default_gensym().fresh("z");
    ProcP glue = pin(q, y, pres(v, pout(y, v, pin(r, z, pout(v, z, pout(v, p, pnil()))))));
    return pres(q, pres(r, ppar(glue, ppar(milner_cbv(m->a, q), milner_cbv(m->b, r)))));
}

// ---- combined calculus (locally nameless) -> internal pi ----
Refs inc_refs(unsigned n, unsigned m, const Refs& refs) {
    Refs out;
    out.reserve(refs.size());
    for (const auto& [x, y] : refs) out.push_back({x + n, y + m});
    return out;
}

unsigned find_ref(unsigned n, const Refs& refs) {
    for (const auto& [x, y] : refs)
        if (x == n) return y;
    return 42;  // deliberately absurd: unreachable through the checked entry
}

namespace {
ProcIP ii_pointer(ProcIP p) {
    return irep(iin(cr_bound(0), iin(cr_bound(0), iin(cr_bound(1), std::move(p)))));
}

ProcIP ii_encode_value(const ValueDBP& v, const Refs& refs);

ProcIP ii_encode(const TermDBP& s, unsigned u, unsigned r, const Refs& refs) {
    switch (s->tag) {
    case TermDB::Tag::Abs: {
        Refs inner = inc_refs(1, 4, refs);
        inner.insert(inner.begin(), {0, 0});
        return iout(cr_bound(u),
               iin(cr_bound(0),
               iin(cr_bound(1),
               iin(cr_bound(2), ii_encode(s->m, 2, 1, inner)))));
    }
    case TermDB::Tag::App: {
        Refs inner = inc_refs(0, 4, refs);
        ProcIP glue =
            iin(cr_bound(3),
            iin(cr_bound(2),
            iout(cr_bound(1),
            iout(cr_bound(2),
            iout(cr_bound(3),
                 ipar(ilink(cr_bound(2), cr_bound(9 + u)),
                      ipar(ilink(cr_bound(1), cr_bound(9 + r)),
                           ilink(cr_bound(0), cr_bound(3)))))))));
        ProcIP body = ipar(glue,
                           ipar(ii_encode(s->m, 3, 2, inner),
                                iout(cr_bound(1), ii_encode_value(s->v, inner))));
        return ires(ires(ires(ires(body))));
    }
    case TermDB::Tag::Force: {
        Refs inner = inc_refs(0, 2, refs);
        ProcIP body = ipar(
            iout(cr_bound(1), ii_encode_value(s->v, inner)),
            iin(cr_bound(1),
            iout(cr_bound(0),
            iout(cr_bound(0),
            iout(cr_bound(1),
                 ipar(ilink(cr_bound(1), cr_bound(6 + u)),
                      ilink(cr_bound(0), cr_bound(6 + r))))))));
        return ires(ires(body));
    }
    case TermDB::Tag::Ret:
        return iout(cr_bound(r), ii_encode_value(s->v, refs));
    case TermDB::Tag::Bind: {
        Refs lhs_refs = inc_refs(0, 2, refs);
        Refs rhs_refs = inc_refs(1, 3, refs);
        rhs_refs.insert(rhs_refs.begin(), {0, 0});
        ProcIP body = ipar(
            ii_encode(s->m, 1, 0, lhs_refs),
            iin(cr_bound(0), ii_encode(s->n, 3 + u, 3 + r, rhs_refs)));
        return ires(ires(body));
    }
    case TermDB::Tag::Val:
        return iout(cr_bound(u), ii_encode_value(s->v, refs));
    }
    throw std::logic_error("cbpv_to_pii: unreachable");
}

ProcIP ii_encode_value(const ValueDBP& v, const Refs& refs) {
    switch (v->tag) {
    case ValueDB::Tag::Bound:
        return ii_pointer(ilink(cr_bound(0), cr_bound(find_ref(v->index, refs) + 4)));
    case ValueDB::Tag::Free:
        return ii_pointer(ilink(cr_bound(0), cr_free(v->name)));
    case ValueDB::Tag::Thunk:
        return ii_pointer(ii_encode(v->body, 1, 0, inc_refs(0, 4, refs)));
    }
    throw std::logic_error("cbpv_to_pii: unreachable value");
}
} // namespace

ProcIP cbpv_to_pii(const TermDBP& m, unsigned u, unsigned r, const Refs& refs) {
    return ii_encode(m, u, r, refs);
}

ProcIP encode_entry(const TermDBP& m) {
    if (!wf_term(0, m))
        throw std::invalid_argument("not closed under de Bruijn discipline");
    return ires(ires(cbpv_to_pii(m, 1, 0, {})));
}

// ---- combined calculus -> named polyadic internal pi ----
namespace {
PolyProcIP mk_polyi(PolyProcI p) {
    return std::make_shared<const PolyProcI>(std::move(p));
}
PolyProcIP jnil() { return mk_polyi({PolyProcI::Tag::Nil, "", "", {}, nullptr, nullptr}); }
PolyProcIP jpar(PolyProcIP a, PolyProcIP b) {
    return mk_polyi({PolyProcI::Tag::Par, "", "", {}, std::move(a), std::move(b)});
}
PolyProcIP jres(std::string x, PolyProcIP a) {
    return mk_polyi({PolyProcI::Tag::Res, std::move(x), "", {}, std::move(a), nullptr});
}
PolyProcIP jrep(PolyProcIP a) {
    return mk_polyi({PolyProcI::Tag::Rep, "", "", {}, std::move(a), nullptr});
}
PolyProcIP jin(std::string subj, std::vector<std::string> binders, PolyProcIP a) {
    return mk_polyi({PolyProcI::Tag::In, std::move(subj), "", std::move(binders),
                     std::move(a), nullptr});
}
PolyProcIP jbout(std::string subj, std::vector<std::string> binders, PolyProcIP a) {
    return mk_polyi({PolyProcI::Tag::BOut, std::move(subj), "", std::move(binders),
                     std::move(a), nullptr});
}
PolyProcIP jlink(std::string from, std::string to) {
    return mk_polyi({PolyProcI::Tag::Link, std::move(from), std::move(to), {},
                     nullptr, nullptr});
}

PolyProcIP ji_enc(const TermP& m, const std::string& u, const std::string& r);

PolyProcIP ji_assign(const std::string& y, const ValueP& v) {
    std::string u2 = default_gensym().fresh("u");
    std::string r2 = default_gensym().fresh("r");
    if (v->tag == Value::Tag::Var) {
        std::string u3 = default_gensym().fresh("u");
        std::string r3 = default_gensym().fresh("r");
        return jrep(jin(y, {u2, r2},
                    jbout(v->name, {u3, r3},
                          jpar(jlink(u3, u2), jlink(r3, r2)))));
    }
    return jrep(jin(y, {u2, r2}, ji_enc(v->body, u2, r2)));
}

PolyProcIP ji_enc_val(const ValueP& v, const std::string& u) {
    std::string y = default_gensym().fresh("y");
    return jbout(u, {y}, ji_assign(y, v));
}

PolyProcIP ji_enc(const TermP& m, const std::string& u, const std::string& r) {
    switch (m->tag) {
    case Term::Tag::Ann: return ji_enc(m->m, u, r);
    case Term::Tag::Val: return ji_enc_val(m->v, u);
    case Term::Tag::Ret: return ji_enc_val(m->v, r);
    case Term::Tag::Abs: {
        std::string e = default_gensym().fresh("e");
        return jbout(u, {e}, jin(e, {u, r, m->binder}, ji_enc(m->m, u, r)));
    }
    case Term::Tag::App: {
        std::string a = default_gensym().fresh("a");
        std::string b = default_gensym().fresh("b");
        std::string c = default_gensym().fresh("c");
        std::string d = default_gensym().fresh("d");
        std::string e = default_gensym().fresh("e");
        std::string x = default_gensym().fresh("x");
        std::string u2 = default_gensym().fresh("u");
        std::string r2 = default_gensym().fresh("r");
        std::string x2 = default_gensym().fresh("x");
        PolyProcIP glue =
            jin(a, {e},
            jin(c, {x},
            jbout(e, {u2, r2, x2},
                  jpar(jlink(u2, u), jpar(jlink(r2, r), jlink(x2, x))))));
        PolyProcIP body = jpar(ji_enc(m->m, a, b),
                               jpar(glue, ji_enc_val(m->v, c)));
        // the value is encoded at handles (c, d); d never fires
        (void)d;
        return jres(a, jres(b, jres(c, jres(d, body))));
    }
    case Term::Tag::Force: {
        std::string a = default_gensym().fresh("a");
        std::string b = default_gensym().fresh("b");
        std::string y = default_gensym().fresh("y");
        std::string u2 = default_gensym().fresh("u");
        std::string r2 = default_gensym().fresh("r");
        PolyProcIP right =
            jin(a, {y},
            jbout(y, {u2, r2}, jpar(jlink(u2, u), jlink(r2, r))));
        return jres(a, jres(b, jpar(ji_enc_val(m->v, a), right)));
    }
    case Term::Tag::Bind: {
        std::string a = default_gensym().fresh("a");
        std::string b = default_gensym().fresh("b");
        return jres(a, jres(b, jpar(ji_enc(m->m, a, b),
                                    jin(b, {m->binder}, ji_enc(m->n, u, r)))));
    }
    }
    throw std::logic_error("cbpv_to_pii_named: unreachable");
}
} // namespace

PolyProcIP cbpv_assign_pii_named(const std::string& y, const ValueP& v) {
    return ji_assign(y, v);
}

PolyProcIP cbpv_to_pii_named(const TermP& m, const std::string& u, const std::string& r) {
    if (u == r) throw std::invalid_argument("handles must be distinct");
    return ji_enc(m, u, r);
}

std::string print_poly_i(const PolyProcIP& p) {
    switch (p->tag) {
    case PolyProcI::Tag::Nil: return "0";
    case PolyProcI::Tag::Par: return print_poly_i(p->a) + " | " + print_poly_i(p->b);
    case PolyProcI::Tag::Rep: {
        std::string s = print_poly_i(p->a);
        return p->a->tag == PolyProcI::Tag::Par ? "!(" + s + ")" : "!" + s;
    }
    case PolyProcI::Tag::Res: {
        std::string s = print_poly_i(p->a);
        if (p->a->tag == PolyProcI::Tag::Par) return "nu " + p->subj + ". (" + s + ")";
        return "nu " + p->subj + ". " + s;
    }
    case PolyProcI::Tag::In: {
        std::string head = p->subj + "(" + join_names(p->objs) + ")";
        std::string s = print_poly_i(p->a);
        if (p->a->tag == PolyProcI::Tag::Par) return head + ". (" + s + ")";
        return head + ". " + s;
    }
    case PolyProcI::Tag::BOut: {
        std::string head = p->subj + "!(" + join_names(p->objs) + ")";
        std::string s = print_poly_i(p->a);
        if (p->a->tag == PolyProcI::Tag::Par) return head + ". (" + s + ")";
        return head + ". " + s;
    }
    case PolyProcI::Tag::Link:
        return p->subj + " -> " + p->subj2;
    }
    return "?";
}

// ---- polyadic -> monadic internal pi ----
namespace {
struct IEnv {
    std::vector<std::string> stack;  // innermost binder last

    ChanRef resolve(const std::string& x) const {
        for (size_t i = 0; i < stack.size(); ++i) {
            size_t j = stack.size() - 1 - i;
            if (stack[j] == x) return cr_bound(static_cast<unsigned>(i));
        }
        return cr_free(x);
    }
};

ProcIP p2m(const PolyProcIP& p, IEnv& env);

// Channel-then-payload: one session name is communicated, then each payload
// name travels over the session with the same polarity.  Pairs end with a
// check-communication of opposite polarity so that a pair can never fully
// synchronize with a singleton or a triple.
ProcIP p2m_action(bool is_input, const std::string& subj,
                  const std::vector<std::string>& objs, const PolyProcIP& cont,
                  IEnv& env) {
    ChanRef ch = env.resolve(subj);
    if (objs.size() == 1) {
        env.stack.push_back(objs[0]);
        ProcIP body = p2m(cont, env);
        env.stack.pop_back();
        return is_input ? iin(ch, body) : iout(ch, body);
    }
    size_t pushed = 0;
    env.stack.push_back("#session");
    ++pushed;
    ProcIP inner;
    {
        // build from the inside out, so first extend the environment fully
        std::vector<std::string> order = objs;
        for (const auto& o : order) {
            env.stack.push_back(o);
            ++pushed;
        }
        bool check = objs.size() == 2;
        if (check) {
            env.stack.push_back("#check");
            ++pushed;
        }
        ProcIP body = p2m(cont, env);
        // payload index k (0-based) is communicated when k binders follow the
        // session entry, so the session sits at index k at that point
        if (check) {
            unsigned session_at = static_cast<unsigned>(objs.size());
            body = is_input ? iout(cr_bound(session_at), body)
                            : iin(cr_bound(session_at), body);
        }
        for (size_t k = objs.size(); k-- > 0;) {
            unsigned session_at = static_cast<unsigned>(k);
            body = is_input ? iin(cr_bound(session_at), body)
                            : iout(cr_bound(session_at), body);
        }
        inner = body;
    }
    while (pushed--) env.stack.pop_back();
    return is_input ? iin(ch, inner) : iout(ch, inner);
}

ProcIP p2m(const PolyProcIP& p, IEnv& env) {
    switch (p->tag) {
    case PolyProcI::Tag::Nil: return inil();
    case PolyProcI::Tag::Par: {
        ProcIP a = p2m(p->a, env);
        ProcIP b = p2m(p->b, env);
        return ipar(a, b);
    }
    case PolyProcI::Tag::Res: {
        env.stack.push_back(p->subj);
        ProcIP a = p2m(p->a, env);
        env.stack.pop_back();
        return ires(a);
    }
    case PolyProcI::Tag::Rep: return irep(p2m(p->a, env));
    case PolyProcI::Tag::In: return p2m_action(true, p->subj, p->objs, p->a, env);
    case PolyProcI::Tag::BOut: return p2m_action(false, p->subj, p->objs, p->a, env);
    case PolyProcI::Tag::Link:
        return ilink(env.resolve(p->subj), env.resolve(p->subj2));
    }
    throw std::logic_error("poly_to_mono: unreachable");
}
} // namespace

ProcIP poly_to_mono(const PolyProcIP& p) {
    IEnv env;
    return p2m(p, env);
}

} // namespace pushpi
