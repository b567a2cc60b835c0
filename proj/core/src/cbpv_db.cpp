#include "pushpi/cbpv_db.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace pushpi {

ValueDBP dbound(unsigned n) {
    return std::make_shared<const ValueDB>(ValueDB{ValueDB::Tag::Bound, n, "", nullptr});
}
ValueDBP dfree(std::string x) {
    return std::make_shared<const ValueDB>(ValueDB{ValueDB::Tag::Free, 0, std::move(x), nullptr});
}
ValueDBP dthunk(TermDBP m) {
    return std::make_shared<const ValueDB>(ValueDB{ValueDB::Tag::Thunk, 0, "", std::move(m)});
}
TermDBP dval(ValueDBP v) {
    return std::make_shared<const TermDB>(TermDB{TermDB::Tag::Val, std::move(v), nullptr, nullptr});
}
TermDBP dabs(TermDBP body) {
    return std::make_shared<const TermDB>(TermDB{TermDB::Tag::Abs, nullptr, std::move(body), nullptr});
}
TermDBP dapp(TermDBP fn, ValueDBP arg) {
    return std::make_shared<const TermDB>(TermDB{TermDB::Tag::App, std::move(arg), std::move(fn), nullptr});
}
TermDBP dforce(ValueDBP v) {
    return std::make_shared<const TermDB>(TermDB{TermDB::Tag::Force, std::move(v), nullptr, nullptr});
}
TermDBP dret(ValueDBP v) {
    return std::make_shared<const TermDB>(TermDB{TermDB::Tag::Ret, std::move(v), nullptr, nullptr});
}
TermDBP dbind(TermDBP lhs, TermDBP rhs) {
    return std::make_shared<const TermDB>(TermDB{TermDB::Tag::Bind, nullptr, std::move(lhs), std::move(rhs)});
}

bool valuedb_eq(const ValueDBP& a, const ValueDBP& b) {
    if (a->tag != b->tag) return false;
    switch (a->tag) {
    case ValueDB::Tag::Bound: return a->index == b->index;
    case ValueDB::Tag::Free: return a->name == b->name;
    case ValueDB::Tag::Thunk: return termdb_eq(a->body, b->body);
    }
    return false;
}

bool termdb_eq(const TermDBP& a, const TermDBP& b) {
    if (a == b) return true;
    if (a->tag != b->tag) return false;
    switch (a->tag) {
    case TermDB::Tag::Val: return valuedb_eq(a->v, b->v);
    case TermDB::Tag::Abs: return termdb_eq(a->m, b->m);
    case TermDB::Tag::App: return termdb_eq(a->m, b->m) && valuedb_eq(a->v, b->v);
    case TermDB::Tag::Force:
    case TermDB::Tag::Ret: return valuedb_eq(a->v, b->v);
    case TermDB::Tag::Bind: return termdb_eq(a->m, b->m) && termdb_eq(a->n, b->n);
    }
    return false;
}

namespace {
std::string print_value_db(const ValueDBP& v) {
    switch (v->tag) {
    case ValueDB::Tag::Bound: return std::to_string(v->index);
    case ValueDB::Tag::Free: return v->name;
    case ValueDB::Tag::Thunk: return "thunk (" + print_cbpv_db(v->body) + ")";
    }
    return "?";
}
} // namespace

std::string print_cbpv_db(const TermDBP& m) {
    switch (m->tag) {
    case TermDB::Tag::Val: return print_value_db(m->v);
    case TermDB::Tag::Abs: return "\\. " + print_cbpv_db(m->m);
    case TermDB::Tag::App: return "(" + print_cbpv_db(m->m) + ") " + print_value_db(m->v);
    case TermDB::Tag::Force: return "force " + print_value_db(m->v);
    case TermDB::Tag::Ret: return "return " + print_value_db(m->v);
    case TermDB::Tag::Bind:
        return "(" + print_cbpv_db(m->m) + ") >>= (" + print_cbpv_db(m->n) + ")";
    }
    return "?";
}

bool wf_value(unsigned n, const ValueDBP& v) {
    switch (v->tag) {
    case ValueDB::Tag::Bound: return v->index < n;
    case ValueDB::Tag::Free: return true;
    case ValueDB::Tag::Thunk: return wf_term(n, v->body);
    }
    return false;
}

bool wf_term(unsigned n, const TermDBP& m) {
    switch (m->tag) {
    case TermDB::Tag::Val: return wf_value(n, m->v);
    case TermDB::Tag::Abs: return wf_term(n + 1, m->m);
    case TermDB::Tag::App: return wf_term(n, m->m) && wf_value(n, m->v);
    case TermDB::Tag::Force:
    case TermDB::Tag::Ret: return wf_value(n, m->v);
    case TermDB::Tag::Bind: return wf_term(n, m->m) && wf_term(n + 1, m->n);
    }
    return false;
}

ValueDBP SubstDB::apply(unsigned n) const {
    if (n < prefix.size()) return prefix[n];
    return dbound(n - static_cast<unsigned>(prefix.size()) + shift);
}

SubstDB extend_subst(ValueDBP v, const SubstDB& s) {
    SubstDB out = s;
    out.prefix.insert(out.prefix.begin(), std::move(v));
    return out;
}

namespace {
ValueDBP shift_value(const ValueDBP& v) {
    SubstDB sh;
    sh.shift = 1;
    return inst_db(v, sh);
}
} // namespace

SubstDB lift_subst(const SubstDB& s) {
    SubstDB shifted;
    shifted.shift = s.shift + 1;
    shifted.prefix.reserve(s.prefix.size());
    for (const auto& v : s.prefix) shifted.prefix.push_back(shift_value(v));
    return extend_subst(dbound(0), shifted);
}

ValueDBP inst_db(const ValueDBP& v, const SubstDB& s) {
    switch (v->tag) {
    case ValueDB::Tag::Bound: return s.apply(v->index);
    case ValueDB::Tag::Free: return v;
    case ValueDB::Tag::Thunk: return dthunk(inst_db(v->body, s));
    }
    return v;
}

TermDBP inst_db(const TermDBP& m, const SubstDB& s) {
    switch (m->tag) {
    case TermDB::Tag::Val: return dval(inst_db(m->v, s));
    case TermDB::Tag::Abs: return dabs(inst_db(m->m, lift_subst(s)));
    case TermDB::Tag::App: return dapp(inst_db(m->m, s), inst_db(m->v, s));
    case TermDB::Tag::Force: return dforce(inst_db(m->v, s));
    case TermDB::Tag::Ret: return dret(inst_db(m->v, s));
    case TermDB::Tag::Bind:
        return dbind(inst_db(m->m, s), inst_db(m->n, lift_subst(s)));
    }
    return m;
}

std::optional<TermDBP> step_db(const TermDBP& m) {
    switch (m->tag) {
    case TermDB::Tag::Force:
        if (m->v->tag == ValueDB::Tag::Thunk) return m->v->body;
        return std::nullopt;
    case TermDB::Tag::App:
        if (m->m->tag == TermDB::Tag::Abs)
            return inst_db(m->m->m, extend_subst(m->v, SubstDB::identity()));
        if (auto s = step_db(m->m)) return dapp(*s, m->v);
        return std::nullopt;
    case TermDB::Tag::Bind:
        if (m->m->tag == TermDB::Tag::Ret)
            return inst_db(m->n, extend_subst(m->m->v, SubstDB::identity()));
        if (auto s = step_db(m->m)) return dbind(*s, m->n);
        return std::nullopt;
    default:
        return std::nullopt;
    }
}

// ---- conversions ----
namespace {
using NameStack = std::vector<std::string>;

void collect_free_names(const TermDBP& m, std::set<std::string>& out);
void collect_free_names_v(const ValueDBP& v, std::set<std::string>& out) {
    if (v->tag == ValueDB::Tag::Free) out.insert(v->name);
    else if (v->tag == ValueDB::Tag::Thunk) collect_free_names(v->body, out);
}
void collect_free_names(const TermDBP& m, std::set<std::string>& out) {
    switch (m->tag) {
    case TermDB::Tag::Val: case TermDB::Tag::Force: case TermDB::Tag::Ret:
        collect_free_names_v(m->v, out); break;
    case TermDB::Tag::Abs: collect_free_names(m->m, out); break;
    case TermDB::Tag::App:
        collect_free_names(m->m, out); collect_free_names_v(m->v, out); break;
    case TermDB::Tag::Bind:
        collect_free_names(m->m, out); collect_free_names(m->n, out); break;
    }
}

// Deterministic binder namer that never collides with a free name.
struct Namer {
    std::set<std::string> avoid;
    unsigned counter = 0;
    std::string next() {
        for (;;) {
            std::string x = "v" + std::to_string(counter++);
            if (!avoid.count(x)) return x;
        }
    }
};

std::optional<unsigned> lookup_index(const NameStack& stack, const std::string& x) {
    for (size_t i = 0; i < stack.size(); ++i) {
        size_t j = stack.size() - 1 - i;
        if (stack[j] == x) return static_cast<unsigned>(i);
    }
    return std::nullopt;
}

ValueDBP to_db_value_rec(const ValueP& v, NameStack& stack);

TermDBP to_db_rec(const TermP& m, NameStack& stack) {
    switch (m->tag) {
    case Term::Tag::Val: return dval(to_db_value_rec(m->v, stack));
    case Term::Tag::Abs: {
        stack.push_back(m->binder);
        auto body = to_db_rec(m->m, stack);
        stack.pop_back();
        return dabs(body);
    }
    case Term::Tag::App:
        return dapp(to_db_rec(m->m, stack), to_db_value_rec(m->v, stack));
    case Term::Tag::Force: return dforce(to_db_value_rec(m->v, stack));
    case Term::Tag::Ret: return dret(to_db_value_rec(m->v, stack));
    case Term::Tag::Bind: {
        auto lhs = to_db_rec(m->m, stack);
        stack.push_back(m->binder);
        auto rhs = to_db_rec(m->n, stack);
        stack.pop_back();
        return dbind(lhs, rhs);
    }
    case Term::Tag::Ann:
        return to_db_rec(m->m, stack);
    }
    throw std::logic_error("to_db: unreachable");
}

ValueDBP to_db_value_rec(const ValueP& v, NameStack& stack) {
    if (v->tag == Value::Tag::Var) {
        if (auto i = lookup_index(stack, v->name)) return dbound(*i);
        return dfree(v->name);
    }
    return dthunk(to_db_rec(v->body, stack));
}

ValueP from_db_value_rec(const ValueDBP& v, NameStack& stack, Namer& namer);

TermP from_db_rec(const TermDBP& m, NameStack& stack, Namer& namer) {
    switch (m->tag) {
    case TermDB::Tag::Val: return tval(from_db_value_rec(m->v, stack, namer));
    case TermDB::Tag::Abs: {
        std::string x = namer.next();
        stack.push_back(x);
        auto body = from_db_rec(m->m, stack, namer);
        stack.pop_back();
        return tabs(x, body);
    }
    case TermDB::Tag::App:
        return tapp(from_db_rec(m->m, stack, namer), from_db_value_rec(m->v, stack, namer));
    case TermDB::Tag::Force: return tforce(from_db_value_rec(m->v, stack, namer));
    case TermDB::Tag::Ret: return tret(from_db_value_rec(m->v, stack, namer));
    case TermDB::Tag::Bind: {
        auto lhs = from_db_rec(m->m, stack, namer);
        std::string x = namer.next();
        stack.push_back(x);
        auto rhs = from_db_rec(m->n, stack, namer);
        stack.pop_back();
        return tbind(lhs, x, rhs);
    }
    }
    throw std::logic_error("from_db: unreachable");
}

ValueP from_db_value_rec(const ValueDBP& v, NameStack& stack, Namer& namer) {
    switch (v->tag) {
    case ValueDB::Tag::Bound: {
        if (v->index >= stack.size())
            throw std::invalid_argument("from_db: dangling bound index");
        return vvar(stack[stack.size() - 1 - v->index]);
    }
    case ValueDB::Tag::Free: return vvar(v->name);
    case ValueDB::Tag::Thunk: return vthunk(from_db_rec(v->body, stack, namer));
    }
    throw std::logic_error("from_db_value: unreachable");
}
} // namespace

TermDBP to_db(const TermP& m) {
    NameStack stack;
    return to_db_rec(m, stack);
}
ValueDBP to_db_value(const ValueP& v) {
    NameStack stack;
    return to_db_value_rec(v, stack);
}
TermP from_db(const TermDBP& m) {
    if (!wf_term(0, m)) throw std::invalid_argument("from_db: term not well-formed at 0");
    NameStack stack;
    Namer namer;
    collect_free_names(m, namer.avoid);
    return from_db_rec(m, stack, namer);
}
ValueP from_db_value(const ValueDBP& v) {
    if (!wf_value(0, v)) throw std::invalid_argument("from_db_value: value not well-formed at 0");
    NameStack stack;
    Namer namer;
    collect_free_names_v(v, namer.avoid);
    return from_db_value_rec(v, stack, namer);
}

} // namespace pushpi
