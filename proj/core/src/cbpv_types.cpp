#include "pushpi/cbpv.hpp"

namespace pushpi {

TypeP ty_base(std::string name) {
    return std::make_shared<const TypeExpr>(TypeExpr{TypeExpr::Tag::Base, std::move(name), nullptr, nullptr});
}
TypeP ty_thunk(TypeP b) {
    return std::make_shared<const TypeExpr>(TypeExpr{TypeExpr::Tag::ThunkOf, "", std::move(b), nullptr});
}
TypeP ty_returner(TypeP a) {
    return std::make_shared<const TypeExpr>(TypeExpr{TypeExpr::Tag::ReturnerOf, "", std::move(a), nullptr});
}
TypeP ty_arrow(TypeP a, TypeP b) {
    return std::make_shared<const TypeExpr>(TypeExpr{TypeExpr::Tag::Arrow, "", std::move(a), std::move(b)});
}

bool is_value_type(const TypeP& t) {
    switch (t->tag) {
    case TypeExpr::Tag::Base: return true;
    case TypeExpr::Tag::ThunkOf: return is_comp_type(t->a);
    default: return false;
    }
}

bool is_comp_type(const TypeP& t) {
    switch (t->tag) {
    case TypeExpr::Tag::ReturnerOf: return is_value_type(t->a);
    case TypeExpr::Tag::Arrow: return is_value_type(t->a) && is_comp_type(t->b);
    default: return false;
    }
}

bool type_eq(const TypeP& a, const TypeP& b) {
    if (a == b) return true;
    if (!a || !b || a->tag != b->tag) return false;
    switch (a->tag) {
    case TypeExpr::Tag::Base: return a->name == b->name;
    case TypeExpr::Tag::ThunkOf:
    case TypeExpr::Tag::ReturnerOf: return type_eq(a->a, b->a);
    case TypeExpr::Tag::Arrow: return type_eq(a->a, b->a) && type_eq(a->b, b->b);
    }
    return false;
}

std::string print_type(const TypeP& t) {
    switch (t->tag) {
    case TypeExpr::Tag::Base: return t->name;
    case TypeExpr::Tag::ThunkOf: {
        const auto inner = print_type(t->a);
        return (t->a->tag == TypeExpr::Tag::Arrow) ? "U (" + inner + ")" : "U " + inner;
    }
    case TypeExpr::Tag::ReturnerOf: {
        const auto inner = print_type(t->a);
        return "F " + inner;
    }
    case TypeExpr::Tag::Arrow: {
        std::string lhs = print_type(t->a);
        if (t->a->tag == TypeExpr::Tag::ThunkOf) lhs = "(" + lhs + ")";
        return lhs + " -> " + print_type(t->b);
    }
    }
    return "?";
}

TypeCtx TypeCtx::extended(const std::string& x, TypeP a) const {
    TypeCtx c = *this;
    c.entries.emplace_back(x, std::move(a));
    return c;
}

const TypeP* TypeCtx::lookup(const std::string& x) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
        if (it->first == x) return &it->second;
    return nullptr;
}

std::optional<TypeP> synth_val(const TypeCtx& ctx, const ValueP& v) {
    if (v->tag == Value::Tag::Var) {
        if (const TypeP* a = ctx.lookup(v->name)) return *a;
        return std::nullopt;
    }
    if (auto b = synth_comp(ctx, v->body)) return ty_thunk(*b);
    return std::nullopt;
}

std::optional<TypeP> synth_comp(const TypeCtx& ctx, const TermP& m) {
    switch (m->tag) {
    case Term::Tag::Ret:
        if (auto a = synth_val(ctx, m->v)) return ty_returner(*a);
        return std::nullopt;
    case Term::Tag::Force:
        if (auto a = synth_val(ctx, m->v); a && (*a)->tag == TypeExpr::Tag::ThunkOf)
            return (*a)->a;
        return std::nullopt;
    case Term::Tag::App: {
        auto f = synth_comp(ctx, m->m);
        if (!f || (*f)->tag != TypeExpr::Tag::Arrow) return std::nullopt;
        if (!check_val(ctx, m->v, (*f)->a)) return std::nullopt;
        return (*f)->b;
    }
    case Term::Tag::Bind: {
        auto f = synth_comp(ctx, m->m);
        if (!f || (*f)->tag != TypeExpr::Tag::ReturnerOf) return std::nullopt;
        return synth_comp(ctx.extended(m->binder, (*f)->a), m->n);
    }
    case Term::Tag::Ann:
        if (!is_comp_type(m->type)) throw KindError{"annotation is not a computation type: " + print_type(m->type)};
        if (check_comp(ctx, m->m, m->type)) return m->type;
        return std::nullopt;
    default:
        return std::nullopt;
    }
}

bool check_val(const TypeCtx& ctx, const ValueP& v, const TypeP& a) {
    if (!is_value_type(a)) throw KindError{"expected a value type, got: " + print_type(a)};
    if (v->tag == Value::Tag::Var) {
        const TypeP* found = ctx.lookup(v->name);
        return found && type_eq(*found, a);
    }
    if (a->tag != TypeExpr::Tag::ThunkOf) return false;
    return check_comp(ctx, v->body, a->a);
}

bool check_comp(const TypeCtx& ctx, const TermP& m, const TypeP& b) {
    if (!is_comp_type(b)) throw KindError{"expected a computation type, got: " + print_type(b)};
    switch (m->tag) {
    case Term::Tag::Val:
        // No rule types a bare value at a computation type.
        return false;
    case Term::Tag::Abs:
        if (b->tag != TypeExpr::Tag::Arrow) return false;
        return check_comp(ctx.extended(m->binder, b->a), m->m, b->b);
    case Term::Tag::App: {
        auto f = synth_comp(ctx, m->m);
        if (!f || (*f)->tag != TypeExpr::Tag::Arrow) return false;
        return type_eq((*f)->b, b) && check_val(ctx, m->v, (*f)->a);
    }
    case Term::Tag::Force: {
        if (auto a = synth_val(ctx, m->v))
            return (*a)->tag == TypeExpr::Tag::ThunkOf && type_eq((*a)->a, b);
        if (m->v->tag == Value::Tag::Thunk) return check_comp(ctx, m->v->body, b);
        return false;
    }
    case Term::Tag::Ret:
        return b->tag == TypeExpr::Tag::ReturnerOf && check_val(ctx, m->v, b->a);
    case Term::Tag::Bind: {
        auto f = synth_comp(ctx, m->m);
        if (!f || (*f)->tag != TypeExpr::Tag::ReturnerOf) return false;
        return check_comp(ctx.extended(m->binder, (*f)->a), m->n, b);
    }
    case Term::Tag::Ann:
        if (!is_comp_type(m->type)) throw KindError{"annotation is not a computation type"};
        return type_eq(m->type, b) && check_comp(ctx, m->m, m->type);
    }
    return false;
}

} // namespace pushpi
