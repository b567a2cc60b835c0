#include "pushpi/lambda.hpp"
#include "pushpi/gensym.hpp"

#include <map>

namespace pushpi {

LTermP lvar(std::string x) {
    return std::make_shared<const LTerm>(LTerm{LTerm::Tag::Var, std::move(x), nullptr, nullptr});
}
LTermP lapp(LTermP m, LTermP n) {
    return std::make_shared<const LTerm>(LTerm{LTerm::Tag::App, "", std::move(m), std::move(n)});
}
LTermP labs(std::string x, LTermP body) {
    return std::make_shared<const LTerm>(LTerm{LTerm::Tag::Abs, std::move(x), std::move(body), nullptr});
}

bool lterm_eq(const LTermP& a, const LTermP& b) {
    if (a == b) return true;
    if (a->tag != b->tag) return false;
    switch (a->tag) {
    case LTerm::Tag::Var: return a->name == b->name;
    case LTerm::Tag::App: return lterm_eq(a->a, b->a) && lterm_eq(a->b, b->b);
    case LTerm::Tag::Abs: return a->name == b->name && lterm_eq(a->a, b->a);
    }
    return false;
}

namespace {
bool alpha_eq_rec(const LTermP& a, const LTermP& b,
                  std::map<std::string, std::string>& ea,
                  std::map<std::string, std::string>& eb, unsigned& depth) {
    if (a->tag != b->tag) return false;
    switch (a->tag) {
    case LTerm::Tag::Var: {
        auto ia = ea.find(a->name), ib = eb.find(b->name);
        if (ia != ea.end() || ib != eb.end())
            return ia != ea.end() && ib != eb.end() && ia->second == ib->second;
        return a->name == b->name;
    }
    case LTerm::Tag::App:
        return alpha_eq_rec(a->a, b->a, ea, eb, depth) &&
               alpha_eq_rec(a->b, b->b, ea, eb, depth);
    case LTerm::Tag::Abs: {
        std::string c = "%" + std::to_string(depth++);
        auto sa = ea, sb = eb;
        sa[a->name] = c;
        sb[b->name] = c;
        return alpha_eq_rec(a->a, b->a, sa, sb, depth);
    }
    }
    return false;
}
} // namespace

bool lterm_alpha_eq(const LTermP& a, const LTermP& b) {
    std::map<std::string, std::string> ea, eb;
    unsigned depth = 0;
    return alpha_eq_rec(a, b, ea, eb, depth);
}

bool is_lvalue(const LTermP& m) {
    return m->tag == LTerm::Tag::Var || m->tag == LTerm::Tag::Abs;
}

std::set<std::string> lfree_vars(const LTermP& m) {
    switch (m->tag) {
    case LTerm::Tag::Var: return {m->name};
    case LTerm::Tag::App: {
        auto s = lfree_vars(m->a);
        auto t = lfree_vars(m->b);
        s.insert(t.begin(), t.end());
        return s;
    }
    case LTerm::Tag::Abs: {
        auto s = lfree_vars(m->a);
        s.erase(m->name);
        return s;
    }
    }
    return {};
}

LTermP lsubst(const LTermP& m, const LTermP& n, const std::string& x) {
    switch (m->tag) {
    case LTerm::Tag::Var:
        return m->name == x ? n : m;
    case LTerm::Tag::App:
        return lapp(lsubst(m->a, n, x), lsubst(m->b, n, x));
    case LTerm::Tag::Abs: {
        if (m->name == x) return m;
        auto fvn = lfree_vars(n);
        if (!fvn.count(m->name)) return labs(m->name, lsubst(m->a, n, x));
        std::string z = default_gensym().fresh("z");
        return labs(z, lsubst(lsubst(m->a, lvar(z), m->name), n, x));
    }
    }
    return m;
}

std::optional<LTermP> step_cbn(const LTermP& m) {
    if (m->tag != LTerm::Tag::App) return std::nullopt;
    if (m->a->tag == LTerm::Tag::Abs)
        return lsubst(m->a->a, m->b, m->a->name);
    if (auto s = step_cbn(m->a)) return lapp(*s, m->b);
    return std::nullopt;
}

std::optional<LTermP> step_cbv(const LTermP& m) {
    if (m->tag != LTerm::Tag::App) return std::nullopt;
    if (!is_lvalue(m->a)) {
        if (auto s = step_cbv(m->a)) return lapp(*s, m->b);
        return std::nullopt;
    }
    if (!is_lvalue(m->b)) {
        if (auto s = step_cbv(m->b)) return lapp(m->a, *s);
        return std::nullopt;
    }
    if (m->a->tag == LTerm::Tag::Abs)
        return lsubst(m->a->a, m->b, m->a->name);
    return std::nullopt;
}

LReduceResult reduce_lambda(const LTermP& m, LStrategy strategy, unsigned fuel) {
    LReduceResult res;
    res.final = m;
    auto step = strategy == LStrategy::Cbn ? step_cbn : step_cbv;
    for (unsigned i = 0; i < fuel; ++i) {
        auto s = step(res.final);
        if (!s) return res;
        res.final = *s;
        ++res.steps;
    }
    res.exhausted = step(res.final).has_value();
    return res;
}

namespace {
std::string print_atom(const LTermP& m);

std::string print_app(const LTermP& m) {
    if (m->tag == LTerm::Tag::App)
        return print_app(m->a) + " " + print_atom(m->b);
    return print_atom(m);
}

std::string print_atom(const LTermP& m) {
    switch (m->tag) {
    case LTerm::Tag::Var: return m->name;
    default: return "(" + print_lambda(m) + ")";
    }
}
} // namespace

std::string print_lambda(const LTermP& m) {
    switch (m->tag) {
    case LTerm::Tag::Var: return m->name;
    case LTerm::Tag::Abs: return "\\" + m->name + ". " + print_lambda(m->a);
    case LTerm::Tag::App: return print_app(m);
    }
    return "?";
}

} // namespace pushpi
