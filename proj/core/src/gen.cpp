#include "pushpi/gen.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pushpi {
namespace {

// Builds a term by walking a typing derivation top-down: first a target
// computation type, then a term of that type, consuming a shared size budget.
// Every value type demanded at a leaf is either a thunk type (inhabited by
// thunking a sub-derivation) or the type of a variable already in scope, so
// generation never gets stuck.
class Generator {
public:
    Generator(std::uint64_t seed, unsigned max_size)
        : rng_(static_cast<std::mt19937::result_type>(seed ^ (seed >> 32))),
          budget_(max_size) {}

    GenResult run() {
        TypeCtx ctx; // closed terms only: every variable comes from a binder
        TypeP b = comp_type(ctx, 2);
        TermP m = comp(ctx, b);
        return GenResult{std::move(m), std::move(b), std::move(ctx)};
    }

private:
    std::mt19937 rng_;
    unsigned budget_;
    unsigned fresh_ = 0;

    unsigned pick(unsigned n) {
        return std::uniform_int_distribution<unsigned>(0, n - 1)(rng_);
    }
    bool coin() { return pick(2) == 0; }
    std::string fresh_name() { return "x" + std::to_string(fresh_++); }

    // A value type some closed value can be built for under ctx: either the
    // type of an in-scope variable, or a thunk of an inhabitable computation
    // type. Bare base types are excluded unless a variable already has one.
    TypeP value_type(const TypeCtx& ctx, unsigned depth) {
        if (!ctx.entries.empty() && (depth == 0 || pick(3) == 0))
            return ctx.entries[pick(static_cast<unsigned>(ctx.entries.size()))].second;
        if (depth == 0)
            return ty_thunk(ty_arrow(ty_base("A"), ty_returner(ty_base("A"))));
        return ty_thunk(comp_type(ctx, depth - 1));
    }

    // An arbitrary value type for arrow domains; the abstraction binding it
    // puts a variable of this type in scope before the codomain is inhabited,
    // so bare base types are fine here.
    TypeP domain_type(const TypeCtx& ctx, unsigned depth) {
        if (depth == 0 || coin()) return ty_base(coin() ? "A" : "B");
        return ty_thunk(comp_type(ctx, depth - 1));
    }

    TypeP comp_type(const TypeCtx& ctx, unsigned depth) {
        if (depth > 0 && pick(3) == 0) {
            TypeP a = domain_type(ctx, depth - 1);
            // The codomain may demand values of the domain type: inhabitants
            // reach it only under the abstraction that binds the domain.
            return ty_arrow(a, comp_type(ctx.extended("#domain", a), depth - 1));
        }
        return ty_returner(value_type(ctx, depth == 0 ? 0 : depth - 1));
    }

    ValueP value(const TypeCtx& ctx, const TypeP& a) {
        std::vector<const std::string*> hits;
        for (const auto& [name, t] : ctx.entries)
            if (name[0] != '#' && type_eq(t, a)) hits.push_back(&name);
        const bool can_thunk = a->tag == TypeExpr::Tag::ThunkOf;
        if (!hits.empty() && (!can_thunk || budget_ == 0 || coin()))
            return vvar(*hits[pick(static_cast<unsigned>(hits.size()))]);
        if (!can_thunk)
            throw std::logic_error("generator: base type demanded with no variable in scope");
        return vthunk(comp(ctx, a->a));
    }

    // Application heads and bind sources must synthesize their own type;
    // wrap in an annotation when the shape alone does not reveal it.
    TermP synthesizing(TermP m, const TypeP& want, const TypeCtx& ctx) {
        if (auto got = synth_comp(ctx, m); got && type_eq(*got, want)) return m;
        return tann(std::move(m), want);
    }

    TermP leaf(const TypeCtx& ctx, const TypeP& b) {
        if (b->tag == TypeExpr::Tag::Arrow) {
            std::string x = fresh_name();
            return tabs(x, comp(ctx.extended(x, b->a), b->b));
        }
        return tret(value(ctx, b->a));
    }

    TermP comp(const TypeCtx& ctx, const TypeP& b) {
        if (budget_ == 0 || pick(4) == 0) return leaf(ctx, b);
        --budget_;
        // A variable of thunk-of-b type lets us force it directly.
        std::vector<const std::string*> forced;
        for (const auto& [name, t] : ctx.entries)
            if (name[0] != '#' && t->tag == TypeExpr::Tag::ThunkOf && type_eq(t->a, b))
                forced.push_back(&name);
        switch (pick(forced.empty() ? 3u : 4u)) {
        case 0: // force a freshly thunked sub-derivation
            return tforce(vthunk(comp(ctx, b)));
        case 1: { // application at a constructible argument type
            TypeP a = value_type(ctx, 1);
            TypeP fn = ty_arrow(a, b);
            TermP head = synthesizing(comp(ctx, fn), fn, ctx);
            return tapp(std::move(head), value(ctx, a));
        }
        case 2: { // sequencing through a returner
            TypeP a = value_type(ctx, 1);
            TypeP src = ty_returner(a);
            TermP lhs = synthesizing(comp(ctx, src), src, ctx);
            std::string x = fresh_name();
            return tbind(std::move(lhs), x, comp(ctx.extended(x, a), b));
        }
        default:
            return tforce(vvar(*forced[pick(static_cast<unsigned>(forced.size()))]));
        }
    }
};

} // namespace

GenResult gen_typed_term(std::uint64_t seed, unsigned max_size) {
    if (max_size < 1) throw std::invalid_argument("gen_typed_term: max_size must be >= 1");
    return Generator(seed, max_size).run();
}

} // namespace pushpi
