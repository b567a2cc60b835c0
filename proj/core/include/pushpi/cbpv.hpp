#pragma once
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pushpi {

// Named computation/value calculus.  Computations and values are stratified:
// application arguments, force and return payloads are always values.
struct Term;
struct Value;
struct TypeExpr;
using TermP = std::shared_ptr<const Term>;
using ValueP = std::shared_ptr<const Value>;
using TypeP = std::shared_ptr<const TypeExpr>;

struct Value {
    enum class Tag { Var, Thunk };
    Tag tag;
    std::string name;  // Var
    TermP body;        // Thunk
};

struct Term {
    enum class Tag { Val, Abs, App, Force, Ret, Bind, Ann };
    Tag tag;
    std::string binder;  // Abs, Bind
    ValueP v;            // Val, App (argument), Force, Ret
    TermP m, n;          // Abs: m = body; App: m = fn; Bind: m = lhs, n = rhs
                         // Ann: m = term
    TypeP type;          // Ann: declared computation type
};

ValueP vvar(std::string x);
ValueP vthunk(TermP m);
TermP tval(ValueP v);
TermP tabs(std::string x, TermP body);
TermP tapp(TermP fn, ValueP arg);
TermP tforce(ValueP v);
TermP tret(ValueP v);
TermP tbind(TermP lhs, std::string x, TermP rhs);
TermP tann(TermP m, TypeP b);

std::set<std::string> free_vars(const TermP& m);
std::set<std::string> free_vars(const ValueP& v);
std::set<std::string> bound_vars(const TermP& m);
std::set<std::string> bound_vars(const ValueP& v);
std::set<std::string> all_vars(const TermP& m);
std::set<std::string> all_vars(const ValueP& v);

// Capture-avoiding substitution of value V for free variable x.
TermP subst_cbpv(const TermP& m, const ValueP& v, const std::string& x);
ValueP subst_cbpv(const ValueP& w, const ValueP& v, const std::string& x);

// Small-step semantics. Absence of a successor covers both terminal and
// stuck terms (stuckness is not an error judgment in this calculus).
std::optional<TermP> step_cbpv(const TermP& m);

struct CbpvReduceResult {
    TermP final;
    unsigned steps = 0;
    bool exhausted = false;
};
CbpvReduceResult reduce_cbpv(const TermP& m, unsigned fuel);

// Value, abstraction or return.
bool is_terminal(const TermP& m);

bool term_eq(const TermP& a, const TermP& b);  // structural
bool value_eq(const ValueP& a, const ValueP& b);
bool term_alpha_eq(const TermP& a, const TermP& b);

// Remove annotation nodes (they guide the type checker only).
TermP strip_annotations(const TermP& m);

std::string print_cbpv(const TermP& m);
std::string print_cbpv(const ValueP& v);

// ---- types ----
struct TypeExpr {
    enum class Tag { Base, ThunkOf, ReturnerOf, Arrow };
    Tag tag;
    std::string name;  // Base
    TypeP a, b;        // ThunkOf: a (computation); ReturnerOf: a (value);
                       // Arrow: a (value) -> b (computation)
};

TypeP ty_base(std::string name);
TypeP ty_thunk(TypeP b);     // value type U B
TypeP ty_returner(TypeP a);  // computation type F A
TypeP ty_arrow(TypeP a, TypeP b);

bool is_value_type(const TypeP& t);
bool is_comp_type(const TypeP& t);
bool type_eq(const TypeP& a, const TypeP& b);
std::string print_type(const TypeP& t);

// Context with shadowing: lookup returns the newest binding.
struct TypeCtx {
    std::vector<std::pair<std::string, TypeP>> entries;
    TypeCtx extended(const std::string& x, TypeP a) const;
    const TypeP* lookup(const std::string& x) const;
};

struct KindError {
    std::string message;
};

// Type checking against a candidate type; intermediate types are synthesized
// for manifest shapes, otherwise an inline annotation is required.
// Throws KindError when the candidate type has the wrong kind.
bool check_comp(const TypeCtx& ctx, const TermP& m, const TypeP& b);
bool check_val(const TypeCtx& ctx, const ValueP& v, const TypeP& a);
std::optional<TypeP> synth_comp(const TypeCtx& ctx, const TermP& m);
std::optional<TypeP> synth_val(const TypeCtx& ctx, const ValueP& v);

} // namespace pushpi
