#pragma once
#include "pushpi/cbpv.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pushpi {

// Locally nameless computation/value calculus: bound variables are de Bruijn
// indices, free variables keep their identifiers.
struct TermDB;
struct ValueDB;
using TermDBP = std::shared_ptr<const TermDB>;
using ValueDBP = std::shared_ptr<const ValueDB>;

struct ValueDB {
    enum class Tag { Bound, Free, Thunk };
    Tag tag;
    unsigned index = 0;  // Bound
    std::string name;    // Free
    TermDBP body;        // Thunk
};

struct TermDB {
    enum class Tag { Val, Abs, App, Force, Ret, Bind };
    Tag tag;
    ValueDBP v;    // Val, App (argument), Force, Ret
    TermDBP m, n;  // Abs: m = body; App: m = fn; Bind: m = lhs, n = rhs
};

ValueDBP dbound(unsigned n);
ValueDBP dfree(std::string x);
ValueDBP dthunk(TermDBP m);
TermDBP dval(ValueDBP v);
TermDBP dabs(TermDBP body);
TermDBP dapp(TermDBP fn, ValueDBP arg);
TermDBP dforce(ValueDBP v);
TermDBP dret(ValueDBP v);
TermDBP dbind(TermDBP lhs, TermDBP rhs);

bool termdb_eq(const TermDBP& a, const TermDBP& b);
bool valuedb_eq(const ValueDBP& a, const ValueDBP& b);
std::string print_cbpv_db(const TermDBP& m);

// Every bound index refers to one of at most n enclosing binders.
bool wf_term(unsigned n, const TermDBP& m);
bool wf_value(unsigned n, const ValueDBP& v);

// Total substitution of values for indices, represented as an explicit
// prefix list followed by a tail renaming: sigma(i) = prefix[i] for
// i < |prefix|, and bound(i - |prefix| + shift) past the prefix.
struct SubstDB {
    std::vector<ValueDBP> prefix;
    unsigned shift = 0;

    static SubstDB identity() { return SubstDB{}; }
    ValueDBP apply(unsigned n) const;
};

SubstDB extend_subst(ValueDBP v, const SubstDB& s);  // v |> s
SubstDB lift_subst(const SubstDB& s);                // 0 |> (shift . s)

TermDBP inst_db(const TermDBP& m, const SubstDB& s);
ValueDBP inst_db(const ValueDBP& v, const SubstDB& s);

std::optional<TermDBP> step_db(const TermDBP& m);

// Bridges to the named calculus.  from_db requires wf_term(0, m).
TermDBP to_db(const TermP& m);
ValueDBP to_db_value(const ValueP& v);
TermP from_db(const TermDBP& m);
ValueP from_db_value(const ValueDBP& v);

} // namespace pushpi
