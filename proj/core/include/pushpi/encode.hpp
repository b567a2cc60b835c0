#pragma once
#include "pushpi/cbpv.hpp"
#include "pushpi/cbpv_db.hpp"
#include "pushpi/lambda.hpp"
#include "pushpi/pi.hpp"
#include "pushpi/pii.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace pushpi {

// Lambda-calculus into the combined calculus.
TermP cbv_to_cbpv(const LTermP& m);
TermP cbn_to_cbpv(const LTermP& m);

// Combined calculus into the named pi-calculus, monadic discipline; u is the
// argument handle, r the return handle.  Throws std::invalid_argument when
// the handles clash with each other or with the term's free variables.
ProcP cbpv_to_pi(const TermP& m, const std::string& u, const std::string& r);

// Polyadic variant, a pretty-printing object only (no transition semantics).
struct PolyProc;
using PolyProcP = std::shared_ptr<const PolyProc>;
struct PolyProc {
    enum class Tag { Nil, Par, Res, Rep, In, Out };
    Tag tag;
    std::string subj;                   // In/Out subject; Res binder
    std::vector<std::string> objs;      // In: binders; Out: objects
    PolyProcP a, b;
};
PolyProcP cbpv_to_pi_poly(const TermP& m, const std::string& u, const std::string& r);
std::string print_poly(const PolyProcP& p);

// The persistent pointer process serving value v at name y (the encoding's
// replicated-input clause), exposed for the equational checks.
ProcP cbpv_assign_pi(const std::string& y, const ValueP& v);

// Classic lambda-calculus encodings for comparison runs.
ProcP milner_cbn(const LTermP& m, const std::string& u);
ProcP milner_cbv(const LTermP& m, const std::string& p);

// Combined calculus (locally nameless) into the internal pi-calculus,
// reference-tracking scheme: refs maps source indices to target indices.
using Refs = std::vector<std::pair<unsigned, unsigned>>;
Refs inc_refs(unsigned n, unsigned m, const Refs& refs);
unsigned find_ref(unsigned n, const Refs& refs);  // 42 when absent

ProcIP cbpv_to_pii(const TermDBP& m, unsigned u, unsigned r, const Refs& refs);

// Entry point: closed terms only, wrapped in the two handle restrictions.
// Throws std::invalid_argument("not closed under de Bruijn discipline").
ProcIP encode_entry(const TermDBP& m);

// Named polyadic internal pi-calculus target (printing + translation source).
struct PolyProcI;
using PolyProcIP = std::shared_ptr<const PolyProcI>;
struct PolyProcI {
    enum class Tag { Nil, Par, Res, Rep, In, BOut, Link };
    Tag tag;
    std::string subj;                   // In/BOut subject; Res binder; Link source
    std::string subj2;                  // Link target
    std::vector<std::string> objs;      // binders carried by the action
    PolyProcIP a, b;
};
PolyProcIP cbpv_to_pii_named(const TermP& m, const std::string& u, const std::string& r);
std::string print_poly_i(const PolyProcIP& p);

// Internal-calculus pointer process serving value v at name y.
PolyProcIP cbpv_assign_pii_named(const std::string& y, const ValueP& v);

// Channel-then-payload translation into the monadic internal calculus.
// Pairs get a trailing check-communication so that mismatched arities
// cannot synchronize; wider tuples are distinguished by length already.
ProcIP poly_to_mono(const PolyProcIP& p);

} // namespace pushpi
