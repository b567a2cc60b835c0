#pragma once
#include <memory>
#include <string>
#include <vector>

namespace pushpi {

// Internal pi-calculus in a locally nameless representation: every binder
// (restriction, input, bound output) is anonymous, references are either
// de Bruijn indices or free names.
struct ChanRef {
    bool is_bound = true;
    unsigned idx = 0;     // when bound
    std::string name;     // when free

    friend bool operator==(const ChanRef& a, const ChanRef& b) {
        if (a.is_bound != b.is_bound) return false;
        return a.is_bound ? a.idx == b.idx : a.name == b.name;
    }
    friend bool operator!=(const ChanRef& a, const ChanRef& b) { return !(a == b); }
};
inline ChanRef cr_bound(unsigned n) { return ChanRef{true, n, ""}; }
inline ChanRef cr_free(std::string s) { return ChanRef{false, 0, std::move(s)}; }
std::string print_chan(const ChanRef& c);

struct ProcI;
using ProcIP = std::shared_ptr<const ProcI>;

struct ProcI {
    enum class Tag { Nil, Par, Res, Rep, In, Out, Link };
    Tag tag;
    ChanRef ch;     // In/Out channel; Link source
    ChanRef ch2;    // Link target
    ProcIP a, b;    // Par: both; Res/Rep/In/Out: a
};

ProcIP inil();
ProcIP ipar(ProcIP p, ProcIP q);
ProcIP ires(ProcIP body);
ProcIP irep(ProcIP p);
ProcIP iin(ChanRef ch, ProcIP cont);    // input, binds index 0 in cont
ProcIP iout(ChanRef ch, ProcIP cont);   // bound output, binds index 0 in cont
ProcIP ilink(ChanRef from, ChanRef to);

bool proci_eq(const ProcIP& p, const ProcIP& q);

struct ActionI {
    enum class Tag { Input, Output, Tau };
    Tag tag = Tag::Tau;
    ChanRef ch;
};
std::string print_action_i(const ActionI& a);
bool action_i_eq(const ActionI& x, const ActionI& y);

// Renamings on indices; free names are always fixed.
struct RenI;
using RenIP = std::shared_ptr<const RenI>;
struct RenI {
    enum class Tag { Id, Shift, Extend, Lift, Swap, Comp };
    Tag tag;
    ChanRef head;   // Extend
    RenIP f, g;     // Extend: g = tail; Lift: g; Comp: f after g
};
RenIP ren_id();
RenIP ren_shift();
RenIP ren_extend(ChanRef head, RenIP tail);
RenIP ren_lift(RenIP s);
RenIP ren_swap();
RenIP ren_comp(RenIP f, RenIP g);
ChanRef ren_apply(const RenIP& s, const ChanRef& c);

ProcIP inst_proc(const ProcIP& p, const RenIP& s);
ActionI inst_action(const ActionI& a, const RenIP& s);

// Scope correctness: every bound reference points at an enclosing binder,
// given n binders already in scope.
bool wf_proc(unsigned n, const ProcIP& p);

// True iff index n occurs free in p.
bool ref_in_proc(unsigned n, const ProcIP& p);

// Transition relation; actions carry only a channel, residuals of visible
// actions keep the communicated name at index 0.
std::vector<std::pair<ActionI, ProcIP>> transitions_i(const ProcIP& p);
std::vector<ProcIP> tau_successors_i(const ProcIP& p);

// Behaviour-preserving cleanup: nil absorption, inert restrictions, scope
// shrinking, canonical ordering of parallel components.
ProcIP normalize_i(const ProcIP& p);

// Eagerly performs internal communications that cannot lose behaviour:
// an output on a restricted channel whose only receiver is one persistent
// replicated input (typically a forwarder link).  Changes silent-step
// counts — for equivalence checking only, never for step counting.
ProcIP compress_inert_i(const ProcIP& p);
std::string print_pii(const ProcIP& p);
std::string canon_i(const ProcIP& p);  // print of normalized form

} // namespace pushpi
