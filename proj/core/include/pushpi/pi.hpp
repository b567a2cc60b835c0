#pragma once
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pushpi {

// Named monadic pi-calculus.
struct Proc;
using ProcP = std::shared_ptr<const Proc>;

struct Proc {
    enum class Tag { Nil, Par, Res, Rep, In, Out };
    Tag tag;
    std::string subj;   // In/Out subject; Res binder
    std::string obj;    // Out object; In binder
    ProcP a, b;         // Par: both; Res/Rep/In/Out: a = continuation/body
};

ProcP pnil();
ProcP ppar(ProcP p, ProcP q);
ProcP pres(std::string x, ProcP body);
ProcP prep(ProcP p);
ProcP pin(std::string subj, std::string binder, ProcP cont);
ProcP pout(std::string subj, std::string obj, ProcP cont);

struct PiAction {
    enum class Tag { Input, FreeOutput, BoundOutput, Tau };
    Tag tag = Tag::Tau;
    std::string subj, obj;
};
std::string print_action(const PiAction& a);

struct NameSets {
    std::set<std::string> fn, bn, sub_in, sub_out, obj_in, obj_out;
};
NameSets name_sets(const ProcP& p);
std::set<std::string> free_names(const ProcP& p);

// Substitution {u/v}: replace free v by u, renaming binders exactly per the
// calculus' case analysis (binder equal to u is renamed fresh).
ProcP subst_pi(const ProcP& p, const std::string& u, const std::string& v);

bool alpha_eq(const ProcP& p, const ProcP& q);
bool proc_eq(const ProcP& p, const ProcP& q);  // structural

// Early transition relation; input objects range over `candidates`
// (callers should pass fn of the whole configuration plus fresh names).
// Replication is unfolded exactly once per derivation.
std::vector<std::pair<PiAction, ProcP>>
transitions(const ProcP& p, const std::set<std::string>& candidates);

// Garbage-collecting normalization: terminating subset of the bisimilarity
// laws (inert restrictions, nil absorption, scope shrinking, canonical
// ordering of parallel components).  Result is weakly bisimilar to input.
ProcP normalize(const ProcP& p);

// Eagerly performs internal communications that cannot lose behaviour:
// an output on a restricted channel whose only receiver is one persistent
// replicated input (typically a forwarder).  Changes silent-step counts —
// for equivalence checking only, never for step counting.
ProcP compress_inert(const ProcP& p);

// Alpha-canonical printing (binders numbered in traversal order); equal
// strings iff alpha-equivalent.
std::string canon_pi(const ProcP& p);
std::string print_pi(const ProcP& p);

struct TauNode {
    ProcP proc;
    unsigned depth = 0;
};
struct TauRun {
    std::vector<TauNode> nodes;  // deterministic: the single trace; all: BFS order
    bool error = false;
    std::string message;
};
enum class TauPolicy { All, Deterministic };
TauRun tau_run(const ProcP& p, unsigned fuel, TauPolicy policy);

// All tau-successors (internal steps need no candidate set).
std::vector<ProcP> tau_successors(const ProcP& p);

} // namespace pushpi
