#pragma once
#include "pushpi/bisim.hpp"
#include "pushpi/cbpv.hpp"
#include "pushpi/encode.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pushpi {

// One source-level reduction step matched against the process encoding.
struct StepRecord {
    std::string rule;       // reduction rule that fired at the source level
    unsigned taus = 0;      // silent steps used to match it
    bool link_free = true;  // no pointer indirection involved in the redex
};

struct CheckReport {
    bool pass = true;
    std::vector<StepRecord> steps;   // per-source-step details (soundness)
    std::vector<std::string> notes;  // human-readable detail lines
    std::string failure;             // first counterexample, empty when pass
};

// For each reduction step M -> N along the bounded reduction sequence,
// searches the silent-step graph of the encoding of M for a process
// equivalent to the encoding of N, recording how many silent steps the
// match took.
CheckReport check_soundness(const TermP& m, const std::string& u,
                            const std::string& r, unsigned fuel);

// For every one-step silent successor P of the encoding of M: find P' and N
// with P silently reaching P', P' equivalent to the encoding of N, and
// either M -> N or M = N; every process strictly between P and P' on the
// found path must have no barbs.
CheckReport check_completeness_one_step(const TermP& m, const std::string& u,
                                        const std::string& r);

enum class StepEngine { Pi, Pii };

// With n the source step count, asserts the minimal silent-step distance
// from the encoding to a stable process is within the engine's bound:
// (4+n)*n+(n+2) for the named engine, 3n^2+6n+3 for the internal engine.
CheckReport check_step_bound(const TermP& m, const std::string& u,
                             const std::string& r, StepEngine engine);

// True iff (the source term reaches a return) <=> (some silently reachable
// process has an output barb on r).
bool check_success_sensitive(const TermP& m, const std::string& u,
                             const std::string& r);

// Instantiates the equational laws relating encodings, pointers and links
// on a catalog of small terms and checks each with the weak game.
CheckReport check_lemma_suite();

// Structural identity of the internal-calculus encoding under an injective
// renaming of the term's free variables and of the two handles.  The
// renaming maps old name -> new name; unmapped names stay fixed.
bool check_name_invariance(
    const TermP& m, const std::string& u, const std::string& r,
    const std::vector<std::pair<std::string, std::string>>& renaming);

} // namespace pushpi
