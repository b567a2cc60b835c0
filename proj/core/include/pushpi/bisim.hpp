#pragma once
#include "pushpi/pi.hpp"
#include "pushpi/pii.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pushpi {

struct Barb {
    bool output = false;
    std::string subject;
    friend bool operator<(const Barb& a, const Barb& b) {
        if (a.output != b.output) return a.output < b.output;
        return a.subject < b.subject;
    }
    friend bool operator==(const Barb& a, const Barb& b) {
        return a.output == b.output && a.subject == b.subject;
    }
};
std::set<Barb> barbs(const ProcP& p);
std::set<Barb> barbs(const ProcIP& p);

struct BisimVerdict {
    enum class Kind { Yes, No, Unknown };
    Kind kind = Kind::Unknown;
    size_t relation_size = 0;          // Yes: explored pairs
    std::vector<std::string> witness;  // No: distinguishing action sequence
};

struct BisimOptions {
    unsigned depth = 8;
    unsigned tau_budget = 4;
    bool weak = true;
    // Input objects for the early game; defaults to the free names of both
    // processes plus one fresh name.
    std::optional<std::set<std::string>> candidates;
};

BisimVerdict bisim_game(const ProcP& p, const ProcP& q, const BisimOptions& opt);
BisimVerdict weak_bisim(const ProcP& p, const ProcP& q, unsigned depth,
                        unsigned tau_budget);

BisimVerdict bisim_game_i(const ProcIP& p, const ProcIP& q, const BisimOptions& opt);
BisimVerdict weak_bisim_i(const ProcIP& p, const ProcIP& q, unsigned depth,
                          unsigned tau_budget);

// Exact weak bisimilarity on a finite fragment: explores the full transition
// graph over a fixed input alphabet, saturates weak transitions, and runs
// partition refinement.  Returns nullopt when the reachable graph exceeds
// `max_states` (e.g. replication makes it infinite); used as a cross-check
// for the game.
std::optional<bool> weak_bisim_oracle(const ProcP& p, const ProcP& q,
                                      const std::set<std::string>& alphabet,
                                      size_t max_states = 20000);

} // namespace pushpi
