#pragma once
#include <string>

namespace pushpi {

// Single deterministic freshness authority.  Generated names start with the
// reserved '#' character, which the parsers reject in user input, so a fresh
// name can never collide with a user-written one; the monotone counter keeps
// generated names distinct from each other.
class Gensym {
public:
    explicit Gensym(unsigned long start = 0) : k_(start) {}
    std::string fresh(const std::string& hint) {
        return "#" + hint + std::to_string(k_++);
    }
    unsigned long counter() const { return k_; }

private:
    unsigned long k_;
};

// Process-wide default instance used by substitution internals; reset at the
// start of every CLI command (and per test) for reproducible output.
Gensym& default_gensym();
void reset_default_gensym();

} // namespace pushpi
