#pragma once

#include "pushpi/cbpv.hpp"

#include <cstdint>

namespace pushpi {

// A randomly generated well-typed computation term, together with the type it
// checks against and the (empty for closed terms) typing context used.
struct GenResult {
    TermP term;
    TypeP type;
    TypeCtx ctx;
};

// Derivation-directed random generation: picks a computation type, then builds
// a closed term guided by the typing rules so that check_comp(ctx, term, type)
// holds by construction. Deterministic for a fixed seed. max_size bounds the
// number of recursive expansion choices (must be >= 1); small sizes bias
// toward leaf rules, larger sizes exercise every construct.
GenResult gen_typed_term(std::uint64_t seed, unsigned max_size);

} // namespace pushpi
