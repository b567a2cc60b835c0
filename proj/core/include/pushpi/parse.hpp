#pragma once
#include "pushpi/cbpv.hpp"
#include "pushpi/lambda.hpp"
#include "pushpi/pi.hpp"
#include "pushpi/pii.hpp"

#include <stdexcept>
#include <string>

namespace pushpi {

// Syntax error with 1-based source position.
struct ParseError : std::runtime_error {
    unsigned line, col;
    ParseError(const std::string& msg, unsigned line, unsigned col)
        : std::runtime_error(msg + " at " + std::to_string(line) + ":" +
                             std::to_string(col)),
          line(line), col(col) {}
};

// Each parser accepts exactly the grammar its printer emits (plus redundant
// parentheses) and throws ParseError otherwise.  Identifiers starting with
// the reserved prefixes '#', '%', '~' are rejected; the index form %n is
// valid only as an internal-calculus channel.
LTermP parse_lambda(const std::string& text);
TermP parse_cbpv(const std::string& text);
TypeP parse_type(const std::string& text);
ProcP parse_pi(const std::string& text);
ProcIP parse_pii(const std::string& text);

} // namespace pushpi
