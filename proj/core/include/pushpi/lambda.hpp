#pragma once
#include <memory>
#include <optional>
#include <set>
#include <string>

namespace pushpi {

// Plain lambda calculus with call-by-name and call-by-value strategies.
struct LTerm;
using LTermP = std::shared_ptr<const LTerm>;

struct LTerm {
    enum class Tag { Var, App, Abs };
    Tag tag;
    std::string name;  // Var: the variable; Abs: the binder
    LTermP a, b;       // App: subject/object; Abs: a = body
};

LTermP lvar(std::string x);
LTermP lapp(LTermP m, LTermP n);
LTermP labs(std::string x, LTermP body);

bool lterm_eq(const LTermP& a, const LTermP& b);        // structural
bool lterm_alpha_eq(const LTermP& a, const LTermP& b);  // up to binder names

bool is_lvalue(const LTermP& m);  // variable or abstraction
std::set<std::string> lfree_vars(const LTermP& m);
LTermP lsubst(const LTermP& m, const LTermP& n, const std::string& x);

std::optional<LTermP> step_cbn(const LTermP& m);
std::optional<LTermP> step_cbv(const LTermP& m);

enum class LStrategy { Cbn, Cbv };

struct LReduceResult {
    LTermP final;
    unsigned steps = 0;
    bool exhausted = false;
};
LReduceResult reduce_lambda(const LTermP& m, LStrategy strategy, unsigned fuel);

std::string print_lambda(const LTermP& m);

} // namespace pushpi
