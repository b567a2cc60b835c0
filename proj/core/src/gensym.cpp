#include "pushpi/gensym.hpp"

namespace pushpi {

Gensym& default_gensym() {
    static thread_local Gensym g;
    return g;
}

void reset_default_gensym() {
    default_gensym() = Gensym();
}

} // namespace pushpi
