#ifndef RABSIM_SELFCHECK_HPP
#define RABSIM_SELFCHECK_HPP

#include <iosfwd>

// Invariant battery behind the `check` CLI subcommand: closed-form
// cross checks of the integrators, quadrature exactness, jump-operator
// sum rule and conservation gates. Prints one line per check.

namespace rabsim {

/// Returns true when every check passes.
bool run_self_check(std::ostream& out);

}  // namespace rabsim

#endif  // RABSIM_SELFCHECK_HPP
