#pragma once

#include <stdexcept>

namespace fabriclab {

// Malformed specs, bad config keys, broken file contents. CLI exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Well-formed request whose answer does not exist, e.g. a bisection target
// outside the reachable range. Used only where no sentinel return fits.
struct InfeasibleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Filesystem failures. CLI exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fabriclab
