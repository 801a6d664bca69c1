#pragma once

#include <stdexcept>
#include <string>

namespace weylab {

// CLI exit code 1.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// CLI exit code 2: an exact identity failed. Never tolerated.
struct IdentityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CLI exit code 3: a configured resource cap would be exceeded.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace weylab
