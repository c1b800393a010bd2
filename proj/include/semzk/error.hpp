#pragma once

#include <stdexcept>
#include <string>

namespace semzk {

/// Raised by every public operation on invalid input or numerical failure.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace semzk
