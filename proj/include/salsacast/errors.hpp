#pragma once

#include <stdexcept>
#include <string>

namespace salsacast {

/// Invalid parameters or inputs that violate a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace salsacast
