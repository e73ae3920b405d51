#ifndef BSOPT_ERRORS_HPP
#define BSOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bsopt {

// Validation failure in user-supplied data or configuration.
// The CLI maps this to exit code 2; anything else escaping to main is
// treated as an internal error (exit code 3).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bsopt

#endif  // BSOPT_ERRORS_HPP
