#pragma once

#include <stdexcept>
#include <string>

namespace anoncontract {

// Error taxonomy mirrored by the CLI exit codes:
//   ValidationError -> 1 (bad input, parse failure, parameter outside its domain)
//   GuardError      -> 2 (request exceeds a documented size guard)
//   InternalCheckError -> 3 (a computed result violates an identity the solvers rely on;
//                            firing one means a bug, not bad input)
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InternalCheckError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace anoncontract
