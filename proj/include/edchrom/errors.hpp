#ifndef EDCHROM_ERRORS_HPP
#define EDCHROM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace edchrom {

// Thrown when an iterative solver fails to converge or a state leaves the
// domain where the model algebra is defined (bracket collapse, blow-up).
// Distinct from std::invalid_argument, which signals a contract violation
// by the caller; SolverError signals a numerical failure at run time.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Configuration / input-file errors. CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace edchrom

#endif
