#ifndef SHELLREC_ERRORS_HPP
#define SHELLREC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shellrec {

// Bad experiment input (unparseable config file, out-of-range key, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A quadrature or grid is too coarse for the requested oscillation; computing
// anyway would silently alias, so we refuse instead.
class ResolutionError : public std::runtime_error {
public:
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace shellrec

#endif
