#pragma once
#include <stdexcept>
#include <string>

namespace levyflux {

// Bad user input: config files, CLI arguments, out-of-range parameters.
// Maps to process exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation blew up (NaN/Inf state, dt underflow). Maps to exit code 3.
struct NumericsError : std::runtime_error {
    long step_index = -1;
    explicit NumericsError(const std::string& msg, long step = -1)
        : std::runtime_error(msg), step_index(step) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ConfigError(msg);
}

} // namespace levyflux
