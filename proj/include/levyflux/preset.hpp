#pragma once
#include <string>
#include <vector>

#include "levyflux/errors.hpp"

namespace levyflux {

// Parsed "name(arg1,arg2,...)" string. Bare names parse with no args.
struct Preset {
    std::string name;
    std::vector<double> args;

    void expect_args(size_t n, const std::string& signature) const {
        if (args.size() != n)
            throw ConfigError("preset '" + name + "' expects the form " + signature);
    }
};

Preset parse_preset(const std::string& text);

} // namespace levyflux
