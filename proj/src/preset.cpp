#include "levyflux/preset.hpp"

#include <cctype>
#include <cstdlib>

namespace levyflux {

namespace {
std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}
} // namespace

Preset parse_preset(const std::string& text) {
    const std::string t = strip(text);
    require(!t.empty(), "empty preset string");
    Preset p;
    const size_t open = t.find('(');
    if (open == std::string::npos) {
        p.name = t;
        return p;
    }
    require(t.back() == ')', "preset '" + t + "' is missing a closing ')'");
    p.name = strip(t.substr(0, open));
    require(!p.name.empty(), "preset '" + t + "' has no name");
    std::string inner = t.substr(open + 1, t.size() - open - 2);
    if (strip(inner).empty()) return p;
    size_t pos = 0;
    while (pos <= inner.size()) {
        size_t comma = inner.find(',', pos);
        std::string tok = strip(inner.substr(pos, comma == std::string::npos ? std::string::npos
                                                                             : comma - pos));
        require(!tok.empty(), "preset '" + t + "' has an empty argument");
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        require(end == tok.c_str() + tok.size(),
                "preset '" + t + "': argument '" + tok + "' is not a number");
        p.args.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return p;
}

} // namespace levyflux
