#include "toricsde/rational.hpp"

#include <charconv>
#include <ostream>

namespace tsde {

Rational Rational::parse(const std::string& s) {
    auto parse_int = [](std::string_view sv) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (ec != std::errc{} || p != sv.data() + sv.size())
            throw std::invalid_argument("malformed rational: '" + std::string(sv) + "'");
        return v;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int(s));
    return Rational(parse_int(std::string_view(s).substr(0, slash)),
                    parse_int(std::string_view(s).substr(slash + 1)));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace tsde
