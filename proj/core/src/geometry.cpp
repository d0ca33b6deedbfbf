#include "rectcart/geometry.hpp"

#include <cstdlib>

namespace rectcart {

std::string to_fraction_string(const Rational &q)
{
    Rational c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string &text)
{
    if (text.empty())
        throw GeometryError("empty rational literal");
    const bool plain_integer_or_fraction =
        text.find_first_not_of("+-0123456789/") == std::string::npos;
    if (plain_integer_or_fraction) {
        std::string t = text;
        if (!t.empty() && t[0] == '+')
            t.erase(0, 1);
        Rational q;
        if (q.set_str(t, 10) != 0 || (t.find('/') != std::string::npos && q.get_den() == 0))
            throw GeometryError("malformed rational literal: " + text);
        q.canonicalize();
        return q;
    }
    char *end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(v))
        throw GeometryError("malformed rational literal: " + text);
    return Rational(v);
}

} // namespace rectcart
