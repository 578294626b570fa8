#include "deform/rational.hpp"

namespace deform {

Rational rational_from_string(const std::string& text)
{
    if (text.empty())
        throw InputError("empty rational literal");
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw InputError("malformed rational literal: '" + text + "'");
    }
    try {
        Rational r(text);
        return r;
    } catch (const std::exception&) {
        throw InputError("malformed rational literal: '" + text + "'");
    }
}

std::string to_string(const Rational& r)
{
    return r.str();
}

Rational factorial(unsigned n)
{
    Integer acc = 1;
    for (unsigned k = 2; k <= n; ++k)
        acc *= k;
    return Rational(acc);
}

}  // namespace deform
