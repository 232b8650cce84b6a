#include "mfhh/rational.hpp"

namespace mfhh {

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Int pos_mod(const Int& a, const Int& b) {
    Int m = a % b;
    if (m < 0) m += abs(b);
    return m;
}

Rat frac_part(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    return Rat(pos_mod(n, d), d);
}

Rat parse_rational(const std::string& s) {
    if (s.empty()) throw SchemaError("empty rational literal");
    for (char c : s)
        if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
            throw SchemaError("bad rational literal: " + s);
    try {
        Rat q(s);
        return q;
    } catch (const std::exception&) {
        throw SchemaError("bad rational literal: " + s);
    }
}

std::string rational_string(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace mfhh
