#include "conicdisc/expr.hpp"

#include <cctype>
#include <sstream>

namespace conicdisc {

namespace {

struct Parser {
    const std::string& text;
    const PolyRingPtr& ring;
    std::size_t pos = 0;

    [[noreturn]] void error(const std::string& msg) const {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream os;
        os << "parse error at " << line << ":" << col << ": " << msg;
        fail(ErrorCode::BadInput, os.str());
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    Poly parse_expr() {
        Poly r = parse_term();
        while (true) {
            if (accept('+')) {
                r = r + parse_term();
            } else if (accept('-')) {
                r = r - parse_term();
            } else {
                return r;
            }
        }
    }

    Poly parse_term() {
        Poly r = parse_factor();
        while (accept('*')) r = r * parse_factor();
        return r;
    }

    Poly parse_factor() {
        Poly base = parse_atom();
        while (accept('^')) {
            skip_ws();
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                error("exponent must be a nonnegative integer literal");
            int e = parse_nat();
            base = base.pow(e);
        }
        return base;
    }

    int parse_nat() {
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 100000) error("exponent too large");
            ++pos;
        }
        return static_cast<int>(v);
    }

    Poly parse_atom() {
        skip_ws();
        if (pos >= text.size()) error("unexpected end of expression");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Poly r = parse_expr();
            if (!accept(')')) error("missing ')'");
            return r;
        }
        if (c == '-') {
            ++pos;
            return -parse_atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        error(std::string("unexpected character '") + c + "'");
    }

    Poly parse_number() {
        Rational num = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            num = num * 10 + (text[pos] - '0');
            ++pos;
        }
        skip_ws();
        if (pos < text.size() && text[pos] == '/') {
            // rational literal n/d: only meaningful where division is exact
            std::size_t save = pos;
            ++pos;
            skip_ws();
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                Rational den = 0;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                    den = den * 10 + (text[pos] - '0');
                    ++pos;
                }
                if (den == 0) error("division by zero in literal");
                return Poly::constant(ring, Scalar::from_rational(ring->field, num / den));
            }
            pos = save;
        }
        return Poly::constant(ring, Scalar::from_rational(ring->field, num));
    }

    Poly parse_ident() {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string name = text.substr(start, pos - start);
        if (ring->var_index(name)) return Poly::variable(ring, name);
        if (name == "w" && ring->field->is_finite() && ring->field->extension_degree() > 1)
            return Poly::constant(ring, Scalar::generator(ring->field));
        pos = start;
        error("undeclared variable '" + name + "'");
    }
};

} // namespace

Poly parse_expression(const std::string& text, const PolyRingPtr& ring) {
    Parser p{text, ring};
    Poly r = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.error("trailing input");
    return r;
}

} // namespace conicdisc
