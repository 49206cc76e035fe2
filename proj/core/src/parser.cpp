#include "qaxiom/parser.hpp"

#include <cctype>
#include <cstdlib>

#include "qaxiom/errors.hpp"

namespace qaxiom {

namespace {

class Parser {
public:
    Parser(const std::string& text, SpacePtr space)
        : text_(text), space_(std::move(space)) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("trailing input", pos_);
        return e;
    }

private:
    Expr expr() {
        Expr e = term();
        while (true) {
            skip_ws();
            if (accept('+')) {
                e = e + term();
            } else if (accept('-')) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = factor();
        while (true) {
            skip_ws();
            if (accept('*')) {
                e = e * factor();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Expr rhs = factor();
                try {
                    e = Expr::quotient(e, rhs);
                } catch (const std::invalid_argument& err) {
                    throw SyntaxError(err.what(), at);
                }
            } else {
                return e;
            }
        }
    }

    Expr factor() {
        Expr e = base();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(byte()))
                throw SyntaxError("expected a non-negative integer exponent", at);
            long long exp = 0;
            while (pos_ < text_.size() && std::isdigit(byte())) {
                exp = exp * 10 + (byte() - '0');
                if (exp > 1'000'000) throw SyntaxError("exponent too large", at);
                ++pos_;
            }
            e = Expr::pow(e, static_cast<int>(exp));
        }
        return e;
    }

    Expr base() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = byte();
        if (c == '-') {
            // Negation binds looser than '^' so "-q1^2" reads -(q1^2).
            ++pos_;
            return -factor();
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(c) || c == '.') return number();
        if (std::isalpha(c)) return identifier();
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    Expr number() {
        std::size_t start = pos_;
        long long mantissa = 0;
        int frac_digits = 0;
        bool any_digit = false;
        auto push_digit = [&](char d) {
            if (mantissa > (INT64_MAX - 9) / 10)
                throw SyntaxError("numeric literal too large", start);
            mantissa = mantissa * 10 + (d - '0');
            any_digit = true;
        };
        while (pos_ < text_.size() && std::isdigit(byte())) { push_digit(byte()); ++pos_; }
        if (pos_ < text_.size() && byte() == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(byte())) {
                push_digit(byte());
                ++frac_digits;
                ++pos_;
            }
        }
        if (!any_digit) throw SyntaxError("malformed number", start);
        int exp10 = 0;
        if (pos_ < text_.size() && (byte() == 'e' || byte() == 'E')) {
            // Only a real exponent: digits, optionally signed, must follow.
            std::size_t mark = pos_;
            ++pos_;
            int sign = 1;
            if (pos_ < text_.size() && (byte() == '+' || byte() == '-')) {
                if (byte() == '-') sign = -1;
                ++pos_;
            }
            if (pos_ < text_.size() && std::isdigit(byte())) {
                long long e = 0;
                while (pos_ < text_.size() && std::isdigit(byte())) {
                    e = e * 10 + (byte() - '0');
                    if (e > 18) throw SyntaxError("exponent out of range", mark);
                    ++pos_;
                }
                exp10 = sign * static_cast<int>(e);
            } else {
                pos_ = mark; // not an exponent; leave 'e' for the caller
            }
        }
        Rational value(mantissa);
        int net = exp10 - frac_digits;
        if (net > 18 || net < -18) throw SyntaxError("exponent out of range", start);
        if (net > 0) value = value * Rational(10).pow(net);
        if (net < 0) value = value / Rational(10).pow(-net);
        return Expr::constant(space_, value);
    }

    Expr identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(byte()) || byte() == '_')) ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        FnKind fn;
        if (is_function(name, fn)) {
            skip_ws();
            expect('(');
            Expr arg = expr();
            expect(')');
            return Expr::call(fn, arg);
        }
        if (!space_->find(name)) throw UnknownSymbol(name);
        return Expr::symbol(space_, name);
    }

    static bool is_function(const std::string& name, FnKind& fn) {
        if (name == "sin") { fn = FnKind::Sin; return true; }
        if (name == "cos") { fn = FnKind::Cos; return true; }
        if (name == "exp") { fn = FnKind::Exp; return true; }
        return false;
    }

    char byte() const { return text_[pos_]; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(byte()))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < text_.size() && byte() == c) { ++pos_; return true; }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (!accept(c))
            throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }

    const std::string& text_;
    SpacePtr space_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse_expr(const std::string& text, SpacePtr space) {
    return Parser(text, std::move(space)).run();
}

} // namespace qaxiom
