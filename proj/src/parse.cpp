#include "realforms/parse.hpp"

#include <cctype>
#include <optional>

#include "realforms/errors.hpp"

namespace realforms {

namespace {

struct Token {
    enum class Type { Ident, Int, Punct, End };
    Type type = Type::End;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    bool accept_punct(char c) {
        if (tok_.type == Token::Type::Punct && tok_.text[0] == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect_punct(char c) {
        if (!accept_punct(c))
            raise(errc::parse_error, std::string("expected '") + c + "' near '" + tok_.text + "'");
    }

    void expect_end() {
        if (tok_.type != Token::Type::End)
            raise(errc::parse_error, "trailing input near '" + tok_.text + "'");
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) {
            tok_ = {Token::Type::End, "<end>"};
            return;
        }
        char c = s_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Type::Ident, s_.substr(start, pos_ - start)};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            tok_ = {Token::Type::Int, s_.substr(start, pos_ - start)};
            return;
        }
        if (std::string("(),;+-*/^").find(c) != std::string::npos) {
            tok_ = {Token::Type::Punct, std::string(1, c)};
            ++pos_;
            return;
        }
        raise(errc::parse_error, std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    Token tok_;
};

// --- towers -----------------------------------------------------------------

Element parse_expr(Lexer& lx, const FieldTower& field);

FieldTower parse_tower(Lexer& lx) {
    Token t = lx.next();
    if (t.type != Token::Type::Ident)
        raise(errc::parse_error, "expected a field tower, got '" + t.text + "'");
    if (t.text == "Q") return FieldTower::rationals();
    if (t.text == "quadext") {
        lx.expect_punct('(');
        FieldTower base = parse_tower(lx);
        lx.expect_punct(',');
        Element rad = parse_expr(lx, base);
        lx.expect_punct(')');
        return quad_ext(base, rad);
    }
    if (t.text == "euclid") {
        lx.expect_punct('(');
        FieldTower base = parse_tower(lx);
        std::size_t index = 0;
        if (lx.accept_punct(',')) {
            Token n = lx.next();
            if (n.type != Token::Type::Int)
                raise(errc::parse_error, "expected an ordering index");
            index = static_cast<std::size_t>(std::stoull(n.text));
        }
        lx.expect_punct(')');
        auto all = orderings_of(base);
        if (index >= all.size())
            raise(errc::parse_error, "ordering index out of range for " + base.to_string());
        return euclidean_hull(base, all[index]);
    }
    if (t.text == "laurent") {
        lx.expect_punct('(');
        FieldTower base = parse_tower(lx);
        lx.expect_punct(')');
        return laurent(base);
    }
    raise(errc::parse_error, "unknown field constructor '" + t.text + "'");
}

// --- elements ------------------------------------------------------------------

// t of the first Laurent node from the top, embedded into field
Element resolve_t(const FieldTower& field) {
    FieldTower f = field;
    while (true) {
        if (f.is_laurent()) return embed(f, laurent_variable(f), field);
        if (f.is_rationals()) break;
        f = f.base();
    }
    raise(errc::parse_error, "no Laurent node in " + field.to_string() + "; 't' is undefined");
}

// sqrt(x): a tower generator when x matches a radicand, else a representable root
Element resolve_sqrt(const FieldTower& field, const Element& x) {
    if (x.is_zero()) return zero(field);
    FieldTower f = field;
    while (true) {
        if (f.is_quad_ext()) {
            if (embed(f.base(), f.radicand(), field) == x)
                return embed(f, quad_generator(f), field);
        }
        if (f.is_rationals()) break;
        f = f.base();
    }
    SquareResult sq = is_square(field, x);
    if (sq.square && sq.witness) return *sq.witness;
    raise(errc::parse_error,
          "sqrt(" + to_string(field, x) + ") is not representable in " + field.to_string());
}

long long parse_exponent(Lexer& lx) {
    bool negative = lx.accept_punct('-');
    Token t = lx.next();
    if (t.type != Token::Type::Int) raise(errc::parse_error, "expected an integer exponent");
    long long e = std::stoll(t.text);
    return negative ? -e : e;
}

Element parse_primary(Lexer& lx, const FieldTower& field) {
    const Token& t = lx.peek();
    if (t.type == Token::Type::Int) {
        Rational r(Integer(lx.next().text));
        return from_rational(field, r);
    }
    if (t.type == Token::Type::Ident) {
        Token id = lx.next();
        if (id.text == "t") return resolve_t(field);
        if (id.text == "sqrt") {
            lx.expect_punct('(');
            Element inner = parse_expr(lx, field);
            lx.expect_punct(')');
            return resolve_sqrt(field, inner);
        }
        if (id.text == "i" || id.text == "j" || id.text == "k")
            raise(errc::parse_error, "'" + id.text + "' is a quaternion symbol; not a field element");
        raise(errc::parse_error, "unknown symbol '" + id.text + "'");
    }
    if (lx.accept_punct('(')) {
        Element inner = parse_expr(lx, field);
        lx.expect_punct(')');
        return inner;
    }
    raise(errc::parse_error, "expected an expression, got '" + t.text + "'");
}

Element parse_unary(Lexer& lx, const FieldTower& field) {
    if (lx.accept_punct('-')) return neg(field, parse_unary(lx, field));
    if (lx.accept_punct('+')) return parse_unary(lx, field);
    Element x = parse_primary(lx, field);
    while (lx.peek().type == Token::Type::Punct && lx.peek().text[0] == '^') {
        lx.next();
        x = pow_int(field, x, parse_exponent(lx));
    }
    return x;
}

Element parse_term(Lexer& lx, const FieldTower& field) {
    Element x = parse_unary(lx, field);
    while (lx.peek().type == Token::Type::Punct &&
           (lx.peek().text[0] == '*' || lx.peek().text[0] == '/')) {
        char op = lx.next().text[0];
        Element y = parse_unary(lx, field);
        x = op == '*' ? mul(field, x, y) : divide(field, x, y);
    }
    return x;
}

Element parse_expr(Lexer& lx, const FieldTower& field) {
    Element x = parse_term(lx, field);
    while (lx.peek().type == Token::Type::Punct &&
           (lx.peek().text[0] == '+' || lx.peek().text[0] == '-')) {
        char op = lx.next().text[0];
        Element y = parse_term(lx, field);
        x = op == '+' ? add(field, x, y) : sub(field, x, y);
    }
    return x;
}

// --- quaternion expressions ----------------------------------------------------

Quat parse_qexpr(Lexer& lx, const QuaternionAlgebra& A);

Quat parse_qprimary(Lexer& lx, const QuaternionAlgebra& A) {
    const FieldTower& F = A.field;
    const Token& t = lx.peek();
    if (t.type == Token::Type::Int) {
        Rational r(Integer(lx.next().text));
        return quat_scalar(A, from_rational(F, r));
    }
    if (t.type == Token::Type::Ident) {
        Token id = lx.next();
        if (id.text == "i") return quat_i(A);
        if (id.text == "j") return quat_j(A);
        if (id.text == "k") return quat_k(A);
        if (id.text == "t") return quat_scalar(A, resolve_t(F));
        if (id.text == "sqrt") {
            lx.expect_punct('(');
            Quat inner = parse_qexpr(lx, A);
            lx.expect_punct(')');
            if (!inner.x1.is_zero() || !inner.x2.is_zero() || !inner.x3.is_zero())
                raise(errc::parse_error, "sqrt of a non-scalar quaternion");
            return quat_scalar(A, resolve_sqrt(F, inner.x0));
        }
        raise(errc::parse_error, "unknown symbol '" + id.text + "'");
    }
    if (lx.accept_punct('(')) {
        Quat inner = parse_qexpr(lx, A);
        lx.expect_punct(')');
        return inner;
    }
    raise(errc::parse_error, "expected an expression, got '" + t.text + "'");
}

Quat qpow(const QuaternionAlgebra& A, Quat x, long long e) {
    if (e == 0) return quat_one(A);
    Quat b = e < 0 ? qinv(A, x) : x;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1ULL
                                 : static_cast<unsigned long long>(e);
    Quat acc = quat_one(A);
    while (n) {
        if (n & 1ULL) acc = qmul(A, acc, b);
        n >>= 1ULL;
        if (n) b = qmul(A, b, b);
    }
    return acc;
}

Quat parse_qunary(Lexer& lx, const QuaternionAlgebra& A) {
    if (lx.accept_punct('-')) return qneg(A, parse_qunary(lx, A));
    if (lx.accept_punct('+')) return parse_qunary(lx, A);
    Quat x = parse_qprimary(lx, A);
    while (lx.peek().type == Token::Type::Punct && lx.peek().text[0] == '^') {
        lx.next();
        x = qpow(A, x, parse_exponent(lx));
    }
    return x;
}

Quat parse_qterm(Lexer& lx, const QuaternionAlgebra& A) {
    Quat x = parse_qunary(lx, A);
    while (lx.peek().type == Token::Type::Punct &&
           (lx.peek().text[0] == '*' || lx.peek().text[0] == '/')) {
        char op = lx.next().text[0];
        Quat y = parse_qunary(lx, A);
        // division is right division x y^-1
        x = op == '*' ? qmul(A, x, y) : qmul(A, x, qinv(A, y));
    }
    return x;
}

Quat parse_qexpr(Lexer& lx, const QuaternionAlgebra& A) {
    Quat x = parse_qterm(lx, A);
    while (lx.peek().type == Token::Type::Punct &&
           (lx.peek().text[0] == '+' || lx.peek().text[0] == '-')) {
        char op = lx.next().text[0];
        Quat y = parse_qterm(lx, A);
        x = op == '+' ? qadd(A, x, y) : qsub(A, x, y);
    }
    return x;
}

QuaternionAlgebra parse_quat_header(Lexer& lx) {
    Token t = lx.next();
    if (t.type != Token::Type::Ident || t.text != "quat")
        raise(errc::parse_error, "expected quat(...)");
    lx.expect_punct('(');
    FieldTower field = parse_tower(lx);
    lx.expect_punct(';');
    Element a = parse_expr(lx, field);
    lx.expect_punct(',');
    Element b = parse_expr(lx, field);
    lx.expect_punct(')');
    return QuaternionAlgebra(field, a, b);
}

}  // namespace

FieldTower parse_field(const std::string& text) {
    Lexer lx(text);
    FieldTower f = parse_tower(lx);
    lx.expect_end();
    return f;
}

Element parse_element(const std::string& text, const FieldTower& field) {
    Lexer lx(text);
    Element x = parse_expr(lx, field);
    lx.expect_end();
    return x;
}

QuadForm parse_form(const std::string& text) {
    Lexer lx(text);
    Token t = lx.next();
    if (t.type != Token::Type::Ident || t.text != "form")
        raise(errc::parse_error, "expected form(...)");
    lx.expect_punct('(');
    FieldTower field = parse_tower(lx);
    lx.expect_punct(';');
    std::vector<Element> entries;
    if (!lx.accept_punct(')')) {
        entries.push_back(parse_expr(lx, field));
        while (lx.accept_punct(',')) entries.push_back(parse_expr(lx, field));
        lx.expect_punct(')');
    }
    lx.expect_end();
    return QuadForm(field, std::move(entries));
}

QuaternionAlgebra parse_quaternion_algebra(const std::string& text) {
    Lexer lx(text);
    QuaternionAlgebra A = parse_quat_header(lx);
    lx.expect_end();
    return A;
}

Quat parse_quat(const std::string& text, const QuaternionAlgebra& algebra) {
    Lexer lx(text);
    Quat x = parse_qexpr(lx, algebra);
    lx.expect_end();
    return x;
}

InvolutionSpec parse_involution(const std::string& text, const QuaternionAlgebra& algebra) {
    Lexer lx(text);
    Token t = lx.next();
    if (t.type != Token::Type::Ident)
        raise(errc::parse_error, "expected gamma or int_gamma(...)");
    if (t.text == "gamma") {
        lx.expect_end();
        return InvolutionSpec::canonical();
    }
    if (t.text == "int_gamma") {
        lx.expect_punct('(');
        Quat u = parse_qexpr(lx, algebra);
        lx.expect_punct(')');
        lx.expect_end();
        return InvolutionSpec::int_u_gamma(algebra, u);
    }
    raise(errc::parse_error, "unknown involution '" + t.text + "'");
}

SkewHermitianForm parse_sherm(const std::string& text) {
    Lexer lx(text);
    Token t = lx.next();
    if (t.type != Token::Type::Ident || t.text != "sherm")
        raise(errc::parse_error, "expected sherm(...)");
    lx.expect_punct('(');
    QuaternionAlgebra A = parse_quat_header(lx);
    lx.expect_punct(';');
    std::vector<Quat> entries;
    if (!lx.accept_punct(')')) {
        entries.push_back(parse_qexpr(lx, A));
        while (lx.accept_punct(',')) entries.push_back(parse_qexpr(lx, A));
        lx.expect_punct(')');
    }
    lx.expect_end();
    return SkewHermitianForm(A, std::move(entries));
}

}  // namespace realforms
