#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <memory>
#include <variant>

namespace realforms {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact element of a tower field. The representation mirrors the tower
// shape exactly: a Rationals (or EuclideanHull-over-Rationals) element is a
// Rational, a QuadExt element is a pair (a, b) meaning a + b*sqrt(d) with
// a, b from the base, a Laurent element is a finite exponent -> coefficient
// map. Elements are immutable; copies share structure.
//
// Canonical form: rationals reduced with positive denominator (the
// multiprecision type maintains this), Laurent maps carry no zero
// coefficients (zero == empty map), pair components canonical. The shape is
// always "full": a QuadExt element is a pair even when b == 0, a Laurent
// element is a map even when constant. Structural equality therefore
// coincides with field equality.
class Element {
public:
    struct QuadPairRep;
    struct LaurentRep;

    // zero of the Rationals shape
    Element() : rep_(Rational(0)) {}

    static Element rational(Rational r) { return Element(Rep(std::move(r))); }
    static Element quad_pair(Element a, Element b);
    static Element laurent(std::map<long long, Element> coeffs);  // drops zero coefficients

    bool is_rational() const { return std::holds_alternative<Rational>(rep_); }
    bool is_quad_pair() const { return std::holds_alternative<std::shared_ptr<const QuadPairRep>>(rep_); }
    bool is_laurent() const { return std::holds_alternative<std::shared_ptr<const LaurentRep>>(rep_); }

    const Rational& rat() const;
    const Element& pair_a() const;
    const Element& pair_b() const;
    const std::map<long long, Element>& coeffs() const;

    bool is_zero() const;

    friend bool operator==(const Element& x, const Element& y);
    friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }

private:
    using Rep = std::variant<Rational,
                             std::shared_ptr<const QuadPairRep>,
                             std::shared_ptr<const LaurentRep>>;
    explicit Element(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

struct Element::QuadPairRep {
    Element a;
    Element b;
};

struct Element::LaurentRep {
    std::map<long long, Element> coeffs;
};

inline Element Element::quad_pair(Element a, Element b) {
    return Element(Rep(std::make_shared<const QuadPairRep>(QuadPairRep{std::move(a), std::move(b)})));
}

inline Element Element::laurent(std::map<long long, Element> coeffs) {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        if (it->second.is_zero())
            it = coeffs.erase(it);
        else
            ++it;
    }
    return Element(Rep(std::make_shared<const LaurentRep>(LaurentRep{std::move(coeffs)})));
}

inline const Rational& Element::rat() const { return std::get<Rational>(rep_); }

inline const Element& Element::pair_a() const {
    return std::get<std::shared_ptr<const QuadPairRep>>(rep_)->a;
}

inline const Element& Element::pair_b() const {
    return std::get<std::shared_ptr<const QuadPairRep>>(rep_)->b;
}

inline const std::map<long long, Element>& Element::coeffs() const {
    return std::get<std::shared_ptr<const LaurentRep>>(rep_)->coeffs;
}

inline bool Element::is_zero() const {
    if (is_rational()) return rat() == 0;
    if (is_quad_pair()) return pair_a().is_zero() && pair_b().is_zero();
    return coeffs().empty();
}

inline bool operator==(const Element& x, const Element& y) {
    if (x.is_rational() && y.is_rational()) return x.rat() == y.rat();
    if (x.is_quad_pair() && y.is_quad_pair())
        return x.pair_a() == y.pair_a() && x.pair_b() == y.pair_b();
    if (x.is_laurent() && y.is_laurent()) return x.coeffs() == y.coeffs();
    return false;
}

}  // namespace realforms
