#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "realforms/element.hpp"

namespace realforms {

struct FieldNode;

// Syntactic description of an exact formally real field built from Q by
// quadratic extensions, Euclidean hulls (the desk-scale model of R at a
// designated ordering) and Laurent series adjunction. Towers are immutable
// shared trees; equality is structural.
//
// Canonical shape: Laurent nodes are kept outermost. quad_ext() silently
// rewrites Q((t))(sqrt(2)) as Q(sqrt(2))((t)) whenever the radicand is a
// constant of the Laurent base, so Springer decomposition is always
// available at the top of a canonical tower.
class FieldTower {
public:
    enum class Kind { Rationals, QuadExt, EuclideanHull, Laurent };

    FieldTower();  // the rationals
    static FieldTower rationals();

    Kind kind() const;
    const FieldTower& base() const;      // valid for non-Rationals nodes
    const Element& radicand() const;     // QuadExt only
    bool pythagorean_step() const;       // QuadExt only; derived at construction
    const struct Ordering& designated_ordering() const;  // EuclideanHull only

    // number of nodes, Rationals leaf included
    int depth() const;

    bool is_rationals() const { return kind() == Kind::Rationals; }
    bool is_quad_ext() const { return kind() == Kind::QuadExt; }
    bool is_euclidean_hull() const { return kind() == Kind::EuclideanHull; }
    bool is_laurent() const { return kind() == Kind::Laurent; }

    std::string to_string() const;  // e.g. "laurent(quadext(Q, 2))"

    friend bool operator==(const FieldTower& f, const FieldTower& g);
    friend bool operator!=(const FieldTower& f, const FieldTower& g) { return !(f == g); }

private:
    friend FieldTower quad_ext(const FieldTower&, const Element&);
    friend FieldTower euclidean_hull(const FieldTower&, const struct Ordering&);
    friend FieldTower laurent(const FieldTower&);
    explicit FieldTower(std::shared_ptr<const FieldNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const FieldNode> node_;
};

// A field ordering, encoded as one sign step per tower node, outermost node
// first. Rationals and EuclideanHull nodes carry the placeholder +1 (their
// step is unique resp. forced by the designated base ordering); QuadExt
// steps give the sign of sqrt(radicand); Laurent steps give the sign of the
// infinitesimal t.
struct Ordering {
    FieldTower field;
    std::vector<int> steps;

    // human-readable, innermost choice first: "sqrt(2)>0, t<0"
    std::string describe() const;

    friend bool operator==(const Ordering& p, const Ordering& q) {
        return p.field == q.field && p.steps == q.steps;
    }
    friend bool operator!=(const Ordering& p, const Ordering& q) { return !(p == q); }
};

struct FieldNode {
    FieldTower::Kind kind;
    std::optional<FieldTower> base;
    Element radicand;             // QuadExt
    bool pythagorean_step = false;  // QuadExt; radicand totally positive in base
    std::optional<Ordering> designated;  // EuclideanHull
};

// Tower constructors. quad_ext validates that the radicand is nonzero, not
// a square in the base, and positive at at least one base ordering; it
// derives the pythagorean_step flag and applies the Laurent-outermost
// rewrite. euclidean_hull refuses to nest directly inside another hull.
FieldTower quad_ext(const FieldTower& base, const Element& radicand);
FieldTower euclidean_hull(const FieldTower& base, const Ordering& designated);
FieldTower euclidean_hull(const FieldTower& base);  // base with a unique ordering
FieldTower laurent(const FieldTower& base);

// --- element construction -------------------------------------------------

Element zero(const FieldTower& field);
Element one(const FieldTower& field);
Element from_rational(const FieldTower& field, const Rational& r);
Element from_int(const FieldTower& field, long long n);
// t of the outermost Laurent node
Element laurent_variable(const FieldTower& field);
// c * t^e in the outermost Laurent node
Element laurent_monomial(const FieldTower& field, long long exponent, const Element& base_coeff);
// sqrt(radicand) of the outermost QuadExt node of `field`
Element quad_generator(const FieldTower& field);

// true iff x has exactly the shape required by field (recursively)
bool element_fits(const FieldTower& field, const Element& x);
void require_fits(const FieldTower& field, const Element& x);  // FieldMismatch otherwise

// --- arithmetic -----------------------------------------------------------

Element add(const FieldTower& field, const Element& x, const Element& y);
Element sub(const FieldTower& field, const Element& x, const Element& y);
Element neg(const FieldTower& field, const Element& x);
Element mul(const FieldTower& field, const Element& x, const Element& y);
// DivisionByZero on zero; NonInvertibleLaurentElement unless the Laurent
// element is a single monomial with an invertible coefficient
Element inv(const FieldTower& field, const Element& x);
Element divide(const FieldTower& field, const Element& x, const Element& y);
Element pow_int(const FieldTower& field, const Element& x, long long e);

// --- tower relations ------------------------------------------------------

// structural subfield test; Laurent nodes match level-wise first
bool is_extension_of(const FieldTower& sup, const FieldTower& sub);
// reshape x (an element of sub) as an element of sup; NotAnExtension otherwise
Element embed(const FieldTower& sub, const Element& x, const FieldTower& sup);

// --- orderings, signs, squares ---------------------------------------------

// complete duplicate-free enumeration; QuadExt branches only over base
// orderings that make the radicand positive, Laurent doubles, hulls are forced
std::vector<Ordering> orderings_of(const FieldTower& field);

// sign of nonzero x at P; for Laurent elements this is
// sign(lowest coefficient at the base ordering) * (sign of t)^valuation
int sign_at(const Element& x, const Ordering& P);

struct SquareResult {
    bool square = false;
    // explicit root when one is representable in the carrier; hull-semantic
    // squares and non-polynomial Laurent roots yield true without a witness
    std::optional<Element> witness;
};
SquareResult is_square(const FieldTower& field, const Element& x);

struct SquareClassRep {
    Element representative;
    FieldTower field;
};
// exact list when the square class group is finite in this grammar
// (EuclideanHull: {1,-1}; Laurent over such: doubled by t); nullopt otherwise
std::optional<std::vector<SquareClassRep>> square_class_reps(const FieldTower& field);

bool is_totally_positive(const FieldTower& field, const Element& x);

struct ValuationResidue {
    long long valuation = 0;
    Element residue;  // constant coefficient of the unit part, a base element
};
// x = t^v * u over a Laurent field; returns v and the residue of u
ValuationResidue valuation_residue(const FieldTower& field, const Element& x);

// sub lies in the Pythagorean closure of base iff every construction step
// above base is a QuadExt with totally positive radicand
bool in_pythagorean_closure(const FieldTower& sub, const FieldTower& base);

// --- rendering --------------------------------------------------------------

std::string to_string(const FieldTower& field, const Element& x);

}  // namespace realforms
