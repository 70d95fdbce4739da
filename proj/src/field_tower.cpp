#include "realforms/field_tower.hpp"

#include <algorithm>
#include <utility>

#include "realforms/errors.hpp"

namespace realforms {

namespace {

std::shared_ptr<const FieldNode> make_node(FieldNode n) {
    return std::make_shared<const FieldNode>(std::move(n));
}

}  // namespace

// --- FieldTower basics ------------------------------------------------------

FieldTower FieldTower::rationals() {
    static const std::shared_ptr<const FieldNode> q =
        make_node(FieldNode{Kind::Rationals, std::nullopt, Element(), false, std::nullopt});
    return FieldTower(q);
}

FieldTower::FieldTower() : FieldTower(rationals()) {}

FieldTower::Kind FieldTower::kind() const { return node_->kind; }

const FieldTower& FieldTower::base() const {
    if (!node_->base) raise(errc::invalid_construction, "Rationals has no base field");
    return *node_->base;
}

const Element& FieldTower::radicand() const {
    if (kind() != Kind::QuadExt) raise(errc::invalid_construction, "radicand: not a quadratic extension");
    return node_->radicand;
}

bool FieldTower::pythagorean_step() const {
    if (kind() != Kind::QuadExt) raise(errc::invalid_construction, "pythagorean_step: not a quadratic extension");
    return node_->pythagorean_step;
}

const Ordering& FieldTower::designated_ordering() const {
    if (kind() != Kind::EuclideanHull) raise(errc::invalid_construction, "designated_ordering: not a Euclidean hull");
    return *node_->designated;
}

int FieldTower::depth() const {
    int d = 1;
    const FieldNode* n = node_.get();
    while (n->base) {
        ++d;
        n = n->base->node_.get();
    }
    return d;
}

bool operator==(const FieldTower& f, const FieldTower& g) {
    if (f.node_ == g.node_) return true;
    if (f.kind() != g.kind()) return false;
    switch (f.kind()) {
        case FieldTower::Kind::Rationals:
            return true;
        case FieldTower::Kind::QuadExt:
            return f.base() == g.base() && f.radicand() == g.radicand();
        case FieldTower::Kind::EuclideanHull:
            return f.base() == g.base() &&
                   f.designated_ordering().steps == g.designated_ordering().steps;
        case FieldTower::Kind::Laurent:
            return f.base() == g.base();
    }
    return false;
}

std::string FieldTower::to_string() const {
    switch (kind()) {
        case Kind::Rationals:
            return "Q";
        case Kind::QuadExt:
            return "quadext(" + base().to_string() + ", " + realforms::to_string(base(), radicand()) + ")";
        case Kind::EuclideanHull: {
            auto all = orderings_of(base());
            if (all.size() == 1) return "euclid(" + base().to_string() + ")";
            std::size_t idx = 0;
            for (std::size_t i = 0; i < all.size(); ++i)
                if (all[i] == designated_ordering()) { idx = i; break; }
            return "euclid(" + base().to_string() + ", " + std::to_string(idx) + ")";
        }
        case Kind::Laurent:
            return "laurent(" + base().to_string() + ")";
    }
    return "?";
}

// --- element construction ----------------------------------------------------

Element from_rational(const FieldTower& field, const Rational& r) {
    switch (field.kind()) {
        case FieldTower::Kind::Rationals:
            return Element::rational(r);
        case FieldTower::Kind::QuadExt:
            return Element::quad_pair(from_rational(field.base(), r), from_rational(field.base(), 0));
        case FieldTower::Kind::EuclideanHull:
            return from_rational(field.base(), r);
        case FieldTower::Kind::Laurent: {
            std::map<long long, Element> c;
            if (r != 0) c.emplace(0, from_rational(field.base(), r));
            return Element::laurent(std::move(c));
        }
    }
    raise(errc::invalid_construction, "unreachable field kind");
}

Element zero(const FieldTower& field) { return from_rational(field, 0); }
Element one(const FieldTower& field) { return from_rational(field, 1); }
Element from_int(const FieldTower& field, long long n) { return from_rational(field, Rational(n)); }

Element laurent_variable(const FieldTower& field) {
    if (!field.is_laurent()) raise(errc::not_laurent_field, "field has no outermost Laurent node");
    return Element::laurent({{1, one(field.base())}});
}

Element laurent_monomial(const FieldTower& field, long long exponent, const Element& base_coeff) {
    if (!field.is_laurent()) raise(errc::not_laurent_field, "field has no outermost Laurent node");
    require_fits(field.base(), base_coeff);
    if (base_coeff.is_zero()) return zero(field);
    return Element::laurent({{exponent, base_coeff}});
}

Element quad_generator(const FieldTower& field) {
    if (!field.is_quad_ext()) raise(errc::invalid_construction, "field has no outermost quadratic extension");
    return Element::quad_pair(zero(field.base()), one(field.base()));
}

bool element_fits(const FieldTower& field, const Element& x) {
    switch (field.kind()) {
        case FieldTower::Kind::Rationals:
            return x.is_rational();
        case FieldTower::Kind::QuadExt:
            return x.is_quad_pair() && element_fits(field.base(), x.pair_a()) &&
                   element_fits(field.base(), x.pair_b());
        case FieldTower::Kind::EuclideanHull:
            return element_fits(field.base(), x);
        case FieldTower::Kind::Laurent: {
            if (!x.is_laurent()) return false;
            for (const auto& [e, c] : x.coeffs())
                if (c.is_zero() || !element_fits(field.base(), c)) return false;
            return true;
        }
    }
    return false;
}

void require_fits(const FieldTower& field, const Element& x) {
    if (!element_fits(field, x))
        raise(errc::field_mismatch, "element does not belong to " + field.to_string());
}

// --- arithmetic ---------------------------------------------------------------

namespace {

Element add_impl(const FieldTower& f, const Element& x, const Element& y);
Element mul_impl(const FieldTower& f, const Element& x, const Element& y);
Element neg_impl(const FieldTower& f, const Element& x);
Element inv_impl(const FieldTower& f, const Element& x);

Element add_impl(const FieldTower& f, const Element& x, const Element& y) {
    switch (f.kind()) {
        case FieldTower::Kind::Rationals:
            return Element::rational(x.rat() + y.rat());
        case FieldTower::Kind::QuadExt:
            return Element::quad_pair(add_impl(f.base(), x.pair_a(), y.pair_a()),
                                      add_impl(f.base(), x.pair_b(), y.pair_b()));
        case FieldTower::Kind::EuclideanHull:
            return add_impl(f.base(), x, y);
        case FieldTower::Kind::Laurent: {
            std::map<long long, Element> c = x.coeffs();
            for (const auto& [e, v] : y.coeffs()) {
                auto it = c.find(e);
                if (it == c.end())
                    c.emplace(e, v);
                else
                    it->second = add_impl(f.base(), it->second, v);
            }
            return Element::laurent(std::move(c));
        }
    }
    raise(errc::invalid_construction, "unreachable field kind");
}

Element neg_impl(const FieldTower& f, const Element& x) {
    switch (f.kind()) {
        case FieldTower::Kind::Rationals:
            return Element::rational(-x.rat());
        case FieldTower::Kind::QuadExt:
            return Element::quad_pair(neg_impl(f.base(), x.pair_a()), neg_impl(f.base(), x.pair_b()));
        case FieldTower::Kind::EuclideanHull:
            return neg_impl(f.base(), x);
        case FieldTower::Kind::Laurent: {
            std::map<long long, Element> c;
            for (const auto& [e, v] : x.coeffs()) c.emplace(e, neg_impl(f.base(), v));
            return Element::laurent(std::move(c));
        }
    }
    raise(errc::invalid_construction, "unreachable field kind");
}

Element mul_impl(const FieldTower& f, const Element& x, const Element& y) {
    switch (f.kind()) {
        case FieldTower::Kind::Rationals:
            return Element::rational(x.rat() * y.rat());
        case FieldTower::Kind::QuadExt: {
            const FieldTower& b = f.base();
            const Element& d = f.radicand();
            // (a1 + b1 sqrt d)(a2 + b2 sqrt d) = a1 a2 + d b1 b2 + (a1 b2 + a2 b1) sqrt d
            Element a = add_impl(b, mul_impl(b, x.pair_a(), y.pair_a()),
                                 mul_impl(b, d, mul_impl(b, x.pair_b(), y.pair_b())));
            Element bb = add_impl(b, mul_impl(b, x.pair_a(), y.pair_b()),
                                  mul_impl(b, x.pair_b(), y.pair_a()));
            return Element::quad_pair(std::move(a), std::move(bb));
        }
        case FieldTower::Kind::EuclideanHull:
            return mul_impl(f.base(), x, y);
        case FieldTower::Kind::Laurent: {
            std::map<long long, Element> c;
            for (const auto& [e1, v1] : x.coeffs())
                for (const auto& [e2, v2] : y.coeffs()) {
                    Element prod = mul_impl(f.base(), v1, v2);
                    auto it = c.find(e1 + e2);
                    if (it == c.end())
                        c.emplace(e1 + e2, std::move(prod));
                    else
                        it->second = add_impl(f.base(), it->second, prod);
                }
            return Element::laurent(std::move(c));
        }
    }
    raise(errc::invalid_construction, "unreachable field kind");
}

Element inv_impl(const FieldTower& f, const Element& x) {
    if (x.is_zero()) raise(errc::division_by_zero, "division by zero in " + f.to_string());
    switch (f.kind()) {
        case FieldTower::Kind::Rationals:
            return Element::rational(Rational(1) / x.rat());
        case FieldTower::Kind::QuadExt: {
            const FieldTower& b = f.base();
            // (a + b sqrt d)^-1 = (a - b sqrt d) / (a^2 - d b^2); the norm is
            // nonzero because d is not a square in the base
            Element norm = add_impl(b, mul_impl(b, x.pair_a(), x.pair_a()),
                                    neg_impl(b, mul_impl(b, f.radicand(), mul_impl(b, x.pair_b(), x.pair_b()))));
            Element ninv = inv_impl(b, norm);
            return Element::quad_pair(mul_impl(b, x.pair_a(), ninv),
                                      neg_impl(b, mul_impl(b, x.pair_b(), ninv)));
        }
        case FieldTower::Kind::EuclideanHull:
            return inv_impl(f.base(), x);
        case FieldTower::Kind::Laurent: {
            const auto& c = x.coeffs();
            if (c.size() != 1)
                raise(errc::non_invertible_laurent,
                      "only monomials with an invertible coefficient can be inverted");
            const auto& [e, v] = *c.begin();
            return Element::laurent({{-e, inv_impl(f.base(), v)}});
        }
    }
    raise(errc::invalid_construction, "unreachable field kind");
}

}  // namespace

Element add(const FieldTower& field, const Element& x, const Element& y) {
    require_fits(field, x);
    require_fits(field, y);
    return add_impl(field, x, y);
}

Element sub(const FieldTower& field, const Element& x, const Element& y) {
    require_fits(field, x);
    require_fits(field, y);
    return add_impl(field, x, neg_impl(field, y));
}

Element neg(const FieldTower& field, const Element& x) {
    require_fits(field, x);
    return neg_impl(field, x);
}

Element mul(const FieldTower& field, const Element& x, const Element& y) {
    require_fits(field, x);
    require_fits(field, y);
    return mul_impl(field, x, y);
}

Element inv(const FieldTower& field, const Element& x) {
    require_fits(field, x);
    return inv_impl(field, x);
}

Element divide(const FieldTower& field, const Element& x, const Element& y) {
    require_fits(field, x);
    require_fits(field, y);
    return mul_impl(field, x, inv_impl(field, y));
}

Element pow_int(const FieldTower& field, const Element& x, long long e) {
    require_fits(field, x);
    if (e == 0) return one(field);
    Element b = e < 0 ? inv_impl(field, x) : x;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1ULL
                                 : static_cast<unsigned long long>(e);
    Element acc = one(field);
    while (n) {
        if (n & 1ULL) acc = mul_impl(field, acc, b);
        n >>= 1ULL;
        if (n) b = mul_impl(field, b, b);
    }
    return acc;
}

// --- orderings and signs --------------------------------------------------------

namespace {

int rational_sign(const Rational& r) { return r > 0 ? 1 : -1; }

// sign of x at the ordering whose steps for this node start at steps[idx]
int sign_impl(const FieldTower& f, const Element& x, const std::vector<int>& steps, std::size_t idx) {
    switch (f.kind()) {
        case FieldTower::Kind::Rationals:
            return rational_sign(x.rat());
        case FieldTower::Kind::QuadExt: {
            const FieldTower& b = f.base();
            const int s = steps[idx];
            const Element& a = x.pair_a();
            const Element& bb = x.pair_b();
            if (bb.is_zero()) return sign_impl(b, a, steps, idx + 1);
            const int sb = sign_impl(b, bb, steps, idx + 1) * s;
            if (a.is_zero()) return sb;
            const int sa = sign_impl(b, a, steps, idx + 1);
            if (sa == sb) return sa;
            // opposite parts: the sign is decided by |a|^2 vs d |b|^2
            Element disc = add_impl(b, mul_impl(b, a, a),
                                    neg_impl(b, mul_impl(b, f.radicand(), mul_impl(b, bb, bb))));
            return sa * sign_impl(b, disc, steps, idx + 1);
        }
        case FieldTower::Kind::EuclideanHull:
            // the hull's step is a placeholder and everything below is forced
            return sign_impl(f.base(), x, f.designated_ordering().steps, 0);
        case FieldTower::Kind::Laurent: {
            const auto& c = x.coeffs();
            const long long v = c.begin()->first;
            const int lead = sign_impl(f.base(), c.begin()->second, steps, idx + 1);
            return (v % 2 != 0) ? lead * steps[idx] : lead;
        }
    }
    raise(errc::invalid_construction, "unreachable field kind");
}

std::vector<std::vector<int>> enum_paths(const FieldTower& f) {
    switch (f.kind()) {
        case FieldTower::Kind::Rationals:
            return {{1}};
        case FieldTower::Kind::QuadExt: {
            std::vector<std::vector<int>> out;
            for (const auto& p : enum_paths(f.base())) {
                if (sign_impl(f.base(), f.radicand(), p, 0) != 1) continue;
                for (int s : {1, -1}) {
                    std::vector<int> q;
                    q.reserve(p.size() + 1);
                    q.push_back(s);
                    q.insert(q.end(), p.begin(), p.end());
                    out.push_back(std::move(q));
                }
            }
            return out;
        }
        case FieldTower::Kind::EuclideanHull: {
            std::vector<int> q;
            const auto& d = f.designated_ordering().steps;
            q.reserve(d.size() + 1);
            q.push_back(1);
            q.insert(q.end(), d.begin(), d.end());
            return {std::move(q)};
        }
        case FieldTower::Kind::Laurent: {
            std::vector<std::vector<int>> out;
            for (const auto& p : enum_paths(f.base()))
                for (int s : {1, -1}) {
                    std::vector<int> q;
                    q.reserve(p.size() + 1);
                    q.push_back(s);
                    q.insert(q.end(), p.begin(), p.end());
                    out.push_back(std::move(q));
                }
            return out;
        }
    }
    raise(errc::invalid_construction, "unreachable field kind");
}

}  // namespace

std::vector<Ordering> orderings_of(const FieldTower& field) {
    std::vector<Ordering> out;
    for (auto& p : enum_paths(field)) out.push_back(Ordering{field, std::move(p)});
    return out;
}

int sign_at(const Element& x, const Ordering& P) {
    if (!element_fits(P.field, x))
        raise(errc::ordering_field_mismatch, "element does not live in the ordering's field");
    if (P.steps.size() != static_cast<std::size_t>(P.field.depth()))
        raise(errc::ordering_field_mismatch, "ordering path length does not match the tower");
    if (x.is_zero()) raise(errc::zero_element, "sign of zero is undefined");
    return sign_impl(P.field, x, P.steps, 0);
}

std::string Ordering::describe() const {
    std::vector<std::string> tokens;
    FieldTower f = field;
    std::size_t i = 0;
    while (true) {
        switch (f.kind()) {
            case FieldTower::Kind::Laurent:
                tokens.push_back(steps[i] == 1 ? "t>0" : "t<0");
                break;
            case FieldTower::Kind::QuadExt:
                tokens.push_back("sqrt(" + realforms::to_string(f.base(), f.radicand()) + ")" +
                                 (steps[i] == 1 ? ">0" : "<0"));
                break;
            default:
                break;
        }
        if (f.is_rationals()) break;
        f = f.base();
        ++i;
    }
    if (tokens.empty()) return "unique";
    std::string out;
    for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
        if (!out.empty()) out += ", ";
        out += *it;
    }
    return out;
}

// --- squares ----------------------------------------------------------------------

namespace {

bool perfect_square(const Integer& n, Integer& root) {
    if (n < 0) return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

// attempt an exact polynomial square root of x (valuation 2m, top degree even),
// given a witness root of the leading coefficient; empty on failure
std::optional<Element> laurent_poly_sqrt(const FieldTower& f, const Element& x, const Element& lead_root) {
    const FieldTower& b = f.base();
    const auto& cs = x.coeffs();
    const long long v = cs.begin()->first;
    const long long top = cs.rbegin()->first;
    if ((top - v) % 2 != 0) return std::nullopt;
    const long long m = v / 2;
    const long long mtop = m + (top - v) / 2;
    std::map<long long, Element> s;
    s.emplace(m, lead_root);
    try {
        Element twice_lead = add_impl(b, lead_root, lead_root);
        for (long long k = m + 1; k <= mtop; ++k) {
            // coefficient of t^(v + (k - m)) in s^2 must match x
            Element acc = zero(b);
            for (long long i = m + 1; i <= k - 1; ++i) {
                auto it = s.find(i);
                auto jt = s.find(m + k - i);
                if (it == s.end() || jt == s.end()) continue;
                acc = add_impl(b, acc, mul_impl(b, it->second, jt->second));
            }
            auto xt = cs.find(v + (k - m));
            Element target = xt == cs.end() ? zero(b) : xt->second;
            Element coeff = mul_impl(b, add_impl(b, target, neg_impl(b, acc)), inv_impl(b, twice_lead));
            if (!coeff.is_zero()) s.emplace(k, std::move(coeff));
        }
    } catch (const Error&) {
        return std::nullopt;
    }
    Element cand = Element::laurent(std::move(s));
    if (mul_impl(f, cand, cand) == x) return cand;
    return std::nullopt;
}

SquareResult is_square_impl(const FieldTower& f, const Element& x) {
    switch (f.kind()) {
        case FieldTower::Kind::Rationals: {
            const Rational& r = x.rat();
            if (r < 0) return {false, std::nullopt};
            Integer rn, rd;
            if (!perfect_square(numerator(r), rn) || !perfect_square(denominator(r), rd))
                return {false, std::nullopt};
            return {true, Element::rational(Rational(rn, rd))};
        }
        case FieldTower::Kind::QuadExt: {
            const FieldTower& b = f.base();
            const Element& d = f.radicand();
            const Element& p = x.pair_a();
            const Element& q = x.pair_b();
            if (q.is_zero()) {
                // p = u^2 or p = d v^2
                SquareResult r1 = is_square_impl(b, p);
                if (r1.square) {
                    std::optional<Element> w;
                    if (r1.witness) w = Element::quad_pair(*r1.witness, zero(b));
                    return {true, w};
                }
                SquareResult r2 = is_square_impl(b, mul_impl(b, p, inv_impl(b, d)));
                if (r2.square) {
                    std::optional<Element> w;
                    if (r2.witness) w = Element::quad_pair(zero(b), *r2.witness);
                    return {true, w};
                }
                return {false, std::nullopt};
            }
            // p + q sqrt d = (a + b sqrt d)^2 needs a^2 = (p ± sqrt(p^2 - d q^2))/2
            Element n = add_impl(b, mul_impl(b, p, p),
                                 neg_impl(b, mul_impl(b, d, mul_impl(b, q, q))));
            SquareResult rn = is_square_impl(b, n);
            if (!rn.square) return {false, std::nullopt};
            if (!rn.witness)
                raise(errc::undecidable_representation,
                      "resolvent root is not representable in " + b.to_string());
            const Element half = from_rational(b, Rational(1, 2));
            for (bool negate : {false, true}) {
                Element m = negate ? neg_impl(b, *rn.witness) : *rn.witness;
                Element cand = mul_impl(b, add_impl(b, p, m), half);
                if (cand.is_zero()) continue;
                SquareResult rc = is_square_impl(b, cand);
                if (!rc.square) continue;
                if (!rc.witness)
                    raise(errc::undecidable_representation,
                          "square root of resolvent branch not representable in " + b.to_string());
                const Element& a = *rc.witness;
                Element bb = zero(b);
                try {
                    bb = mul_impl(b, q, inv_impl(b, add_impl(b, a, a)));
                } catch (const Error&) {
                    raise(errc::undecidable_representation,
                          "root coordinates are not representable in " + b.to_string());
                }
                Element w = Element::quad_pair(a, std::move(bb));
                if (mul_impl(f, w, w) == x) return {true, w};
            }
            return {false, std::nullopt};
        }
        case FieldTower::Kind::EuclideanHull: {
            // Euclidean semantics: squares are exactly the elements positive at
            // the designated ordering; a witness exists only when the carrier
            // already contains a root
            const Ordering& P = f.designated_ordering();
            if (sign_impl(f.base(), x, P.steps, 0) != 1) return {false, std::nullopt};
            SquareResult inner = is_square_impl(f.base(), x);
            return {true, inner.square ? inner.witness : std::nullopt};
        }
        case FieldTower::Kind::Laurent: {
            const auto& cs = x.coeffs();
            const long long v = cs.begin()->first;
            if (v % 2 != 0) return {false, std::nullopt};
            // Hensel: a unit of the complete field is a square iff its residue is
            SquareResult rc = is_square_impl(f.base(), cs.begin()->second);
            if (!rc.square) return {false, std::nullopt};
            std::optional<Element> w;
            if (rc.witness) w = laurent_poly_sqrt(f, x, *rc.witness);
            return {true, w};
        }
    }
    raise(errc::invalid_construction, "unreachable field kind");
}

}  // namespace

SquareResult is_square(const FieldTower& field, const Element& x) {
    require_fits(field, x);
    if (x.is_zero()) raise(errc::zero_element, "squareness of zero is undefined");
    return is_square_impl(field, x);
}

std::optional<std::vector<SquareClassRep>> square_class_reps(const FieldTower& field) {
    switch (field.kind()) {
        case FieldTower::Kind::Rationals:
        case FieldTower::Kind::QuadExt:
            return std::nullopt;
        case FieldTower::Kind::EuclideanHull:
            return std::vector<SquareClassRep>{{one(field), field}, {neg(field, one(field)), field}};
        case FieldTower::Kind::Laurent: {
            auto inner = square_class_reps(field.base());
            if (!inner) return std::nullopt;
            std::vector<SquareClassRep> out;
            for (const auto& r : *inner)
                out.push_back({Element::laurent({{0, r.representative}}), field});
            for (const auto& r : *inner)
                out.push_back({Element::laurent({{1, r.representative}}), field});
            return out;
        }
    }
    return std::nullopt;
}

bool is_totally_positive(const FieldTower& field, const Element& x) {
    require_fits(field, x);
    if (x.is_zero()) raise(errc::zero_element, "total positivity of zero is undefined");
    for (const auto& P : orderings_of(field))
        if (sign_impl(field, x, P.steps, 0) != 1) return false;
    return true;
}

ValuationResidue valuation_residue(const FieldTower& field, const Element& x) {
    if (!field.is_laurent()) raise(errc::not_laurent_field, "valuation requires a Laurent field");
    require_fits(field, x);
    if (x.is_zero()) raise(errc::zero_element, "valuation of zero is undefined");
    const auto& cs = x.coeffs();
    return {cs.begin()->first, cs.begin()->second};
}

// --- tower relations -----------------------------------------------------------------

bool is_extension_of(const FieldTower& sup, const FieldTower& sub) {
    if (sup == sub) return true;
    switch (sup.kind()) {
        case FieldTower::Kind::Rationals:
            return false;
        case FieldTower::Kind::QuadExt:
        case FieldTower::Kind::EuclideanHull:
            return is_extension_of(sup.base(), sub);
        case FieldTower::Kind::Laurent:
            if (sub.is_laurent() && is_extension_of(sup.base(), sub.base())) return true;
            return is_extension_of(sup.base(), sub);
    }
    return false;
}

namespace {

Element embed_impl(const FieldTower& sub, const Element& x, const FieldTower& sup) {
    if (sup == sub) return x;
    switch (sup.kind()) {
        case FieldTower::Kind::QuadExt:
            return Element::quad_pair(embed_impl(sub, x, sup.base()), zero(sup.base()));
        case FieldTower::Kind::EuclideanHull:
            return embed_impl(sub, x, sup.base());
        case FieldTower::Kind::Laurent: {
            if (sub.is_laurent() && is_extension_of(sup.base(), sub.base())) {
                std::map<long long, Element> c;
                for (const auto& [e, v] : x.coeffs())
                    c.emplace(e, embed_impl(sub.base(), v, sup.base()));
                return Element::laurent(std::move(c));
            }
            std::map<long long, Element> c;
            if (!x.is_zero()) c.emplace(0, embed_impl(sub, x, sup.base()));
            return Element::laurent(std::move(c));
        }
        case FieldTower::Kind::Rationals:
            break;
    }
    raise(errc::not_an_extension, sup.to_string() + " does not extend " + sub.to_string());
}

}  // namespace

Element embed(const FieldTower& sub, const Element& x, const FieldTower& sup) {
    require_fits(sub, x);
    if (!is_extension_of(sup, sub))
        raise(errc::not_an_extension, sup.to_string() + " does not extend " + sub.to_string());
    return embed_impl(sub, x, sup);
}

bool in_pythagorean_closure(const FieldTower& sub, const FieldTower& base) {
    if (!is_extension_of(sub, base))
        raise(errc::not_an_extension, sub.to_string() + " does not extend " + base.to_string());
    if (sub == base) return true;
    switch (sub.kind()) {
        case FieldTower::Kind::QuadExt:
            return sub.pythagorean_step() && in_pythagorean_closure(sub.base(), base);
        case FieldTower::Kind::Laurent:
            // a matched Laurent layer is fine; an extra Laurent step is a
            // transcendental step and leaves the Pythagorean closure
            if (base.is_laurent() && is_extension_of(sub.base(), base.base()))
                return in_pythagorean_closure(sub.base(), base.base());
            return false;
        case FieldTower::Kind::EuclideanHull:
            return false;
        case FieldTower::Kind::Rationals:
            return false;
    }
    return false;
}

// --- constructors with validation ------------------------------------------------------

FieldTower quad_ext(const FieldTower& base, const Element& radicand) {
    require_fits(base, radicand);
    if (radicand.is_zero()) raise(errc::invalid_construction, "radicand must be nonzero");
    // canonical shape: pull a constant radicand below the Laurent node
    if (base.is_laurent()) {
        const auto& cs = radicand.coeffs();
        if (cs.size() == 1 && cs.begin()->first == 0)
            return laurent(quad_ext(base.base(), cs.begin()->second));
    }
    if (is_square(base, radicand).square)
        raise(errc::invalid_construction,
              "radicand is already a square in " + base.to_string());
    auto orderings = orderings_of(base);
    bool somewhere_positive = false;
    bool everywhere_positive = true;
    for (const auto& P : orderings) {
        if (sign_at(radicand, P) == 1)
            somewhere_positive = true;
        else
            everywhere_positive = false;
    }
    if (!somewhere_positive)
        raise(errc::invalid_construction,
              "radicand is negative at every ordering; the extension is not formally real");
    return FieldTower(make_node(FieldNode{FieldTower::Kind::QuadExt, base, radicand,
                                          everywhere_positive, std::nullopt}));
}

FieldTower euclidean_hull(const FieldTower& base, const Ordering& designated) {
    if (designated.field != base)
        raise(errc::ordering_field_mismatch, "designated ordering is not an ordering of the base");
    if (designated.steps.size() != static_cast<std::size_t>(base.depth()))
        raise(errc::ordering_field_mismatch, "designated ordering path length mismatch");
    if (base.is_euclidean_hull())
        raise(errc::invalid_construction, "Euclidean hull directly inside a Euclidean hull");
    return FieldTower(make_node(FieldNode{FieldTower::Kind::EuclideanHull, base, Element(),
                                          false, designated}));
}

FieldTower euclidean_hull(const FieldTower& base) {
    auto all = orderings_of(base);
    if (all.size() != 1)
        raise(errc::invalid_construction,
              "base has " + std::to_string(all.size()) + " orderings; pick the designated one");
    return euclidean_hull(base, all.front());
}

FieldTower laurent(const FieldTower& base) {
    return FieldTower(make_node(FieldNode{FieldTower::Kind::Laurent, base, Element(),
                                          false, std::nullopt}));
}

// --- rendering ---------------------------------------------------------------------------

namespace {

std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

bool needs_parens(const std::string& s) { return s.find(' ') != std::string::npos; }

std::string join_terms(const std::vector<std::string>& terms) {
    std::string out;
    for (const auto& t : terms) {
        if (out.empty()) {
            out = t;
        } else if (!t.empty() && t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out;
}

}  // namespace

std::string to_string(const FieldTower& field, const Element& x) {
    switch (field.kind()) {
        case FieldTower::Kind::Rationals:
            return rational_str(x.rat());
        case FieldTower::Kind::EuclideanHull:
            return to_string(field.base(), x);
        case FieldTower::Kind::QuadExt: {
            const FieldTower& b = field.base();
            if (x.is_zero()) return "0";
            const std::string root = "sqrt(" + to_string(b, field.radicand()) + ")";
            std::vector<std::string> terms;
            if (!x.pair_a().is_zero()) terms.push_back(to_string(b, x.pair_a()));
            if (!x.pair_b().is_zero()) {
                const Element& c = x.pair_b();
                if (c == one(b))
                    terms.push_back(root);
                else if (c == neg(b, one(b)))
                    terms.push_back("-" + root);
                else {
                    std::string cs = to_string(b, c);
                    terms.push_back((needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + root);
                }
            }
            return join_terms(terms);
        }
        case FieldTower::Kind::Laurent: {
            const FieldTower& b = field.base();
            if (x.is_zero()) return "0";
            std::vector<std::string> terms;
            for (const auto& [e, c] : x.coeffs()) {
                if (e == 0) {
                    terms.push_back(to_string(b, c));
                    continue;
                }
                const std::string tp = e == 1 ? "t" : "t^" + std::to_string(e);
                if (c == one(b)) {
                    terms.push_back(tp);
                } else if (c == neg(b, one(b))) {
                    terms.push_back("-" + tp);
                } else {
                    std::string cs = to_string(b, c);
                    terms.push_back((needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + tp);
                }
            }
            return join_terms(terms);
        }
    }
    return "?";
}

}  // namespace realforms
