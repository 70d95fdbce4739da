#pragma once

#include <random>
#include <vector>

#include "realforms/field_tower.hpp"

namespace realforms::testsupport {

inline Rational random_rational(std::mt19937_64& rng, bool nonzero) {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 8);
    int n = num(rng);
    while (nonzero && n == 0) n = num(rng);
    return Rational(n, den(rng));
}

inline Element random_element(std::mt19937_64& rng, const FieldTower& F, bool nonzero) {
    switch (F.kind()) {
        case FieldTower::Kind::Rationals:
            return Element::rational(random_rational(rng, nonzero));
        case FieldTower::Kind::EuclideanHull:
            return random_element(rng, F.base(), nonzero);
        case FieldTower::Kind::QuadExt: {
            for (;;) {
                Element a = random_element(rng, F.base(), false);
                Element b = random_element(rng, F.base(), false);
                Element x = Element::quad_pair(a, b);
                if (!nonzero || !x.is_zero()) return x;
            }
        }
        case FieldTower::Kind::Laurent: {
            std::uniform_int_distribution<int> nterms(nonzero ? 1 : 0, 3);
            std::uniform_int_distribution<long long> expo(-3, 3);
            for (;;) {
                std::map<long long, Element> c;
                int k = nterms(rng);
                for (int i = 0; i < k; ++i)
                    c[expo(rng)] = random_element(rng, F.base(), true);
                Element x = Element::laurent(std::move(c));
                if (!nonzero || !x.is_zero()) return x;
            }
        }
    }
    return Element();
}

// towers exercising every node kind
inline std::vector<FieldTower> property_field_pool() {
    FieldTower q = FieldTower::rationals();
    FieldTower q2 = quad_ext(q, from_int(q, 2));
    FieldTower q23 = quad_ext(q2, from_int(q2, 3));
    FieldTower hull = euclidean_hull(q);
    return {q, q2, q23, quad_ext(q2, add(q2, one(q2), quad_generator(q2))),
            laurent(q), laurent(q2), hull, laurent(hull)};
}

}  // namespace realforms::testsupport
