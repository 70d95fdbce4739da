#include "realforms/quaternion.hpp"

#include <array>
#include <random>

#include "doctest.h"
#include "realforms/errors.hpp"
#include "support.hpp"

using namespace realforms;
using testsupport::random_element;

namespace {

const FieldTower Q = FieldTower::rationals();
const FieldTower Q2 = quad_ext(Q, from_int(Q, 2));
const FieldTower QT = laurent(Q);
const FieldTower Q2T = laurent(Q2);
const FieldTower R = euclidean_hull(Q);
const FieldTower RT = laurent(R);

QuaternionAlgebra two_t_over(const FieldTower& F) {
    return QuaternionAlgebra(F, from_int(F, 2), laurent_variable(F));
}

QuaternionAlgebra t_t_over(const FieldTower& F) {
    return QuaternionAlgebra(F, laurent_variable(F), laurent_variable(F));
}

QuaternionAlgebra hamilton(const FieldTower& F) {
    return QuaternionAlgebra(F, from_int(F, -1), from_int(F, -1));
}

Quat random_quat(std::mt19937_64& rng, const QuaternionAlgebra& A, bool nonzero) {
    for (;;) {
        Quat x{random_element(rng, A.field, false), random_element(rng, A.field, false),
               random_element(rng, A.field, false), random_element(rng, A.field, false)};
        if (!nonzero || !quat_is_zero(x)) return x;
    }
}

}  // namespace

TEST_CASE("quaternion arithmetic") {
    QuaternionAlgebra A = t_t_over(QT);
    CHECK(qmul(A, quat_i(A), quat_j(A)) == quat_k(A));
    CHECK(qmul(A, quat_j(A), quat_i(A)) == qneg(A, quat_k(A)));

    // k^2 = i(ji)j = -t^2
    Element t = laurent_variable(QT);
    Quat k2 = qmul(A, quat_k(A), quat_k(A));
    CHECK(k2 == quat_scalar(A, neg(QT, mul(QT, t, t))));

    // (1 + j)^2 = 1 + t + 2j
    Quat onepj = qadd(A, quat_one(A), quat_j(A));
    Quat sq = qmul(A, onepj, onepj);
    CHECK(sq == Quat{add(QT, one(QT), t), zero(QT), from_int(QT, 2), zero(QT)});

    CHECK_THROWS_AS(qinv(A, quat_zero(A)), Error);
}

TEST_CASE("gamma conjugation and reduced norm") {
    QuaternionAlgebra A = two_t_over(QT);
    Quat onepi = qadd(A, quat_one(A), quat_i(A));
    CHECK(gamma_conj(onepi) == qsub(A, quat_one(A), quat_i(A)));
    CHECK(gamma_conj(quat_k(A)) == qneg(A, quat_k(A)));
    CHECK(gamma_conj(gamma_conj(onepi)) == onepi);

    // gamma(x) x = Nrd(x) as a scalar: x = 1 + j over (t,t) gives 1 - t
    QuaternionAlgebra B = t_t_over(QT);
    Quat x = qadd(B, quat_one(B), quat_j(B));
    Element tq = laurent_variable(QT);
    CHECK(qmul(B, gamma_conj(x), x) == quat_scalar(B, sub(QT, one(QT), tq)));

    // Nrd(2j) = -4t over (t,t)
    Quat twoj = qscale(B, from_int(QT, 2), quat_j(B));
    CHECK(nrd(B, twoj) == laurent_monomial(QT, 1, from_int(Q, -4)));

    CHECK(nrd(B, quat_one(B)) == one(QT));
    CHECK(nrd(A, quat_i(A)) == from_int(QT, -2));
}

TEST_CASE("involutions") {
    QuaternionAlgebra A = t_t_over(QT);
    InvolutionSpec sigma = InvolutionSpec::int_u_gamma(A, quat_i(A));
    CHECK(apply_involution(A, sigma, quat_j(A)) == quat_j(A));
    CHECK(apply_involution(A, sigma, quat_i(A)) == qneg(A, quat_i(A)));
    CHECK(apply_involution(A, sigma, quat_k(A)) == quat_k(A));

    QuaternionAlgebra H = hamilton(Q);
    InvolutionSpec sigma_h = InvolutionSpec::int_u_gamma(H, quat_i(H));
    CHECK(apply_involution(H, sigma_h, quat_k(H)) == quat_k(H));

    // orthogonal type: the symmetric space has dimension 3; canonical gamma
    // fixes only the scalars
    CHECK(symmetric_space_dimension(A, sigma) == 3);
    CHECK(symmetric_space_dimension(H, sigma_h) == 3);
    CHECK(symmetric_space_dimension(H, InvolutionSpec::canonical()) == 1);

    // u must be pure and invertible
    CHECK_THROWS_AS(InvolutionSpec::int_u_gamma(H, quat_one(H)), Error);
    QuaternionAlgebra split(Q, one(Q), one(Q));
    Quat null_u = qadd(split, quat_i(split), quat_one(split));  // not pure
    CHECK_THROWS_AS(InvolutionSpec::int_u_gamma(split, null_u), Error);
}

TEST_CASE("property: involution axioms, norm multiplicativity, k^2 = -ab") {
    std::mt19937_64 rng(41);
    int cases = 0;
    while (cases < 1000) {
        const FieldTower& F = cases % 2 ? QT : Q2;
        QuaternionAlgebra A(F, random_element(rng, F, true), random_element(rng, F, true));
        CHECK(qmul(A, quat_k(A), quat_k(A)) ==
              quat_scalar(A, neg(F, mul(F, A.a, A.b))));

        Quat x = random_quat(rng, A, false);
        Quat y = random_quat(rng, A, false);
        CHECK(nrd(A, qmul(A, x, y)) == mul(F, nrd(A, x), nrd(A, y)));
        CHECK(qmul(A, gamma_conj(x), x) == quat_scalar(A, nrd(A, x)));

        InvolutionSpec sigma = InvolutionSpec::canonical();
        if (cases % 3 == 0) {
            Quat u = random_quat(rng, A, true);
            u.x0 = zero(F);
            if (!quat_is_zero(u) && !nrd(A, u).is_zero())
                sigma = InvolutionSpec::int_u_gamma(A, u);
        }
        Quat z = random_quat(rng, A, false);
        Element lam = random_element(rng, F, false);
        CHECK(apply_involution(A, sigma, qadd(A, x, y)) ==
              qadd(A, apply_involution(A, sigma, x), apply_involution(A, sigma, y)));
        CHECK(apply_involution(A, sigma, qscale(A, lam, x)) ==
              qscale(A, lam, apply_involution(A, sigma, x)));
        CHECK(apply_involution(A, sigma, qmul(A, x, z)) ==
              qmul(A, apply_involution(A, sigma, z), apply_involution(A, sigma, x)));
        CHECK(apply_involution(A, sigma, apply_involution(A, sigma, x)) == x);
        cases += 8;
    }
}

TEST_CASE("norm form and division") {
    DivisionCheck d1 = norm_form_and_division(two_t_over(QT));
    CHECK(d1.division == true);
    CHECK(to_string(d1.norm_form) == "<1, -2, -t, 2*t>");

    DivisionCheck d2 = norm_form_and_division(hamilton(Q));
    CHECK(d2.division == true);

    DivisionCheck d3 = norm_form_and_division(QuaternionAlgebra(Q, one(Q), from_int(Q, 5)));
    CHECK(d3.division == false);
}

TEST_CASE("hermitian gram values") {
    QuaternionAlgebra A = two_t_over(QT);
    Element t = laurent_variable(QT);
    SkewHermitianForm h1(A, {quat_j(A)});
    SkewHermitianForm h2(A, {quat_k(A)});
    const std::array<Quat, 1> v1{quat_one(A)};
    const std::array<Quat, 1> vj{quat_j(A)};

    CHECK(herm_gram(h1, v1, v1) == quat_j(A));
    CHECK(herm_gram(h1, v1, vj) == quat_scalar(A, t));
    CHECK(herm_gram(h1, vj, vj) == qscale(A, neg(QT, t), quat_j(A)));

    CHECK(herm_gram(h2, v1, v1) == quat_k(A));
    CHECK(herm_gram(h2, v1, vj) == qscale(A, t, quat_i(A)));
    CHECK(herm_gram(h2, vj, vj) == qscale(A, t, quat_k(A)));

    // gamma-sesquilinear: h(y, x) = -gamma(h(x, y)) for skew entries
    std::mt19937_64 rng(17);
    SkewHermitianForm h(A, {quat_j(A), quat_k(A)});
    for (int it = 0; it < 100; ++it) {
        std::array<Quat, 2> x{random_quat(rng, A, false), random_quat(rng, A, false)};
        std::array<Quat, 2> y{random_quat(rng, A, false), random_quat(rng, A, false)};
        CHECK(herm_gram(h, y, x) == qneg(A, gamma_conj(herm_gram(h, x, y))));
    }

    const std::array<Quat, 2> bad{quat_one(A), quat_one(A)};
    CHECK_THROWS_AS(herm_gram(h1, bad, bad), Error);
    CHECK_THROWS_AS(SkewHermitianForm(A, {quat_one(A)}), Error);  // not pure
}

TEST_CASE("pi2 transfer") {
    QuaternionAlgebra A = two_t_over(QT);
    Element s2 = embed(Q2, quad_generator(Q2), Q2T);
    Element t2 = laurent_variable(Q2T);

    TransferResult tj = pi2_transfer(SkewHermitianForm(A, {quat_j(A)}));
    CHECK(tj.L == Q2T);
    REQUIRE(tj.diagonal_form.has_value());
    CHECK(tj.diagonal_form->entries == std::vector<Element>{one(Q2T), neg(Q2T, t2)});
    CHECK(tj.gram[0][1].is_zero());
    CHECK(tj.gram[1][0].is_zero());

    TransferResult tk = pi2_transfer(SkewHermitianForm(A, {quat_k(A)}));
    REQUIRE(tk.diagonal_form.has_value());
    CHECK(tk.diagonal_form->entries == std::vector<Element>{s2, mul(Q2T, t2, s2)});

    TransferResult th = pi2_transfer(SkewHermitianForm(A, {quat_j(A), quat_k(A)}));
    REQUIRE(th.diagonal_form.has_value());
    CHECK(th.diagonal_form->entries ==
          std::vector<Element>{one(Q2T), neg(Q2T, t2), s2, mul(Q2T, t2, s2)});
    CHECK(th.gram.size() == 4);

    // an i-component makes the Gram block antidiagonal: data, not an error
    TransferResult ti = pi2_transfer(SkewHermitianForm(A, {quat_i(A)}));
    CHECK_FALSE(ti.diagonal_form.has_value());
    CHECK_FALSE(ti.gram[0][1].is_zero());

    // a-slot already a square: strict transfer refuses
    QuaternionAlgebra four_t(QT, from_int(QT, 4), laurent_variable(QT));
    try {
        pi2_transfer(SkewHermitianForm(four_t, {quat_j(four_t)}));
        FAIL("expected NotSplitByL");
    } catch (const Error& e) {
        CHECK(e.code() == std::string(errc::not_split_by_l));
    }
}

TEST_CASE("involution indefiniteness") {
    QuaternionAlgebra A = two_t_over(QT);
    SkewHermitianForm h(A, {quat_j(A), quat_k(A)});
    CHECK(involution_totally_indefinite(h) == true);

    QuaternionAlgebra H = hamilton(R);
    auto sig = quat_involution_indefiniteness(H, InvolutionSpec::int_u_gamma(H, quat_i(H)));
    CHECK(sig.totally_indefinite == true);
    REQUIRE(sig.sgn.size() == 1);
    CHECK(sig.sgn[0] == 0);

    // splits at an ordering: no rule
    auto none = quat_involution_indefiniteness(A, InvolutionSpec::int_u_gamma(A, quat_i(A)));
    CHECK_FALSE(none.totally_indefinite.has_value());

    CHECK_THROWS_AS(quat_involution_indefiniteness(H, InvolutionSpec::canonical()), Error);

    CHECK_FALSE(adjoint_totally_indefinite(QuadForm(Q, {one(Q), one(Q)})));
    CHECK(adjoint_totally_indefinite(QuadForm(Q, {one(Q), from_int(Q, -7)})));
}

TEST_CASE("descent verdicts") {
    QuaternionAlgebra A = two_t_over(QT);
    SkewHermitianForm h(A, {quat_j(A), quat_k(A)});
    Verdict over_q = involution_weak_isotropy_via_descent(h);
    CHECK(over_q.is(VerdictKind::StronglyAnisotropic));
    CHECK(over_q.certificate == CertKind::DescentLemma);

    QuaternionAlgebra Ar = two_t_over(RT);
    SkewHermitianForm hr(Ar, {quat_j(Ar), quat_k(Ar)});
    Verdict over_r = involution_weak_isotropy_via_descent(hr);
    CHECK(over_r.is(VerdictKind::WeaklyIsotropic));

    QuaternionAlgebra H = hamilton(Q);
    try {
        involution_weak_isotropy_via_descent(SkewHermitianForm(H, {quat_j(H)}));
        FAIL("expected PreconditionFailed");
    } catch (const Error& e) {
        CHECK(e.code() == std::string(errc::precondition_failed));
    }
}

TEST_CASE("witness search") {
    QuaternionAlgebra H = hamilton(Q);
    InvolutionSpec sigma = InvolutionSpec::int_u_gamma(H, quat_i(H));
    const std::array<Quat, 4> gens{quat_one(H), quat_i(H), quat_j(H), quat_k(H)};
    auto w = weak_isotropy_witness_search(H, sigma, gens, 4);
    REQUIRE(w.has_value());
    CHECK(quat_is_zero(sum_sigma_x_x(H, sigma, *w)));
    REQUIRE(w->size() == 2);
    CHECK((*w)[0] == quat_one(H));
    CHECK((*w)[1] == quat_j(H));

    // the pinned three-term sum over (t,t) is 2j, and no scaled combination of
    // those generators reaches zero
    QuaternionAlgebra B = t_t_over(RT);
    InvolutionSpec sb = InvolutionSpec::int_u_gamma(B, quat_i(B));
    Element t = laurent_variable(RT);
    const std::array<Quat, 3> gens_b{quat_i(B), qadd(B, quat_one(B), quat_j(B)),
                                     qscale(B, inv(RT, t), quat_k(B))};
    CHECK(sum_x_sigma_x(B, sb, gens_b) == qscale(B, from_int(RT, 2), quat_j(B)));
    CHECK(sum_sigma_x_x(B, sb, gens_b) == qscale(B, from_int(RT, 2), quat_j(B)));
    CHECK_FALSE(weak_isotropy_witness_search(B, sb, gens_b, 3).has_value());

    // canonical gamma: sums of reduced norms of nonzero elements stay positive
    CHECK_FALSE(weak_isotropy_witness_search(H, InvolutionSpec::canonical(),
                                             std::array<Quat, 4>{quat_one(H), quat_i(H), quat_j(H), quat_k(H)},
                                             4)
                    .has_value());
}

TEST_CASE("hermitian square obstruction") {
    QuaternionAlgebra B = t_t_over(RT);
    InvolutionSpec sigma = InvolutionSpec::int_u_gamma(B, quat_i(B));

    Quat twoj = qscale(B, from_int(RT, 2), quat_j(B));
    HermSquareResult obs = hermitian_square_obstruction(B, sigma, twoj);
    CHECK(obs.status == HermSquareResult::Status::Obstructed);
    REQUIRE(obs.obstruction_at.has_value());
    CHECK(obs.obstruction_at->describe() == "t>0");

    Quat onepj = qadd(B, quat_one(B), quat_j(B));
    Quat s = qmul(B, onepj, apply_involution(B, sigma, onepj));
    HermSquareResult sq = hermitian_square_obstruction(B, sigma, s);
    CHECK(sq.status == HermSquareResult::Status::IsSquare);
    REQUIRE(sq.witness.has_value());
    CHECK(qmul(B, *sq.witness, apply_involution(B, sigma, *sq.witness)) == s);

    HermSquareResult one_sq = hermitian_square_obstruction(B, sigma, quat_one(B));
    CHECK(one_sq.status == HermSquareResult::Status::IsSquare);
}

TEST_CASE("pythagorean index of quaternion algebras") {
    CHECK(pind_quaternion(hamilton(Q)) == 2);
    CHECK(pind_quaternion(two_t_over(QT)) == 1);

    std::mt19937_64 rng(53);
    for (int it = 0; it < 200; ++it) {
        Element a = random_element(rng, QT, true);
        Element b = random_element(rng, QT, true);
        QuaternionAlgebra A(QT, a, b);
        QuaternionAlgebra swapped(QT, b, a);
        CHECK(pind_quaternion(A) == pind_quaternion(swapped));
        Element c = random_element(rng, QT, true);
        QuaternionAlgebra scaled(QT, mul(QT, a, mul(QT, c, c)), b);
        CHECK(pind_quaternion(A) == pind_quaternion(scaled));
        if (is_totally_positive(QT, a) || is_totally_positive(QT, b))
            CHECK(pind_quaternion(A) == 1);
    }
}

TEST_CASE("double centralizer arithmetic") {
    for (std::uint64_t n = 2; n <= 6; ++n) {
        auto dims = double_centralizer_dims(1ULL << (2 * n), 1ULL << (n - 2));
        CHECK(dims.dim_over_K == 16);
        CHECK(dims.dim_over_F == (1ULL << (2 * n)) / (1ULL << (n - 2)));
    }
    // maximal subfield: the centralizer is the subfield itself
    CHECK(double_centralizer_dims(1ULL << 6, 1ULL << 3).dim_over_K == 1);
    // K = F
    CHECK(double_centralizer_dims(16, 1).dim_over_F == 16);

    CHECK_THROWS_AS(double_centralizer_dims(8, 2), Error);    // 8 is not a square
    CHECK_THROWS_AS(double_centralizer_dims(16, 8), Error);   // 8 does not divide ind = 4
    CHECK_THROWS_AS(double_centralizer_dims(12, 2), Error);   // not a power of two
}

TEST_CASE("property: transfer signatures invariant under square rescaling") {
    std::mt19937_64 rng(29);
    QuaternionAlgebra A = two_t_over(QT);
    for (int it = 0; it < 60; ++it) {
        // pure entries without i-component give diagonal blocks
        std::vector<Quat> entries;
        std::vector<Quat> scaled;
        int n = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < n; ++i) {
            for (;;) {
                Quat d{zero(QT), zero(QT), random_element(rng, QT, false),
                       random_element(rng, QT, false)};
                if (quat_is_zero(d) || nrd(A, d).is_zero()) continue;
                Element c = random_element(rng, QT, true);
                entries.push_back(d);
                scaled.push_back(qscale(A, mul(QT, c, c), d));
                break;
            }
        }
        TransferResult t1 = pi2_transfer(SkewHermitianForm(A, entries));
        TransferResult t2 = pi2_transfer(SkewHermitianForm(A, scaled));
        REQUIRE(t1.diagonal_form.has_value());
        REQUIRE(t2.diagonal_form.has_value());
        CHECK(t1.diagonal_form->dim() == 2 * n);
        for (const auto& P : orderings_of(t1.L))
            CHECK(signature_at(*t1.diagonal_form, P) == signature_at(*t2.diagonal_form, P));
    }
}
