#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "realforms/quad_form.hpp"

namespace realforms {

// Generalized quaternion algebra (a, b) over a tower field, with basis
// {1, i, j, k}, i^2 = a, j^2 = b, ij = -ji = k.
struct QuaternionAlgebra {
    FieldTower field;
    Element a;
    Element b;

    QuaternionAlgebra(FieldTower f, Element a_slot, Element b_slot);

    friend bool operator==(const QuaternionAlgebra& x, const QuaternionAlgebra& y) {
        return x.field == y.field && x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const QuaternionAlgebra& x, const QuaternionAlgebra& y) { return !(x == y); }
};

struct Quat {
    Element x0, x1, x2, x3;

    friend bool operator==(const Quat& x, const Quat& y) {
        return x.x0 == y.x0 && x.x1 == y.x1 && x.x2 == y.x2 && x.x3 == y.x3;
    }
    friend bool operator!=(const Quat& x, const Quat& y) { return !(x == y); }
};

void require_quat_fits(const QuaternionAlgebra& A, const Quat& x);
bool quat_is_zero(const Quat& x);
bool quat_is_pure(const Quat& x);  // x0 == 0, i.e. gamma(x) == -x

Quat quat_scalar(const QuaternionAlgebra& A, const Element& c);
Quat quat_zero(const QuaternionAlgebra& A);
Quat quat_one(const QuaternionAlgebra& A);
Quat quat_i(const QuaternionAlgebra& A);
Quat quat_j(const QuaternionAlgebra& A);
Quat quat_k(const QuaternionAlgebra& A);

Quat qadd(const QuaternionAlgebra& A, const Quat& x, const Quat& y);
Quat qsub(const QuaternionAlgebra& A, const Quat& x, const Quat& y);
Quat qneg(const QuaternionAlgebra& A, const Quat& x);
Quat qmul(const QuaternionAlgebra& A, const Quat& x, const Quat& y);
Quat qscale(const QuaternionAlgebra& A, const Element& c, const Quat& x);
// NonInvertible when Nrd(x) = 0
Quat qinv(const QuaternionAlgebra& A, const Quat& x);

// canonical involution: negates the i, j, k coordinates
Quat gamma_conj(const Quat& x);

// Nrd(x) = x0^2 - a x1^2 - b x2^2 + ab x3^2 = gamma(x) x
Element nrd(const QuaternionAlgebra& A, const Quat& x);

// extend quaternion coordinates along a field extension of the base
Quat embed_quat(const QuaternionAlgebra& from, const Quat& x, const QuaternionAlgebra& to);
QuaternionAlgebra base_change(const QuaternionAlgebra& A, const FieldTower& sup);

// Canonical gamma, or Int(u) composed with gamma for a pure invertible u
// (the orthogonal-type involutions of a quaternion algebra).
class InvolutionSpec {
public:
    enum class Kind { Canonical, IntUGamma };

    static InvolutionSpec canonical() { return InvolutionSpec(Kind::Canonical, std::nullopt); }
    static InvolutionSpec int_u_gamma(const QuaternionAlgebra& A, Quat u);

    Kind kind() const { return kind_; }
    const Quat& u() const;

private:
    InvolutionSpec(Kind k, std::optional<Quat> u) : kind_(k), u_(std::move(u)) {}
    Kind kind_;
    std::optional<Quat> u_;
};

Quat apply_involution(const QuaternionAlgebra& A, const InvolutionSpec& sigma, const Quat& x);

// dimension of the sigma-symmetric subspace of A (3 for orthogonal type)
int symmetric_space_dimension(const QuaternionAlgebra& A, const InvolutionSpec& sigma);

struct DivisionCheck {
    QuadForm norm_form;           // <1, -a, -b, ab>
    Verdict verdict;              // isotropy verdict of the norm form
    std::optional<bool> division; // empty when the verdict is Unknown
};
DivisionCheck norm_form_and_division(const QuaternionAlgebra& A);

// Diagonal skew-hermitian form <d1, ..., dn> over (A, gamma): entries are
// pure, nonzero and invertible.
struct SkewHermitianForm {
    QuaternionAlgebra algebra;
    std::vector<Quat> entries;

    SkewHermitianForm(QuaternionAlgebra A, std::vector<Quat> ds);

    int rank() const { return static_cast<int>(entries.size()); }
};

// h(x, y) = sum gamma(x_i) d_i y_i
Quat herm_gram(const SkewHermitianForm& h, std::span<const Quat> x, std::span<const Quat> y);

struct TransferResult {
    FieldTower L;                            // base field with sqrt(a) adjoined, canonicalized
    std::vector<std::vector<Element>> gram;  // 2n x 2n over L, basis {1, j} per entry
    std::optional<QuadForm> diagonal_form;   // present iff gram is diagonal
};

// transfer along pi2 : Q -> L, alpha + beta j |-> beta. Strict: the a-slot
// must not already be a square (NotSplitByL otherwise).
TransferResult pi2_transfer(const SkewHermitianForm& h);

// transfer that also accepts a degenerate a-slot (already a square): with a
// representable root the values are exact over L = F; over Euclidean-hull
// models they are square-class representatives, which is all the verdicts
// consume
TransferResult descent_transfer(const SkewHermitianForm& h);

// total indefiniteness of the adjoint involution of h on M_n(Q), decided on
// the transfer form; empty = Unknown (non-diagonal Gram)
std::optional<bool> involution_totally_indefinite(const SkewHermitianForm& h);

struct QuatInvolutionSignature {
    std::optional<bool> totally_indefinite;
    std::vector<int> sgn;  // one value per ordering; 0 where the algebra is division
    std::string note;
};
// Int(u)-gamma involutions on the quaternion algebra itself: sgn_P = 0 at
// every ordering where the algebra stays division; Unknown if it splits
// somewhere
QuatInvolutionSignature quat_involution_indefiniteness(const QuaternionAlgebra& A,
                                                       const InvolutionSpec& sigma);

// split matrix algebra with the adjoint involution of q
bool adjoint_totally_indefinite(const QuadForm& q);

// Decide weak isotropy of the adjoint involution of h over the base field by
// transferring to L = F(sqrt(a)) and descending: requires the a-slot totally
// positive (PreconditionFailed otherwise).
Verdict involution_weak_isotropy_via_descent(const SkewHermitianForm& h);

Quat sum_sigma_x_x(const QuaternionAlgebra& A, const InvolutionSpec& sigma, std::span<const Quat> xs);
Quat sum_x_sigma_x(const QuaternionAlgebra& A, const InvolutionSpec& sigma, std::span<const Quat> xs);

// Bounded deterministic search for nonzero x_1..x_n (n <= max_terms, terms
// drawn from coefficient * generator) with sum sigma(x_i) x_i = 0. NotFound
// (empty) is inconclusive.
std::optional<std::vector<Quat>> weak_isotropy_witness_search(const QuaternionAlgebra& A,
                                                              const InvolutionSpec& sigma,
                                                              std::span<const Quat> generators,
                                                              int max_terms);

struct HermSquareResult {
    enum class Status { IsSquare, Obstructed, Unknown };
    Status status = Status::Unknown;
    std::optional<Quat> witness;             // x with x sigma(x) = s
    std::optional<Ordering> obstruction_at;  // ordering where Nrd(s) is negative
    std::string reason;
};
// necessary-condition check: s = x sigma(x) forces Nrd(s) = Nrd(x)^2 to be a
// square, so a negative sign at any ordering obstructs; a bounded coordinate
// search supplies explicit witnesses
HermSquareResult hermitian_square_obstruction(const QuaternionAlgebra& A, const InvolutionSpec& sigma,
                                              const Quat& s);

// pind of a quaternion algebra: 2 iff both slots are negative at some
// ordering, else 1
int pind_quaternion(const QuaternionAlgebra& A);

struct CentralizerDims {
    std::uint64_t dim_over_F = 0;
    std::uint64_t dim_over_K = 0;
};
// [D:F] = [K:F] [C_D(K):F]; both inputs powers of two, NonDivisible otherwise
CentralizerDims double_centralizer_dims(std::uint64_t deg_D_over_F, std::uint64_t deg_K_over_F);

std::string to_string(const QuaternionAlgebra& A);
std::string to_string(const QuaternionAlgebra& A, const Quat& x);

}  // namespace realforms
