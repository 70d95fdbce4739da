#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "realforms/field_tower.hpp"

namespace realforms {

// Diagonal quadratic form <a1, ..., an> over a tower field. Entries are
// nonzero (forms are nondegenerate); the empty form is legal as a Springer
// residue part.
struct QuadForm {
    FieldTower field;
    std::vector<Element> entries;

    QuadForm(FieldTower f, std::vector<Element> es);

    int dim() const { return static_cast<int>(entries.size()); }
};

enum class VerdictKind { Isotropic, Anisotropic, WeaklyIsotropic, StronglyAnisotropic, Unknown };

enum class CertKind {
    None,
    Dimension,             // dim <= 1 (or empty)
    HyperbolicPair,        // -ai/aj is a square
    DefinitenessOrdering,  // |signature| = dim at some ordering
    EuclideanIndefinite,   // indefinite over a Euclidean hull
    BinaryDeterminant,     // dim 2, -a1a2 not a square
    ResidueRecursion,      // Springer reduction to residue forms
    TotalIndefiniteness,   // weakly isotropic via total indefiniteness
    FieldClassRule,        // strongly anisotropic: definite somewhere, field-class rule
    DescentLemma,          // carried down a totally positive quadratic extension
};

const char* to_string(VerdictKind k);
const char* to_string(CertKind k);

// A certified three-valued answer. Isotropic verdicts carry an explicit
// witness vector whenever one is representable; every certificate is
// re-verifiable from module operations.
struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    CertKind certificate = CertKind::None;
    std::string detail;
    std::optional<std::vector<Element>> witness;
    std::string reason;  // for Unknown

    bool is(VerdictKind k) const { return kind == k; }
};

int signature_at(const QuadForm& q, const Ordering& P);

// true iff |signature| < dim at every ordering; false for dim <= 1
bool is_totally_indefinite(const QuadForm& q);

// q ~ q1 ⊥ <t> q2 over a Laurent field; entries of even valuation contribute
// their unit residues to q1, odd valuation to q2
std::pair<QuadForm, QuadForm> springer_decompose(const QuadForm& q);

Verdict isotropy_verdict(const QuadForm& q);
Verdict weak_isotropy_verdict(const QuadForm& q);

struct EdPairCheck {
    Element a;
    Element b;
    Verdict verdict;
};

struct EdReport {
    FieldTower field;
    std::vector<EdPairCheck> pairs;
    bool all_isotropic = false;
};

// checks <1, a, b, -ab> for every pair of square class representatives;
// nullopt when the square class group is not finite in this grammar
std::optional<EdReport> ed_check_field(const FieldTower& field);

// permutation of entries with non-increasing signs at every ordering, when
// the sign vectors form a chain; nullopt otherwise
std::optional<QuadForm> effective_diagonalize(const QuadForm& q);

QuadForm direct_sum(const QuadForm& q1, const QuadForm& q2);
QuadForm scale(const Element& c, const QuadForm& q);
QuadForm multiple(int n, const QuadForm& q);
QuadForm base_change(const QuadForm& q, const FieldTower& sup);

std::string to_string(const QuadForm& q);
std::string to_string(const Verdict& v);

}  // namespace realforms
