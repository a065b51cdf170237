#pragma once

#include <optional>
#include <vector>

#include "fhodge/matrix.hpp"

namespace fhodge {

/// u * m * v == d, d diagonal with d_0 | d_1 | ..., u and v unimodular.
struct SmithForm {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
    std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Row Hermite normal form (positive pivots, entries above pivots reduced into
/// [0, pivot)). Zero rows are dropped.
IntMatrix hermite_rows(IntMatrix m);

/// Canonical basis (columns) of the lattice generated by the columns of gens.
IntMatrix lattice_basis(const IntMatrix& gens);
/// Saturated canonical basis of {x in Z^n : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);
IntMatrix integer_kernel(const MatrixQ& m);
/// Canonical basis of Z^n ∩ span_Q(columns).
IntMatrix saturated_basis(const MatrixQ& columns);
/// x with basis * x == y, for basis of full column rank; nullopt if y is not in the lattice.
std::optional<IntMatrix> integer_solve(const IntMatrix& basis, const IntMatrix& y);
bool lattice_contains(const IntMatrix& basis, const IntMatrix& vectors);
std::optional<IntMatrix> unimodular_inverse(const IntMatrix& u);
bool is_unimodular(const IntMatrix& u);
/// For a saturated basis B (n x k), columns C such that [B | C] is unimodular.
IntMatrix unimodular_completion(const IntMatrix& saturated);

/// Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k with d_i >= 2 and d_i | d_{i+1}. Elements are
/// coordinate vectors, free coordinates first.
class FgAbGroup {
public:
    FgAbGroup() = default;
    explicit FgAbGroup(std::size_t rank, std::vector<Integer> torsion = {});

    static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank); }

    std::size_t rank() const { return rank_; }
    const std::vector<Integer>& torsion() const { return torsion_; }
    std::size_t ngens() const { return rank_ + torsion_.size(); }
    bool is_free() const { return torsion_.empty(); }
    bool is_trivial() const { return ngens() == 0; }

    /// ngens x |torsion| matrix whose columns generate the relations.
    IntMatrix relations() const;
    /// Reduce torsion coordinates of each column into [0, d_i).
    IntMatrix reduce(IntMatrix elements) const;

    friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
        return a.rank_ == b.rank_ && a.torsion_ == b.torsion_;
    }

private:
    std::size_t rank_ = 0;
    std::vector<Integer> torsion_;
};

/// Homomorphism of finitely generated abelian groups given on generators.
class LatticeMap {
public:
    LatticeMap() = default;
    /// Checks well-definedness on torsion (NotWellDefined) and reduces entries.
    LatticeMap(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

    static LatticeMap identity(const FgAbGroup& g);
    static LatticeMap zero(const FgAbGroup& s, const FgAbGroup& t);

    const FgAbGroup& source() const { return source_; }
    const FgAbGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }
    /// The induced map on free parts tensored with Q.
    MatrixQ rational() const;

    friend bool operator==(const LatticeMap& a, const LatticeMap& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.matrix_ == b.matrix_;
    }

private:
    FgAbGroup source_;
    FgAbGroup target_;
    IntMatrix matrix_;
};

LatticeMap compose(const LatticeMap& g, const LatticeMap& f);  // g ∘ f

/// Subgroup P / L of Z^n / L with L ⊆ P, brought to canonical form.
struct Subquotient {
    FgAbGroup group;
    IntMatrix generators;  // n x ngens, lifts of the canonical generators
    IntMatrix pbasis;      // n x p, basis of P
    IntMatrix coord;       // ngens x p, P-basis coordinates -> canonical coordinates

    /// Canonical coordinates of vectors of P (columns, ambient coordinates).
    IntMatrix coordinates_of(const IntMatrix& x) const;
};

Subquotient make_subquotient(const IntMatrix& p_generators, const IntMatrix& l_generators, std::size_t ambient);

struct LatticeKernel {
    FgAbGroup group;
    LatticeMap embedding;
};

struct LatticeImage {
    FgAbGroup group;
    LatticeMap embedding;  // im -> target
    LatticeMap corestriction;  // source -> im
};

struct LatticeCokernel {
    FgAbGroup group;
    LatticeMap projection;
    IntMatrix lifts;  // target coordinates of lifts of the cokernel generators
};

LatticeKernel lattice_kernel(const LatticeMap& f);
LatticeImage lattice_image(const LatticeMap& f);
LatticeCokernel lattice_cokernel(const LatticeMap& f);

/// Preimage in Z^{ngens(target)} of the image subgroup (contains the relations).
IntMatrix image_lattice(const LatticeMap& f);
/// Preimage in Z^{ngens(source)} of the kernel subgroup (contains the relations).
IntMatrix kernel_lattice(const LatticeMap& f);

/// Smallest saturated sublattice containing the image of an injective map of
/// free groups; returned as an embedding of a free group.
LatticeMap saturate(const LatticeMap& embedding);

/// im f == ker g as subgroups of the middle group.
bool lattice_exact_at(const LatticeMap& f, const LatticeMap& g);
bool lattice_injective(const LatticeMap& f);
bool lattice_surjective(const LatticeMap& f);

}  // namespace fhodge
