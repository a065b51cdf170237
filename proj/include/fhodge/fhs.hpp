#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fhodge/mhs.hpp"

namespace fhodge {

/// Formal Hodge structure of level <= 1. The connected formal part is kept
/// through its Lie algebra K^s; V = K^n with V0 ⊆ V1. vz acts on the free
/// coordinates of the lattice (torsion necessarily maps to zero). sigma is
/// written in the canonical quotient coordinates of H_K/F0 and V/V0 (see
/// quotient_map).
struct FHS1Object {
    std::size_t s = 0;
    MHS1 het;
    std::size_t n = 0;
    Subspace v0;
    Subspace v1;
    MatrixK v0_map;  // n x s
    MatrixK vz_map;  // n x rank
    MatrixK sigma;   // (n - dim V0) x (rank - dim F0)

    friend bool operator==(const FHS1Object& a, const FHS1Object& b) {
        return a.s == b.s && a.het == b.het && a.n == b.n && a.v0 == b.v0 && a.v1 == b.v1 &&
               a.v0_map == b.v0_map && a.vz_map == b.vz_map && a.sigma == b.sigma;
    }
};

/// The comparison map forced by square (1): pr . vz . section.
MatrixK induced_sigma(const FHS1Object& x);
/// Fills in sigma from vz.
FHS1Object with_induced_sigma(FHS1Object x);

std::vector<Violation> fhs_violations(const FHS1Object& x);
const FHS1Object& validate_fhs(const FHS1Object& x);

FHS1Object zero_object();
FHS1Object direct_sum(const FHS1Object& a, const FHS1Object& b);

struct FHS1Morphism {
    FHS1Object source;
    FHS1Object target;
    MatrixK f0;     // s' x s
    LatticeMap fz;  // het lattice -> het' lattice
    MatrixK g;      // n' x n

    friend bool operator==(const FHS1Morphism& a, const FHS1Morphism& b) {
        return a.source == b.source && a.target == b.target && a.f0 == b.f0 && a.fz == b.fz && a.g == b.g;
    }
};

std::vector<Violation> morphism_violations(const FHS1Morphism& f);
const FHS1Morphism& validate_morphism(const FHS1Morphism& f);

FHS1Morphism identity(const FHS1Object& x);
FHS1Morphism zero_morphism(const FHS1Object& x, const FHS1Object& y);
FHS1Morphism compose(const FHS1Morphism& g, const FHS1Morphism& f);  // g ∘ f
/// Inverse of an isomorphism of free objects; throws NotInjective otherwise.
FHS1Morphism inverse(const FHS1Morphism& f);
FHS1Morphism direct_sum(const FHS1Morphism& a, const FHS1Morphism& b);
FHS1Morphism sum_inclusion(const FHS1Object& a, const FHS1Object& b, int which);
FHS1Morphism sum_projection(const FHS1Object& a, const FHS1Object& b, int which);
/// f + g for parallel morphisms of free objects.
FHS1Morphism add(const FHS1Morphism& f, const FHS1Morphism& g);
FHS1Morphism scale(const FHS1Morphism& f, long k);

/// The maps induced on H_K/F0 and on V/V0.
MatrixK induced_fbar(const FHS1Morphism& f);
MatrixK induced_gbar(const FHS1Morphism& f);

struct FHSSubobject {
    FHS1Object object;
    FHS1Morphism embedding;
};

struct FHSQuotient {
    FHS1Object object;
    FHS1Morphism projection;
    IntMatrix lattice_lifts;  // lattice generators of the quotient lifted to the target
};

struct FHSImage {
    FHS1Object object;
    FHS1Morphism embedding;
    FHS1Morphism corestriction;
};

FHSSubobject kernel(const FHS1Morphism& f);
FHSQuotient cokernel(const FHS1Morphism& f);
FHSImage image(const FHS1Morphism& f);

/// The unique u with k.embedding ∘ u = h, for h with f ∘ h = 0.
FHS1Morphism factor_through_kernel(const FHSSubobject& k, const FHS1Morphism& h);
/// The unique u with u ∘ c.projection = h, for h with h ∘ f = 0.
FHS1Morphism factor_through_cokernel(const FHSQuotient& c, const FHS1Morphism& h);

struct NodeReport {
    std::size_t node = 0;  // index of the object between morphism node-1 and node
    std::vector<std::pair<std::string, bool>> components;
    bool exact() const;
};

struct ExactnessReport {
    std::vector<NodeReport> nodes;
    bool exact() const;
    /// First failing (node, component), if any.
    std::optional<std::pair<std::size_t, std::string>> first_failure() const;
};

/// Exactness at each interior object, on the components lie, lattice, v, v0,
/// v1, w_m1, w_m2 and f0. Throws NotComposable.
ExactnessReport check_exact(const std::vector<FHS1Morphism>& seq);
/// Axiom violations of the objects of a sequence, then of its maps when the
/// objects are valid. Exactness is decided independently of these.
std::vector<Violation> sequence_violations(const std::vector<FHS1Morphism>& seq);
/// 0 -> A -> B -> C -> 0 with the zero ends added.
std::vector<FHS1Morphism> short_sequence(const FHS1Morphism& f, const FHS1Morphism& g);

FHS1Object etale_part(const FHS1Object& x);
FHS1Morphism etale_part(const FHS1Morphism& f);
FHS1Object canonical_etale(const MHS1& h);
FHS1Morphism canonical_etale(const LatticeMap& f, const MHS1& a, const MHS1& b);

bool is_etale(const FHS1Object& x);
bool is_connected(const FHS1Object& x);
bool is_special(const FHS1Object& x);
bool is_free(const FHS1Object& x);

FHS1Object pi_connected(const FHS1Object& x);
FHS1Morphism pi_connected(const FHS1Morphism& f);
/// (0, V) with V = V1 = V0 = K^n.
FHS1Object embed_vector(std::size_t n);
/// (H0, 0) with Lie H0 = K^s.
FHS1Object embed_formal(std::size_t s);
FHS1Object quotient_by_v0(const FHS1Object& x);
/// (H0, V0) of a special structure, with its embedding.
FHSSubobject connected_part(const FHS1Object& x);
/// 0 -> e(X) -> X/V0 -> (H0, 0) -> 0
std::vector<FHS1Morphism> seq4(const FHS1Object& x);
/// 0 -> (H0, V0) -> X -> e(X) -> 0, X special.
std::vector<FHS1Morphism> seq5(const FHS1Object& x);

/// v0 : Lie H0 -> V of a connected structure.
MatrixK connected_to_linear(const FHS1Object& x);
FHS1Object linear_to_connected(const MatrixK& map);

/// Hom(X, Y) for free X, Y: a K-vector space of morphisms with fz = 0 plus
/// morphisms lifting a basis of the admissible lattice maps.
struct HomSpace {
    FHS1Object source;
    FHS1Object target;
    std::vector<FHS1Morphism> vector_basis;
    std::vector<FHS1Morphism> lattice_basis;

    std::size_t vector_dim() const { return vector_basis.size(); }
    std::size_t lattice_rank() const { return lattice_basis.size(); }
    bool is_zero() const { return vector_basis.empty() && lattice_basis.empty(); }
    bool contains(const FHS1Morphism& f) const;
};

HomSpace hom_group(const FHS1Object& x, const FHS1Object& y);
/// A reason no isomorphism X -> Y exists, if the numerical invariants differ.
std::optional<std::string> non_iso_certificate(const FHS1Object& x, const FHS1Object& y);

struct Check {
    std::string name;
    bool ok = false;
};

struct FHSIso {
    FHS1Morphism forward;
    FHS1Morphism backward;
    std::vector<Check> transcript;
    bool verified() const;
};

/// Fills the transcript: both directions valid, both composites identities.
FHSIso make_iso(FHS1Morphism forward, FHS1Morphism backward);

/// Duality on free structures. The section of H_K -> H_K/F0 is the pivot
/// complement scanned in the given order.
FHS1Object dual_fhs(const FHS1Object& x, PivotOrder order = PivotOrder::Forward);
FHS1Morphism dual_morphism(const FHS1Morphism& f);
/// X -> dual(dual(X)).
FHSIso double_dual_iso(const FHS1Object& x);
/// dual(X, Forward) -> dual(X, Reverse).
FHSIso dual_splitting_iso(const FHS1Object& x);
/// dual(X) -> c(ihom(H_et, Z(1))) for etale X; the lattice component is the identity.
FHSIso etale_dual_comparison(const FHS1Object& x);

}  // namespace fhodge
