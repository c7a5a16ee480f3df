#pragma once

#include "toric/layers.hpp"

namespace toric {

/// Rational point of the phase space (C*)^n, one phase per hypertorus index.
struct PhasePoint {
    std::vector<PhaseQZ> phases;
};

/// Coset of a subtorus of phase space: the solution set of
/// sum_i c_i * q_i = target(c) mod 1 for c running over the relation lattice.
struct SubtorusWithTargets {
    Lattice relations;            // sublattice of Z^n
    std::vector<PhaseQZ> targets; // one per HNF basis row
};

/// B_j of a circuit j: the locus of phase points where the hypertori of j
/// intersect.  Relations are the kernel of the j-columns, targets zero.
SubtorusWithTargets circuit_torus(const IntMatrix& chars, const std::vector<int>& circuit);

/// Intersection of the B_j(W) over the maximal-rank layers of the target
/// poset: the ambient torus containing L(S).
SubtorusWithTargets ambient_intersection(const IntMatrix& chars, const LayerPoset& target);

/// True iff the poset of {(chi_i, a_i)} is isomorphic to the target over E.
bool l_membership(const PhasePoint& a, const IntMatrix& chars, const LayerPoset& target);

/// Values of the saturated relation functionals at the point: constant on
/// connected components of L(S).
std::vector<PhaseQZ> component_invariant(const PhasePoint& a, const IntMatrix& chars,
                                         const LayerPoset& target);

/// Number of connected components of L(S).  Component representatives are
/// verified by a rational witness search; throws Infeasible when none found.
Int count_components(const IntMatrix& chars, const LayerPoset& target);

enum class GenericKind { Generic, NearlyGeneric, Neither };

GenericKind is_nearly_generic(const LayerPoset& s);

} // namespace toric
