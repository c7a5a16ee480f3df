#pragma once

#include <optional>

#include "toric/layers.hpp"

namespace toric {

/// Coordinates of all characters in the basis {chi_b : b in B}:
/// the full matrix is (id_r | a) after permuting B to the front.
struct CoordMatrix {
    std::vector<int> basis; // indices into E, |basis| = r
    RatMatrix a;            // r x (n - r), columns follow E \ B in order
};

struct SupportForest {
    std::vector<std::pair<int, int>> edges;  // (row, col) with a != 0
    std::vector<std::pair<int, int>> forest; // maximal acyclic subset
};

/// Lexicographically first r-subset of E whose characters are a Q-basis.
std::vector<int> lex_first_basis(const IntMatrix& columns);
std::vector<int> lex_first_basis(const ArithmeticMatroid& m);

CoordMatrix coordinate_matrix(const IntMatrix& columns, const std::vector<int>& basis);
CoordMatrix coordinate_matrix(const ToricArrangement& delta, const std::vector<int>& basis);

/// Greedy over edges sorted by (row, col); spanning-maximal in the bipartite
/// support graph.
SupportForest maximal_forest(const std::vector<std::vector<bool>>& support);

struct NormalFormResult {
    ToricArrangement arrangement;
    std::vector<int> signs; // +-1 per index of E, composed flips
    CoordMatrix coord;      // coordinate matrix of the normalized arrangement
};

/// Column sign flips making every forest entry of `a` positive, with one
/// residual global sign per support component pinned by requiring the first
/// nonzero entry of the lowest-index character in the component positive.
NormalFormResult to_normal_form(const ToricArrangement& delta);
NormalFormResult normal_form_columns(const IntMatrix& columns, const std::vector<PhaseQZ>& phases);

/// |det A_{I,J}| = m(B \ I u J) / m(B) when that set is a basis, else 0.
Rat abs_minor_from_multiplicity(const ArithmeticMatroid& m, const std::vector<int>& basis,
                                const std::vector<int>& i_rows, const std::vector<int>& j_cols);

/// The unique normal-form coordinate matrix of a representable torsion-free
/// arithmetic matroid.  Signs on non-forest entries are recovered through
/// cycle products; every square minor is verified afterwards.
CoordMatrix reconstruct_matrix(const ArithmeticMatroid& m);

/// Integer representation of a representable, surjective, torsion-free
/// arithmetic matroid: columns written in an HNF basis of their own span.
IntMatrix reconstruct_representation(const ArithmeticMatroid& m);

struct CharacterRelation {
    std::vector<int> support;   // circuit, sorted
    std::vector<int> signs;     // +-1, first one +1
    std::vector<Int> coeffs;    // positive, coprime
};

std::vector<CharacterRelation> character_relations(const ToricArrangement& delta);

struct EquivalenceWitness {
    IntMatrix g;            // unimodular r x r
    std::vector<int> signs; // diagonal of D
};

/// Searches for X' = G * X * D with G unimodular and D diagonal +-1.
std::optional<EquivalenceWitness> representations_equivalent(const IntMatrix& x,
                                                             const IntMatrix& x_prime);

} // namespace toric
