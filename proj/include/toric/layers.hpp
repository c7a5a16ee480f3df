#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "toric/arrangement.hpp"

namespace toric {

/// Connected component of an intersection of hypertori, stored canonically:
/// gamma_w is the saturated lattice of characters constant on the layer
/// (I_W, rank = codimension) and phi gives the phase of each HNF basis row.
/// Two Layer values are equal iff they are the same layer.
struct Layer {
    Lattice gamma_w;
    std::vector<PhaseQZ> phi; // one value per hnf_basis row

    int rank() const { return gamma_w.rank(); }

    bool operator==(const Layer& o) const { return gamma_w == o.gamma_w && phi == o.phi; }
    bool operator<(const Layer& o) const;
};

/// Phase of a character on a layer, when the character is constant there.
std::optional<PhaseQZ> layer_phase_of(const Layer& w, const std::vector<Int>& chi);

/// True iff w contains v (w >= v fails; order is reverse inclusion, so this
/// is "w <= v" when w is the bigger set).  Exposed for tests.
bool layer_contains(const Layer& big, const Layer& small);

struct LayerPoset {
    ToricArrangement delta; // primitive arrangement the poset was built from
    std::vector<Layer> layers; // sorted by (rank, gamma_w, phi)
    std::vector<int> rank_of;
    std::vector<uint32_t> atoms_below; // j(W): hypertorus indices containing W
    std::vector<std::vector<bool>> leq; // leq[a][b] iff layer a contains layer b
    std::vector<int> atom_map; // e -> index of the rank-1 layer of H_e
    std::vector<std::vector<int>> by_rank;

    int size() const { return int(layers.size()); }
    int ambient_rank() const { return delta.rank; }
    int find(const Layer& w) const; // -1 when absent
    int bottom() const { return by_rank[0][0]; }
};

std::vector<Layer> components_of_intersection(const ToricArrangement& delta,
                                              const std::vector<int>& s);

LayerPoset build_poset(const ToricArrangement& delta);

/// Number of connected components of the intersection over I (0 when empty).
Int multiplicity(const ToricArrangement& delta, const std::vector<int>& I);

/// Dense rank/multiplicity tables over all subsets of E; n <= 20.
struct ArithmeticMatroid {
    int n{0};
    int rank{0}; // rank of the full ground set
    std::vector<int> rank_table;  // indexed by bitmask
    std::vector<Int> mult_table;

    int rk(uint32_t mask) const { return rank_table[mask]; }
    const Int& m(uint32_t mask) const { return mult_table[mask]; }
    bool torsion_free() const { return mult_table[0] == 1; }
    bool surjective() const { return mult_table[(uint32_t(1) << n) - 1] == 1; }

    std::vector<uint32_t> independent_sets(int k) const;
    bool operator==(const ArithmeticMatroid& o) const {
        return n == o.n && rank_table == o.rank_table && mult_table == o.mult_table;
    }
};

ArithmeticMatroid arithmetic_matroid(const ToricArrangement& delta);
ArithmeticMatroid arithmetic_matroid(const IntMatrix& columns);

std::vector<std::vector<int>> circuits(const ToricArrangement& delta);
std::vector<std::vector<int>> circuits_of_columns(const IntMatrix& columns);

/// (W, S) with S a standard q-subset of j(W), independent, containing no
/// broken circuit of the matroid restricted to j(W).
struct NbcPair {
    int layer; // index into the poset
    std::vector<int> s;
};

std::vector<NbcPair> nbc_pairs(const LayerPoset& poset, int q);
std::vector<Int> nbc_counts(const LayerPoset& poset); // |N_q| for q = 0..r

/// Coefficients of P(t) = sum_q |N_q| (1+t)^(r-q) t^q, degree-ascending.
std::vector<Int> poincare_polynomial(const LayerPoset& poset);

/// Characters through the layer, written in the canonical basis of I_W.
/// Pairs (hypertorus index, coordinate vector of length rank(W)).
std::vector<std::pair<int, std::vector<Int>>> local_arrangement(const LayerPoset& poset, int layer);

/// Rank/order-preserving bijection between the two posets; with over_atoms
/// the bijection must also match atom labels (both posets over the same E).
std::optional<std::vector<int>> posets_isomorphic(const LayerPoset& p, const LayerPoset& q,
                                                  bool over_atoms);

} // namespace toric
