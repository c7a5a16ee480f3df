#pragma once

#include <memory>

#include "toric/layers.hpp"
#include "toric/osalg.hpp"

namespace toric {

enum class Ring { Z, Q };

/// Basis label: wedge monomial (bitmask over the canonical basis of the
/// quotient lattice of the layer) times y_{W,S}.  Bidegree (popcount(mono), |s|).
struct GosTerm {
    int layer{0};
    std::vector<int> s; // standard (sorted) index list
    uint64_t mono{0};

    bool operator==(const GosTerm& o) const {
        return layer == o.layer && s == o.s && mono == o.mono;
    }
    bool operator<(const GosTerm& o) const {
        if (layer != o.layer) return layer < o.layer;
        if (s != o.s) return s < o.s;
        return mono < o.mono;
    }
};

struct GosElement {
    Ring ring{Ring::Q};
    std::map<GosTerm, Rat> terms; // zero coefficients pruned

    bool zero() const { return terms.empty(); }
    bool operator==(const GosElement& o) const { return ring == o.ring && terms == o.terms; }
};

struct HilbertTable {
    int rank{0};
    std::vector<std::vector<Int>> dims; // dims[p][q] = binom(r-q, p) * |N_q|

    Int degree_sum(int k) const;
    Int total() const;
};

/// Input atom for straightening: an arbitrary independent list with a wedge
/// word in ambient lattice coordinates.
struct RawGosTerm {
    int layer{0};
    std::vector<int> s;                  // arbitrary order, distinct
    std::vector<std::vector<Int>> wedge; // each factor a vector in Z^r
    Rat coeff{1};
};

/// The bigraded Orlik-Solomon model of the arrangement.  Wedge coefficients
/// of the (W,S) component live in the exterior algebra of the canonical
/// quotient basis of Lambda/I_W; the y-part is straightened per layer through
/// the classical Orlik-Solomon relations of the local arrangement.
class GosAlgebra {
public:
    explicit GosAlgebra(const ToricArrangement& delta);

    const LayerPoset& poset() const { return poset_; }
    int rank() const { return poset_.ambient_rank(); }

    /// lambda -> coordinates in Lambda / I_W (length r - rk W).
    std::vector<Int> project_to_layer(int layer, const std::vector<Int>& lambda) const;
    /// basis vector i of Lambda / I_W, lifted to Lambda.
    std::vector<Int> lift_from_layer(int layer, int i) const;

    GosElement zero(Ring ring) const { return GosElement{ring, {}}; }
    GosElement one(Ring ring) const;
    /// y_{H_e, (e)}: the degree-(0,1) generator of hypertorus e.
    GosElement atom(int e, Ring ring) const;
    /// chi^*(omega): the degree-(1,0) class of a character.
    GosElement character_class(const std::vector<Int>& chi, Ring ring) const;

    GosElement add(const GosElement& x, const GosElement& y) const;
    GosElement scale(const GosElement& x, const Rat& c) const;
    GosElement multiply(const GosElement& x, const GosElement& y);

    GosElement straighten(const std::vector<RawGosTerm>& raw, Ring ring);

    std::vector<GosTerm> basis();
    HilbertTable hilbert_table();

    /// y_S = sum over the components of the intersection, straightened.
    GosElement y_power_expansion(const std::vector<int>& s, Ring ring);

    /// Expansion of every character chi_e as a degree-(1,0) element.
    std::vector<GosElement> rational_generator_map();

    /// NBC straightening of y_{W,S} inside the local arrangement at W.
    const OsAlgebra::Element& nbc_expand(int layer, const OsAlgebra::Word& s);

    OsAlgebra& local_os(int layer);

private:
    void check_ring(const GosElement& x, const GosElement& y) const;
    const std::vector<int>& components_cache(const std::vector<int>& s_union);

    LayerPoset poset_;
    std::vector<IntMatrix> quot_;  // r x (r-q) per layer
    std::vector<IntMatrix> lift_;  // (r-q) x r per layer
    std::vector<std::unique_ptr<OsAlgebra>> os_;
    std::map<uint32_t, std::vector<int>> comp_memo_; // S mask -> layer indices
};

/// Asserts that every coefficient is an integer (the Z-model invariant).
void assert_integral(const GosElement& x);

} // namespace toric
