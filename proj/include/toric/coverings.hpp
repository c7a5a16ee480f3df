#pragma once

#include <string>

#include "toric/normalform.hpp"

namespace toric {

/// Element of Ext^1(G, Gamma) = (+)_i Gamma / d_i Gamma.  The i-th component
/// is an integer vector in Gamma-basis coordinates, reduced mod d_i.
struct ExtensionClass {
    FinAbGroup group;
    std::vector<std::vector<Int>> components;

    bool operator==(const ExtensionClass& o) const {
        return group == o.group && components == o.components;
    }
    bool operator<(const ExtensionClass& o) const { return components < o.components; }
};

/// d_i = e_i / e_{i-1} with e_i the gcd of m over independent rank-i subsets.
FinAbGroup group_from_multiplicity(const ArithmeticMatroid& m);

/// Complete enumeration of Ext^1(G, Gamma); |Ext| = prod d_i^rank within budget.
std::vector<ExtensionClass> ext_elements(const FinAbGroup& g, const Lattice& gamma,
                                         const Int& budget = Int(1000000));

/// Lambda_x = Gamma + sum_i Z * (w_i / d_i) in the ambient space of Gamma.
/// Throws Infeasible when the class is not faithful (|Lambda_x/Gamma| < |G|).
Lattice extension_lattice(const Lattice& gamma, const ExtensionClass& x);

/// The surjective model underneath a torsion-free matroid: normal-form
/// columns v_e spanning gamma, their gamma-frame coordinates, and m_U.
struct CoveringSetup {
    CoordMatrix coord;
    RatMatrix v_columns;    // r x n, standard columns arranged in E order
    Lattice gamma;          // span of the columns, ambient Q^r
    IntMatrix chars_gamma;  // g x n, columns written in the gamma basis
    ArithmeticMatroid m_u;
    FinAbGroup group;       // G determined by m_t
};

CoveringSetup covering_setup(const ArithmeticMatroid& m_t);

/// |H_S(x)| = |Tor(Lambda_x / Rad_Gamma(Gamma_S))|, computed in the gamma frame.
Int h_s_order(const CoveringSetup& setup, const ExtensionClass& x, const std::vector<int>& s);

/// Classes x with |H_S(x)| = m_T(S)/m_U(S) for every subset S.
std::vector<ExtensionClass> coherent_elements(const CoveringSetup& setup,
                                              const ArithmeticMatroid& m_t,
                                              const Int& budget = Int(1000000));

struct AutOrbits {
    std::vector<ExtensionClass> representatives;        // lex-least member per orbit
    std::vector<std::vector<ExtensionClass>> orbits;
};

AutOrbits aut_orbits(const std::vector<ExtensionClass>& classes, const FinAbGroup& g,
                     const Int& budget = Int(10000));

/// Lex-least member of the Aut(G)-orbit of a single class.
ExtensionClass orbit_representative(const ExtensionClass& x, const Int& budget = Int(10000));

/// Integer representation attached to a coherent class: the columns v_e
/// rewritten in an HNF basis of Lambda_x.
IntMatrix representation_of(const CoveringSetup& setup, const ExtensionClass& x);

struct ArrangementInvariant {
    std::string poset_fingerprint;
    FinAbGroup group;
    ExtensionClass class_rep;

    bool operator==(const ArrangementInvariant& o) const {
        return poset_fingerprint == o.poset_fingerprint && group == o.group &&
               class_rep == o.class_rep;
    }
};

std::string poset_fingerprint(const LayerPoset& poset);

/// Complete invariant (poset, x) of a centred essential primitive arrangement.
ArrangementInvariant arrangement_invariant(const ToricArrangement& delta);

} // namespace toric
