#pragma once

#include <optional>

#include "toric/matrix.hpp"

namespace toric {

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... .
/// u_inv and v_inv are tracked alongside so that M = u_inv * D * v_inv exactly.
struct SmithDecomposition {
    IntMatrix u, d, v;
    IntMatrix u_inv, v_inv;
    std::vector<Int> invariant_factors; // nonnegative, divisibility chain
};

SmithDecomposition smith_decomposition(const IntMatrix& m);

/// Row-style Hermite normal form of the row lattice of `m`: echelon rows with
/// positive pivots, entries above each pivot reduced into [0, pivot), zero
/// rows dropped.  The optional transform satisfies T * m = (H stacked with
/// zero rows); rows of T beyond rank(m) span the left kernel of m.
struct HermiteResult {
    IntMatrix h;         // rank x cols, canonical
    IntMatrix transform; // rows x rows unimodular
    int rank{0};
};

HermiteResult hermite_normal_form(const IntMatrix& m);

/// gcd of all k x k minors of m, 0 when they all vanish.  Equal to the
/// product of the first k Smith invariant factors (the tests cross-check this
/// against direct minor enumeration).
Int determinant_divisor(const IntMatrix& m, int k);

/// Sublattice of (1/denominator) * Z^ambient.  hnf_basis holds a canonical
/// basis of denominator * L, so equal lattices are bit-identical values.
struct Lattice {
    int ambient_rank{0};
    Int denominator{1};
    IntMatrix hnf_basis; // rank x ambient_rank

    int rank() const { return hnf_basis.rows; }
    bool is_integer() const { return denominator == 1; }

    static Lattice zero(int ambient);
    static Lattice full(int ambient);
    /// Canonicalizes arbitrary generating rows (scaled by 1/den).
    static Lattice from_rows(const IntMatrix& rows, const Int& den = Int(1));

    std::vector<Rat> basis_row(int i) const;

    bool operator==(const Lattice& o) const {
        return ambient_rank == o.ambient_rank && denominator == o.denominator && hnf_basis == o.hnf_basis;
    }
    bool operator!=(const Lattice& o) const { return !(*this == o); }
    bool operator<(const Lattice& o) const;
};

/// Solves x * L.basis = v over Z (v given over the same ambient space).
/// Returns nullopt when v is not in the lattice.
std::optional<std::vector<Int>> lattice_coords(const Lattice& l, const std::vector<Rat>& v);
bool lattice_contains(const Lattice& l, const std::vector<Rat>& v);
bool lattice_subset(const Lattice& sub, const Lattice& super);

Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersection(const Lattice& a, const Lattice& b);

/// {c in Z^cols : m * c = 0}, saturated, canonical.
Lattice kernel_lattice(const IntMatrix& m);

/// Smallest saturated lattice containing l (which must be integral).
Lattice saturate(const Lattice& l);

/// Finite abelian group as invariant factors d_1 | d_2 | ..., all >= 2.
struct FinAbGroup {
    std::vector<Int> invariant_factors;

    bool trivial() const { return invariant_factors.empty(); }
    Int order() const;
    bool operator==(const FinAbGroup& o) const { return invariant_factors == o.invariant_factors; }
};

struct QuotientInvariants {
    FinAbGroup torsion;
    int free_rank{0};
};

/// Invariants of super / sub; throws Infeasible when sub is not inside super.
QuotientInvariants quotient_invariants(const Lattice& sub, const Lattice& super);

} // namespace toric
