#include "toric/exactlin.hpp"

#include <algorithm>

#include "toric/errors.hpp"

namespace toric {

namespace {

// Applies row op "row[i] += k*row[j]" to A and its transform pair:
// T tracks the op, Tinv the inverse column op so T * Tinv = id throughout.
struct RowTracked {
    IntMatrix* a;
    IntMatrix* t;
    IntMatrix* tinv;

    void addmul(int i, int j, const Int& k) {
        a->addmul_row(i, j, k);
        if (t) t->addmul_row(i, j, k);
        if (tinv) tinv->addmul_col(j, i, -k);
    }
    void swap(int i, int j) {
        if (i == j) return;
        a->swap_rows(i, j);
        if (t) t->swap_rows(i, j);
        if (tinv) tinv->swap_cols(i, j);
    }
    void negate(int i) {
        a->negate_row(i);
        if (t) t->negate_row(i);
        if (tinv) tinv->negate_col(i);
    }
};

struct ColTracked {
    IntMatrix* a;
    IntMatrix* t;
    IntMatrix* tinv;

    void addmul(int i, int j, const Int& k) {
        a->addmul_col(i, j, k);
        if (t) t->addmul_col(i, j, k);
        if (tinv) tinv->addmul_row(j, i, -k);
    }
    void swap(int i, int j) {
        if (i == j) return;
        a->swap_cols(i, j);
        if (t) t->swap_cols(i, j);
        if (tinv) tinv->swap_rows(i, j);
    }
    void negate(int i) {
        a->negate_col(i);
        if (t) t->negate_col(i);
        if (tinv) tinv->negate_row(i);
    }
};

} // namespace

HermiteResult hermite_normal_form(const IntMatrix& m) {
    IntMatrix a = m;
    IntMatrix t = IntMatrix::identity(m.rows);
    RowTracked rt{&a, &t, nullptr};

    int r = 0;
    for (int c = 0; c < a.cols && r < a.rows; ++c) {
        // gcd cascade on column c below row r
        while (true) {
            int piv = -1;
            for (int i = r; i < a.rows; ++i) {
                if (a.at(i, c) == 0) continue;
                if (piv < 0 || cmp(abs(a.at(i, c)), abs(a.at(piv, c))) < 0) piv = i;
            }
            if (piv < 0) break;
            rt.swap(r, piv);
            bool done = true;
            for (int i = r + 1; i < a.rows; ++i) {
                if (a.at(i, c) == 0) continue;
                Int q = fdiv_q(a.at(i, c), a.at(r, c));
                rt.addmul(i, r, -q);
                if (a.at(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (r < a.rows && a.at(r, c) != 0) {
            if (a.at(r, c) < 0) rt.negate(r);
            for (int i = 0; i < r; ++i) {
                Int q = fdiv_q(a.at(i, c), a.at(r, c));
                if (q != 0) rt.addmul(i, r, -q);
            }
            ++r;
        }
    }

    HermiteResult res;
    res.rank = r;
    res.transform = t;
    res.h = IntMatrix(r, a.cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < a.cols; ++j) res.h.at(i, j) = a.at(i, j);
    return res;
}

SmithDecomposition smith_decomposition(const IntMatrix& m) {
    SmithDecomposition s;
    s.d = m;
    s.u = IntMatrix::identity(m.rows);
    s.u_inv = IntMatrix::identity(m.rows);
    s.v = IntMatrix::identity(m.cols);
    s.v_inv = IntMatrix::identity(m.cols);
    RowTracked rows{&s.d, &s.u, &s.u_inv};
    ColTracked cols{&s.d, &s.v, &s.v_inv};

    int n = std::min(m.rows, m.cols);
    for (int k = 0; k < n; ++k) {
        // pivot: nonzero entry of least magnitude in the trailing block
        int pi = -1, pj = -1;
        for (int i = k; i < m.rows; ++i)
            for (int j = k; j < m.cols; ++j) {
                if (s.d.at(i, j) == 0) continue;
                if (pi < 0 || cmp(abs(s.d.at(i, j)), abs(s.d.at(pi, pj))) < 0) { pi = i; pj = j; }
            }
        if (pi < 0) break;
        rows.swap(k, pi);
        cols.swap(k, pj);
        while (true) {
            bool clean = true;
            for (int i = k + 1; i < m.rows; ++i) {
                if (s.d.at(i, k) == 0) continue;
                Int q = fdiv_q(s.d.at(i, k), s.d.at(k, k));
                rows.addmul(i, k, -q);
                if (s.d.at(i, k) != 0) {
                    rows.swap(k, i);
                    clean = false;
                }
            }
            for (int j = k + 1; j < m.cols; ++j) {
                if (s.d.at(k, j) == 0) continue;
                Int q = fdiv_q(s.d.at(k, j), s.d.at(k, k));
                cols.addmul(j, k, -q);
                if (s.d.at(k, j) != 0) {
                    cols.swap(k, j);
                    clean = false;
                }
            }
            if (clean) break;
        }
        // enforce divisibility d_k | entries of the trailing block
        while (true) {
            int bi = -1, bj = -1;
            for (int i = k + 1; i < m.rows && bi < 0; ++i)
                for (int j = k + 1; j < m.cols; ++j)
                    if (s.d.at(i, j) % s.d.at(k, k) != 0) { bi = i; bj = j; break; }
            if (bi < 0) break;
            rows.addmul(k, bi, Int(1));
            // re-clear row k, then the column, repeating the euclidean step
            while (true) {
                bool clean = true;
                for (int j = k + 1; j < m.cols; ++j) {
                    if (s.d.at(k, j) == 0) continue;
                    Int q = fdiv_q(s.d.at(k, j), s.d.at(k, k));
                    cols.addmul(j, k, -q);
                    if (s.d.at(k, j) != 0) {
                        cols.swap(k, j);
                        clean = false;
                    }
                }
                for (int i = k + 1; i < m.rows; ++i) {
                    if (s.d.at(i, k) == 0) continue;
                    Int q = fdiv_q(s.d.at(i, k), s.d.at(k, k));
                    rows.addmul(i, k, -q);
                    if (s.d.at(i, k) != 0) {
                        rows.swap(k, i);
                        clean = false;
                    }
                }
                if (clean) break;
            }
        }
        if (s.d.at(k, k) < 0) rows.negate(k);
    }

    for (int k = 0; k < n; ++k) s.invariant_factors.push_back(s.d.at(k, k));
    return s;
}

Int determinant_divisor(const IntMatrix& m, int k) {
    if (k < 1 || k > std::min(m.rows, m.cols))
        throw InvalidInput("determinant_divisor: k out of range");
    SmithDecomposition s = smith_decomposition(m);
    Int g = 1;
    for (int i = 0; i < k; ++i) g *= s.invariant_factors[i];
    return g; // zero when rank < k
}

Lattice Lattice::zero(int ambient) {
    Lattice l;
    l.ambient_rank = ambient;
    l.denominator = 1;
    l.hnf_basis = IntMatrix(0, ambient);
    return l;
}

Lattice Lattice::full(int ambient) {
    Lattice l;
    l.ambient_rank = ambient;
    l.denominator = 1;
    l.hnf_basis = IntMatrix::identity(ambient);
    return l;
}

Lattice Lattice::from_rows(const IntMatrix& rows, const Int& den) {
    if (den <= 0) throw InvalidInput("lattice denominator must be positive");
    Lattice l;
    l.ambient_rank = rows.cols;
    IntMatrix h = hermite_normal_form(rows).h;
    // minimal denominator: divide out gcd(content(h), den)
    Int c = 0;
    for (const Int& e : h.entries) c = gcd_int(c, e);
    Int g = gcd_int(c, den);
    if (g > 1) {
        for (Int& e : h.entries) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
        l.denominator = den / g;
    } else {
        l.denominator = den;
    }
    l.hnf_basis = h;
    return l;
}

std::vector<Rat> Lattice::basis_row(int i) const {
    std::vector<Rat> v(ambient_rank);
    for (int j = 0; j < ambient_rank; ++j) v[j] = Rat(hnf_basis.at(i, j), denominator);
    for (auto& x : v) x.canonicalize();
    return v;
}

bool Lattice::operator<(const Lattice& o) const {
    if (ambient_rank != o.ambient_rank) return ambient_rank < o.ambient_rank;
    int c = cmp(denominator, o.denominator);
    if (c != 0) return c < 0;
    return hnf_basis < o.hnf_basis;
}

std::optional<std::vector<Int>> lattice_coords(const Lattice& l, const std::vector<Rat>& v) {
    // Solve x * H = den * v over Z by pivot back-substitution.
    std::vector<Rat> target(v.size());
    for (size_t j = 0; j < v.size(); ++j) {
        target[j] = Rat(l.denominator) * v[j];
        target[j].canonicalize();
    }
    std::vector<Int> x(l.rank(), Int(0));
    const IntMatrix& h = l.hnf_basis;
    for (int i = 0; i < h.rows; ++i) {
        int pc = 0;
        while (pc < h.cols && h.at(i, pc) == 0) ++pc;
        if (pc == h.cols) return std::nullopt;
        Rat q = target[pc] / Rat(h.at(i, pc));
        if (q.get_den() != 1) return std::nullopt;
        x[i] = q.get_num();
        for (int j = pc; j < h.cols; ++j) target[j] -= q * Rat(h.at(i, j));
    }
    for (const Rat& t : target)
        if (t != 0) return std::nullopt;
    return x;
}

bool lattice_contains(const Lattice& l, const std::vector<Rat>& v) {
    return lattice_coords(l, v).has_value();
}

bool lattice_subset(const Lattice& sub, const Lattice& super) {
    if (sub.ambient_rank != super.ambient_rank) return false;
    for (int i = 0; i < sub.rank(); ++i)
        if (!lattice_contains(super, sub.basis_row(i))) return false;
    return true;
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    assert(a.ambient_rank == b.ambient_rank);
    Int den = lcm_int(a.denominator, b.denominator);
    IntMatrix rows(a.rank() + b.rank(), a.ambient_rank);
    Int fa = den / a.denominator, fb = den / b.denominator;
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.ambient_rank; ++j) rows.at(i, j) = fa * a.hnf_basis.at(i, j);
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.ambient_rank; ++j) rows.at(a.rank() + i, j) = fb * b.hnf_basis.at(i, j);
    return Lattice::from_rows(rows, den);
}

Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
    assert(a.ambient_rank == b.ambient_rank);
    Int den = lcm_int(a.denominator, b.denominator);
    Int fa = den / a.denominator, fb = den / b.denominator;
    // rows of [fa*Ha; -fb*Hb]; left-kernel combos give common vectors
    IntMatrix stacked(a.rank() + b.rank(), a.ambient_rank);
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.ambient_rank; ++j) stacked.at(i, j) = fa * a.hnf_basis.at(i, j);
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.ambient_rank; ++j) stacked.at(a.rank() + i, j) = -fb * b.hnf_basis.at(i, j);
    Lattice ker = kernel_lattice(stacked.transpose());
    IntMatrix gens(ker.rank(), a.ambient_rank);
    for (int i = 0; i < ker.rank(); ++i) {
        std::vector<Int> xy = ker.hnf_basis.row(i);
        std::vector<Int> x(xy.begin(), xy.begin() + a.rank());
        std::vector<Int> v(a.ambient_rank, Int(0));
        for (int t = 0; t < a.rank(); ++t)
            for (int j = 0; j < a.ambient_rank; ++j) v[j] += x[t] * fa * a.hnf_basis.at(t, j);
        for (int j = 0; j < a.ambient_rank; ++j) gens.at(i, j) = v[j];
    }
    return Lattice::from_rows(gens, den);
}

Lattice kernel_lattice(const IntMatrix& m) {
    SmithDecomposition s = smith_decomposition(m);
    int rank = 0;
    for (const Int& f : s.invariant_factors)
        if (f != 0) ++rank;
    // columns rank..cols-1 of V span the kernel; V unimodular => saturated
    IntMatrix rows(m.cols - rank, m.cols);
    for (int j = rank; j < m.cols; ++j)
        for (int i = 0; i < m.cols; ++i) rows.at(j - rank, i) = s.v.at(i, j);
    return Lattice::from_rows(rows, Int(1));
}

Lattice saturate(const Lattice& l) {
    if (!l.is_integer()) throw InvalidInput("saturate requires an integral lattice");
    if (l.rank() == 0) return l;
    SmithDecomposition s = smith_decomposition(l.hnf_basis);
    int rank = 0;
    for (const Int& f : s.invariant_factors)
        if (f != 0) ++rank;
    // rowspace(M) tensor Q meets Z^n in the span of the first `rank` rows of v_inv
    IntMatrix rows(rank, l.ambient_rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < l.ambient_rank; ++j) rows.at(i, j) = s.v_inv.at(i, j);
    return Lattice::from_rows(rows, Int(1));
}

Int FinAbGroup::order() const {
    Int o = 1;
    for (const Int& d : invariant_factors) o *= d;
    return o;
}

QuotientInvariants quotient_invariants(const Lattice& sub, const Lattice& super) {
    if (sub.ambient_rank != super.ambient_rank)
        throw InvalidInput("quotient_invariants: ambient mismatch");
    // coordinates of each sub basis row in the super basis
    IntMatrix xi(sub.rank(), super.rank());
    for (int i = 0; i < sub.rank(); ++i) {
        auto coords = lattice_coords(super, sub.basis_row(i));
        if (!coords) throw Infeasible("quotient_invariants: sub not contained in super");
        for (int j = 0; j < super.rank(); ++j) xi.at(i, j) = (*coords)[j];
    }
    SmithDecomposition s = smith_decomposition(xi);
    QuotientInvariants q;
    int rank = 0;
    for (const Int& f : s.invariant_factors) {
        if (f == 0) continue;
        ++rank;
        if (f >= 2) q.torsion.invariant_factors.push_back(f);
    }
    q.free_rank = super.rank() - rank;
    return q;
}

} // namespace toric
