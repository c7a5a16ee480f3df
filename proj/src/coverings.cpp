#include "toric/coverings.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "toric/errors.hpp"

namespace toric {

FinAbGroup group_from_multiplicity(const ArithmeticMatroid& m) {
    // e_i over independent subsets of size i; the bare |S| = i reading is
    // ambiguous for dependent subsets
    std::vector<Int> e(m.rank + 1);
    e[0] = m.m(0);
    for (int i = 1; i <= m.rank; ++i) {
        Int g = 0;
        for (uint32_t mask : m.independent_sets(i)) g = gcd_int(g, m.m(mask));
        if (g == 0) throw Infeasible("no independent set of size " + std::to_string(i));
        e[i] = g;
    }
    FinAbGroup out;
    for (int i = 1; i <= m.rank; ++i) {
        if (e[i] % e[i - 1] != 0)
            throw Infeasible("multiplicity gcds do not form a divisor chain");
        Int d = e[i] / e[i - 1];
        if (d >= 2) out.invariant_factors.push_back(d);
    }
    // chain must divide onward
    for (size_t i = 1; i < out.invariant_factors.size(); ++i)
        if (out.invariant_factors[i] % out.invariant_factors[i - 1] != 0)
            throw Infeasible("invariant factors do not form a divisor chain");
    return out;
}

std::vector<ExtensionClass> ext_elements(const FinAbGroup& g, const Lattice& gamma,
                                         const Int& budget) {
    const int rank = gamma.rank();
    const int k = int(g.invariant_factors.size());
    Int total = 1;
    for (const Int& d : g.invariant_factors)
        for (int i = 0; i < rank; ++i) total *= d;
    if (total > budget) throw BudgetExceeded("Ext enumeration over budget");

    std::vector<ExtensionClass> out;
    ExtensionClass cur;
    cur.group = g;
    cur.components.assign(k, std::vector<Int>(rank, Int(0)));
    while (true) {
        out.push_back(cur);
        // odometer over all components
        int i = k - 1, j = rank - 1;
        for (; i >= 0; j = (j == 0 ? rank - 1 : j - 1)) {
            Int& v = cur.components[i][j];
            v += 1;
            if (v < g.invariant_factors[i]) break;
            v = 0;
            if (j == 0) --i;
        }
        if (i < 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Lambda_x in the gamma frame: Z^g + sum Z * (components_i / d_i).
Lattice lambda_gamma_frame(const ExtensionClass& x, int rank) {
    Int den = 1;
    for (const Int& d : x.group.invariant_factors) den = lcm_int(den, d);
    const int k = int(x.components.size());
    IntMatrix rows(rank + k, rank);
    for (int i = 0; i < rank; ++i) rows.at(i, i) = den;
    for (int i = 0; i < k; ++i) {
        Int f = den / x.group.invariant_factors[i];
        for (int j = 0; j < rank; ++j) rows.at(rank + i, j) = f * x.components[i][j];
    }
    return Lattice::from_rows(rows, den);
}

bool is_faithful(const ExtensionClass& x, int rank) {
    Lattice lam = lambda_gamma_frame(x, rank);
    auto q = quotient_invariants(Lattice::full(rank), lam);
    return q.free_rank == 0 && q.torsion == x.group;
}

} // namespace

Lattice extension_lattice(const Lattice& gamma, const ExtensionClass& x) {
    const int g = gamma.rank();
    for (const auto& c : x.components)
        if (int(c.size()) != g) throw InvalidInput("extension class has wrong rank");
    if (!is_faithful(x, g)) throw Infeasible("non-faithful class");

    Int den = gamma.denominator;
    for (const Int& d : x.group.invariant_factors) den = lcm_int(den, gamma.denominator * d);
    const int k = int(x.components.size());
    IntMatrix rows(g + k, gamma.ambient_rank);
    Int base = den / gamma.denominator;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < gamma.ambient_rank; ++j)
            rows.at(i, j) = base * gamma.hnf_basis.at(i, j);
    for (int i = 0; i < k; ++i) {
        Int f = den / (gamma.denominator * x.group.invariant_factors[i]);
        for (int j = 0; j < gamma.ambient_rank; ++j) {
            Int acc = 0;
            for (int t = 0; t < g; ++t) acc += x.components[i][t] * gamma.hnf_basis.at(t, j);
            rows.at(g + i, j) = f * acc;
        }
    }
    return Lattice::from_rows(rows, den);
}

CoveringSetup covering_setup(const ArithmeticMatroid& m_t) {
    CoveringSetup s;
    s.coord = reconstruct_matrix(m_t);
    const int r = m_t.rank, n = m_t.n;
    s.v_columns = RatMatrix(r, n);
    int bpos = 0, cpos = 0;
    for (int e = 0; e < n; ++e) {
        if (bpos < r && s.coord.basis[bpos] == e) {
            s.v_columns.at(bpos, e) = 1;
            ++bpos;
        } else {
            for (int i = 0; i < r; ++i) s.v_columns.at(i, e) = s.coord.a.at(i, cpos);
            ++cpos;
        }
    }
    Int den = 1;
    for (const Rat& v : s.v_columns.entries) den = lcm_int(den, v.get_den());
    IntMatrix rows(n, r);
    for (int e = 0; e < n; ++e)
        for (int i = 0; i < r; ++i) {
            Rat v = s.v_columns.at(i, e) * Rat(den);
            v.canonicalize();
            rows.at(e, i) = v.get_num();
        }
    s.gamma = Lattice::from_rows(rows, den);
    if (s.gamma.rank() != r) throw Infeasible("covering setup requires an essential matroid");

    s.chars_gamma = IntMatrix(r, n);
    for (int e = 0; e < n; ++e) {
        std::vector<Rat> v(r);
        for (int i = 0; i < r; ++i) v[i] = s.v_columns.at(i, e);
        auto coords = lattice_coords(s.gamma, v);
        if (!coords) throw Infeasible("column escapes its own span");
        for (int i = 0; i < r; ++i) s.chars_gamma.at(i, e) = (*coords)[i];
    }
    s.m_u = arithmetic_matroid(s.chars_gamma);
    s.group = group_from_multiplicity(m_t);
    return s;
}

Int h_s_order(const CoveringSetup& setup, const ExtensionClass& x, const std::vector<int>& s) {
    const int g = setup.gamma.rank();
    Lattice lam = lambda_gamma_frame(x, g);
    IntMatrix rows(int(s.size()), g);
    for (size_t i = 0; i < s.size(); ++i)
        for (int j = 0; j < g; ++j) rows.at(int(i), j) = setup.chars_gamma.at(j, s[i]);
    Lattice rad = saturate(Lattice::from_rows(rows));
    return quotient_invariants(rad, lam).torsion.order();
}

std::vector<ExtensionClass> coherent_elements(const CoveringSetup& setup,
                                              const ArithmeticMatroid& m_t, const Int& budget) {
    const int n = m_t.n, g = setup.gamma.rank();
    // required |H_S| values; empty result if any ratio is non-integral
    std::vector<Int> required(size_t(1) << n);
    for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask) {
        if (m_t.m(mask) % setup.m_u.m(mask) != 0) return {};
        required[mask] = m_t.m(mask) / setup.m_u.m(mask);
    }
    // radicals per subset, in the gamma frame
    std::vector<Lattice> rads;
    rads.reserve(size_t(1) << n);
    for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask) {
        std::vector<int> idx;
        for (int j = 0; j < n; ++j)
            if (mask & (uint32_t(1) << j)) idx.push_back(j);
        IntMatrix rows(int(idx.size()), g);
        for (size_t i = 0; i < idx.size(); ++i)
            for (int j = 0; j < g; ++j) rows.at(int(i), j) = setup.chars_gamma.at(j, idx[i]);
        rads.push_back(saturate(Lattice::from_rows(rows)));
    }

    std::vector<ExtensionClass> out;
    for (const ExtensionClass& x : ext_elements(setup.group, setup.gamma, budget)) {
        if (!is_faithful(x, g)) continue;
        Lattice lam = lambda_gamma_frame(x, g);
        bool ok = true;
        for (uint32_t mask = 0; mask < (uint32_t(1) << n) && ok; ++mask)
            if (quotient_invariants(rads[mask], lam).torsion.order() != required[mask]) ok = false;
        if (ok) out.push_back(x);
    }
    return out;
}

namespace {

std::vector<Int> flatten(const ExtensionClass& x) {
    std::vector<Int> out;
    for (const auto& c : x.components) out.insert(out.end(), c.begin(), c.end());
    return out;
}

// All automorphisms of G = (+) Z/d_i as matrices: column j is the image of
// the j-th generator.
std::vector<IntMatrix> automorphism_matrices(const FinAbGroup& g, const Int& budget) {
    if (g.order() > budget) throw BudgetExceeded("Aut(G) enumeration over budget");
    const int k = int(g.invariant_factors.size());
    if (k == 0) return {IntMatrix(0, 0)};
    // entry (i,j) ranges over multiples of d_i / gcd(d_i, d_j) modulo d_i
    std::vector<std::vector<Int>> choices;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Int step = g.invariant_factors[i] / gcd_int(g.invariant_factors[i], g.invariant_factors[j]);
            std::vector<Int> c;
            for (Int v = 0; v < g.invariant_factors[i]; v += step) c.push_back(v);
            choices.push_back(c);
        }
    std::vector<IntMatrix> out;
    std::vector<size_t> idx(choices.size(), 0);
    while (true) {
        IntMatrix a(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) a.at(i, j) = choices[size_t(i) * k + j][idx[size_t(i) * k + j]];
        // bijectivity: the image subgroup must be everything
        std::vector<std::vector<Int>> seen;
        std::vector<Int> counter(k, Int(0));
        bool bij = true;
        Int order = g.order();
        std::vector<std::vector<Int>> images;
        while (true) {
            std::vector<Int> img(k, Int(0));
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) img[i] += a.at(i, j) * counter[j];
                img[i] = fdiv_r(img[i], g.invariant_factors[i]);
            }
            images.push_back(img);
            int j = k - 1;
            while (j >= 0 && counter[j] == g.invariant_factors[j] - 1) counter[j--] = 0;
            if (j < 0) break;
            ++counter[j];
        }
        std::sort(images.begin(), images.end());
        bij = std::adjacent_find(images.begin(), images.end()) == images.end();
        if (bij) out.push_back(a);
        size_t t = 0;
        while (t < idx.size() && ++idx[t] == choices[t].size()) idx[t++] = 0;
        if (t == idx.size()) break;
    }
    return out;
}

ExtensionClass act(const ExtensionClass& x, const IntMatrix& a) {
    const int k = int(x.components.size());
    const int g = k == 0 ? 0 : int(x.components[0].size());
    ExtensionClass y;
    y.group = x.group;
    y.components.assign(k, std::vector<Int>(g, Int(0)));
    // (x . a)_j = sum_i (d_j a_{ij} / d_i) w_i  mod d_j
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i) {
            Int f = x.group.invariant_factors[j] * a.at(i, j) / x.group.invariant_factors[i];
            for (int t = 0; t < g; ++t) y.components[j][t] += f * x.components[i][t];
        }
        for (int t = 0; t < g; ++t)
            y.components[j][t] = fdiv_r(y.components[j][t], x.group.invariant_factors[j]);
    }
    return y;
}

} // namespace

AutOrbits aut_orbits(const std::vector<ExtensionClass>& classes, const FinAbGroup& g,
                     const Int& budget) {
    auto auts = automorphism_matrices(g, budget);
    AutOrbits out;
    std::vector<bool> done(classes.size(), false);
    for (size_t i = 0; i < classes.size(); ++i) {
        if (done[i]) continue;
        std::vector<ExtensionClass> orbit;
        for (const IntMatrix& a : auts) {
            ExtensionClass y = act(classes[i], a);
            if (std::find(orbit.begin(), orbit.end(), y) == orbit.end()) orbit.push_back(y);
        }
        std::sort(orbit.begin(), orbit.end());
        for (const ExtensionClass& y : orbit) {
            auto it = std::lower_bound(classes.begin(), classes.end(), y);
            if (it != classes.end() && *it == y) done[it - classes.begin()] = true;
        }
        out.representatives.push_back(orbit.front());
        out.orbits.push_back(std::move(orbit));
    }
    return out;
}

ExtensionClass orbit_representative(const ExtensionClass& x, const Int& budget) {
    auto auts = automorphism_matrices(x.group, budget);
    ExtensionClass best = x;
    for (const IntMatrix& a : auts) {
        ExtensionClass y = act(x, a);
        if (y < best) best = y;
    }
    return best;
}

IntMatrix representation_of(const CoveringSetup& setup, const ExtensionClass& x) {
    Lattice lam = extension_lattice(setup.gamma, x);
    const int r = setup.gamma.rank(), n = setup.chars_gamma.cols;
    IntMatrix out(r, n);
    for (int e = 0; e < n; ++e) {
        std::vector<Rat> v(setup.v_columns.rows);
        for (int i = 0; i < setup.v_columns.rows; ++i) v[i] = setup.v_columns.at(i, e);
        auto coords = lattice_coords(lam, v);
        if (!coords) throw Infeasible("column not in the extension lattice");
        for (int i = 0; i < r; ++i) out.at(i, e) = (*coords)[i];
    }
    return out;
}

std::string poset_fingerprint(const LayerPoset& poset) {
    // invariant under poset isomorphisms fixing the atom labels: iterated
    // colour refinement seeded by (rank, atom set), colours re-interned each
    // round; the fingerprint records every round's canonical colour table
    const int L = poset.size();
    std::ostringstream os;
    os << "r" << poset.ambient_rank() << ";n" << poset.delta.n() << ";";

    std::vector<std::string> colour(L);
    for (int i = 0; i < L; ++i)
        colour[i] = std::to_string(poset.rank_of[i]) + "/" + std::to_string(poset.atoms_below[i]);
    size_t classes = 0;
    for (int round = 0; round <= L; ++round) {
        std::vector<std::string> sig(L);
        for (int i = 0; i < L; ++i) {
            std::vector<std::string> below, above;
            for (int j = 0; j < L; ++j) {
                if (j == i) continue;
                if (poset.leq[j][i]) below.push_back(colour[j]);
                if (poset.leq[i][j]) above.push_back(colour[j]);
            }
            std::sort(below.begin(), below.end());
            std::sort(above.begin(), above.end());
            sig[i] = colour[i] + "[";
            for (const auto& s : below) sig[i] += s + ",";
            sig[i] += "|";
            for (const auto& s : above) sig[i] += s + ",";
            sig[i] += "]";
        }
        std::vector<std::string> table = sig;
        std::sort(table.begin(), table.end());
        table.erase(std::unique(table.begin(), table.end()), table.end());
        std::map<std::string, int> counts;
        for (const auto& s : sig) ++counts[s];
        for (const auto& s : table)
            os << s << "x" << counts[s] << ";";
        os << "#";
        if (table.size() == classes) break; // partition stable
        classes = table.size();
        for (int i = 0; i < L; ++i) {
            size_t id = std::lower_bound(table.begin(), table.end(), sig[i]) - table.begin();
            colour[i] = "c" + std::to_string(id);
        }
    }
    return os.str();
}

ArrangementInvariant arrangement_invariant(const ToricArrangement& delta) {
    ClassifyFlags f = classify(delta);
    if (!f.centred || !f.essential)
        throw Infeasible("the invariant requires a centred essential arrangement");
    ArithmeticMatroid m_t = arithmetic_matroid(delta);
    CoveringSetup setup = covering_setup(m_t);
    const int r = delta.rank;

    ArrangementInvariant inv;
    inv.poset_fingerprint = poset_fingerprint(build_poset(delta));
    inv.group = setup.group;
    inv.class_rep.group = setup.group;
    if (setup.group.trivial()) return inv;

    // normal-form characters, then the torus map g sending chi_e to v_e
    NormalFormResult nf = to_normal_form(delta);
    IntMatrix xb = nf.arrangement.character_matrix();
    RatMatrix basis_chi(r, r), basis_v(r, r);
    for (int t = 0; t < r; ++t)
        for (int i = 0; i < r; ++i) {
            basis_chi.at(i, t) = Rat(xb.at(i, nf.coord.basis[t]));
            basis_v.at(i, t) = setup.v_columns.at(i, nf.coord.basis[t]);
        }
    RatMatrix gmap = basis_v * inverse(basis_chi);
    for (int e = 0; e < delta.n(); ++e)
        for (int i = 0; i < r; ++i) {
            Rat acc(0);
            for (int t = 0; t < r; ++t) acc += gmap.at(i, t) * Rat(xb.at(t, e));
            if (acc != setup.v_columns.at(i, e))
                throw Infeasible("normal-form map does not align the characters");
        }

    // Lambda_std = gmap(Z^r) as a lattice of rows
    Int den = 1;
    for (const Rat& v : gmap.entries) den = lcm_int(den, v.get_den());
    IntMatrix rows(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Rat v = gmap.at(j, i) * Rat(den); // row i of Lambda basis = column action
            v.canonicalize();
            rows.at(i, j) = v.get_num();
        }
    Lattice lambda_std = Lattice::from_rows(rows, den);

    // coordinates of the gamma basis inside lambda_std; Smith transform rows
    // give the class components w_i in gamma coordinates
    IntMatrix c(r, r);
    for (int i = 0; i < r; ++i) {
        auto coords = lattice_coords(lambda_std, setup.gamma.basis_row(i));
        if (!coords) throw Infeasible("gamma does not sit inside lambda");
        for (int j = 0; j < r; ++j) c.at(i, j) = (*coords)[j];
    }
    SmithDecomposition sd = smith_decomposition(c);
    std::vector<std::vector<Int>> comps;
    for (int i = 0; i < r; ++i) {
        const Int& d = sd.invariant_factors[i];
        if (d < 2) continue;
        std::vector<Int> w(r);
        for (int j = 0; j < r; ++j) w[j] = fdiv_r(sd.u.at(i, j), d);
        comps.push_back(std::move(w));
    }
    if (int(comps.size()) != int(setup.group.invariant_factors.size()))
        throw Infeasible("extracted class does not match the predicted group");
    inv.class_rep.components = std::move(comps);
    inv.class_rep = orbit_representative(inv.class_rep);
    return inv;
}

} // namespace toric
