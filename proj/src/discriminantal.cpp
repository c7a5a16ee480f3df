#include "toric/discriminantal.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "toric/errors.hpp"

namespace toric {

namespace {

// kernel of the columns indexed by `idx`, embedded into Z^n
Lattice embedded_kernel(const IntMatrix& chars, const std::vector<int>& idx) {
    Lattice ker = kernel_lattice(chars.submatrix_cols(idx));
    IntMatrix rows(ker.rank(), chars.cols);
    for (int i = 0; i < ker.rank(); ++i)
        for (size_t t = 0; t < idx.size(); ++t) rows.at(i, idx[t]) = ker.hnf_basis.at(i, int(t));
    return Lattice::from_rows(rows);
}

std::vector<int> mask_to_indices(uint32_t mask, int n) {
    std::vector<int> idx;
    for (int j = 0; j < n; ++j)
        if (mask & (uint32_t(1) << j)) idx.push_back(j);
    return idx;
}

ToricArrangement with_phases(const IntMatrix& chars, const std::vector<PhaseQZ>& phases) {
    return ToricArrangement::from_character_matrix(chars, phases);
}

} // namespace

SubtorusWithTargets circuit_torus(const IntMatrix& chars, const std::vector<int>& circuit) {
    std::vector<int> sorted = circuit;
    std::sort(sorted.begin(), sorted.end());
    int k = int(sorted.size());
    if (rank_int(chars.submatrix_cols(sorted)) != k - 1)
        throw InvalidInput("index set is not a circuit");
    for (int drop = 0; drop < k; ++drop) {
        std::vector<int> sub;
        for (int t = 0; t < k; ++t)
            if (t != drop) sub.push_back(sorted[t]);
        if (rank_int(chars.submatrix_cols(sub)) != k - 1)
            throw InvalidInput("index set is not a circuit");
    }
    SubtorusWithTargets out;
    out.relations = embedded_kernel(chars, sorted);
    out.targets.assign(out.relations.rank(), PhaseQZ());
    return out;
}

SubtorusWithTargets ambient_intersection(const IntMatrix& chars, const LayerPoset& target) {
    const int n = chars.cols;
    Lattice acc = Lattice::zero(n);
    int top = int(target.by_rank.size()) - 1;
    for (int w : target.by_rank[top])
        acc = lattice_sum(acc, embedded_kernel(chars, mask_to_indices(target.atoms_below[w], n)));
    SubtorusWithTargets out;
    out.relations = acc;
    out.targets.assign(acc.rank(), PhaseQZ());
    return out;
}

bool l_membership(const PhasePoint& a, const IntMatrix& chars, const LayerPoset& target) {
    if (int(a.phases.size()) != chars.cols) throw InvalidInput("phase point has wrong length");
    ToricArrangement cand = with_phases(chars, a.phases);
    try {
        cand.validate();
    } catch (const InvalidInput&) {
        return false; // coincident hypertori change the poset over E
    }
    LayerPoset p = build_poset(cand);
    return posets_isomorphic(p, target, true).has_value();
}

std::vector<PhaseQZ> component_invariant(const PhasePoint& a, const IntMatrix& chars,
                                         const LayerPoset& target) {
    if (!l_membership(a, chars, target))
        throw Infeasible("phase point does not realize the target poset");
    Lattice sat = saturate(ambient_intersection(chars, target).relations);
    std::vector<PhaseQZ> out;
    for (int i = 0; i < sat.rank(); ++i)
        out.push_back(phase_combination(sat.hnf_basis.row(i), a.phases));
    return out;
}

GenericKind is_nearly_generic(const LayerPoset& s) {
    auto generic = [&](int w) {
        return std::popcount(s.atoms_below[w]) == s.rank_of[w];
    };
    bool all = true;
    for (int w = 0; w < s.size(); ++w) all = all && generic(w);
    if (all) return GenericKind::Generic;
    for (int wbar = 0; wbar < s.size(); ++wbar) {
        bool ok = true;
        for (int w = 0; w < s.size() && ok; ++w)
            if (!s.leq[w][wbar] && !generic(w)) ok = false;
        if (ok) return GenericKind::NearlyGeneric;
    }
    return GenericKind::Neither;
}

Int count_components(const IntMatrix& chars, const LayerPoset& target) {
    const int n = chars.cols;
    SubtorusWithTargets amb = ambient_intersection(chars, target);
    Lattice sat = saturate(amb.relations);

    // forbidden subsets: not below any maximal layer of the target poset
    int top = int(target.by_rank.size()) - 1;
    std::vector<uint32_t> tops;
    for (int w : target.by_rank[top]) tops.push_back(target.atoms_below[w]);
    std::vector<Lattice> forbidden;
    for (uint32_t mask = 1; mask < (uint32_t(1) << n); ++mask) {
        bool inside = false;
        for (uint32_t t : tops)
            if ((mask & t) == mask) { inside = true; break; }
        if (inside) continue;
        Lattice ker = embedded_kernel(chars, mask_to_indices(mask, n));
        if (ker.rank() == 0) return 0; // B_j is all of phase space: L(S) empty
        if (lattice_subset(ker, sat)) forbidden.push_back(ker);
    }

    // enumerate extensions of the zero map on relations to the saturation
    std::vector<std::vector<PhaseQZ>> survivors; // values on the sat basis rows
    if (sat.rank() == 0) {
        survivors.push_back({});
    } else {
        IntMatrix x(amb.relations.rank(), sat.rank());
        for (int i = 0; i < amb.relations.rank(); ++i) {
            auto coords = lattice_coords(sat, amb.relations.basis_row(i));
            for (int j = 0; j < sat.rank(); ++j) x.at(i, j) = (*coords)[j];
        }
        SmithDecomposition sd = smith_decomposition(x);
        const int k = sat.rank();
        std::vector<Int> counter(k, Int(0));
        std::vector<Int> d(k, Int(1));
        for (int j = 0; j < std::min(x.rows, k); ++j)
            if (sd.invariant_factors[j] != 0) d[j] = sd.invariant_factors[j];
        while (true) {
            std::vector<PhaseQZ> phi(k);
            for (int aidx = 0; aidx < k; ++aidx) {
                Rat acc(0);
                for (int b = 0; b < k; ++b) acc += Rat(sd.v.at(aidx, b)) * Rat(counter[b], d[b]);
                phi[aidx] = PhaseQZ::from_rat(acc);
            }
            bool killed = false;
            for (const Lattice& ker : forbidden) {
                bool all_zero = true;
                for (int i = 0; i < ker.rank() && all_zero; ++i) {
                    auto coords = lattice_coords(sat, ker.basis_row(i));
                    Rat acc(0);
                    for (int j = 0; j < sat.rank(); ++j) acc += Rat((*coords)[j]) * phi[j].to_rat();
                    if (!PhaseQZ::from_rat(acc).is_zero()) all_zero = false;
                }
                if (all_zero) { killed = true; break; }
            }
            if (!killed) survivors.push_back(std::move(phi));
            int j = k - 1;
            while (j >= 0 && counter[j] == d[j] - 1) counter[j--] = 0;
            if (j < 0) break;
            ++counter[j];
        }
    }

    // verify each surviving component by a rational witness
    Lattice perturb = sat.rank() == 0 ? Lattice::full(n) : kernel_lattice(sat.hnf_basis);
    std::mt19937 rng(1234);
    for (const auto& phi : survivors) {
        std::vector<Rat> rhs(sat.rank());
        for (int i = 0; i < sat.rank(); ++i) rhs[i] = phi[i].to_rat();
        RatMatrix us(sat.rank(), n);
        for (int i = 0; i < sat.rank(); ++i)
            for (int j = 0; j < n; ++j) us.at(i, j) = Rat(sat.hnf_basis.at(i, j));
        std::vector<Rat> base;
        if (sat.rank() == 0) base.assign(n, Rat(0));
        else if (!solve_exact(us, rhs, base))
            throw Infeasible("no rational point on the component");
        bool found = false;
        for (int attempt = 0; attempt < 60 && !found; ++attempt) {
            std::vector<Rat> probe = base;
            long den = 2 + attempt;
            for (int i = 0; i < perturb.rank(); ++i) {
                long c = long(rng() % 5);
                for (int j = 0; j < n; ++j)
                    probe[j] += Rat(c * perturb.hnf_basis.at(i, j), den);
            }
            PhasePoint pt;
            for (const Rat& v : probe) pt.phases.push_back(PhaseQZ::from_rat(v));
            if (l_membership(pt, chars, target)) found = true;
        }
        if (!found) throw Infeasible("no rational witness found within denominator budget");
    }
    return Int(long(survivors.size()));
}

} // namespace toric
