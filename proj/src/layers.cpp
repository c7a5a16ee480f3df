#include "toric/layers.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "toric/errors.hpp"

namespace toric {

bool Layer::operator<(const Layer& o) const {
    if (rank() != o.rank()) return rank() < o.rank();
    if (gamma_w != o.gamma_w) return gamma_w < o.gamma_w;
    for (size_t i = 0; i < phi.size(); ++i) {
        if (phi[i] != o.phi[i]) return phi[i] < o.phi[i];
    }
    return false;
}

std::optional<PhaseQZ> layer_phase_of(const Layer& w, const std::vector<Int>& chi) {
    std::vector<Rat> v(chi.begin(), chi.end());
    auto coords = lattice_coords(w.gamma_w, v);
    if (!coords) return std::nullopt;
    return phase_combination(*coords, w.phi);
}

bool layer_contains(const Layer& big, const Layer& small) {
    if (big.rank() > small.rank()) return false;
    for (int i = 0; i < big.rank(); ++i) {
        auto coords = lattice_coords(small.gamma_w, big.gamma_w.basis_row(i));
        if (!coords) return false;
        if (phase_combination(*coords, small.phi) != big.phi[i]) return false;
    }
    return true;
}

std::vector<Layer> components_of_intersection(const ToricArrangement& delta,
                                              const std::vector<int>& s) {
    const int r = delta.rank;
    // rows = characters of S with tracked HNF; zero rows of the transform are
    // the kernel combinations, whose phase sums must vanish mod 1
    IntMatrix rows(int(s.size()), r);
    std::vector<PhaseQZ> q(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        for (int j = 0; j < r; ++j) rows.at(int(i), j) = delta.hypertori[s[i]].chi[j];
        q[i] = delta.hypertori[s[i]].phase;
    }
    HermiteResult hr = hermite_normal_form(rows);
    for (int i = hr.rank; i < rows.rows; ++i)
        if (!phase_combination(hr.transform.row(i), q).is_zero()) return {};

    if (hr.rank == 0) {
        Layer top;
        top.gamma_w = Lattice::zero(r);
        return {top};
    }
    std::vector<PhaseQZ> psi(hr.rank);
    for (int i = 0; i < hr.rank; ++i) psi[i] = phase_combination(hr.transform.row(i), q);

    Lattice gamma_s = Lattice::from_rows(hr.h);
    Lattice rad = saturate(gamma_s);

    // H = X * G; the |det X| extensions of the phase map are read off the
    // Smith form of X: D (V^-1 phi) = U psi
    IntMatrix x(hr.rank, rad.rank());
    for (int i = 0; i < hr.rank; ++i) {
        auto coords = lattice_coords(rad, gamma_s.basis_row(i));
        for (int j = 0; j < rad.rank(); ++j) x.at(i, j) = (*coords)[j];
    }
    SmithDecomposition sd = smith_decomposition(x);
    const int k = hr.rank;
    std::vector<PhaseQZ> w(k);
    for (int i = 0; i < k; ++i) w[i] = phase_combination(sd.u.row(i), psi);

    std::vector<Layer> out;
    std::vector<Int> counter(k, Int(0));
    while (true) {
        std::vector<Rat> z(k);
        for (int j = 0; j < k; ++j)
            z[j] = Rat(w[j].num + w[j].den * counter[j], w[j].den * sd.invariant_factors[j]);
        Layer layer;
        layer.gamma_w = rad;
        layer.phi.resize(k);
        for (int a = 0; a < k; ++a) {
            Rat acc(0);
            for (int b = 0; b < k; ++b) acc += Rat(sd.v.at(a, b)) * z[b];
            layer.phi[a] = PhaseQZ::from_rat(acc);
        }
        out.push_back(std::move(layer));
        int j = k - 1;
        while (j >= 0 && counter[j] == sd.invariant_factors[j] - 1) counter[j--] = 0;
        if (j < 0) break;
        ++counter[j];
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void independent_subsets_rec(const IntMatrix& cols, std::vector<int>& cur, int next,
                             std::vector<std::vector<int>>& out) {
    out.push_back(cur);
    if (int(cur.size()) == cols.rows) return;
    for (int j = next; j < cols.cols; ++j) {
        cur.push_back(j);
        if (rank_int(cols.submatrix_cols(cur)) == int(cur.size()))
            independent_subsets_rec(cols, cur, j + 1, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> all_independent_subsets(const IntMatrix& columns) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    independent_subsets_rec(columns, cur, 0, out);
    return out;
}

} // namespace

int LayerPoset::find(const Layer& w) const {
    auto it = std::lower_bound(layers.begin(), layers.end(), w);
    if (it == layers.end() || !(*it == w)) return -1;
    return int(it - layers.begin());
}

LayerPoset build_poset(const ToricArrangement& delta) {
    if (!classify(delta).primitive) throw Infeasible("build_poset requires a primitive arrangement");
    delta.validate();

    LayerPoset p;
    p.delta = delta;

    std::map<Layer, int> seen;
    for (const auto& s : all_independent_subsets(delta.character_matrix()))
        for (Layer& w : components_of_intersection(delta, s))
            seen.emplace(std::move(w), 0);

    p.layers.reserve(seen.size());
    for (auto& [w, idx] : seen) p.layers.push_back(w); // std::map iterates in Layer order

    const int L = p.size();
    p.rank_of.resize(L);
    p.by_rank.assign(delta.rank + 1, {});
    for (int i = 0; i < L; ++i) {
        p.rank_of[i] = p.layers[i].rank();
        p.by_rank[p.rank_of[i]].push_back(i);
    }

    p.atoms_below.assign(L, 0);
    for (int i = 0; i < L; ++i)
        for (int e = 0; e < delta.n(); ++e) {
            auto ph = layer_phase_of(p.layers[i], delta.hypertori[e].chi);
            if (ph && *ph == delta.hypertori[e].phase) p.atoms_below[i] |= uint32_t(1) << e;
        }

    p.leq.assign(L, std::vector<bool>(L, false));
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b) {
            if (p.rank_of[a] > p.rank_of[b]) continue;
            if ((p.atoms_below[a] & p.atoms_below[b]) != p.atoms_below[a]) continue;
            p.leq[a][b] = layer_contains(p.layers[a], p.layers[b]);
        }

    p.atom_map.resize(delta.n());
    for (int e = 0; e < delta.n(); ++e) {
        auto comps = components_of_intersection(delta, {e});
        if (comps.size() != 1) throw Infeasible("primitive hypertorus must be a single layer");
        p.atom_map[e] = p.find(comps[0]);
    }
    return p;
}

Int multiplicity(const ToricArrangement& delta, const std::vector<int>& I) {
    IntMatrix rows(int(I.size()), delta.rank);
    std::vector<PhaseQZ> q(I.size());
    for (size_t i = 0; i < I.size(); ++i) {
        for (int j = 0; j < delta.rank; ++j) rows.at(int(i), j) = delta.hypertori[I[i]].chi[j];
        q[i] = delta.hypertori[I[i]].phase;
    }
    HermiteResult hr = hermite_normal_form(rows);
    for (int i = hr.rank; i < rows.rows; ++i)
        if (!phase_combination(hr.transform.row(i), q).is_zero()) return 0;
    if (hr.rank == 0) return 1;
    Lattice gamma_s = Lattice::from_rows(hr.h);
    return quotient_invariants(gamma_s, saturate(gamma_s)).torsion.order();
}

ArithmeticMatroid arithmetic_matroid(const ToricArrangement& delta) {
    if (!classify(delta).centred)
        throw Infeasible("arithmetic matroid requires a centred arrangement");
    return arithmetic_matroid(delta.character_matrix());
}

ArithmeticMatroid arithmetic_matroid(const IntMatrix& columns) {
    int n = columns.cols;
    if (n > 20) throw BudgetExceeded("arithmetic matroid tables limited to n <= 20");
    ArithmeticMatroid m;
    m.n = n;
    m.rank_table.assign(size_t(1) << n, 0);
    m.mult_table.assign(size_t(1) << n, Int(1));
    for (uint32_t mask = 1; mask < (uint32_t(1) << n); ++mask) {
        std::vector<int> idx;
        for (int j = 0; j < n; ++j)
            if (mask & (uint32_t(1) << j)) idx.push_back(j);
        IntMatrix rows(int(idx.size()), columns.rows);
        for (size_t i = 0; i < idx.size(); ++i)
            for (int j = 0; j < columns.rows; ++j) rows.at(int(i), j) = columns.at(j, idx[i]);
        HermiteResult hr = hermite_normal_form(rows);
        m.rank_table[mask] = hr.rank;
        if (hr.rank > 0) {
            Lattice g = Lattice::from_rows(hr.h);
            m.mult_table[mask] = quotient_invariants(g, saturate(g)).torsion.order();
        }
    }
    m.rank = m.rank_table[(uint32_t(1) << n) - 1];
    return m;
}

std::vector<uint32_t> ArithmeticMatroid::independent_sets(int k) const {
    std::vector<uint32_t> out;
    for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask)
        if (std::popcount(mask) == k && rank_table[mask] == k) out.push_back(mask);
    return out;
}

std::vector<std::vector<int>> circuits_of_columns(const IntMatrix& columns) {
    int n = columns.cols;
    std::vector<uint32_t> found;
    std::vector<std::vector<int>> out;
    for (uint32_t mask = 1; mask < (uint32_t(1) << n); ++mask) {
        bool contains_smaller = false;
        for (uint32_t c : found)
            if ((c & mask) == c) { contains_smaller = true; break; }
        if (contains_smaller) continue;
        std::vector<int> idx;
        for (int j = 0; j < n; ++j)
            if (mask & (uint32_t(1) << j)) idx.push_back(j);
        if (rank_int(columns.submatrix_cols(idx)) < int(idx.size())) {
            // any dependent set whose proper subsets were all skipped as
            // independent is a circuit
            found.push_back(mask);
            out.push_back(idx);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<std::vector<int>> circuits(const ToricArrangement& delta) {
    return circuits_of_columns(delta.character_matrix());
}

namespace {

std::vector<uint32_t> local_broken_circuits(const LayerPoset& poset,
                                            const std::vector<std::vector<int>>& all_circuits,
                                            int layer) {
    uint32_t ground = poset.atoms_below[layer];
    std::vector<uint32_t> out;
    for (const auto& c : all_circuits) {
        uint32_t cmask = 0;
        for (int e : c) cmask |= uint32_t(1) << e;
        if ((cmask & ground) != cmask) continue;
        out.push_back(cmask & ~(uint32_t(1) << c.back())); // circuit minus its max
    }
    return out;
}

} // namespace

std::vector<NbcPair> nbc_pairs(const LayerPoset& poset, int q) {
    auto all_circuits = circuits(poset.delta);
    IntMatrix cols = poset.delta.character_matrix();
    std::vector<NbcPair> out;
    for (int layer : poset.by_rank.at(q)) {
        auto broken = local_broken_circuits(poset, all_circuits, layer);
        std::vector<int> ground;
        for (int e = 0; e < poset.delta.n(); ++e)
            if (poset.atoms_below[layer] & (uint32_t(1) << e)) ground.push_back(e);
        for (const auto& pick : subsets_of_size(int(ground.size()), q)) {
            std::vector<int> s;
            uint32_t smask = 0;
            for (int t : pick) {
                s.push_back(ground[t]);
                smask |= uint32_t(1) << ground[t];
            }
            bool nbc = true;
            for (uint32_t b : broken)
                if ((b & smask) == b) { nbc = false; break; }
            if (!nbc) continue;
            if (rank_int(cols.submatrix_cols(s)) < q) continue;
            out.push_back({layer, s});
        }
    }
    std::sort(out.begin(), out.end(), [](const NbcPair& a, const NbcPair& b) {
        if (a.layer != b.layer) return a.layer < b.layer;
        return a.s < b.s;
    });
    return out;
}

std::vector<Int> nbc_counts(const LayerPoset& poset) {
    std::vector<Int> counts;
    for (int q = 0; q <= poset.ambient_rank(); ++q)
        counts.push_back(Int(long(nbc_pairs(poset, q).size())));
    return counts;
}

std::vector<Int> poincare_polynomial(const LayerPoset& poset) {
    int r = poset.ambient_rank();
    std::vector<Int> counts = nbc_counts(poset);
    std::vector<Int> p(r + 1, Int(0));
    for (int q = 0; q <= r; ++q) {
        if (counts[q] == 0) continue;
        Int binom = 1; // binom(r-q, i) as i runs
        for (int i = 0; i <= r - q; ++i) {
            p[q + i] += counts[q] * binom;
            binom = binom * (r - q - i) / (i + 1);
        }
    }
    return p;
}

std::vector<std::pair<int, std::vector<Int>>> local_arrangement(const LayerPoset& poset, int layer) {
    if (layer < 0 || layer >= poset.size()) throw InvalidInput("layer index out of range");
    std::vector<std::pair<int, std::vector<Int>>> out;
    const Layer& w = poset.layers[layer];
    for (int e = 0; e < poset.delta.n(); ++e) {
        if (!(poset.atoms_below[layer] & (uint32_t(1) << e))) continue;
        std::vector<Rat> v(w.gamma_w.ambient_rank);
        for (int j = 0; j < w.gamma_w.ambient_rank; ++j) v[j] = Rat(poset.delta.hypertori[e].chi[j]);
        out.emplace_back(e, *lattice_coords(w.gamma_w, v));
    }
    return out;
}

namespace {

bool extend_isomorphism(const LayerPoset& p, const LayerPoset& q, bool over_atoms,
                        const std::vector<int>& order, size_t pos, std::vector<int>& image,
                        std::vector<bool>& used) {
    if (pos == order.size()) return true;
    int a = order[pos];
    for (int b = 0; b < q.size(); ++b) {
        if (used[b] || q.rank_of[b] != p.rank_of[a]) continue;
        if (over_atoms && q.atoms_below[b] != p.atoms_below[a]) continue;
        bool ok = true;
        for (size_t t = 0; t < pos && ok; ++t) {
            int a2 = order[t], b2 = image[a2];
            if (p.leq[a][a2] != q.leq[b][b2] || p.leq[a2][a] != q.leq[b2][b]) ok = false;
        }
        if (!ok) continue;
        image[a] = b;
        used[b] = true;
        if (extend_isomorphism(p, q, over_atoms, order, pos + 1, image, used)) return true;
        image[a] = -1;
        used[b] = false;
    }
    return false;
}

} // namespace

std::optional<std::vector<int>> posets_isomorphic(const LayerPoset& p, const LayerPoset& q,
                                                  bool over_atoms) {
    if (p.size() != q.size() || p.by_rank.size() != q.by_rank.size()) return std::nullopt;
    for (size_t rk = 0; rk < p.by_rank.size(); ++rk)
        if (p.by_rank[rk].size() != q.by_rank[rk].size()) return std::nullopt;
    if (over_atoms) {
        if (p.delta.n() != q.delta.n()) return std::nullopt;
        // fingerprint multisets must agree rank by rank
        for (size_t rk = 0; rk < p.by_rank.size(); ++rk) {
            std::vector<uint32_t> fp, fq;
            for (int a : p.by_rank[rk]) fp.push_back(p.atoms_below[a]);
            for (int b : q.by_rank[rk]) fq.push_back(q.atoms_below[b]);
            std::sort(fp.begin(), fp.end());
            std::sort(fq.begin(), fq.end());
            if (fp != fq) return std::nullopt;
        }
    }

    std::vector<int> order;
    for (const auto& level : p.by_rank)
        for (int a : level) order.push_back(a);
    std::vector<int> image(p.size(), -1);
    std::vector<bool> used(q.size(), false);
    if (!extend_isomorphism(p, q, over_atoms, order, 0, image, used)) return std::nullopt;
    return image;
}

} // namespace toric
