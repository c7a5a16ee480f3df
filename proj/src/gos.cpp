#include "toric/gos.hpp"

#include <algorithm>
#include <bit>

#include "toric/errors.hpp"

namespace toric {

Int HilbertTable::degree_sum(int k) const {
    Int s = 0;
    for (int p = 0; p <= rank; ++p) {
        int q = k - p;
        if (q >= 0 && q <= rank) s += dims[p][q];
    }
    return s;
}

Int HilbertTable::total() const {
    Int s = 0;
    for (const auto& row : dims)
        for (const Int& v : row) s += v;
    return s;
}

void assert_integral(const GosElement& x) {
    if (x.ring != Ring::Z) return;
    for (const auto& [term, coeff] : x.terms)
        if (coeff.get_den() != 1)
            throw Infeasible("non-integral coefficient in a Z-model element");
}

GosAlgebra::GosAlgebra(const ToricArrangement& delta) {
    ClassifyFlags f = classify(delta);
    if (!f.primitive) throw Infeasible("the graded model requires a primitive arrangement");
    // the empty arrangement is plain exterior algebra; otherwise essentiality
    if (delta.n() > 0 && !f.essential)
        throw Infeasible("the graded model requires an essential arrangement");
    poset_ = build_poset(delta);

    const int r = poset_.ambient_rank();
    quot_.resize(poset_.size());
    lift_.resize(poset_.size());
    os_.resize(poset_.size());
    for (int w = 0; w < poset_.size(); ++w) {
        const Lattice& g = poset_.layers[w].gamma_w;
        SmithDecomposition s = smith_decomposition(g.hnf_basis);
        const int q = g.rank();
        // in the V-coordinates I_W becomes the span of the first q basis
        // vectors, so the last r-q columns and v_inv rows give the quotient
        quot_[w] = IntMatrix(r, r - q);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r - q; ++j) quot_[w].at(i, j) = s.v.at(i, q + j);
        lift_[w] = IntMatrix(r - q, r);
        for (int i = 0; i < r - q; ++i)
            for (int j = 0; j < r; ++j) lift_[w].at(i, j) = s.v_inv.at(q + i, j);
    }
}

std::vector<Int> GosAlgebra::project_to_layer(int layer, const std::vector<Int>& lambda) const {
    return vec_mat(lambda, quot_[layer]);
}

std::vector<Int> GosAlgebra::lift_from_layer(int layer, int i) const {
    return lift_[layer].row(i);
}

OsAlgebra& GosAlgebra::local_os(int layer) {
    if (!os_[layer]) {
        auto chars = local_arrangement(poset_, layer);
        std::vector<int> labels;
        IntMatrix vectors(poset_.layers[layer].rank(), int(chars.size()));
        for (size_t t = 0; t < chars.size(); ++t) {
            labels.push_back(chars[t].first);
            for (int i = 0; i < vectors.rows; ++i) vectors.at(i, int(t)) = chars[t].second[i];
        }
        os_[layer] = std::make_unique<OsAlgebra>(std::move(labels), std::move(vectors));
    }
    return *os_[layer];
}

const OsAlgebra::Element& GosAlgebra::nbc_expand(int layer, const OsAlgebra::Word& s) {
    return local_os(layer).straighten_word(s);
}

GosElement GosAlgebra::one(Ring ring) const {
    GosElement e{ring, {}};
    e.terms[GosTerm{poset_.bottom(), {}, 0}] = 1;
    return e;
}

GosElement GosAlgebra::atom(int e, Ring ring) const {
    GosElement x{ring, {}};
    x.terms[GosTerm{poset_.atom_map[e], {e}, 0}] = 1;
    return x;
}

GosElement GosAlgebra::character_class(const std::vector<Int>& chi, Ring ring) const {
    GosElement x{ring, {}};
    int bottom = poset_.bottom();
    // at the bottom layer the quotient is all of Lambda
    std::vector<Int> coords = project_to_layer(bottom, chi);
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        x.terms[GosTerm{bottom, {}, uint64_t(1) << i}] = Rat(coords[i]);
    }
    return x;
}

GosElement GosAlgebra::add(const GosElement& x, const GosElement& y) const {
    check_ring(x, y);
    GosElement out = x;
    for (const auto& [t, c] : y.terms) {
        Rat& acc = out.terms[t];
        acc += c;
        if (acc == 0) out.terms.erase(t);
    }
    return out;
}

GosElement GosAlgebra::scale(const GosElement& x, const Rat& c) const {
    GosElement out{x.ring, {}};
    if (c == 0) return out;
    for (const auto& [t, v] : x.terms) out.terms[t] = v * c;
    return out;
}

void GosAlgebra::check_ring(const GosElement& x, const GosElement& y) const {
    if (x.ring != y.ring) throw InvalidInput("ring mismatch between operands");
}

const std::vector<int>& GosAlgebra::components_cache(const std::vector<int>& s_union) {
    uint32_t mask = 0;
    for (int e : s_union) mask |= uint32_t(1) << e;
    auto it = comp_memo_.find(mask);
    if (it != comp_memo_.end()) return it->second;
    std::vector<int> idx;
    for (const Layer& w : components_of_intersection(poset_.delta, s_union)) {
        int i = poset_.find(w);
        if (i < 0) throw Infeasible("component missing from the poset");
        idx.push_back(i);
    }
    return comp_memo_.emplace(mask, std::move(idx)).first->second;
}

GosElement GosAlgebra::multiply(const GosElement& x, const GosElement& y) {
    check_ring(x, y);
    const int r = rank();
    GosElement out{x.ring, {}};
    IntMatrix cols = poset_.delta.character_matrix();

    for (const auto& [tx, cx] : x.terms)
        for (const auto& [ty, cy] : y.terms) {
            // concatenated index list; repeats make it dependent
            bool overlap = false;
            for (int e : tx.s)
                if (std::binary_search(ty.s.begin(), ty.s.end(), e)) { overlap = true; break; }
            if (overlap) continue;
            std::vector<int> su;
            std::merge(tx.s.begin(), tx.s.end(), ty.s.begin(), ty.s.end(), std::back_inserter(su));
            if (rank_int(cols.submatrix_cols(su)) < int(su.size())) continue;

            int px = std::popcount(tx.mono), py = std::popcount(ty.mono);
            int koszul = ((int(tx.s.size()) * py) % 2 == 0) ? 1 : -1;
            int sort_sign = merge_sign(tx.s, ty.s);

            // wedge factors: lifts of x's monomial then y's monomial
            std::vector<std::vector<Int>> factors;
            for (int i = 0; i < 64; ++i)
                if (tx.mono & (uint64_t(1) << i)) factors.push_back(lift_from_layer(tx.layer, i));
            for (int i = 0; i < 64; ++i)
                if (ty.mono & (uint64_t(1) << i)) factors.push_back(lift_from_layer(ty.layer, i));
            const int p = px + py;

            for (int li : components_cache(su)) {
                if (!poset_.leq[tx.layer][li] || !poset_.leq[ty.layer][li]) continue;
                const int qdim = r - poset_.rank_of[li];
                if (p > qdim) continue;
                // project the factor list into the quotient of the component
                IntMatrix proj(p, qdim);
                for (int t = 0; t < p; ++t) {
                    std::vector<Int> row = project_to_layer(li, factors[t]);
                    for (int j = 0; j < qdim; ++j) proj.at(t, j) = row[j];
                }
                Rat base = cx * cy * koszul * sort_sign;
                for (const auto& pick : subsets_of_size(qdim, p)) {
                    std::vector<int> all(p);
                    for (int t = 0; t < p; ++t) all[t] = t;
                    Int det = determinant(proj.submatrix(all, pick));
                    if (det == 0) continue;
                    uint64_t mono = 0;
                    for (int j : pick) mono |= uint64_t(1) << j;
                    for (const auto& [word, coeff] : nbc_expand(li, su)) {
                        GosTerm term{li, word, mono};
                        Rat& acc = out.terms[term];
                        acc += base * Rat(det) * Rat(coeff);
                        if (acc == 0) out.terms.erase(term);
                    }
                }
            }
        }
    assert_integral(out);
    return out;
}

GosElement GosAlgebra::straighten(const std::vector<RawGosTerm>& raw, Ring ring) {
    const int r = rank();
    IntMatrix cols = poset_.delta.character_matrix();
    GosElement out{ring, {}};
    for (const RawGosTerm& t : raw) {
        if (t.layer < 0 || t.layer >= poset_.size()) throw InvalidInput("bad layer index");
        std::vector<int> sorted = t.s;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidInput("repeated index in S");
        if (rank_int(cols.submatrix_cols(sorted)) < int(sorted.size()))
            throw InvalidInput("S is dependent");
        // W must be a component of the intersection over S
        uint32_t smask = 0;
        for (int e : sorted) smask |= uint32_t(1) << e;
        if ((poset_.atoms_below[t.layer] & smask) != smask ||
            poset_.rank_of[t.layer] != int(sorted.size()))
            throw InvalidInput("layer is not a component of the intersection over S");

        // permutation sign for sorting S
        int sign = 1;
        {
            std::vector<int> perm = t.s;
            for (size_t i = 0; i < perm.size(); ++i)
                for (size_t j = i + 1; j < perm.size(); ++j)
                    if (perm[i] > perm[j]) sign = -sign;
        }
        const int qdim = r - poset_.rank_of[t.layer];
        const int p = int(t.wedge.size());
        if (p > qdim) continue;
        IntMatrix proj(p, qdim);
        for (int i = 0; i < p; ++i) {
            std::vector<Int> row = project_to_layer(t.layer, t.wedge[i]);
            for (int j = 0; j < qdim; ++j) proj.at(i, j) = row[j];
        }
        for (const auto& pick : subsets_of_size(qdim, p)) {
            std::vector<int> all(p);
            for (int i = 0; i < p; ++i) all[i] = i;
            Int det = determinant(proj.submatrix(all, pick));
            if (det == 0) continue;
            uint64_t mono = 0;
            for (int j : pick) mono |= uint64_t(1) << j;
            for (const auto& [word, coeff] : nbc_expand(t.layer, sorted)) {
                GosTerm term{t.layer, word, mono};
                Rat& acc = out.terms[term];
                acc += t.coeff * Rat(sign) * Rat(det) * Rat(coeff);
                if (acc == 0) out.terms.erase(term);
            }
        }
    }
    assert_integral(out);
    return out;
}

std::vector<GosTerm> GosAlgebra::basis() {
    std::vector<GosTerm> out;
    const int r = rank();
    for (int q = 0; q <= r; ++q)
        for (const NbcPair& pr : nbc_pairs(poset_, q))
            for (uint64_t mono = 0; mono < (uint64_t(1) << (r - q)); ++mono)
                out.push_back(GosTerm{pr.layer, pr.s, mono});
    std::sort(out.begin(), out.end());
    return out;
}

HilbertTable GosAlgebra::hilbert_table() {
    const int r = rank();
    HilbertTable t;
    t.rank = r;
    t.dims.assign(r + 1, std::vector<Int>(r + 1, Int(0)));
    std::vector<Int> counts = nbc_counts(poset_);
    for (int q = 0; q <= r; ++q) {
        Int binom = 1;
        for (int p = 0; p <= r - q; ++p) {
            t.dims[p][q] = binom * counts[q];
            binom = binom * (r - q - p) / (p + 1);
        }
    }
    return t;
}

GosElement GosAlgebra::y_power_expansion(const std::vector<int>& s, Ring ring) {
    GosElement out{ring, {}};
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    IntMatrix cols = poset_.delta.character_matrix();
    if (rank_int(cols.submatrix_cols(sorted)) < int(sorted.size())) return out; // dependent: zero
    int sign = 1;
    {
        std::vector<int> perm = s;
        for (size_t i = 0; i < perm.size(); ++i)
            for (size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) sign = -sign;
    }
    for (int li : components_cache(sorted))
        for (const auto& [word, coeff] : nbc_expand(li, sorted)) {
            GosTerm term{li, word, 0};
            Rat& acc = out.terms[term];
            acc += Rat(sign) * Rat(coeff);
            if (acc == 0) out.terms.erase(term);
        }
    assert_integral(out);
    return out;
}

std::vector<GosElement> GosAlgebra::rational_generator_map() {
    std::vector<GosElement> out;
    for (const auto& h : poset_.delta.hypertori) out.push_back(character_class(h.chi, Ring::Q));
    return out;
}

} // namespace toric
