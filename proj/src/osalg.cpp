#include "toric/osalg.hpp"

#include <algorithm>

#include "toric/errors.hpp"
#include "toric/layers.hpp"

namespace toric {

int merge_sign(const OsAlgebra::Word& a, const OsAlgebra::Word& b) {
    long inversions = 0;
    for (int x : a)
        for (int y : b)
            if (x > y) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

OsAlgebra::OsAlgebra(std::vector<int> labels, IntMatrix vectors)
    : labels_(std::move(labels)), vectors_(std::move(vectors)) {
    if (int(labels_.size()) != vectors_.cols)
        throw InvalidInput("OsAlgebra: label/column count mismatch");
    std::vector<std::vector<int>> raw = circuits_of_columns(vectors_);
    for (auto& c : raw) {
        Word w;
        for (int i : c) w.push_back(labels_[i]);
        std::sort(w.begin(), w.end());
        circuits_.push_back(std::move(w));
    }
    std::sort(circuits_.begin(), circuits_.end(), [](const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
}

int OsAlgebra::column_of(int label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) throw InvalidInput("OsAlgebra: unknown label");
    return int(it - labels_.begin());
}

bool OsAlgebra::independent(const Word& w) const {
    std::vector<int> cols;
    for (int l : w) cols.push_back(column_of(l));
    return rank_int(vectors_.submatrix_cols(cols)) == int(w.size());
}

bool OsAlgebra::is_nbc(const Word& w) const {
    if (!independent(w)) return false;
    for (const Word& c : circuits_) {
        // broken circuit = circuit minus its largest element
        bool inside = std::all_of(c.begin(), c.end() - 1, [&](int l) {
            return std::binary_search(w.begin(), w.end(), l);
        });
        if (inside) return false;
    }
    return true;
}

std::vector<OsAlgebra::Word> OsAlgebra::nbc_sets(int k) const {
    std::vector<Word> out;
    for (const auto& pick : subsets_of_size(int(labels_.size()), k)) {
        Word w;
        for (int t : pick) w.push_back(labels_[t]);
        if (is_nbc(w)) out.push_back(w);
    }
    return out;
}

const OsAlgebra::Element& OsAlgebra::straighten_word(const Word& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;

    Element result;
    if (!independent(w)) {
        return memo_.emplace(w, std::move(result)).first->second;
    }
    // find a broken circuit inside w
    const Word* hit = nullptr;
    for (const Word& c : circuits_) {
        bool inside = std::all_of(c.begin(), c.end() - 1, [&](int l) {
            return std::binary_search(w.begin(), w.end(), l);
        });
        if (inside) { hit = &c; break; }
    }
    if (!hit) {
        result[w] = 1;
        return memo_.emplace(w, std::move(result)).first->second;
    }
    const Word& c = *hit;
    const int m = int(c.size()) - 1; // position of max element
    Word broken(c.begin(), c.end() - 1);
    Word rest;
    std::set_difference(w.begin(), w.end(), broken.begin(), broken.end(),
                        std::back_inserter(rest));
    int sigma = merge_sign(broken, rest);
    // f_broken = sum_{i<m} (-1)^{i+m+1} f_{c minus c_i}
    for (int i = 0; i < m; ++i) {
        Word piece;
        for (int t = 0; t <= m; ++t)
            if (t != i) piece.push_back(c[t]);
        // piece and rest are disjoint: c[m] cannot lie in the independent w
        Word merged;
        std::merge(piece.begin(), piece.end(), rest.begin(), rest.end(),
                   std::back_inserter(merged));
        int sgn = sigma * merge_sign(piece, rest) * (((i + m + 1) % 2 == 0) ? 1 : -1);
        const Element& sub = straighten_word(merged);
        for (const auto& [word, coeff] : sub) {
            Int& acc = result[word];
            acc += coeff * sgn;
            if (acc == 0) result.erase(word);
        }
    }
    return memo_.emplace(w, std::move(result)).first->second;
}

OsAlgebra::Element OsAlgebra::product(const Element& x, const Element& y) {
    Element out;
    for (const auto& [u, cu] : x)
        for (const auto& [v, cv] : y) {
            bool overlap = false;
            for (int l : u)
                if (std::binary_search(v.begin(), v.end(), l)) { overlap = true; break; }
            if (overlap) continue;
            Word merged;
            std::merge(u.begin(), u.end(), v.begin(), v.end(), std::back_inserter(merged));
            Int c = cu * cv * merge_sign(u, v);
            for (const auto& [word, coeff] : straighten_word(merged)) {
                Int& acc = out[word];
                acc += coeff * c;
                if (acc == 0) out.erase(word);
            }
        }
    return out;
}

OsAlgebra::Element OsAlgebra::scale(const Element& x, const Int& c) {
    Element out;
    if (c == 0) return out;
    for (const auto& [w, v] : x) out[w] = v * c;
    return out;
}

OsAlgebra::Element OsAlgebra::add(const Element& x, const Element& y) {
    Element out = x;
    for (const auto& [w, v] : y) {
        Int& acc = out[w];
        acc += v;
        if (acc == 0) out.erase(w);
    }
    return out;
}

} // namespace toric
