#include "toric/arrangement.hpp"

#include <algorithm>

#include "toric/errors.hpp"

namespace toric {

bool Hypertorus::is_zero_char() const {
    return std::all_of(chi.begin(), chi.end(), [](const Int& x) { return x == 0; });
}

Hypertorus Hypertorus::canonical() const {
    for (const Int& x : chi) {
        if (x == 0) continue;
        if (x > 0) return *this;
        Hypertorus h;
        h.chi.reserve(chi.size());
        for (const Int& y : chi) h.chi.push_back(-y);
        h.phase = -phase;
        return h;
    }
    return *this;
}

bool Hypertorus::same_hypertorus(const Hypertorus& o) const {
    return canonical() == o.canonical();
}

IntMatrix ToricArrangement::character_matrix() const {
    IntMatrix m(rank, n());
    for (int j = 0; j < n(); ++j)
        for (int i = 0; i < rank; ++i) m.at(i, j) = hypertori[j].chi[i];
    return m;
}

ToricArrangement ToricArrangement::from_character_matrix(const IntMatrix& cols,
                                                         const std::vector<PhaseQZ>& phases) {
    ToricArrangement d;
    d.rank = cols.rows;
    for (int j = 0; j < cols.cols; ++j)
        d.hypertori.emplace_back(cols.col(j), phases.empty() ? PhaseQZ() : phases.at(j));
    return d;
}

void ToricArrangement::validate() const {
    if (rank < 1) throw InvalidInput("arrangement rank must be at least 1");
    for (const auto& h : hypertori) {
        if (int(h.chi.size()) != rank) throw InvalidInput("character length differs from rank");
        if (h.is_zero_char()) throw InvalidInput("zero character");
    }
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (hypertori[i].same_hypertorus(hypertori[j]))
                throw InvalidInput("duplicate hypertorus at indices " + std::to_string(i) + "," +
                                   std::to_string(j));
}

ToricArrangement primitivize(const ToricArrangement& delta) {
    ToricArrangement out;
    out.rank = delta.rank;
    for (const auto& h : delta.hypertori) {
        Int d = content(h.chi);
        Hypertorus base;
        for (const Int& x : h.chi) base.chi.push_back(x / d);
        base.phase = h.phase;
        base = base.canonical(); // sign normalization adjusts the phase too
        // chi = d*chi0: {chi0(t)^d = e(q)} splits into chi0(t) = e((q+k)/d)
        for (Int k = 0; k < d; ++k) {
            Hypertorus piece;
            piece.chi = base.chi;
            piece.phase = PhaseQZ(base.phase.num + k * base.phase.den, base.phase.den * d);
            bool dup = false;
            for (const auto& seen : out.hypertori)
                if (seen.same_hypertorus(piece)) { dup = true; break; }
            if (!dup) out.hypertori.push_back(piece);
        }
    }
    return out;
}

EssentializeResult essentialize(const ToricArrangement& delta) {
    IntMatrix chars = delta.character_matrix().transpose(); // rows = characters
    SmithDecomposition s = smith_decomposition(chars);
    int rho = 0;
    for (const Int& f : s.invariant_factors)
        if (f != 0) ++rho;
    if (rho == delta.rank) return {delta, 0};
    // change of basis lambda -> lambda * V puts every character into the
    // first rho coordinates (chars * V = u_inv * D has zero tail columns)
    EssentializeResult res;
    res.split_rank = delta.rank - rho;
    res.arrangement.rank = rho;
    IntMatrix moved = chars * s.v;
    for (int e = 0; e < delta.n(); ++e) {
        Hypertorus h;
        for (int j = 0; j < rho; ++j) h.chi.push_back(moved.at(e, j));
        h.phase = delta.hypertori[e].phase;
        res.arrangement.hypertori.push_back(h);
    }
    return res;
}

ClassifyFlags classify(const ToricArrangement& delta) {
    ClassifyFlags f;
    f.centred = std::all_of(delta.hypertori.begin(), delta.hypertori.end(),
                            [](const Hypertorus& h) { return h.phase.is_zero(); });
    f.primitive = std::all_of(delta.hypertori.begin(), delta.hypertori.end(),
                              [](const Hypertorus& h) { return content(h.chi) == 1; });
    SmithDecomposition s = smith_decomposition(delta.character_matrix());
    int rho = 0;
    bool all_ones = true;
    for (const Int& d : s.invariant_factors) {
        if (d != 0) ++rho;
        if (d != 1) all_ones = false;
    }
    f.essential = (rho == delta.rank);
    f.surjective = f.essential && all_ones;
    return f;
}

} // namespace toric
