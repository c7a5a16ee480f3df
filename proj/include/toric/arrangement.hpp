#pragma once

#include "toric/exactlin.hpp"

namespace toric {

/// One hypertorus {t : chi(t) = e(phase)} with e(q) = exp(2*pi*i*q).
/// (chi, q) and (-chi, -q) cut out the same set; canonical() picks the
/// representative whose first nonzero chi entry is positive.
struct Hypertorus {
    std::vector<Int> chi;
    PhaseQZ phase;

    Hypertorus() = default;
    Hypertorus(std::vector<Int> c, PhaseQZ p) : chi(std::move(c)), phase(std::move(p)) {}

    bool is_zero_char() const;
    Hypertorus canonical() const;
    bool same_hypertorus(const Hypertorus& o) const;

    bool operator==(const Hypertorus& o) const { return chi == o.chi && phase == o.phase; }
};

struct ClassifyFlags {
    bool centred{false};
    bool primitive{false};
    bool essential{false};
    bool surjective{false};
};

struct ToricArrangement {
    int rank{0};
    std::vector<Hypertorus> hypertori; // index set E = 0..n-1, order fixed

    int n() const { return int(hypertori.size()); }

    /// Columns are the characters (rank x n).
    IntMatrix character_matrix() const;
    static ToricArrangement from_character_matrix(const IntMatrix& cols,
                                                  const std::vector<PhaseQZ>& phases = {});

    /// rank >= 1, nonzero characters, no duplicate hypertori (up to negation).
    void validate() const;
};

ToricArrangement primitivize(const ToricArrangement& delta);

struct EssentializeResult {
    ToricArrangement arrangement;
    int split_rank{0};
};

/// Unimodular change of coordinates making the character span full rank;
/// M(delta) factors as M(result) x (C^*)^split_rank.
EssentializeResult essentialize(const ToricArrangement& delta);

ClassifyFlags classify(const ToricArrangement& delta);

} // namespace toric
