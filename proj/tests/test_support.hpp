#pragma once

#include <random>

#include "toric/layers.hpp"

namespace support {

using namespace toric;

inline ToricArrangement make_arrangement(int rank, std::vector<std::vector<long>> cols,
                                         std::vector<std::string> phases = {}) {
    ToricArrangement d;
    d.rank = rank;
    for (size_t j = 0; j < cols.size(); ++j) {
        Hypertorus h;
        for (long v : cols[j]) h.chi.push_back(v);
        h.phase = phases.empty() ? PhaseQZ() : PhaseQZ::parse(phases[j]);
        d.hypertori.push_back(h);
    }
    return d;
}

// x=1, y=1, xy^3=1, xy^2=zeta_3
inline ToricArrangement example_sec4() {
    return make_arrangement(2, {{1, 0}, {0, 1}, {1, 3}, {1, 2}}, {"0", "0", "0", "1/3"});
}

inline ToricArrangement example_sec3() {
    return make_arrangement(2, {{-2, 1}, {-32, 21}, {-43, 29}});
}

inline ToricArrangement sec6_delta() { return make_arrangement(2, {{1, 0}, {1, 7}, {2, 7}}); }
inline ToricArrangement sec6_delta_prime() { return make_arrangement(2, {{1, 0}, {2, 7}, {3, 7}}); }

inline ToricArrangement triangle() { return make_arrangement(2, {{1, 0}, {0, 1}, {1, 1}}); }

/// Random centred arrangement with primitive pairwise-distinct columns of
/// full rank; entry range [-5, 5].
inline ToricArrangement random_centred(std::mt19937& rng, int rank, int n) {
    std::uniform_int_distribution<int> dist(-5, 5);
    while (true) {
        IntMatrix cols(rank, n);
        for (auto& e : cols.entries) e = dist(rng);
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            Int c = content(cols.col(j));
            if (c == 0) { ok = false; break; }
            for (int i = 0; i < rank; ++i) cols.at(i, j) /= c;
        }
        if (!ok || rank_int(cols) < rank) continue;
        auto d = ToricArrangement::from_character_matrix(cols);
        try {
            d.validate();
        } catch (...) {
            continue;
        }
        return d;
    }
}

} // namespace support
