#include "toric/normalform.hpp"

#include <algorithm>
#include <numeric>

#include "toric/errors.hpp"

namespace toric {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

Rat rat_determinant(const RatMatrix& a) {
    assert(a.rows == a.cols);
    int n = a.rows;
    if (n == 0) return Rat(1);
    Int den = 1;
    for (const Rat& e : a.entries) den = lcm_int(den, e.get_den());
    IntMatrix scaled(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat v = a.at(i, j) * Rat(den);
            v.canonicalize();
            scaled.at(i, j) = v.get_num();
        }
    Rat d(determinant(scaled));
    for (int i = 0; i < n; ++i) d /= Rat(den);
    return d;
}

} // namespace

std::vector<int> lex_first_basis(const IntMatrix& columns) {
    std::vector<int> basis;
    int r = rank_int(columns);
    for (int j = 0; j < columns.cols && int(basis.size()) < r; ++j) {
        basis.push_back(j);
        if (rank_int(columns.submatrix_cols(basis)) < int(basis.size())) basis.pop_back();
    }
    if (int(basis.size()) < r) throw Infeasible("no basis found");
    return basis;
}

std::vector<int> lex_first_basis(const ArithmeticMatroid& m) {
    std::vector<int> basis;
    uint32_t mask = 0;
    for (int j = 0; j < m.n && int(basis.size()) < m.rank; ++j) {
        uint32_t cand = mask | (uint32_t(1) << j);
        if (m.rk(cand) == int(basis.size()) + 1) {
            mask = cand;
            basis.push_back(j);
        }
    }
    if (int(basis.size()) < m.rank) throw Infeasible("matroid has no basis of full rank");
    return basis;
}

CoordMatrix coordinate_matrix(const IntMatrix& columns, const std::vector<int>& basis) {
    int r = columns.rows, n = columns.cols;
    if (int(basis.size()) != r) throw InvalidInput("basis size must equal the rank");
    RatMatrix mb(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) mb.at(i, j) = Rat(columns.at(i, basis[j]));
    if (rank_rat(mb) < r) throw Infeasible("chosen subset is dependent");
    CoordMatrix cm;
    cm.basis = basis;
    cm.a = RatMatrix(r, n - r);
    int col = 0;
    for (int e = 0; e < n; ++e) {
        if (std::find(basis.begin(), basis.end(), e) != basis.end()) continue;
        std::vector<Rat> rhs(r), x;
        for (int i = 0; i < r; ++i) rhs[i] = Rat(columns.at(i, e));
        solve_exact(mb, rhs, x);
        for (int i = 0; i < r; ++i) cm.a.at(i, col) = x[i];
        ++col;
    }
    return cm;
}

CoordMatrix coordinate_matrix(const ToricArrangement& delta, const std::vector<int>& basis) {
    return coordinate_matrix(delta.character_matrix(), basis);
}

SupportForest maximal_forest(const std::vector<std::vector<bool>>& support) {
    SupportForest f;
    int rows = int(support.size());
    int cols = rows == 0 ? 0 : int(support[0].size());
    UnionFind uf(rows + cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (!support[i][j]) continue;
            f.edges.emplace_back(i, j);
            if (uf.unite(i, rows + j)) f.forest.emplace_back(i, j);
        }
    return f;
}

NormalFormResult normal_form_columns(const IntMatrix& columns, const std::vector<PhaseQZ>& phases) {
    int r = columns.rows, n = columns.cols;
    std::vector<int> basis = lex_first_basis(columns);
    if (int(basis.size()) != r) throw Infeasible("normal form requires an essential arrangement");
    CoordMatrix cm = coordinate_matrix(columns, basis);

    std::vector<int> nonbasis;
    for (int e = 0; e < n; ++e)
        if (std::find(basis.begin(), basis.end(), e) == basis.end()) nonbasis.push_back(e);

    std::vector<std::vector<bool>> support(r, std::vector<bool>(n - r, false));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n - r; ++j) support[i][j] = cm.a.at(i, j) != 0;
    SupportForest forest = maximal_forest(support);

    // node ids: 0..r-1 rows, r..n-1 cols; E-label of a node
    auto node_label = [&](int node) { return node < r ? basis[node] : nonbasis[node - r]; };
    std::vector<std::vector<std::pair<int, int>>> adj(n); // (neighbour node, sign of entry)
    for (auto [i, j] : forest.forest) {
        int s = cm.a.at(i, j) > 0 ? 1 : -1;
        adj[i].push_back({r + j, s});
        adj[r + j].push_back({i, s});
    }

    // eps per node, solved component by component over the forest
    std::vector<int> eps(n, 0);
    for (int start = 0; start < n; ++start) {
        if (eps[start] != 0) continue;
        std::vector<int> component{start};
        eps[start] = 1;
        for (size_t t = 0; t < component.size(); ++t) {
            int u = component[t];
            for (auto [v, s] : adj[u]) {
                if (eps[v] != 0) continue;
                eps[v] = eps[u] * s; // makes eps_u * eps_v * sign(a) = +1
                component.push_back(v);
            }
        }
        // pin the residual global sign: the lowest-index character of the
        // component must have positive first nonzero entry
        int le = n, le_node = -1;
        for (int u : component)
            if (node_label(u) < le) { le = node_label(u); le_node = u; }
        for (int i = 0; i < r; ++i) {
            const Int& v = columns.at(i, le);
            if (v == 0) continue;
            if ((v > 0 ? 1 : -1) * eps[le_node] < 0)
                for (int u : component) eps[u] = -eps[u];
            break;
        }
    }

    NormalFormResult res;
    res.signs.assign(n, 1);
    for (int node = 0; node < n; ++node) res.signs[node_label(node)] = eps[node];

    IntMatrix cols_out = columns;
    std::vector<PhaseQZ> phases_out = phases;
    for (int e = 0; e < n; ++e) {
        if (res.signs[e] == 1) continue;
        cols_out.negate_col(e);
        if (!phases_out.empty()) phases_out[e] = -phases_out[e];
    }
    res.arrangement = ToricArrangement::from_character_matrix(cols_out, phases_out);
    res.coord.basis = basis;
    res.coord.a = RatMatrix(r, n - r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n - r; ++j)
            res.coord.a.at(i, j) = Rat(eps[i] * eps[r + j]) * cm.a.at(i, j);
    return res;
}

NormalFormResult to_normal_form(const ToricArrangement& delta) {
    ClassifyFlags f = classify(delta);
    if (!f.essential) throw Infeasible("normal form requires an essential arrangement");
    if (!f.primitive) throw Infeasible("normal form requires a primitive arrangement");
    std::vector<PhaseQZ> phases;
    for (const auto& h : delta.hypertori) phases.push_back(h.phase);
    return normal_form_columns(delta.character_matrix(), phases);
}

Rat abs_minor_from_multiplicity(const ArithmeticMatroid& m, const std::vector<int>& basis,
                                const std::vector<int>& i_rows, const std::vector<int>& j_cols) {
    if (i_rows.size() != j_cols.size()) throw InvalidInput("|I| must equal |J|");
    uint32_t mask = 0;
    for (int b : basis) mask |= uint32_t(1) << b;
    for (int b : i_rows) mask &= ~(uint32_t(1) << b);
    for (int j : j_cols) mask |= uint32_t(1) << j;
    if (m.rk(mask) < m.rank) return Rat(0);
    uint32_t bmask = 0;
    for (int b : basis) bmask |= uint32_t(1) << b;
    Rat v(m.m(mask), m.m(bmask));
    v.canonicalize();
    return v;
}

namespace {

struct SignContext {
    const ArithmeticMatroid* m;
    const std::vector<int>* basis;    // E-labels of rows
    const std::vector<int>* nonbasis; // E-labels of cols
    const RatMatrix* absval;          // |a|
};

// Sign of the product of the entries along an alternating cycle
// (nodes: even positions are rows, odd are cols).  Determined by |minors|.
int cycle_product_sign(const SignContext& ctx, const std::vector<int>& nodes);

int chordless_cycle_sign(const SignContext& ctx, const std::vector<int>& nodes) {
    const int L = int(nodes.size());
    const int r = int(ctx.basis->size());
    const int k = L / 2;
    // |p| and |q|: the two matchings given by alternating edges of the cycle
    Rat p(1), q(1);
    for (int t = 0; t < L; ++t) {
        int u = nodes[t], v = nodes[(t + 1) % L];
        int i = u < r ? u : v;
        int j = (u < r ? v : u) - r;
        (t % 2 == 0 ? p : q) *= ctx.absval->at(i, j);
    }
    std::vector<int> ilab, jlab;
    for (int u : nodes)
        (u < r ? ilab : jlab).push_back(u < r ? (*ctx.basis)[u] : (*ctx.nonbasis)[u - r]);
    std::sort(ilab.begin(), ilab.end());
    std::sort(jlab.begin(), jlab.end());
    Rat det = abs_minor_from_multiplicity(*ctx.m, *ctx.basis, ilab, jlab);
    // det = s1*p + s2*q with s1*s2 the sign of a k-cycle, (-1)^(k-1)
    int sigma = (k % 2 == 1) ? 1 : -1;
    Rat sum = p + q, diff = rat_abs(p - q);
    if (det == sum && det != diff) return sigma;
    if (det == diff && det != sum) return -sigma;
    throw Infeasible("not representable with this data: ambiguous cycle minor");
}

int cycle_product_sign(const SignContext& ctx, const std::vector<int>& nodes) {
    int L = int(nodes.size());
    int r = int(ctx.basis->size());
    // look for a chord
    for (int a = 0; a < L; ++a) {
        if (nodes[a] >= r) continue; // row nodes sit at even positions anyway
        for (int b = 0; b < L; ++b) {
            if (nodes[b] < r) continue;
            bool adjacent = (b == (a + 1) % L) || (a == (b + 1) % L);
            if (adjacent) continue;
            int i = nodes[a], j = nodes[b] - r;
            if (ctx.absval->at(i, j) == 0) continue;
            // split along the chord into two shorter alternating cycles
            std::vector<int> arc1, arc2;
            for (int t = a;; t = (t + 1) % L) {
                arc1.push_back(nodes[t]);
                if (t == b) break;
            }
            for (int t = b;; t = (t + 1) % L) {
                arc2.push_back(nodes[t]);
                if (t == a) break;
            }
            return cycle_product_sign(ctx, arc1) * cycle_product_sign(ctx, arc2);
        }
    }
    return chordless_cycle_sign(ctx, nodes);
}

} // namespace

CoordMatrix reconstruct_matrix(const ArithmeticMatroid& m) {
    if (!m.torsion_free()) throw Infeasible("reconstruction requires a torsion-free matroid");
    std::vector<int> basis = lex_first_basis(m);
    int r = m.rank, n = m.n;
    std::vector<int> nonbasis;
    for (int e = 0; e < n; ++e)
        if (std::find(basis.begin(), basis.end(), e) == basis.end()) nonbasis.push_back(e);

    RatMatrix absval(r, n - r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n - r; ++j)
            absval.at(i, j) = abs_minor_from_multiplicity(m, basis, {basis[i]}, {nonbasis[j]});

    std::vector<std::vector<bool>> support(r, std::vector<bool>(n - r, false));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n - r; ++j) support[i][j] = absval.at(i, j) != 0;
    SupportForest forest = maximal_forest(support);

    // forest adjacency for fundamental cycles
    std::vector<std::vector<int>> adj(n);
    std::vector<std::vector<bool>> in_forest(r, std::vector<bool>(n - r, false));
    for (auto [i, j] : forest.forest) {
        in_forest[i][j] = true;
        adj[i].push_back(r + j);
        adj[r + j].push_back(i);
    }

    SignContext ctx{&m, &basis, &nonbasis, &absval};
    CoordMatrix cm;
    cm.basis = basis;
    cm.a = absval; // forest entries positive, others fixed below
    for (auto [i, j] : forest.edges) {
        if (in_forest[i][j]) continue;
        // forest path from row node i to col node r+j
        std::vector<int> parent(n, -2);
        parent[i] = -1;
        std::vector<int> queue{i};
        for (size_t t = 0; t < queue.size() && parent[r + j] == -2; ++t)
            for (int v : adj[queue[t]])
                if (parent[v] == -2) {
                    parent[v] = queue[t];
                    queue.push_back(v);
                }
        if (parent[r + j] == -2) throw Infeasible("support forest is not spanning");
        std::vector<int> path;
        for (int v = r + j; v != -1; v = parent[v]) path.push_back(v);
        std::reverse(path.begin(), path.end()); // i ... r+j; closing edge is (i,j)
        int s = cycle_product_sign(ctx, path);
        // all path edges are forest edges carrying positive entries
        if (s < 0) cm.a.at(i, j) = -cm.a.at(i, j);
    }

    // verification of every square minor against the multiplicity data
    for (int k = 1; k <= std::min(r, n - r); ++k)
        for (const auto& ri : subsets_of_size(r, k))
            for (const auto& ci : subsets_of_size(n - r, k)) {
                RatMatrix sub(k, k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub.at(i, j) = cm.a.at(ri[i], ci[j]);
                std::vector<int> ilab, jlab;
                for (int i : ri) ilab.push_back(basis[i]);
                for (int j : ci) jlab.push_back(nonbasis[j]);
                if (rat_abs(rat_determinant(sub)) != abs_minor_from_multiplicity(m, basis, ilab, jlab))
                    throw Infeasible("not representable with this data");
            }
    return cm;
}

IntMatrix reconstruct_representation(const ArithmeticMatroid& m) {
    if (!m.surjective()) throw Infeasible("reconstruction of a representation requires m(E) = 1");
    CoordMatrix cm = reconstruct_matrix(m);
    int r = m.rank, n = m.n;

    // full rational column list (id_r | a) arranged back into E order
    RatMatrix cols(r, n);
    int bpos = 0, cpos = 0;
    for (int e = 0; e < n; ++e) {
        if (bpos < r && cm.basis[bpos] == e) {
            cols.at(bpos, e) = 1;
            ++bpos;
        } else {
            for (int i = 0; i < r; ++i) cols.at(i, e) = cm.a.at(i, cpos);
            ++cpos;
        }
    }
    Int den = 1;
    for (const Rat& v : cols.entries) den = lcm_int(den, v.get_den());
    IntMatrix rows(n, r);
    for (int e = 0; e < n; ++e)
        for (int i = 0; i < r; ++i) {
            Rat v = cols.at(i, e) * Rat(den);
            v.canonicalize();
            rows.at(e, i) = v.get_num();
        }
    Lattice gamma = Lattice::from_rows(rows, den);
    if (gamma.rank() != r) throw Infeasible("reconstructed span is not full rank");

    IntMatrix x(r, n);
    for (int e = 0; e < n; ++e) {
        std::vector<Rat> v(r);
        for (int i = 0; i < r; ++i) v[i] = cols.at(i, e);
        auto coords = lattice_coords(gamma, v);
        if (!coords) throw Infeasible("reconstructed column escapes its lattice");
        for (int i = 0; i < r; ++i) x.at(i, e) = (*coords)[i];
    }
    if (!(arithmetic_matroid(x) == m)) throw Infeasible("not representable with this data");
    return x;
}

std::vector<CharacterRelation> character_relations(const ToricArrangement& delta) {
    if (!classify(delta).essential) throw Infeasible("relations require an essential arrangement");
    std::vector<CharacterRelation> out;
    IntMatrix cols = delta.character_matrix();
    for (const auto& c : circuits(delta)) {
        Lattice ker = kernel_lattice(cols.submatrix_cols(c));
        if (ker.rank() != 1) throw Infeasible("circuit kernel is not one-dimensional");
        std::vector<Int> w = ker.hnf_basis.row(0);
        if (w[0] < 0)
            for (Int& v : w) v = -v;
        CharacterRelation rel;
        rel.support = c;
        for (const Int& v : w) {
            rel.signs.push_back(v > 0 ? 1 : -1);
            rel.coeffs.push_back(abs(v));
        }
        out.push_back(std::move(rel));
    }
    return out;
}

std::optional<EquivalenceWitness> representations_equivalent(const IntMatrix& x,
                                                             const IntMatrix& x_prime) {
    if (x.rows != x_prime.rows || x.cols != x_prime.cols)
        throw InvalidInput("representations must share their shape");
    int r = x.rows, n = x.cols;
    if (rank_int(x) != r || rank_int(x_prime) != r)
        throw InvalidInput("representations must have full row rank");

    NormalFormResult nx = normal_form_columns(x, {});
    NormalFormResult nxp = normal_form_columns(x_prime, {});
    if (nx.coord.basis != nxp.coord.basis || !(nx.coord.a == nxp.coord.a)) return std::nullopt;

    // support components of the coordinate matrix; one free sign each
    std::vector<int> nonbasis;
    for (int e = 0; e < n; ++e)
        if (std::find(nx.coord.basis.begin(), nx.coord.basis.end(), e) == nx.coord.basis.end())
            nonbasis.push_back(e);
    UnionFind uf(n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n - r; ++j)
            if (nx.coord.a.at(i, j) != 0) uf.unite(i, r + j);
    std::vector<int> comp_root, comp_of(n);
    auto node_label = [&](int node) {
        return node < r ? nx.coord.basis[node] : nonbasis[node - r];
    };
    for (int u = 0; u < n; ++u) {
        int root = uf.find(u);
        auto it = std::find(comp_root.begin(), comp_root.end(), root);
        if (it == comp_root.end()) {
            comp_of[u] = int(comp_root.size());
            comp_root.push_back(root);
        } else {
            comp_of[u] = int(it - comp_root.begin());
        }
    }
    int ncomp = int(comp_root.size());
    if (ncomp > 20) throw BudgetExceeded("too many support components");

    IntMatrix xb = nx.arrangement.character_matrix();
    IntMatrix xpb = nxp.arrangement.character_matrix();
    RatMatrix basis_x(r, r), basis_xp(r, r);
    for (int i = 0; i < r; ++i)
        for (int t = 0; t < r; ++t) {
            basis_x.at(i, t) = Rat(xb.at(i, nx.coord.basis[t]));
            basis_xp.at(i, t) = Rat(xpb.at(i, nx.coord.basis[t]));
        }

    for (uint32_t pattern = 0; pattern < (uint32_t(1) << ncomp); ++pattern) {
        std::vector<int> delta(n, 1);
        for (int node = 0; node < n; ++node)
            if (pattern & (uint32_t(1) << comp_of[node])) delta[node_label(node)] = -1;
        // G = Xp_B * (X_B * diag)^{-1} on the basis columns, then verify all
        RatMatrix xd = basis_x;
        for (int t = 0; t < r; ++t)
            if (delta[nx.coord.basis[t]] == -1)
                for (int i = 0; i < r; ++i) xd.at(i, t) = -xd.at(i, t);
        RatMatrix g;
        try {
            g = basis_xp * inverse(xd);
        } catch (const Infeasible&) {
            continue;
        }
        IntMatrix gi(r, r);
        bool integral = true;
        for (int i = 0; i < r && integral; ++i)
            for (int j = 0; j < r; ++j) {
                if (g.at(i, j).get_den() != 1) { integral = false; break; }
                gi.at(i, j) = g.at(i, j).get_num();
            }
        if (!integral) continue;
        Int det = determinant(gi);
        if (det != 1 && det != -1) continue;
        IntMatrix moved = gi * xb;
        bool match = true;
        for (int e = 0; e < n && match; ++e)
            for (int i = 0; i < r; ++i)
                if (moved.at(i, e) * delta[e] != xpb.at(i, e)) { match = false; break; }
        if (!match) continue;

        EquivalenceWitness w;
        w.g = gi;
        w.signs.resize(n);
        for (int e = 0; e < n; ++e) w.signs[e] = nx.signs[e] * delta[e] * nxp.signs[e];
        // canonical sign: first nonzero entry of G positive
        for (const Int& v : w.g.entries) {
            if (v == 0) continue;
            if (v < 0) {
                for (Int& u : w.g.entries) u = -u;
                for (int& s : w.signs) s = -s;
            }
            break;
        }
        return w;
    }
    return std::nullopt;
}

} // namespace toric
