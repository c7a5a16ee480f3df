#include "toric/matrix.hpp"

#include "toric/errors.hpp"

namespace toric {

IntMatrix::IntMatrix(int r, int c, std::initializer_list<long> vals) : IntMatrix(r, c) {
    assert(int(vals.size()) == r * c);
    size_t k = 0;
    for (long v : vals) entries[k++] = v;
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rws) {
    if (rws.empty()) return IntMatrix(0, 0);
    IntMatrix m(int(rws.size()), int(rws[0].size()));
    for (int i = 0; i < m.rows; ++i) {
        assert(int(rws[i].size()) == m.cols);
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rws[i][j];
    }
    return m;
}

std::vector<Int> IntMatrix::row(int i) const {
    return std::vector<Int>(entries.begin() + size_t(i) * cols, entries.begin() + size_t(i + 1) * cols);
}

std::vector<Int> IntMatrix::col(int j) const {
    std::vector<Int> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::submatrix_cols(const std::vector<int>& idx) const {
    IntMatrix m(rows, int(idx.size()));
    for (int i = 0; i < rows; ++i)
        for (size_t j = 0; j < idx.size(); ++j) m.at(i, int(j)) = at(i, idx[j]);
    return m;
}

IntMatrix IntMatrix::submatrix(const std::vector<int>& ri, const std::vector<int>& ci) const {
    IntMatrix m(int(ri.size()), int(ci.size()));
    for (size_t i = 0; i < ri.size(); ++i)
        for (size_t j = 0; j < ci.size(); ++j) m.at(int(i), int(j)) = at(ri[i], ci[j]);
    return m;
}

bool IntMatrix::operator<(const IntMatrix& o) const {
    if (rows != o.rows) return rows < o.rows;
    if (cols != o.cols) return cols < o.cols;
    for (size_t k = 0; k < entries.size(); ++k) {
        int c = cmp(entries[k], o.entries[k]);
        if (c != 0) return c < 0;
    }
    return false;
}

void IntMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < cols; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < rows; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::negate_row(int i) {
    for (int k = 0; k < cols; ++k) at(i, k) = -at(i, k);
}

void IntMatrix::negate_col(int j) {
    for (int k = 0; k < rows; ++k) at(k, j) = -at(k, j);
}

void IntMatrix::addmul_row(int i, int j, const Int& k) {
    for (int c = 0; c < cols; ++c) at(i, c) += k * at(j, c);
}

void IntMatrix::addmul_col(int i, int j, const Int& k) {
    for (int r = 0; r < rows; ++r) at(r, i) += k * at(r, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    assert(a.cols == b.rows);
    IntMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

std::vector<Int> mat_vec(const IntMatrix& a, const std::vector<Int>& v) {
    assert(int(v.size()) == a.cols);
    std::vector<Int> r(a.rows, Int(0));
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r[i] += a.at(i, j) * v[j];
    return r;
}

std::vector<Int> vec_mat(const std::vector<Int>& v, const IntMatrix& a) {
    assert(int(v.size()) == a.rows);
    std::vector<Int> r(a.cols, Int(0));
    for (int i = 0; i < a.rows; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < a.cols; ++j) r[j] += v[i] * a.at(i, j);
    }
    return r;
}

Int determinant(const IntMatrix& m) {
    assert(m.rows == m.cols);
    int n = m.rows;
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

RatMatrix RatMatrix::from_int(const IntMatrix& m) {
    RatMatrix r(m.rows, m.cols);
    for (size_t k = 0; k < m.entries.size(); ++k) r.entries[k] = Rat(m.entries[k]);
    return r;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    assert(a.cols == b.rows);
    RatMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

int rank_rat(RatMatrix m) {
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
        for (int i = r + 1; i < m.rows; ++i) {
            if (m.at(i, c) == 0) continue;
            Rat f = m.at(i, c) / m.at(r, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return r;
}

int rank_int(const IntMatrix& m) { return rank_rat(RatMatrix::from_int(m)); }

bool solve_exact(const RatMatrix& a, const std::vector<Rat>& b, std::vector<Rat>& x) {
    assert(int(b.size()) == a.rows);
    // Gaussian elimination on the augmented matrix.
    RatMatrix m(a.rows, a.cols + 1);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
        m.at(i, a.cols) = b[i];
    }
    std::vector<int> pivot_col(a.rows, -1);
    int r = 0;
    for (int c = 0; c < a.cols && r < a.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j <= a.cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c) / m.at(r, c);
            for (int j = c; j <= a.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivot_col[r] = c;
        ++r;
    }
    for (int i = r; i < m.rows; ++i)
        if (m.at(i, a.cols) != 0) return false;
    x.assign(a.cols, Rat(0));
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = m.at(i, a.cols) / m.at(i, pivot_col[i]);
    return true;
}

RatMatrix inverse(const RatMatrix& a) {
    if (a.rows != a.cols) throw Infeasible("inverse of non-square matrix");
    int n = a.rows;
    RatMatrix m = a, inv(n, n);
    for (int i = 0; i < n; ++i) inv.at(i, i) = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) throw Infeasible("singular matrix");
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(c, j), m.at(piv, j));
                std::swap(inv.at(c, j), inv.at(piv, j));
            }
        Rat d = m.at(c, c);
        for (int j = 0; j < n; ++j) { m.at(c, j) /= d; inv.at(c, j) /= d; }
        for (int i = 0; i < n; ++i) {
            if (i == c || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (int j = 0; j < n; ++j) {
                m.at(i, j) -= f * m.at(c, j);
                inv.at(i, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

} // namespace toric
