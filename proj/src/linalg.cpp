#include "wondertope/linalg.hpp"

#include <algorithm>
#include <functional>

namespace wt {

std::vector<size_t> rref(MatQ& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.ncols() && r < m.nrows(); ++c) {
        size_t p = r;
        while (p < m.nrows() && m[p][c] == 0) ++p;
        if (p == m.nrows()) continue;
        std::swap(m.rows[p], m.rows[r]);
        Rat inv = m[r][c];
        for (auto& x : m[r]) x /= inv;
        for (size_t i = 0; i < m.nrows(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = 0; j < m.ncols(); ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t rank(MatQ m) { return rref(m).size(); }

Rat det(MatQ m) {
    if (m.nrows() != m.ncols()) throw error("determinant of non-square matrix");
    size_t n = m.nrows();
    Rat d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m.rows[p], m.rows[c]);
            d = -d;
        }
        d *= m[c][c];
        Rat inv = m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / inv;
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return d;
}

std::optional<VecQ> solve(const MatQ& a, const VecQ& b) {
    MatQ aug = a;
    for (size_t i = 0; i < aug.nrows(); ++i) aug[i].push_back(b[i]);
    auto pivots = rref(aug);
    size_t n = a.ncols();
    // Inconsistent when a pivot lands in the augmented column.
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    VecQ x(n, Rat(0));
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug[k][n];
    return x;
}

std::vector<VecQ> nullspace(const MatQ& a) {
    MatQ m = a;
    auto pivots = rref(m);
    size_t n = a.ncols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<VecQ> basis;
    for (size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        VecQ v(n, Rat(0));
        v[f] = 1;
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][f];
        basis.push_back(v);
    }
    return basis;
}

VecQ add(const VecQ& a, const VecQ& b) {
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

VecQ sub(const VecQ& a, const VecQ& b) {
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

VecQ scale(const VecQ& a, const Rat& c) {
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

Rat dot(const VecQ& a, const VecQ& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const VecQ& a) {
    return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
}

VecQ primitive_vector(const VecQ& v) {
    mpz_class g = 0, l = 1, t;
    for (auto& x : v) {
        mpz_class num = abs(x.get_num());
        mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
        g = t;
        mpz_class den = x.get_den();
        mpz_lcm(t.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        l = t;
    }
    if (g == 0) return v;
    Rat c(g, l);
    c.canonicalize();
    VecQ r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / c;
    return r;
}

namespace {

void subsets(size_t n, size_t k, std::vector<size_t>& cur, size_t start,
             const std::function<bool(const std::vector<size_t>&)>& f, bool& done) {
    if (done) return;
    if (cur.size() == k) {
        if (f(cur)) done = true;
        return;
    }
    for (size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, cur, i + 1, f, done);
        cur.pop_back();
        if (done) return;
    }
}

bool try_subsets(size_t n, size_t kmax, const std::function<bool(const std::vector<size_t>&)>& f) {
    bool done = false;
    std::vector<size_t> cur;
    for (size_t k = 0; k <= kmax && !done; ++k) subsets(n, k, cur, 0, f, done);
    return done;
}

}  // namespace

bool in_cone(const VecQ& v, const std::vector<VecQ>& rays) {
    if (is_zero(v)) return true;
    if (rays.empty()) return false;
    size_t dim = v.size();
    return try_subsets(rays.size(), dim, [&](const std::vector<size_t>& idx) {
        if (idx.empty()) return false;
        MatQ a(dim, idx.size());
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < idx.size(); ++j) a[i][j] = rays[idx[j]][i];
        // Independent subsets only, so coefficients are determined (Caratheodory).
        if (rank(a) != idx.size()) return false;
        auto lam = solve(a, v);
        if (!lam) return false;
        return std::all_of(lam->begin(), lam->end(), [](const Rat& x) { return x >= 0; });
    });
}

bool cone_is_pointed(const std::vector<VecQ>& rays) {
    if (rays.empty()) return true;
    size_t dim = rays[0].size();
    // Pointed iff 0 is not in the convex hull of the rays.
    bool zero_in_hull = try_subsets(rays.size(), dim + 1, [&](const std::vector<size_t>& idx) {
        if (idx.empty()) return false;
        MatQ a(dim + 1, idx.size());
        for (size_t j = 0; j < idx.size(); ++j) {
            for (size_t i = 0; i < dim; ++i) a[i][j] = rays[idx[j]][i];
            a[dim][j] = 1;
        }
        if (rank(a) != idx.size()) return false;
        VecQ b(dim + 1, Rat(0));
        b[dim] = 1;
        auto lam = solve(a, b);
        if (!lam) return false;
        return std::all_of(lam->begin(), lam->end(), [](const Rat& x) { return x >= 0; });
    });
    return !zero_in_hull;
}

}  // namespace wt
