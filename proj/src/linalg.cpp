#include "cohgate/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace cohgate {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            int64_t x = (*this)(i, k);
            if (!x) continue;
            for (std::size_t j = 0; j < o.cols; ++j) {
                int64_t p, s;
                if (__builtin_mul_overflow(x, o(k, j), &p) || __builtin_add_overflow(r(i, j), p, &s))
                    throw OverflowError();
                r(i, j) = s;
            }
        }
    return r;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](int64_t x) { return x == 0; });
}

IntMatrix SparseMatrix::dense() const {
    IntMatrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (auto [i, v] : col[j]) m(i, j) += v;
    return m;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols, rows);
    for (std::size_t j = 0; j < cols; ++j)
        for (auto [i, v] : col[j]) t.col[i].push_back({(int32_t)j, v});
    return t;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
    if (cols != other.rows) throw std::invalid_argument("matrix shape mismatch");
    SparseMatrix r(rows, other.cols);
    std::vector<int64_t> acc(rows, 0);
    std::vector<int32_t> touched;
    for (std::size_t j = 0; j < other.cols; ++j) {
        touched.clear();
        for (auto [k, v] : other.col[j])
            for (auto [i, w] : col[k]) {
                if (acc[i] == 0) touched.push_back(i);
                acc[i] += v * w;
            }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (int32_t i : touched) {
            if (acc[i] != 0) r.col[j].push_back({i, acc[i]});
            acc[i] = 0;
        }
    }
    return r;
}

bool SparseMatrix::is_zero() const {
    for (const auto& c : col)
        for (auto [i, v] : c)
            if (v != 0) return false;
    return true;
}

int64_t mod(int64_t x, int64_t m) {
    int64_t r = x % m;
    return r < 0 ? r + m : r;
}

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a, b); }
int64_t lcm64(int64_t a, int64_t b) { return std::lcm(a, b); }

int64_t inv_mod(int64_t a, int64_t m) {
    int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1) {
        int64_t q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw std::invalid_argument("element not invertible");
    return mod(x, m);
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

inline void chk_add(int64_t a, int64_t b, int64_t& r) {
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
}
inline void chk_mul(int64_t a, int64_t b, int64_t& r) {
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
}
inline void chk_add(const BigInt& a, const BigInt& b, BigInt& r) { r = a + b; }
inline void chk_mul(const BigInt& a, const BigInt& b, BigInt& r) { r = a * b; }

template <class T>
T absval(const T& x) {
    return x < 0 ? T(-x) : x;
}

template <class T>
struct Mat {
    std::size_t r, c;
    std::vector<T> a;
    Mat(std::size_t r_, std::size_t c_) : r(r_), c(c_), a(r_ * c_, T(0)) {}
    T& at(std::size_t i, std::size_t j) { return a[i * c + j]; }
    const T& at(std::size_t i, std::size_t j) const { return a[i * c + j]; }
    static Mat eye(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    // row i += q * row j
    void row_axpy(std::size_t i, std::size_t j, const T& q) {
        for (std::size_t k = 0; k < c; ++k) {
            if (at(j, k) == 0) continue;
            T p, s;
            chk_mul(q, at(j, k), p);
            chk_add(at(i, k), p, s);
            at(i, k) = s;
        }
    }
    void col_axpy(std::size_t i, std::size_t j, const T& q) {
        for (std::size_t k = 0; k < r; ++k) {
            if (at(k, j) == 0) continue;
            T p, s;
            chk_mul(q, at(k, j), p);
            chk_add(at(k, i), p, s);
            at(k, i) = s;
        }
    }
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < c; ++k) std::swap(at(i, k), at(j, k));
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < r; ++k) std::swap(at(k, i), at(k, j));
    }
    void row_neg(std::size_t i) {
        for (std::size_t k = 0; k < c; ++k) at(i, k) = -at(i, k);
    }
    void col_neg(std::size_t i) {
        for (std::size_t k = 0; k < r; ++k) at(k, i) = -at(k, i);
    }
};

template <class T>
struct SnfState {
    Mat<T> M;
    bool tr;
    Mat<T> U, Ui, V, Vi;

    SnfState(Mat<T> m, bool t)
        : M(std::move(m)), tr(t), U(t ? M.r : 0, t ? M.r : 0), Ui(U), V(t ? M.c : 0, t ? M.c : 0), Vi(V) {
        if (tr) {
            U = Mat<T>::eye(M.r);
            Ui = U;
            V = Mat<T>::eye(M.c);
            Vi = V;
        }
    }
    void row_axpy(std::size_t i, std::size_t j, const T& q) {
        M.row_axpy(i, j, q);
        if (tr) {
            U.row_axpy(i, j, q);
            Ui.col_axpy(j, i, T(-q));
        }
    }
    void col_axpy(std::size_t i, std::size_t j, const T& q) {
        M.col_axpy(i, j, q);
        if (tr) {
            V.col_axpy(i, j, q);
            Vi.row_axpy(j, i, T(-q));
        }
    }
    void row_swap(std::size_t i, std::size_t j) {
        M.row_swap(i, j);
        if (tr) {
            U.row_swap(i, j);
            Ui.col_swap(i, j);
        }
    }
    void col_swap(std::size_t i, std::size_t j) {
        M.col_swap(i, j);
        if (tr) {
            V.col_swap(i, j);
            Vi.row_swap(i, j);
        }
    }
    void row_neg(std::size_t i) {
        M.row_neg(i);
        if (tr) {
            U.row_neg(i);
            Ui.col_neg(i);
        }
    }

    std::vector<T> run() {
        std::vector<T> f;
        std::size_t n = std::min(M.r, M.c);
        for (std::size_t t = 0; t < n; ++t) {
            // Smallest nonzero entry of the trailing block as pivot.
            bool found = false;
            std::size_t pi = 0, pj = 0;
            T best = 0;
            for (std::size_t i = t; i < M.r; ++i)
                for (std::size_t j = t; j < M.c; ++j) {
                    const T& x = M.at(i, j);
                    if (x != 0 && (!found || absval(x) < best)) {
                        found = true;
                        best = absval(x);
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) break;
            row_swap(t, pi);
            col_swap(t, pj);
            for (;;) {
                bool dirty = false;
                for (std::size_t i = t + 1; i < M.r && !dirty; ++i) {
                    if (M.at(i, t) == 0) continue;
                    T q = M.at(i, t) / M.at(t, t);
                    if (q != 0) row_axpy(i, t, T(-q));
                    if (M.at(i, t) != 0) {
                        row_swap(i, t);
                        dirty = true;
                    }
                }
                if (dirty) continue;
                for (std::size_t j = t + 1; j < M.c && !dirty; ++j) {
                    if (M.at(t, j) == 0) continue;
                    T q = M.at(t, j) / M.at(t, t);
                    if (q != 0) col_axpy(j, t, T(-q));
                    if (M.at(t, j) != 0) {
                        col_swap(j, t);
                        dirty = true;
                    }
                }
                if (dirty) continue;
                // Divisibility of the trailing block by the pivot.
                for (std::size_t i = t + 1; i < M.r && !dirty; ++i)
                    for (std::size_t j = t + 1; j < M.c; ++j)
                        if (M.at(i, j) % M.at(t, t) != 0) {
                            row_axpy(t, i, T(1));
                            dirty = true;
                            break;
                        }
                if (!dirty) break;
            }
            if (M.at(t, t) < 0) row_neg(t);
            f.push_back(M.at(t, t));
        }
        return f;
    }
};

template <class T>
Mat<T> to_mat(const IntMatrix& A) {
    Mat<T> m(A.rows, A.cols);
    for (std::size_t i = 0; i < A.a.size(); ++i) m.a[i] = A.a[i];
    return m;
}

std::optional<IntMatrix> to_int(const Mat<int64_t>& m) {
    IntMatrix r(m.r, m.c);
    r.a = m.a;
    return r;
}

std::optional<IntMatrix> to_int(const Mat<BigInt>& m) {
    IntMatrix r(m.r, m.c);
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        if (m.a[i] > std::numeric_limits<int64_t>::max() || m.a[i] < std::numeric_limits<int64_t>::min())
            return std::nullopt;
        r.a[i] = static_cast<int64_t>(m.a[i]);
    }
    return r;
}

template <class T>
SmithDecomposition snf_impl(const IntMatrix& A, bool transforms) {
    SnfState<T> s(to_mat<T>(A), transforms);
    auto f = s.run();
    SmithDecomposition d;
    d.rows = A.rows;
    d.cols = A.cols;
    for (auto& x : f) d.factors.push_back(BigInt(x));
    d.used_bigint = std::is_same_v<T, BigInt>;
    if (transforms) {
        auto U = to_int(s.U), Ui = to_int(s.Ui), V = to_int(s.V), Vi = to_int(s.Vi);
        if (U && Ui && V && Vi) {
            d.U = U;
            d.Uinv = Ui;
            d.V = V;
            d.Vinv = Vi;
        }
    }
    return d;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& A, bool transforms) {
    try {
        return snf_impl<int64_t>(A, transforms);
    } catch (const OverflowError&) {
        return snf_impl<BigInt>(A, transforms);
    }
}

SmithDecomposition smith_normal_form_bigint(const IntMatrix& A, bool transforms) {
    return snf_impl<BigInt>(A, transforms);
}

bool ModpEchelon::add(std::vector<int64_t> v) {
    v = reduce(std::move(v));
    std::size_t piv = 0;
    while (piv < cols && v[piv] == 0) ++piv;
    if (piv == cols) return false;
    int64_t s = inv_mod(v[piv], p);
    for (auto& x : v) x = x * s % p;
    // Keep rows fully reduced so coordinates stay cheap.
    for (auto& r : rows)
        if (r[piv]) {
            int64_t c = r[piv];
            for (std::size_t k = 0; k < cols; ++k) r[k] = mod(r[k] - c * v[k], p);
        }
    rows.push_back(std::move(v));
    pivots.push_back(piv);
    return true;
}

std::vector<int64_t> ModpEchelon::reduce(std::vector<int64_t> v) const {
    for (auto& x : v) x = mod(x, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        int64_t c = v[pivots[r]];
        if (!c) continue;
        const auto& row = rows[r];
        for (std::size_t k = 0; k < cols; ++k)
            if (row[k]) v[k] = mod(v[k] - c * row[k], p);
    }
    return v;
}

bool ModpEchelon::contains(const std::vector<int64_t>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](int64_t x) { return x == 0; });
}

std::optional<std::vector<int64_t>> ModpEchelon::coordinates(const std::vector<int64_t>& v) const {
    std::vector<int64_t> c(rows.size(), 0);
    std::vector<int64_t> w(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) w[k] = mod(v[k], p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        c[r] = w[pivots[r]];
        if (!c[r]) continue;
        for (std::size_t k = 0; k < cols; ++k)
            if (rows[r][k]) w[k] = mod(w[k] - c[r] * rows[r][k], p);
    }
    if (!std::all_of(w.begin(), w.end(), [](int64_t x) { return x == 0; })) return std::nullopt;
    return c;
}

std::size_t rank_mod_p(const IntMatrix& A, int64_t p) {
    ModpEchelon e(p, A.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        e.add(std::vector<int64_t>(A.a.begin() + i * A.cols, A.a.begin() + (i + 1) * A.cols));
    return e.rank();
}

std::vector<std::vector<int64_t>> kernel_mod_p(const IntMatrix& A, int64_t p) {
    ModpEchelon e(p, A.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        e.add(std::vector<int64_t>(A.a.begin() + i * A.cols, A.a.begin() + (i + 1) * A.cols));
    std::vector<char> is_piv(A.cols, 0);
    for (auto pv : e.pivots) is_piv[pv] = 1;
    std::vector<std::vector<int64_t>> ker;
    for (std::size_t f = 0; f < A.cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<int64_t> x(A.cols, 0);
        x[f] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) x[e.pivots[r]] = mod(-e.rows[r][f], p);
        ker.push_back(std::move(x));
    }
    return ker;
}

std::vector<std::vector<int64_t>> kernel_mod_p(const SparseMatrix& A, int64_t p) {
    return kernel_mod_p(A.dense(), p);
}

BigInt ModuleBasis::order() const {
    BigInt o = 1;
    for (auto x : orders) o *= x;
    return o;
}

namespace {

int64_t mulmod(int64_t a, int64_t b, int64_t N) { return (int64_t)((__int128)a * b % N); }

struct ModMat {
    std::size_t r, c;
    int64_t N;
    std::vector<int64_t> a;
    ModMat(std::size_t r_, std::size_t c_, int64_t N_) : r(r_), c(c_), N(N_), a(r_ * c_, 0) {}
    int64_t& at(std::size_t i, std::size_t j) { return a[i * c + j]; }
    int64_t at(std::size_t i, std::size_t j) const { return a[i * c + j]; }
    static ModMat eye(std::size_t n, int64_t N) {
        ModMat m(n, n, N);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % N;
        return m;
    }
    // (row i, row j) <- (p ri + q rj, s ri + t rj)
    void rows2(std::size_t i, std::size_t j, int64_t p, int64_t q, int64_t s, int64_t t) {
        for (std::size_t k = 0; k < c; ++k) {
            int64_t x = at(i, k), y = at(j, k);
            if (!x && !y) continue;
            at(i, k) = mod(mulmod(p, x, N) + mulmod(q, y, N), N);
            at(j, k) = mod(mulmod(s, x, N) + mulmod(t, y, N), N);
        }
    }
    void cols2(std::size_t i, std::size_t j, int64_t p, int64_t q, int64_t s, int64_t t) {
        for (std::size_t k = 0; k < r; ++k) {
            int64_t x = at(k, i), y = at(k, j);
            if (!x && !y) continue;
            at(k, i) = mod(mulmod(p, x, N) + mulmod(q, y, N), N);
            at(k, j) = mod(mulmod(s, x, N) + mulmod(t, y, N), N);
        }
    }
};

int64_t ext_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    int64_t x1, y1;
    int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Diagonalization over Z_N: U A V = diag(g_1, ..., g_r) with each g_i a proper divisor of N.
struct ModSmith {
    int64_t N;
    std::vector<int64_t> g;
    ModMat U, Ui, V, Vi;
};

ModSmith smith_mod_n(const IntMatrix& A, int64_t N) {
    ModMat M(A.rows, A.cols, N);
    for (std::size_t i = 0; i < A.a.size(); ++i) M.a[i] = mod(A.a[i], N);
    ModSmith s{N, {}, ModMat::eye(A.rows, N), ModMat::eye(A.rows, N), ModMat::eye(A.cols, N), ModMat::eye(A.cols, N)};
    // Row transform E = [[p,q],[u,v]] with det 1; Ui picks up E^-1 = [[v,-q],[-u,p]] on columns.
    auto row_op = [&](std::size_t i, std::size_t j, int64_t p, int64_t q, int64_t u, int64_t v) {
        M.rows2(i, j, p, q, u, v);
        s.U.rows2(i, j, p, q, u, v);
        s.Ui.cols2(i, j, v, -u, -q, p);
    };
    auto col_op = [&](std::size_t i, std::size_t j, int64_t p, int64_t q, int64_t u, int64_t v) {
        M.cols2(i, j, p, q, u, v);
        s.V.cols2(i, j, p, q, u, v);
        s.Vi.rows2(i, j, v, -u, -q, p);
    };
    std::size_t n = std::min(A.rows, A.cols);
    for (std::size_t t = 0; t < n; ++t) {
        bool found = false;
        std::size_t pi = 0, pj = 0;
        int64_t best = N;
        for (std::size_t i = t; i < M.r && best > 1; ++i)
            for (std::size_t j = t; j < M.c; ++j) {
                int64_t x = M.at(i, j);
                if (!x) continue;
                int64_t g = std::gcd(x, N);
                if (g < best) {
                    best = g;
                    pi = i;
                    pj = j;
                    found = true;
                    if (g == 1) break;
                }
            }
        if (!found) break;
        if (pi != t) row_op(t, pi, 0, 1, -1, 0);
        if (pj != t) col_op(t, pj, 0, 1, -1, 0);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < M.r; ++i) {
                int64_t x = M.at(i, t);
                if (!x) continue;
                int64_t e = M.at(t, t), a, b;
                int64_t h = ext_gcd(e, x, a, b);
                if (h == e) row_op(t, i, 1, 0, -(x / e), 1);
                else row_op(t, i, a, b, -(x / h), e / h);
            }
            for (std::size_t j = t + 1; j < M.c; ++j) {
                int64_t x = M.at(t, j);
                if (!x) continue;
                int64_t e = M.at(t, t), a, b;
                int64_t h = ext_gcd(e, x, a, b);
                if (h == e) {
                    col_op(t, j, 1, 0, -(x / e), 1);
                } else {
                    col_op(t, j, a, b, -(x / h), e / h);
                    dirty = true;
                }
            }
            if (!dirty) break;
        }
        int64_t e = M.at(t, t);
        if (e == 0) break;
        int64_t g = std::gcd(e, N);
        if (e != g) {
            // unit u with u e = g mod N
            int64_t m = N / g;
            int64_t u = m == 1 ? 1 : inv_mod((e / g) % m, m);
            while (std::gcd(u, N) != 1) u += m;
            int64_t ui = inv_mod(u, N);
            M.rows2(t, t, u, 0, u, 0);
            s.U.rows2(t, t, u, 0, u, 0);
            s.Ui.cols2(t, t, ui, 0, ui, 0);
        }
        s.g.push_back(M.at(t, t));
    }
    return s;
}

}  // namespace

ModuleBasis subgroup_basis(const std::vector<std::vector<int64_t>>& gens, std::size_t n, int64_t N) {
    IntMatrix G(n, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (gens[j].size() != n) throw std::invalid_argument("generator length mismatch");
        for (std::size_t i = 0; i < n; ++i) G(i, j) = gens[j][i];
    }
    auto s = smith_mod_n(G, N);
    ModuleBasis b;
    b.N = N;
    for (std::size_t i = 0; i < s.g.size(); ++i) {
        std::vector<int64_t> v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = mulmod(s.Ui.at(r, i), s.g[i], N);
        b.gens.push_back(std::move(v));
        b.orders.push_back(N / s.g[i]);
    }
    return b;
}

ModuleBasis kernel_mod_n(const IntMatrix& A, int64_t N) {
    auto s = smith_mod_n(A, N);
    ModuleBasis b;
    b.N = N;
    for (std::size_t j = 0; j < A.cols; ++j) {
        int64_t ord = N, scale = 1;
        if (j < s.g.size()) {
            ord = s.g[j];
            scale = N / ord;
        }
        if (ord == 1) continue;
        std::vector<int64_t> v(A.cols);
        for (std::size_t r = 0; r < A.cols; ++r) v[r] = mulmod(s.V.at(r, j), scale, N);
        b.gens.push_back(std::move(v));
        b.orders.push_back(ord);
    }
    return b;
}

ModuleBasis quotient_mod_n(const std::vector<std::vector<int64_t>>& K,
                           const std::vector<std::vector<int64_t>>& I, std::size_t n, int64_t N) {
    ModuleBasis KB = subgroup_basis(K, n, N);
    std::size_t r = KB.gens.size();
    // Coordinates in KB: solve against the decomposition of KB itself.
    IntMatrix G(n, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < n; ++i) G(i, j) = KB.gens[j][i];
    IntMatrix R(r, I.size() + r);
    for (std::size_t j = 0; j < I.size(); ++j) {
        auto c = solve_span_mod_n(KB.gens, I[j], N);
        if (!c) throw std::invalid_argument("quotient: I is not contained in K");
        for (std::size_t i = 0; i < r; ++i) R(i, j) = (*c)[i];
    }
    for (std::size_t k = 0; k < r; ++k) R(k, I.size() + k) = KB.orders[k];
    auto s = smith_mod_n(R, N);
    ModuleBasis b;
    b.N = N;
    for (std::size_t i = 0; i < r; ++i) {
        int64_t e = i < s.g.size() ? s.g[i] : N;
        if (e == 1) continue;
        std::vector<int64_t> v(n, 0);
        for (std::size_t m = 0; m < r; ++m) {
            int64_t c = s.Ui.at(m, i);
            if (!c) continue;
            for (std::size_t row = 0; row < n; ++row) v[row] = mod(v[row] + mulmod(KB.gens[m][row], c, N), N);
        }
        b.gens.push_back(std::move(v));
        b.orders.push_back(e);
    }
    return b;
}

std::optional<std::vector<int64_t>> solve_span_mod_n(const std::vector<std::vector<int64_t>>& gens,
                                                     const std::vector<int64_t>& v, int64_t N) {
    std::size_t n = v.size();
    IntMatrix G(n, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (gens[j].size() != n) throw std::invalid_argument("generator length mismatch");
        for (std::size_t i = 0; i < n; ++i) G(i, j) = gens[j][i];
    }
    auto s = smith_mod_n(G, N);
    std::vector<int64_t> y(gens.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        int64_t b = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (s.U.at(i, k)) b = mod(b + mulmod(s.U.at(i, k), mod(v[k], N), N), N);
        if (i < s.g.size()) {
            if (b % s.g[i] != 0) return std::nullopt;
            y[i] = b / s.g[i];
        } else if (b != 0) {
            return std::nullopt;
        }
    }
    std::vector<int64_t> x(gens.size(), 0);
    for (std::size_t j = 0; j < gens.size(); ++j) {
        int64_t acc = 0;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (y[i]) acc = mod(acc + mulmod(s.V.at(j, i), y[i], N), N);
        x[j] = acc;
    }
    return x;
}

bool in_span_mod_n(const std::vector<std::vector<int64_t>>& gens, const std::vector<int64_t>& v, int64_t N) {
    return solve_span_mod_n(gens, v, N).has_value();
}

}  // namespace cohgate
