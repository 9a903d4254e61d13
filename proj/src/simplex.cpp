#include "sepgraph/simplex.hpp"

#include <cassert>

namespace sepgraph {

namespace {

template <class T>
struct Tol {
    static bool neg(const T& x) { return sign_of(x) < 0; }
    static bool pos(const T& x) { return sign_of(x) > 0; }
};
template <>
struct Tol<double> {
    static constexpr double eps = 1e-11;
    static bool neg(double x) { return x < -eps; }
    static bool pos(double x) { return x > eps; }
};

// Tableau rows: m x (n+1), last column is the RHS. Basis[i] is the basic
// variable of row i. Bland's rule prevents cycling.
template <class T>
bool pivot_to_optimum(std::vector<std::vector<T>>& tab, std::vector<T>& reduced,
                      T& obj, std::vector<int>& basis, int n) {
    const int m = static_cast<int>(tab.size());
    while (true) {
        int enter = -1;
        for (int j = 0; j < n; ++j)
            if (Tol<T>::neg(reduced[j])) {
                enter = j;
                break;
            }
        if (enter == -1) return true;
        int leave = -1;
        for (int i = 0; i < m; ++i) {
            if (!Tol<T>::pos(tab[i][enter])) continue;
            if (leave == -1) {
                leave = i;
                continue;
            }
            // min ratio; ties by smallest basic variable index (Bland)
            T lhs = tab[i][n] * tab[leave][enter];
            T rhs = tab[leave][n] * tab[i][enter];
            if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) leave = i;
        }
        if (leave == -1) return false;  // unbounded
        // Pivot on (leave, enter).
        T p = tab[leave][enter];
        for (int j = 0; j <= n; ++j) tab[leave][j] /= p;
        for (int i = 0; i < m; ++i) {
            if (i == leave) continue;
            T f = tab[i][enter];
            if (sign_of(f) == 0) continue;
            for (int j = 0; j <= n; ++j) tab[i][j] -= f * tab[leave][j];
        }
        T f = reduced[enter];
        if (sign_of(f) != 0) {
            for (int j = 0; j < n; ++j) reduced[j] -= f * tab[leave][j];
            obj -= f * tab[leave][n];
        }
        basis[leave] = enter;
    }
}

template <>
bool pivot_to_optimum<double>(std::vector<std::vector<double>>& tab,
                              std::vector<double>& reduced, double& obj,
                              std::vector<int>& basis, int n) {
    const int m = static_cast<int>(tab.size());
    for (int rounds = 0; rounds < 100000; ++rounds) {
        int enter = -1;
        for (int j = 0; j < n; ++j)
            if (Tol<double>::neg(reduced[j])) {
                enter = j;
                break;
            }
        if (enter == -1) return true;
        int leave = -1;
        double best = 0;
        for (int i = 0; i < m; ++i) {
            if (!Tol<double>::pos(tab[i][enter])) continue;
            double ratio = tab[i][n] / tab[i][enter];
            if (leave == -1 || ratio < best - Tol<double>::eps ||
                (ratio < best + Tol<double>::eps && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == -1) return false;
        double p = tab[leave][enter];
        for (int j = 0; j <= n; ++j) tab[leave][j] /= p;
        for (int i = 0; i < m; ++i) {
            if (i == leave) continue;
            double f = tab[i][enter];
            if (f == 0) continue;
            for (int j = 0; j <= n; ++j) tab[i][j] -= f * tab[leave][j];
        }
        double f = reduced[enter];
        for (int j = 0; j < n; ++j) reduced[j] -= f * tab[leave][j];
        obj -= f * tab[leave][n];
        basis[leave] = enter;
    }
    return true;  // float path: accept after bounded work
}

}  // namespace

template <class T>
SimplexResult<T> simplex_solve(const std::vector<std::vector<T>>& a,
                               const std::vector<T>& b,
                               const std::vector<T>& cost) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(cost.size());
    // Phase 1 tableau with one artificial per row; flip rows to b >= 0.
    std::vector<std::vector<T>> tab(m, std::vector<T>(n + m + 1, T(0)));
    for (int i = 0; i < m; ++i) {
        bool flip = sign_of(b[i]) < 0;
        for (int j = 0; j < n; ++j) tab[i][j] = flip ? T(0) - a[i][j] : a[i][j];
        tab[i][n + i] = T(1);
        tab[i][n + m] = flip ? T(0) - b[i] : b[i];
    }
    std::vector<int> basis(m);
    std::vector<T> reduced(n + m, T(0));
    T obj = T(0);
    for (int i = 0; i < m; ++i) {
        basis[i] = n + i;
        for (int j = 0; j < n; ++j) reduced[j] -= tab[i][j];
        obj -= tab[i][n + m];
    }
    auto project_cols = [&](int keep) {
        for (auto& row : tab) {
            // move RHS next to the kept columns
            row[keep] = row[n + m];
            row.resize(keep + 1);
        }
    };
    if (!pivot_to_optimum<T>(tab, reduced, obj, basis, n + m)) {
        return {};
    }
    if (Tol<T>::neg(obj) || Tol<T>::pos(obj)) return {};  // infeasible

    // Drive any artificial still in the basis out or drop its row.
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n) continue;
        int enter = -1;
        for (int j = 0; j < n; ++j)
            if (Tol<T>::pos(tab[i][j]) || Tol<T>::neg(tab[i][j])) {
                enter = j;
                break;
            }
        if (enter == -1) continue;  // redundant row
        T p = tab[i][enter];
        for (int j = 0; j <= n + m; ++j) tab[i][j] /= p;
        for (int r = 0; r < m; ++r) {
            if (r == i) continue;
            T f = tab[r][enter];
            if (sign_of(f) == 0) continue;
            for (int j = 0; j <= n + m; ++j) tab[r][j] -= f * tab[i][j];
        }
        basis[i] = enter;
    }
    project_cols(n);

    // Phase 2.
    std::vector<T> red2(cost);
    T obj2 = T(0);
    for (int i = 0; i < m; ++i) {
        if (basis[i] >= n) continue;
        T f = red2[basis[i]];
        if (sign_of(f) == 0) continue;
        for (int j = 0; j < n; ++j) red2[j] -= f * tab[i][j];
        obj2 -= f * tab[i][n];
    }
    if (!pivot_to_optimum<T>(tab, red2, obj2, basis, n)) return {};

    SimplexResult<T> res;
    res.feasible = true;
    res.x.assign(n, T(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = tab[i][n];
    res.objective = T(0) - obj2;
    return res;
}

template SimplexResult<Rat> simplex_solve<Rat>(
    const std::vector<std::vector<Rat>>&, const std::vector<Rat>&,
    const std::vector<Rat>&);
template SimplexResult<double> simplex_solve<double>(
    const std::vector<std::vector<double>>&, const std::vector<double>&,
    const std::vector<double>&);

}  // namespace sepgraph
