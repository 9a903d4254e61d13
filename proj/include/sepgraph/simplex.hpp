#ifndef SEPGRAPH_SIMPLEX_HPP
#define SEPGRAPH_SIMPLEX_HPP

#include "sepgraph/rational.hpp"

#include <optional>
#include <vector>

namespace sepgraph {

/// Dense two-phase tableau simplex with Bland's rule.
/// Minimizes cost . x subject to A x = b, x >= 0. Exact over Rat; the
/// double instantiation uses a small tolerance for sign tests.
template <class T>
struct SimplexResult {
    bool feasible = false;
    std::vector<T> x;
    T objective{};
};

template <class T>
SimplexResult<T> simplex_solve(const std::vector<std::vector<T>>& a,
                               const std::vector<T>& b,
                               const std::vector<T>& cost);

extern template SimplexResult<Rat> simplex_solve<Rat>(
    const std::vector<std::vector<Rat>>&, const std::vector<Rat>&,
    const std::vector<Rat>&);
extern template SimplexResult<double> simplex_solve<double>(
    const std::vector<std::vector<double>>&, const std::vector<double>&,
    const std::vector<double>&);

}  // namespace sepgraph

#endif
