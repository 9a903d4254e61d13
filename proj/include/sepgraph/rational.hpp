#ifndef SEPGRAPH_RATIONAL_HPP
#define SEPGRAPH_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace sepgraph {

// Exact rational scalar. All geometric predicates in this project are
// computed over Rat; there is no floating-point fast path for geometry.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parse "num", "-num" or "num/den" (den > 0 after canonicalization).
std::optional<Rat> rat_parse(const std::string& text);

/// Canonical "num" or "num/den" form, matching rat_parse.
std::string rat_str(const Rat& r);

/// Nearest double; used only for rendering and diagnostics.
double rat_to_double(const Rat& r);

inline int sign_of(const Rat& r) { return sgn(r); }
inline int sign_of(double x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

}  // namespace sepgraph

#endif
