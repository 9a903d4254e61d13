#ifndef SEPGRAPH_VERIFY_HPP
#define SEPGRAPH_VERIFY_HPP

#include "sepgraph/oct.hpp"
#include "sepgraph/parity.hpp"
#include "sepgraph/pointsep.hpp"
#include "sepgraph/scene_io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sepgraph {

// Result documents are JSON-first; SVG is presentation-only. These builders
// are shared by the CLI and the closed-loop tests.

Json certificate_to_json(const LabeledMultigraph& g, const CycleCertificate& c);

Json make_sep2_result(const Scene& sc,
                      const std::optional<std::pair<CycleCertificate, Rat>>& best,
                      const LabeledMultigraph& g);

Json make_remove_result(const Scene& sc, const RemovalOptions& opts,
                        const std::optional<RemovalResult>& res,
                        const std::optional<FractionalSolution>& lp);

Json make_psep_result(const Scene& sc, const std::vector<std::pair<int, int>>& P,
                      GpsStrategy strategy, const GpsResult& res,
                      const LabeledMultigraph& g);

/// Recompute every claim in a result document against the scene: geometric
/// separation, witness validity, certificate parities, LP feasibility, and
/// (at desk scale) optimality via brute force. Returns human-readable
/// failures; empty means the result checks out.
std::vector<std::string> verify_result(const Scene& sc, const Json& result,
                                       int brute_cap = 12);

}  // namespace sepgraph

#endif
