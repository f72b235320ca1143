#ifndef LOCALGS_REFERENCE_HPP
#define LOCALGS_REFERENCE_HPP

#include "localgs/graph.hpp"

namespace localgs {

/// Textbook sequential red-proposing deferred acceptance. Independent of the
/// round-based engine; the two must produce the same (red-optimal) stable
/// matching on every strict-preference instance.
Matching stable_matching_reference(const BicolouredGraph& g);

/// Maximal matching built by scanning edges in order of decreasing weight,
/// breaking equal weights by lexicographic (red, blue) edge id.
Matching greedy_matching(const BicolouredGraph& g);

/// Exhaustive maximum-weight matching; among equal-weight optima the
/// lexicographically least edge set wins. Capped at 24 edges.
Matching max_weight_matching_bruteforce(const BicolouredGraph& g);

inline constexpr std::uint64_t kBruteForceEdgeCap = 24;

}  // namespace localgs

#endif
