#pragma once

#include <optional>

#include "ratnest/branchdecomp.hpp"
#include "ratnest/graph.hpp"
#include "ratnest/noose.hpp"

namespace ratnest {

struct OracleResult {
  int exact_bw = 0;
  BranchDecomposition optimal_bd;
  long search_stats = 0;  // subset states explored
};

/// Exact branchwidth by exhaustive search over edge-subset merge trees,
/// memoized per subset. Deterministic witness (first optimal split in the
/// fixed submask order). m <= 12.
OracleResult exact_bw_bruteforce(const Graph& g);

/// Same search with iterative deepening on the width bound, feasible to
/// m <= 22. Exact, not heuristic; slower growth is the only difference.
OracleResult exact_bw_branch_and_bound(const Graph& g);

/// Decision variant sharing the same machinery: is bw(g) <= k?
bool decide_bw_bruteforce(const Graph& g, int k);

/// Representativity of an embedding (length of its shortest non-contractible
/// noose) by exhaustive enumeration of every length from one upward; nullopt
/// for sphere embeddings.
std::optional<int> representativity_bruteforce(const EmbeddedGraph& e);

}  // namespace ratnest
