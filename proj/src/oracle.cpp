#include "ratnest/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "ratnest/util.hpp"

namespace ratnest {

namespace {

constexpr int kExhaustiveLimit = 12;
constexpr int kBoundedLimit = 22;

// Decides "some merge tree over edge set S keeps every cut <= k" for all
// subsets lazily; witnesses are rebuilt from the memo after a successful k.
class BwSearch {
 public:
  BwSearch(const Graph& g) : g_(g), m_(g.edge_count()) {
    inc_.assign(g.vertex_count(), 0);
    for (EdgeId e = 0; e < m_; ++e) {
      auto [u, v] = g.ends(e);
      inc_[u] |= uint64_t{1} << e;
      inc_[v] |= uint64_t{1} << e;
    }
    full_ = m_ == 0 ? 0 : (uint64_t{1} << m_) - 1;
    bnd_.assign(size_t{1} << m_, 0xFF);
    touched_.assign(size_t{1} << m_, 0);
    memo_.assign(size_t{1} << m_, 0);
  }

  int boundary_size(uint64_t s) {
    uint8_t& slot = bnd_[s];
    if (slot == 0xFF) {
      int count = 0;
      for (uint64_t mask : inc_)
        if ((mask & s) && (mask & full_ & ~s)) ++count;
      slot = static_cast<uint8_t>(count);
    }
    return slot;
  }

  bool feasible(int k) {
    k_ = k;
    std::fill(touched_.begin(), touched_.end(), 0);
    return good(full_);
  }

  // First split of s into good halves, in the fixed submask order; only
  // meaningful after feasible(k) returned true.
  uint64_t split_of(uint64_t s) {
    uint64_t low = s & (~s + 1);
    for (uint64_t a = (s - 1) & s; a; a = (a - 1) & s) {
      if (!(a & low)) continue;
      if (good(a) && good(s & ~a)) return a;
    }
    throw ContractViolation("oracle: no good split after feasible()");
  }

  long explored() const { return explored_; }

 private:
  bool good(uint64_t s) {
    if (touched_[s]) return memo_[s];
    touched_[s] = 1;
    ++explored_;
    bool ok = false;
    if (boundary_size(s) <= k_) {
      if (std::popcount(s) == 1) {
        ok = true;
      } else {
        uint64_t low = s & (~s + 1);
        for (uint64_t a = (s - 1) & s; a; a = (a - 1) & s) {
          if (!(a & low)) continue;
          if (good(a) && good(s & ~a)) {
            ok = true;
            break;
          }
        }
      }
    }
    memo_[s] = ok;
    return ok;
  }

  const Graph& g_;
  int m_;
  int k_ = 0;
  uint64_t full_ = 0;
  long explored_ = 0;
  std::vector<uint64_t> inc_;
  std::vector<uint8_t> bnd_;
  std::vector<char> touched_;
  std::vector<char> memo_;
};

OracleResult solve(const Graph& g, int limit) {
  int m = g.edge_count();
  if (m > limit)
    throw InputError("oracle: " + std::to_string(m) + " edges exceeds the mode limit of " +
                     std::to_string(limit));
  OracleResult res;
  BdBuilder builder;
  if (m == 0) {
    res.optimal_bd = builder.freeze();
    return res;
  }
  if (m == 1) {
    builder.add_leaf(0);
    res.optimal_bd = builder.freeze();
    return res;
  }

  BwSearch search(g);
  int lb = 0;
  for (EdgeId e = 0; e < m; ++e)
    lb = std::max(lb, search.boundary_size(uint64_t{1} << e));
  int k = lb;
  while (!search.feasible(k)) ++k;
  res.exact_bw = k;
  res.search_stats = search.explored();

  // Witness: unroll the successful memo into a tree, root split first.
  uint64_t full = (uint64_t{1} << m) - 1;
  // Recursive build returning the subtree's outward node.
  auto build = [&](auto&& self, uint64_t s) -> int {
    if (std::popcount(s) == 1) return builder.add_leaf(std::countr_zero(s));
    uint64_t a = search.split_of(s);
    int t = builder.add_internal();
    builder.connect(t, self(self, a));
    builder.connect(t, self(self, s & ~a));
    return t;
  };
  uint64_t a = search.split_of(full);
  int left = build(build, a);
  int right = build(build, full & ~a);
  builder.connect(left, right);
  res.optimal_bd = builder.freeze();
  if (width(res.optimal_bd, g) != res.exact_bw)
    throw ContractViolation("oracle: witness width disagrees with the search");
  return res;
}

}  // namespace

OracleResult exact_bw_bruteforce(const Graph& g) { return solve(g, kExhaustiveLimit); }

OracleResult exact_bw_branch_and_bound(const Graph& g) { return solve(g, kBoundedLimit); }

bool decide_bw_bruteforce(const Graph& g, int k) {
  if (k < 0) return false;
  return solve(g, kBoundedLimit).exact_bw <= k;
}

std::optional<int> representativity_bruteforce(const EmbeddedGraph& e) {
  if (e.genus == 0) return std::nullopt;
  for (int k = 1; k <= e.graph().vertex_count(); ++k)
    if (least_noncontractible_of_length(e, k)) return k;
  throw ContractViolation("positive genus embedding without a noncontractible noose");
}

}  // namespace ratnest
