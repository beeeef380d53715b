#pragma once

// Homology signatures and the homological systole of a TriMesh.

#include <cstdint>
#include <span>
#include <vector>

#include "systole/mesh.hpp"

namespace systole {

struct DirectedEdge {
  int from = 0;
  int to = 0;

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

/// Integer cohomology basis built from a tree-cotree decomposition.
///
/// A spanning tree of the 1-skeleton and a spanning tree of the dual graph
/// (on the remaining edges) leave exactly 2g edges. Cocycle j is 1 on the
/// j-th leftover edge, 0 on the other leftovers and on tree edges, and is
/// extended over the dual tree so it sums to zero around every face. These
/// cocycles are dual to the fundamental cycles of the leftover edges, so a
/// closed walk is nontrivial in H1(M; Z) iff its value vector is nonzero.
class CohomologyBasis {
 public:
  explicit CohomologyBasis(const TriMesh& mesh);

  /// 2g.
  int rank() const noexcept { return rank_; }

  /// Values on edge e traversed from its smaller to its larger endpoint.
  std::span<const int> edge_values(int e) const;

  /// Z2 reduction of edge_values packed into bits; requires rank <= 64.
  std::uint64_t edge_mask(int e) const { return masks_[static_cast<std::size_t>(e)]; }

  const std::vector<int>& generator_edges() const noexcept { return leftover_; }

 private:
  int rank_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<int> values_;  // edge-major, rank_ entries per edge
  std::vector<std::uint64_t> masks_;
  std::vector<int> leftover_;
};

/// Closed edge path with its length and Z2 homology signature.
struct CycleWitness {
  std::vector<DirectedEdge> edges;
  double length = 0.0;
  std::vector<std::uint8_t> signature;  // one entry per basis element, 0 or 1
  bool exact = true;
};

struct SystoleOptions {
  /// Exact search runs on the 2^{2g}-sheeted signature cover while 2g is at
  /// most this exponent.
  int max_cover_exponent = 12;
  /// Past the limit, run the non-exact fundamental-cycle search instead of
  /// throwing.
  bool allow_heuristic = false;
  /// Run the non-exact search regardless of genus (for comparisons).
  bool force_heuristic = false;
};

/// Z2 signature of a closed walk. Throws Error(Domain) if the walk is not a
/// closed path along mesh edges.
std::vector<std::uint8_t> cycle_signature(const TriMesh& mesh, const CohomologyBasis& basis,
                                          std::span<const DirectedEdge> walk);

/// Length of a closed walk along mesh edges.
double cycle_length(const TriMesh& mesh, std::span<const DirectedEdge> walk);

/// Shortest edge cycle that is nontrivial in H1(M; Z2), with a witness.
/// Genus 0 throws Error(NoNontrivialCycle). Genus above the cover limit
/// throws ResourceError unless options.allow_heuristic is set.
CycleWitness homological_systole(const TriMesh& mesh, const SystoleOptions& options = {});

}  // namespace systole
