#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "npaiso/bilabelled.hpp"

namespace npaiso {

/// True iff some graph isomorphism maps in_labels and out_labels of `a` onto
/// those of `b` position-wise. Brute force; throws BilabelledError when either
/// graph has more than `max_vertices` vertices.
bool labelled_isomorphic(const BilabelledGraph& a, const BilabelledGraph& b, std::size_t max_vertices = 12);

/// Exact labelled-isomorphism key, or nullopt when the graph is too symmetric
/// for the permutation search (more than `max_orderings` candidate orders).
std::optional<std::string> labelled_canonical_key(const BilabelledGraph& f, std::size_t max_orderings = 5040);

/// Set of bilabelled graphs up to labelled isomorphism. Members are keyed by
/// labelled_canonical_key; graphs without a key are bucketed by a cheap
/// invariant and compared by search within the bucket.
class LabelledIsoStore {
 public:
  /// Returns true and stores `f` when no stored member is labelled-isomorphic.
  bool insert(const BilabelledGraph& f);
  bool contains(const BilabelledGraph& f) const;
  const std::vector<BilabelledGraph>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  std::unordered_set<std::string> canonical_;
  std::map<std::vector<std::uint64_t>, std::vector<std::size_t>> buckets_;
  std::vector<BilabelledGraph> members_;
};

struct AtomicClasses {
  std::vector<BilabelledGraph> parallel;  // minors of C_k
  std::vector<BilabelledGraph> series;    // minors of M_k
  std::size_t parallel_candidates = 0;
  std::size_t series_candidates = 0;
};

/// All keep/contract/delete partitions of the edges of C_k and M_k, deduplicated.
AtomicClasses enumerate_Qk(int k, int max_k = 3);

struct PkBounds {
  int max_depth = 2;
  std::size_t max_vertices = 8;
  /// Looped graphs have no homomorphisms into simple graphs and stay looped
  /// under every operation, so they are dropped unless asked for.
  bool keep_looped = false;
  std::size_t max_members = 50000;
};

struct PkEnumeration {
  std::vector<BilabelledGraph> members;
  /// Some candidate exceeded max_vertices.
  bool pruned_by_vertices = false;
  /// max_members was reached; the listing is incomplete.
  bool truncated = false;
};

/// Breadth-first closure of Q_k under series composition, parallel
/// composition with Q_k^P members and cyclic label rotations, level by depth.
/// Each member keeps the smallest depth at which it appeared.
PkEnumeration enumerate_Pk_bounded(int k, const PkBounds& bounds);

}  // namespace npaiso
