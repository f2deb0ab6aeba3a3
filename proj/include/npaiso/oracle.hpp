#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "npaiso/bilabelled.hpp"
#include "npaiso/graph.hpp"

// Brute-force ground truth. Nothing here touches the tensor code.

namespace npaiso::oracle {

class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of homomorphisms F -> G. A looped vertex of F must land on a looped
/// vertex of G. Refuses |V(F)| > 10 unless |V(G)|^{|V(F)|} <= 10^9.
mpz_class hom_count(const Graph& f, const Graph& g);

/// An isomorphism G -> H as a vertex map, or nullopt. Refuses graphs with
/// more than `max_vertices` vertices.
std::optional<std::vector<Vertex>> is_isomorphic(const Graph& g, const Graph& h, std::size_t max_vertices = 10);

/// Planarity by searching for a K5 or K3,3 minor after degree reductions.
bool is_planar_small(const Graph& g, std::size_t max_vertices = 12);
/// G plus a vertex joined to everything is planar.
bool is_outerplanar_small(const Graph& g, std::size_t max_vertices = 11);

/// Exact treewidth by dynamic programming over vertex subsets.
int treewidth(const Graph& g, std::size_t max_vertices = 16);
bool treewidth_at_most(const Graph& g, int w, std::size_t max_vertices = 16);

struct WitnessReport {
  mpz_class hom_g;
  mpz_class hom_h;
  bool equal = false;
  /// Set when a modulus was given.
  std::optional<bool> congruent;
};

WitnessReport verify_witness(const BilabelledGraph& f, const Graph& g, const Graph& h,
                             const std::optional<mpz_class>& p = std::nullopt);

}  // namespace npaiso::oracle
