#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "npaiso/bilabelled.hpp"
#include "npaiso/graph.hpp"
#include "npaiso/hom_tensor.hpp"

namespace npaiso {

class DecideError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 2k * 4^{n^{2k}}. Refuses n^{2k} > 2^20.
mpz_class f_bound(int k, std::size_t n);

enum class Verdict { Accept, Reject };

/// How the span is closed under the algebra operations.
///  Exhaustive: every Schur product with a parallel generator, every ordered
///    product of two basis vectors and every rotation of every basis vector is
///    reduced exactly, round-robin until a full round adds nothing.
///  Sketched: the same span, reached as the algebra generated by the
///    generators plus every vector added by a Schur product or rotation. A
///    candidate is reduced exactly only when a random annihilator of the
///    current span does not vanish on it. One-sided: a candidate outside the
///    span is missed with probability at most 1/p per test.
///  Auto: Exhaustive while n_G^{2k} + n_H^{2k} <= exhaustive_limit.
enum class ClosureEngine { Auto, Exhaustive, Sketched };

struct DecideOptions {
  std::size_t cap = kDefaultTensorCap;
  ClosureEngine engine = ClosureEngine::Auto;
  std::size_t exhaustive_limit = 256;
  /// Seeds the sketched engine's annihilators.
  std::uint64_t seed = 0;
  /// Report wall time in the JSON stats (breaks byte-identical output).
  bool record_time = false;
};

struct Witness {
  ExprPtr provenance;
  /// Materialized when small enough to print.
  std::optional<BilabelledGraph> graph;
  mpz_class hom_g;
  mpz_class hom_h;
};

struct DecisionStats {
  std::size_t basis_size = 0;  // of the last run
  std::size_t rounds = 0;      // summed over runs
  std::size_t candidates = 0;  // candidates reduced exactly, summed
  std::size_t filtered = 0;    // candidates tested by annihilator only, summed
  std::size_t runs = 0;        // modular runs performed
  std::size_t skipped = 0;     // wrapper iterations without a prime
  std::string engine;
  double wall_seconds = 0;
};

struct Decision {
  Verdict verdict = Verdict::Accept;
  int level = 1;
  std::vector<mpz_class> primes;
  std::optional<Witness> witness;
  DecisionStats stats;
  std::string note;
};

/// One run of the modular algorithm over F_p.
Decision modular_decide(const Graph& g, const Graph& h, int k, const mpz_class& p, const DecideOptions& opts = {});

/// A spanning vector of one modular run: the flattened pair as canonical
/// residues, with the expression that produced it.
struct BasisRow {
  ExprPtr provenance;
  std::vector<mpz_class> values;
};
/// The closure computed by modular_decide, rows in insertion order. Stops
/// early at the first row whose two blocks have different sums.
std::vector<BasisRow> modular_basis(const Graph& g, const Graph& h, int k, const mpz_class& p,
                                    const DecideOptions& opts = {});

enum class Mode { Sound, Fast };

struct RandomizedOptions {
  Mode mode = Mode::Fast;
  unsigned prime_bits = 62;
  int reps = 3;
  std::uint64_t seed = 0;
  DecideOptions decide;
};

/// Parameters of the sound-mode wrapper for n = max(|V(G)|, |V(H)|).
struct SoundPlan {
  mpz_class n_bound;  // f_bound(k, n)
  mpz_class lo;       // floor(N * max(log2 n, 1))
  mpz_class hi;       // floor((N * max(log2 n, 1))^2)
  std::size_t reps;   // ceil(4 * log2(N * max(log2 n, 1)))
};
SoundPlan sound_plan(int k, std::size_t n);

/// Repeats modular_decide over random primes and rejects on the first
/// rejection. Never rejects a pair that is homomorphism indistinguishable
/// over the level-k class.
Decision randomized_decide(const Graph& g, const Graph& h, int k, const RandomizedOptions& opts);

/// Front end: graphs of different order are rejected at once with the
/// single-vertex witness, anything else goes to randomized_decide, or to
/// modular_decide when `prime` is set.
Decision decide(const Graph& g, const Graph& h, int k, const RandomizedOptions& opts,
                const std::optional<mpz_class>& prime = std::nullopt);

/// Homomorphism counts of soe(F) into G and H for a provenance expression.
/// Brute force when small, tensor evaluation over the integers otherwise.
std::pair<mpz_class, mpz_class> witness_counts(const ExprPtr& e, int k, const Graph& g, const Graph& h);

/// Builds the bilabelled graph for `e` unless some intermediate exceeds
/// `max_vertices` vertices.
std::optional<BilabelledGraph> materialize_bounded(const ExprPtr& e, int k, std::size_t max_vertices);

nlohmann::json decision_to_json(const Decision& d, bool with_time = false);
std::string to_string(Verdict v);

}  // namespace npaiso
