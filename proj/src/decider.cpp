#include "npaiso/decider.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

#include <mpfr.h>

#include "npaiso/basis.hpp"
#include "npaiso/oracle.hpp"
#include "npaiso/primes.hpp"
#include "npaiso/rng.hpp"

namespace npaiso {

mpz_class f_bound(int k, std::size_t n) {
  if (k < 1 || n < 1) throw DecideError("f_bound needs k >= 1 and n >= 1");
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), n, 2 * static_cast<unsigned long>(k));
  if (e > (1UL << 20)) throw DecideError("f_bound: n^{2k} exceeds 2^20");
  // 4^e = 2^{2e}
  mpz_class r = 2 * k;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 2 * e.get_ui());
  return r;
}

std::string to_string(Verdict v) { return v == Verdict::Accept ? "accept" : "reject"; }

namespace {

// Engine output before witness counts are attached.
struct RunResult {
  bool rejected = false;
  ExprPtr witness;
  std::size_t basis_size = 0;
  std::size_t rounds = 0;
  std::size_t candidates = 0;
  std::size_t filtered = 0;
  std::string engine;
};

template <class Field>
class ModularRun {
 public:
  using Elem = typename Field::Elem;
  using Vec = std::vector<Elem>;
  using Pair = TensorPair<Field>;

  ModularRun(const Graph& g, const Graph& h, int k, Field field, const DecideOptions& opts)
      : g_(g),
        h_(h),
        k_(k),
        field_(field),
        opts_(opts),
        dg_(checked_power(g.vertex_count(), 2 * k, opts.cap)),
        dh_(checked_power(h.vertex_count(), 2 * k, opts.cap)),
        basis_(field, dg_ + dh_) {
    // Enough independent annihilators that a candidate outside the span
    // slips through with probability below 2^-30.
    const double bits = std::log2(field_.modulus_mpz().get_d());
    sketches_ = static_cast<std::size_t>(std::ceil(30.0 / bits));
  }

  const IncrementalBasis<Field>& basis() const { return basis_; }

  RunResult run() {
    const BasalGenerators gens = basal_generators(k_);
    for (const auto& a : gens.parallel) parallel_gens_.push_back({pair_of(a), a.provenance()});
    const bool exhaustive = opts_.engine == ClosureEngine::Exhaustive ||
                            (opts_.engine == ClosureEngine::Auto && dg_ + dh_ <= opts_.exhaustive_limit);
    result_.engine = exhaustive ? "exhaustive" : "sketched";

    insert(pair_of(J_atomic(k_)), Expr::generator("J"));
    for (const auto& [t, prov] : parallel_gens_) insert(t, prov);
    for (const auto& a : gens.series) insert(pair_of(a), a.provenance());
    if (!result_.rejected) {
      if (exhaustive) close_exhaustive();
      else close_sketched();
    }
    result_.basis_size = basis_.rank();
    return result_;
  }

 private:
  Pair pair_of(const BilabelledGraph& f) const {
    return {atomic_tensor_fast(f, g_, field_, opts_.cap), atomic_tensor_fast(f, h_, field_, opts_.cap)};
  }

  Pair pair_at(std::size_t i) const {
    return unflatten<Field>(basis_.original(i), k_, g_.vertex_count(), h_.vertex_count());
  }

  bool soe_differs(const Vec& v) const {
    Elem sg = field_.zero(), sh = field_.zero();
    for (std::size_t i = 0; i < dg_; ++i) sg = field_.add(sg, v[i]);
    for (std::size_t i = dg_; i < v.size(); ++i) sh = field_.add(sh, v[i]);
    return !field_.equal(sg, sh);
  }

  // Exact reduction; the first added vector whose two blocks have different
  // sums ends the run.
  bool insert(const Pair& x, ExprPtr prov) {
    if (result_.rejected) return false;
    ++result_.candidates;
    Vec v = flatten(x);
    const bool differs = soe_differs(v);
    if (!basis_.insert_if_independent(v, prov)) return false;
    if (differs) {
      result_.rejected = true;
      result_.witness = std::move(prov);
    }
    return true;
  }

  void close_exhaustive() {
    std::vector<Pair> pairs;
    auto sync = [&] {
      while (pairs.size() < basis_.rank()) pairs.push_back(pair_at(pairs.size()));
    };
    std::vector<std::size_t> schur_mark(parallel_gens_.size(), 0);
    std::size_t product_mark = 0, sigma_mark = 0;
    const CyclicPerm one(k_, 1);
    (void)one;
    for (;;) {
      ++result_.rounds;
      const std::size_t before = basis_.rank();
      for (std::size_t a = 0; a < parallel_gens_.size(); ++a) {
        for (std::size_t i = schur_mark[a]; i < basis_.rank(); ++i) {
          sync();
          insert(schur(field_, parallel_gens_[a].first, pairs[i]),
                 Expr::parallel(parallel_gens_[a].second, basis_.provenance(i)));
          if (result_.rejected) return;
        }
        schur_mark[a] = basis_.rank();
      }
      for (std::size_t t = 0; t < basis_.rank(); ++t) {
        for (std::size_t i = 0; i <= t; ++i) {
          if (t < product_mark) break;
          sync();
          insert(matmul(field_, pairs[i], pairs[t]), Expr::series(basis_.provenance(i), basis_.provenance(t)));
          if (i != t) {
            sync();
            insert(matmul(field_, pairs[t], pairs[i]), Expr::series(basis_.provenance(t), basis_.provenance(i)));
          }
          if (result_.rejected) return;
        }
      }
      product_mark = basis_.rank();
      for (std::size_t i = sigma_mark; i < basis_.rank(); ++i) {
        for (int t = 1; t < 2 * k_; ++t) {
          sync();
          insert(sigma_act_tensor(pairs[i], CyclicPerm(k_, t)), Expr::sigma(basis_.provenance(i), t));
          if (result_.rejected) return;
        }
      }
      sigma_mark = basis_.rank();
      if (basis_.rank() == before) return;
    }
  }

  // Operations of the sketched closure.
  enum class OpKind { Schur, Rotate, LeftMul };
  struct Op {
    OpKind kind;
    std::size_t arg;  // parallel generator index or basis index
    std::size_t mark = 0;
  };

  Pair apply(const Op& op, const Pair& x) const {
    switch (op.kind) {
      case OpKind::Schur: return schur(field_, parallel_gens_[op.arg].first, x);
      case OpKind::Rotate: return sigma_act_tensor(x, CyclicPerm(k_, 1));
      case OpKind::LeftMul: return matmul(field_, pair_at(op.arg), x);
    }
    return x;
  }

  ExprPtr provenance(const Op& op, std::size_t j) const {
    switch (op.kind) {
      case OpKind::Schur: return Expr::parallel(basis_.provenance(j), parallel_gens_[op.arg].second);
      case OpKind::Rotate: return Expr::sigma(basis_.provenance(j), 1);
      case OpKind::LeftMul: return Expr::series(basis_.provenance(op.arg), basis_.provenance(j));
    }
    return nullptr;
  }

  // Z with <Z, x> = <y, op(x)> for every x.
  Vec adjoint(const Op& op, const Pair& y) const {
    switch (op.kind) {
      case OpKind::Schur: return flatten(schur(field_, parallel_gens_[op.arg].first, y));
      case OpKind::Rotate: {
        Vec flat = flatten(y);
        Vec z(flat.size());
        auto scatter = [&](std::size_t n, std::size_t offset) {
          const auto map = sigma_index_map(k_, n, CyclicPerm(k_, 1));
          for (std::size_t b = 0; b < map.size(); ++b) z[offset + map[b]] = flat[offset + b];
        };
        scatter(g_.vertex_count(), 0);
        scatter(h_.vertex_count(), dg_);
        return z;
      }
      case OpKind::LeftMul: {
        const Pair gp = pair_at(op.arg);
        return flatten(Pair{matmul(field_, transpose(gp.g), y.g), matmul(field_, transpose(gp.h), y.h)});
      }
    }
    return {};
  }

  void close_sketched() {
    CounterRng rng(opts_.seed, 0x736b65746368ULL);
    std::vector<Op> ops;
    for (std::size_t a = 0; a < parallel_gens_.size(); ++a) ops.push_back({OpKind::Schur, a});
    ops.push_back({OpKind::Rotate, 0});
    for (std::size_t i = 0; i < basis_.rank(); ++i) ops.push_back({OpKind::LeftMul, i});

    for (;;) {
      const std::size_t r0 = basis_.rank();
      const std::size_t ops0 = ops.size();
      std::size_t low = r0;
      for (std::size_t o = 0; o < ops0; ++o) low = std::min(low, ops[o].mark);
      if (low == r0) return;
      ++result_.rounds;

      // z[o][a] pairs annihilator a with operation o.
      std::vector<std::vector<Vec>> z(ops0);
      for (std::size_t a = 0; a < sketches_; ++a) {
        const Pair y = unflatten<Field>(basis_.sample_annihilator(rng), k_, g_.vertex_count(), h_.vertex_count());
        for (std::size_t o = 0; o < ops0; ++o)
          if (ops[o].mark < r0) z[o].push_back(adjoint(ops[o], y));
      }

      // Rows outer, operations inner: shallow products are found first. Hits
      // are reduced in batches; none of them depends on the others.
      std::size_t false_alarms = 0;
      const std::size_t alarm_limit = 8 + r0 / 16;
      std::vector<Vec> batch;
      std::vector<ExprPtr> provs;
      std::vector<bool> stops;
      std::vector<OpKind> kinds;
      auto flush = [&] {
        const auto status = basis_.insert_batch(std::move(batch), provs, stops);
        std::size_t index = basis_.rank();
        for (const auto st : status)
          if (st == IncrementalBasis<Field>::BatchStatus::Inserted) --index;
        for (std::size_t i = 0; i < status.size(); ++i) {
          if (status[i] == IncrementalBasis<Field>::BatchStatus::Skipped) continue;
          ++result_.candidates;
          if (status[i] == IncrementalBasis<Field>::BatchStatus::Dependent) {
            ++false_alarms;
            continue;
          }
          if (stops[i]) {
            result_.rejected = true;
            result_.witness = provs[i];
          } else if (kinds[i] != OpKind::LeftMul) {
            ops.push_back({OpKind::LeftMul, index});
          }
          ++index;
        }
        batch.clear();
        provs.clear();
        stops.clear();
        kinds.clear();
      };
      for (std::size_t j = low; j < r0 && false_alarms <= alarm_limit; ++j) {
        std::optional<Pair> xj;
        for (std::size_t o = 0; o < ops0; ++o) {
          if (ops[o].mark > j) continue;
          ops[o].mark = j + 1;
          const bool miss = std::all_of(z[o].begin(), z[o].end(), [&](const Vec& za) {
            return field_.is_zero(kernels::dot(field_, za, basis_.original(j)));
          });
          if (miss) {
            ++result_.filtered;
            continue;
          }
          if (!xj) xj = pair_at(j);
          batch.push_back(flatten(apply(ops[o], *xj)));
          stops.push_back(soe_differs(batch.back()));
          provs.push_back(provenance(ops[o], j));
          kinds.push_back(ops[o].kind);
        }
        if (batch.size() >= kBatch) flush();
        if (result_.rejected) return;
      }
      if (!batch.empty()) flush();
      if (result_.rejected) return;
    }
  }

  static constexpr std::size_t kBatch = 32;

  const Graph& g_;
  const Graph& h_;
  int k_;
  Field field_;
  DecideOptions opts_;
  std::size_t dg_;
  std::size_t dh_;
  IncrementalBasis<Field> basis_;
  std::vector<std::pair<Pair, ExprPtr>> parallel_gens_;
  RunResult result_;
  std::size_t sketches_ = 1;
};

template <class Field>
RunResult run_with(const Graph& g, const Graph& h, int k, Field f, const DecideOptions& opts) {
  return ModularRun<Field>(g, h, k, std::move(f), opts).run();
}

template <class Field>
std::vector<BasisRow> rows_with(const Graph& g, const Graph& h, int k, Field f, const DecideOptions& opts) {
  ModularRun<Field> run(g, h, k, f, opts);
  run.run();
  std::vector<BasisRow> rows;
  for (std::size_t i = 0; i < run.basis().rank(); ++i) {
    BasisRow row{run.basis().provenance(i), {}};
    for (const auto& e : run.basis().original(i)) row.values.push_back(f.to_integer(e));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Smallest field type that holds p.
template <class Fn>
auto with_field(const mpz_class& p, Fn&& fn) {
  if (p > 2 && p < PrimeField32::kMaxModulus) return fn(PrimeField32(static_cast<std::uint32_t>(p.get_ui())));
  if (p > 2 && p < (mpz_class(1) << 63)) return fn(PrimeField64(PrimeField64::to_u64(p)));
  return fn(PrimeFieldBig(p));
}

void check_inputs(const Graph& g, const Graph& h, int k, const mpz_class& p) {
  if (k < 1) throw DecideError("level k must be at least 1");
  if (!g.is_simple() || !h.is_simple()) throw DecideError("input graphs must be simple");
  if (!is_probable_prime(p)) throw DecideError("modulus " + p.get_str() + " is not prime");
}

constexpr std::size_t kWitnessVertexLimit = 64;

}  // namespace

std::optional<BilabelledGraph> materialize_bounded(const ExprPtr& e, int k, std::size_t max_vertices) {
  std::unordered_map<const Expr*, std::optional<BilabelledGraph>> memo;
  auto go = [&](auto&& self, const ExprPtr& x) -> std::optional<BilabelledGraph> {
    if (!x) return std::nullopt;
    if (auto it = memo.find(x.get()); it != memo.end()) return it->second;
    std::optional<BilabelledGraph> out;
    switch (x->op) {
      case Expr::Op::Generator:
      case Expr::Op::Minor: out = materialize(x, k); break;
      case Expr::Op::Series:
      case Expr::Op::Parallel: {
        auto a = self(self, x->lhs);
        if (!a) break;
        auto b = self(self, x->rhs);
        if (!b) break;
        out = (x->op == Expr::Op::Series ? series(*a, *b) : parallel(*a, *b)).with_provenance(x);
        break;
      }
      case Expr::Op::Sigma: {
        auto a = self(self, x->lhs);
        if (a) out = sigma_act(*a, CyclicPerm(k, x->power)).with_provenance(x);
        break;
      }
      case Expr::Op::Swap: {
        auto a = self(self, x->lhs);
        if (a) out = swap(*a).with_provenance(x);
        break;
      }
    }
    if (out && out->vertex_count() > max_vertices) out.reset();
    memo.emplace(x.get(), out);
    return out;
  };
  return go(go, e);
}

std::pair<mpz_class, mpz_class> witness_counts(const ExprPtr& e, int k, const Graph& g, const Graph& h) {
  if (auto f = materialize_bounded(e, k, 12)) {
    try {
      const Graph u = soe_graph(*f);
      return {oracle::hom_count(u, g), oracle::hom_count(u, h)};
    } catch (const oracle::GuardError&) {
    }
  }
  const std::size_t cap = std::numeric_limits<std::size_t>::max();
  IntegerRing z;
  ExprEvaluator<IntegerRing> eg(g, k, z, cap), eh(h, k, z, cap);
  return {soe(z, eg(e)), soe(z, eh(e))};
}

Decision modular_decide(const Graph& g, const Graph& h, int k, const mpz_class& p, const DecideOptions& opts) {
  check_inputs(g, h, k, p);
  const auto start = std::chrono::steady_clock::now();
  const RunResult r = with_field(p, [&](auto f) { return run_with(g, h, k, f, opts); });

  Decision d;
  d.level = k;
  d.primes.push_back(p);
  d.verdict = r.rejected ? Verdict::Reject : Verdict::Accept;
  d.stats.basis_size = r.basis_size;
  d.stats.rounds = r.rounds;
  d.stats.candidates = r.candidates;
  d.stats.filtered = r.filtered;
  d.stats.runs = 1;
  d.stats.engine = r.engine;
  if (r.rejected) {
    Witness w;
    w.provenance = r.witness;
    w.graph = materialize_bounded(r.witness, k, kWitnessVertexLimit);
    std::tie(w.hom_g, w.hom_h) = witness_counts(r.witness, k, g, h);
    d.witness = std::move(w);
  }
  d.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return d;
}

std::vector<BasisRow> modular_basis(const Graph& g, const Graph& h, int k, const mpz_class& p,
                                    const DecideOptions& opts) {
  check_inputs(g, h, k, p);
  return with_field(p, [&](auto f) { return rows_with(g, h, k, f, opts); });
}

SoundPlan sound_plan(int k, std::size_t n) {
  SoundPlan plan;
  plan.n_bound = f_bound(k, n);
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(2 * mpz_sizeinbase(plan.n_bound.get_mpz_t(), 2) + 128);
  mpfr_t l, t;
  mpfr_inits2(prec, l, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(t, static_cast<unsigned long>(n), MPFR_RNDN);
  mpfr_log2(t, t, MPFR_RNDN);
  if (mpfr_cmp_ui(t, 1) < 0) mpfr_set_ui(t, 1, MPFR_RNDN);
  mpfr_set_z(l, plan.n_bound.get_mpz_t(), MPFR_RNDN);
  mpfr_mul(l, l, t, MPFR_RNDN);
  mpfr_get_z(plan.lo.get_mpz_t(), l, MPFR_RNDD);
  mpfr_sqr(t, l, MPFR_RNDN);
  mpfr_get_z(plan.hi.get_mpz_t(), t, MPFR_RNDD);
  mpfr_log2(t, l, MPFR_RNDU);
  mpfr_mul_ui(t, t, 4, MPFR_RNDU);
  mpfr_ceil(t, t);
  plan.reps = mpfr_get_ui(t, MPFR_RNDU);
  mpfr_clears(l, t, static_cast<mpfr_ptr>(nullptr));
  return plan;
}

namespace {

void absorb(Decision& total, Decision&& run) {
  total.primes.insert(total.primes.end(), run.primes.begin(), run.primes.end());
  total.stats.basis_size = run.stats.basis_size;
  total.stats.rounds += run.stats.rounds;
  total.stats.candidates += run.stats.candidates;
  total.stats.filtered += run.stats.filtered;
  total.stats.runs += run.stats.runs;
  total.stats.engine = run.stats.engine;
  if (run.verdict == Verdict::Reject) {
    total.verdict = Verdict::Reject;
    total.witness = std::move(run.witness);
  }
}

}  // namespace

Decision randomized_decide(const Graph& g, const Graph& h, int k, const RandomizedOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Decision total;
  total.level = k;
  CounterRng rng(opts.seed, opts.mode == Mode::Sound ? 1 : 2);
  auto run_prime = [&](const mpz_class& p, std::size_t i) {
    DecideOptions d = opts.decide;
    d.seed = CounterRng::mix(opts.seed + 0x9e3779b97f4a7c15ULL * (i + 1));
    absorb(total, modular_decide(g, h, k, p, d));
    return total.verdict == Verdict::Reject;
  };

  if (opts.mode == Mode::Sound) {
    const SoundPlan plan = sound_plan(k, std::max(g.vertex_count(), h.vertex_count()));
    for (std::size_t i = 0; i < plan.reps; ++i) {
      const auto p = sample_prime_in(plan.lo, plan.hi, rng);
      if (!p) {
        ++total.stats.skipped;
        continue;
      }
      if (run_prime(*p, i)) break;
    }
  } else {
    if (opts.reps < 1) throw DecideError("reps must be at least 1");
    if (opts.prime_bits < 2) throw DecideError("prime_bits must be at least 2");
    for (int i = 0; i < opts.reps; ++i) {
      if (run_prime(random_prime_bits(opts.prime_bits, rng), static_cast<std::size_t>(i))) break;
    }
  }
  total.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return total;
}

Decision decide(const Graph& g, const Graph& h, int k, const RandomizedOptions& opts,
                const std::optional<mpz_class>& prime) {
  if (k < 1) throw DecideError("level k must be at least 1");
  if (g.vertex_count() != h.vertex_count()) {
    Decision d;
    d.level = k;
    d.verdict = Verdict::Reject;
    const std::size_t edges = cycle_atomic(k).graph().edge_count();
    Witness w;
    w.provenance = Expr::minor("C_k", std::string(edges, 'c'));
    w.graph = minor_of_atom("C_k", std::string(edges, 'c'), k);
    w.hom_g = static_cast<unsigned long>(g.vertex_count());
    w.hom_h = static_cast<unsigned long>(h.vertex_count());
    d.witness = std::move(w);
    d.note = "vertex counts differ; the single-vertex graph separates them";
    return d;
  }
  if (prime) return modular_decide(g, h, k, *prime, opts.decide);
  return randomized_decide(g, h, k, opts);
}

nlohmann::json decision_to_json(const Decision& d, bool with_time) {
  nlohmann::json primes = nlohmann::json::array();
  for (const auto& p : d.primes) primes.push_back(p.get_str());
  nlohmann::json witness = nullptr;
  if (d.witness) {
    witness = {{"graph", d.witness->graph ? to_json(*d.witness->graph) : nlohmann::json(nullptr)},
               {"provenance", expr_to_json(d.witness->provenance)},
               {"expression", expr_to_string(d.witness->provenance)},
               {"homG", d.witness->hom_g.get_str()},
               {"homH", d.witness->hom_h.get_str()}};
  }
  nlohmann::json stats = {{"basis_size", d.stats.basis_size}, {"rounds", d.stats.rounds},
                          {"candidates", d.stats.candidates}, {"filtered", d.stats.filtered},
                          {"runs", d.stats.runs},             {"skipped", d.stats.skipped},
                          {"engine", d.stats.engine}};
  if (with_time) stats["wall_seconds"] = d.stats.wall_seconds;
  nlohmann::json out = {{"verdict", to_string(d.verdict)},
                        {"level", d.level},
                        {"primes", primes},
                        {"witness", witness},
                        {"stats", stats}};
  if (!d.note.empty()) out["note"] = d.note;
  return out;
}

}  // namespace npaiso
