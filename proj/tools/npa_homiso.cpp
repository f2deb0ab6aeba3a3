#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "npaiso/certificate.hpp"
#include "npaiso/decider.hpp"
#include "npaiso/enumerate.hpp"
#include "npaiso/graph_io.hpp"
#include "npaiso/oracle.hpp"

namespace {

using namespace npaiso;

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

Graph load_graph(const std::string& path) { return parse_graph_auto(read_text_file(path)); }

void apply_thread_limit() {
  const char* env = std::getenv("NPA_HOMISO_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw std::runtime_error("NPA_HOMISO_THREADS must be a positive integer");
#ifdef _OPENMP
  omp_set_num_threads(static_cast<int>(n));
#endif
}

std::string decision_text(const Decision& d) {
  std::string out = to_string(d.verdict) + " at level " + std::to_string(d.level);
  out += " (" + std::to_string(d.primes.size()) + " prime" + (d.primes.size() == 1 ? "" : "s");
  out += ", basis " + std::to_string(d.stats.basis_size) + ", engine " +
         (d.stats.engine.empty() ? std::string("none") : d.stats.engine) + ")\n";
  if (d.witness) {
    out += "witness: " + expr_to_string(d.witness->provenance) + "\n";
    out += "hom into G: " + d.witness->hom_g.get_str() + "\nhom into H: " + d.witness->hom_h.get_str() + "\n";
  }
  if (!d.note.empty()) out += "note: " + d.note + "\n";
  return out;
}

nlohmann::json enumeration_json(const std::vector<BilabelledGraph>& members) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& f : members) list.push_back(to_json(f));
  return list;
}

struct DecideArgs {
  std::string g_file, h_file;
  int level = 1;
  std::string mode = "fast";
  std::string prime;
  int reps = 3;
  unsigned prime_bits = 62;
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultTensorCap;
  std::string format = "json";
};

int run_decide(const DecideArgs& a) {
  const Graph g = load_graph(a.g_file);
  const Graph h = load_graph(a.h_file);
  RandomizedOptions opts;
  opts.mode = a.mode == "sound" ? Mode::Sound : Mode::Fast;
  opts.reps = a.reps;
  opts.prime_bits = a.prime_bits;
  opts.seed = a.seed;
  opts.decide.cap = a.cap;
  opts.decide.seed = a.seed;
  std::optional<mpz_class> prime;
  if (!a.prime.empty()) {
    mpz_class p;
    if (p.set_str(a.prime, 10) != 0 || p < 2) throw std::runtime_error("--prime: not a positive integer: " + a.prime);
    prime = p;
  }
  const Decision d = decide(g, h, a.level, opts, prime);
  if (a.format == "text") {
    std::cout << decision_text(d);
  } else {
    std::cout << decision_to_json(d).dump() << "\n";
  }
  return d.verdict == Verdict::Accept ? kExitAccept : kExitReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide levels of the NPA hierarchy for the graph isomorphism game"};
  app.require_subcommand(1);

  DecideArgs da;
  auto* decide_cmd = app.add_subcommand("decide", "Decide feasibility of level k for a pair of graphs");
  decide_cmd->add_option("G", da.g_file, "First graph (graph6 or JSON edge list, - for stdin)")->required();
  decide_cmd->add_option("H", da.h_file, "Second graph")->required();
  decide_cmd->add_option("--level", da.level, "Level k")->check(CLI::PositiveNumber);
  decide_cmd->add_option("--mode", da.mode, "Prime sampling")->check(CLI::IsMember({"sound", "fast"}));
  decide_cmd->add_option("--prime", da.prime, "Run once modulo this prime");
  decide_cmd->add_option("--reps", da.reps, "Primes in fast mode")->check(CLI::PositiveNumber);
  decide_cmd->add_option("--prime-bits", da.prime_bits, "Prime width in fast mode")->check(CLI::Range(2u, 4096u));
  decide_cmd->add_option("--seed", da.seed, "Seed for every random choice");
  decide_cmd->add_option("--cap", da.cap, "Refuse tensors with n^(2k) at or above this")->check(CLI::PositiveNumber);
  decide_cmd->add_option("--format", da.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string f_file, hg_file;
  auto* hom_cmd = app.add_subcommand("hom", "Count homomorphisms from F to G");
  hom_cmd->add_option("F", f_file, "Pattern graph")->required();
  hom_cmd->add_option("G", hg_file, "Target graph")->required();

  int enum_level = 1;
  bool atomic = false, pk = false;
  int max_depth = 2;
  std::size_t max_vertices = 8;
  auto* enum_cmd = app.add_subcommand("enumerate", "List atomic graphs or a bounded part of the class P_k");
  enum_cmd->add_option("--level", enum_level, "Level k")->check(CLI::Range(1, 3));
  auto* atomic_flag = enum_cmd->add_flag("--atomic", atomic, "Atomic classes Q_k^P and Q_k^S");
  auto* pk_flag = enum_cmd->add_flag("--pk", pk, "Bounded closure P_k");
  atomic_flag->excludes(pk_flag);
  enum_cmd->add_option("--max-depth", max_depth, "Depth bound for --pk")->check(CLI::PositiveNumber);
  enum_cmd->add_option("--max-vertices", max_vertices, "Vertex bound for --pk")->check(CLI::Range(1, 12));

  std::string cert_file, cg_file, ch_file;
  int cert_level = 1;
  auto* validate_cmd = app.add_subcommand("validate-cert", "Check a level-k certificate");
  validate_cmd->add_option("CERT", cert_file, "Certificate JSON")->required();
  validate_cmd->add_option("G", cg_file, "First graph")->required();
  validate_cmd->add_option("H", ch_file, "Second graph")->required();
  validate_cmd->add_option("--level", cert_level, "Level k")->check(CLI::PositiveNumber);

  auto* from_iso_cmd = app.add_subcommand("cert-from-iso", "Certificate from an isomorphism of two small graphs");
  from_iso_cmd->add_option("G", cg_file, "First graph")->required();
  from_iso_cmd->add_option("H", ch_file, "Second graph")->required();
  from_iso_cmd->add_option("--level", cert_level, "Level k")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    apply_thread_limit();
    if (decide_cmd->parsed()) return run_decide(da);

    if (hom_cmd->parsed()) {
      std::cout << oracle::hom_count(load_graph(f_file), load_graph(hg_file)).get_str() << "\n";
      return 0;
    }

    if (enum_cmd->parsed()) {
      if (!atomic && !pk) throw std::runtime_error("enumerate needs --atomic or --pk");
      nlohmann::json out;
      if (atomic) {
        const AtomicClasses q = enumerate_Qk(enum_level);
        out = {{"level", enum_level},
               {"parallel", enumeration_json(q.parallel)},
               {"series", enumeration_json(q.series)},
               {"counts", {{"parallel", q.parallel.size()}, {"series", q.series.size()}}},
               {"candidates", {{"parallel", q.parallel_candidates}, {"series", q.series_candidates}}}};
      } else {
        PkBounds b;
        b.max_depth = max_depth;
        b.max_vertices = max_vertices;
        const PkEnumeration e = enumerate_Pk_bounded(enum_level, b);
        out = {{"level", enum_level},
               {"members", enumeration_json(e.members)},
               {"count", e.members.size()},
               {"pruned_by_vertices", e.pruned_by_vertices},
               {"truncated", e.truncated}};
      }
      std::cout << out.dump() << "\n";
      return 0;
    }

    const Graph g = load_graph(cg_file);
    const Graph h = load_graph(ch_file);
    if (validate_cmd->parsed()) {
      const NpaCertificate cert = certificate_from_json(nlohmann::json::parse(read_text_file(cert_file)));
      const auto violations = validate_certificate(cert, g, h, cert_level);
      nlohmann::json list = nlohmann::json::array();
      for (const auto& v : violations) list.push_back(violation_to_json(cert, v));
      std::cout << nlohmann::json{{"valid", violations.empty()}, {"violations", list}}.dump() << "\n";
      return violations.empty() ? kExitAccept : kExitReject;
    }

    if (from_iso_cmd->parsed()) {
      const auto f = oracle::is_isomorphic(g, h);
      if (!f) throw std::runtime_error("the graphs are not isomorphic");
      std::cout << certificate_to_json(certificate_from_isomorphism(*f, g, h, cert_level)).dump() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
