#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "npaiso/graph.hpp"

namespace npaiso {

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Word over Σ = V(G) x V(H); letter (g, h) is stored as g * |V(H)| + h.
using Word = std::vector<std::uint32_t>;

/// Representative of the class of `w` under rotation and repeated-letter
/// collapse/expansion: the lexicographically least word of minimal length.
/// Collapsing runs cyclically gives the unique shortest form up to rotation,
/// so this is its least rotation.
Word word_canonical(const Word& w, std::size_t max_len);

/// All words of length <= k over `letters` symbols, shortest first, then lexicographic.
std::vector<Word> words_up_to(std::size_t letters, int k);

class NpaCertificate {
 public:
  NpaCertificate(int k, std::size_t ng, std::size_t nh);

  int k() const { return k_; }
  std::size_t ng() const { return ng_; }
  std::size_t nh() const { return nh_; }
  const std::vector<Word>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  std::size_t index_of(const Word& w) const;

  const mpq_class& at(std::size_t i, std::size_t j) const { return entries_[i * words_.size() + j]; }
  mpq_class& at(std::size_t i, std::size_t j) { return entries_[i * words_.size() + j]; }
  const mpq_class& entry(const Word& s, const Word& t) const { return at(index_of(s), index_of(t)); }
  mpq_class& entry(const Word& s, const Word& t) { return at(index_of(s), index_of(t)); }

  std::uint32_t letter(Vertex g, Vertex h) const { return static_cast<std::uint32_t>(g * nh_ + h); }
  Vertex g_of(std::uint32_t letter) const { return static_cast<Vertex>(letter / nh_); }
  Vertex h_of(std::uint32_t letter) const { return static_cast<Vertex>(letter % nh_); }

 private:
  int k_;
  std::size_t ng_;
  std::size_t nh_;
  std::vector<Word> words_;
  std::map<Word, std::size_t> index_;
  std::vector<mpq_class> entries_;
};

/// Gram matrix of the deterministic strategy answering with f: entry (s, t)
/// is 1 when every letter (g, h) of s and t has h = f(g), else 0.
NpaCertificate certificate_from_isomorphism(const std::vector<Vertex>& f, const Graph& g, const Graph& h, int k);

struct Violation {
  std::string condition;  // "i", "ii", "iii", "iv", "psd", "symmetry"
  Word s;
  Word t;
  std::string detail;
};

struct ValidationOptions {
  /// Stop collecting after this many violations (0 = no limit).
  std::size_t max_violations = 0;
  bool check_psd = true;
};

/// Empty result means the matrix is a certificate for level k.
std::vector<Violation> validate_certificate(const NpaCertificate& r, const Graph& g, const Graph& h, int k,
                                            const ValidationOptions& opts = {});

/// Exact positive semidefiniteness by symmetric-pivoting LDL^T. On failure
/// `bad_index` (when given) names a row involved in the failure.
bool is_psd_exact(std::vector<mpq_class> m, std::size_t n, std::size_t* bad_index = nullptr);

nlohmann::json certificate_to_json(const NpaCertificate& r);
NpaCertificate certificate_from_json(const nlohmann::json& j);
nlohmann::json violation_to_json(const NpaCertificate& r, const Violation& v);

}  // namespace npaiso
