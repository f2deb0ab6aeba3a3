#include "npaiso/certificate.hpp"

#include <algorithm>
#include <unordered_map>

namespace npaiso {

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = w.size();
    for (auto x : w) h = h * 0x100000001b3ULL ^ (x + 0x9e3779b9);
    return h;
  }
};

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

std::string word_string(const NpaCertificate& r, const Word& w) {
  if (w.empty()) return "eps";
  std::string s;
  for (auto x : w) s += "(" + std::to_string(r.g_of(x)) + "," + std::to_string(r.h_of(x)) + ")";
  return s;
}

std::string rational_string(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

}  // namespace

Word word_canonical(const Word& w, std::size_t max_len) {
  if (w.size() > max_len) throw CertificateError("word_canonical: word longer than max_len");
  Word reduced;
  for (auto x : w)
    if (reduced.empty() || reduced.back() != x) reduced.push_back(x);
  while (reduced.size() > 1 && reduced.front() == reduced.back()) reduced.pop_back();
  Word best = reduced;
  for (std::size_t r = 1; r < reduced.size(); ++r) {
    Word y(reduced.begin() + static_cast<std::ptrdiff_t>(r), reduced.end());
    y.insert(y.end(), reduced.begin(), reduced.begin() + static_cast<std::ptrdiff_t>(r));
    if (y < best) best = std::move(y);
  }
  return best;
}

std::vector<Word> words_up_to(std::size_t letters, int k) {
  std::vector<Word> out{Word{}};
  std::size_t level_start = 0;
  for (int len = 1; len <= k; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i) {
      for (std::uint32_t x = 0; x < letters; ++x) {
        Word w = out[i];
        w.push_back(x);
        out.push_back(std::move(w));
      }
    }
    level_start = level_end;
  }
  return out;
}

NpaCertificate::NpaCertificate(int k, std::size_t ng, std::size_t nh) : k_(k), ng_(ng), nh_(nh) {
  if (k < 1) throw CertificateError("certificate level must be at least 1");
  words_ = words_up_to(ng * nh, k);
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
  entries_.assign(words_.size() * words_.size(), mpq_class(0));
}

std::size_t NpaCertificate::index_of(const Word& w) const {
  const auto it = index_.find(w);
  if (it == index_.end()) throw CertificateError("word outside the certificate index set");
  return it->second;
}

NpaCertificate certificate_from_isomorphism(const std::vector<Vertex>& f, const Graph& g, const Graph& h, int k) {
  const std::size_t n = g.vertex_count();
  if (f.size() != n || h.vertex_count() != n) throw CertificateError("map size does not match the graphs");
  std::vector<bool> hit(n, false);
  for (Vertex x : f) {
    if (x >= n || hit[x]) throw CertificateError("map is not a bijection");
    hit[x] = true;
  }
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a; b < n; ++b)
      if (g.adjacent(a, b) != h.adjacent(f[a], f[b])) throw CertificateError("map is not an isomorphism");

  NpaCertificate r(k, n, n);
  std::vector<bool> consistent(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    consistent[i] = std::all_of(r.words()[i].begin(), r.words()[i].end(),
                                [&](std::uint32_t x) { return f[r.g_of(x)] == r.h_of(x); });
  }
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j)
      if (consistent[i] && consistent[j]) r.at(i, j) = 1;
  return r;
}

bool is_psd_exact(std::vector<mpq_class> m, std::size_t n, std::size_t* bad_index) {
  auto fail = [&](std::size_t i) {
    if (bad_index) *bad_index = i;
    return false;
  };
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;
  while (!active.empty()) {
    std::size_t pivot_pos = active.size();
    for (std::size_t a = 0; a < active.size(); ++a) {
      const int sign = sgn(m[active[a] * n + active[a]]);
      if (sign < 0) return fail(active[a]);
      if (sign > 0 && pivot_pos == active.size()) pivot_pos = a;
    }
    if (pivot_pos == active.size()) {
      // Only zero diagonals remain, so everything left must vanish.
      for (std::size_t i : active)
        for (std::size_t j : active)
          if (sgn(m[i * n + j]) != 0) return fail(i);
      return true;
    }
    const std::size_t p = active[pivot_pos];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pivot_pos));
    std::vector<std::size_t> touched;
    for (std::size_t j : active)
      if (sgn(m[j * n + p]) != 0) touched.push_back(j);
    const mpq_class d = m[p * n + p];
    for (std::size_t j : touched) {
      const mpq_class factor = m[j * n + p] / d;
      for (std::size_t l : touched) m[j * n + l] -= factor * m[p * n + l];
    }
  }
  return true;
}

std::vector<Violation> validate_certificate(const NpaCertificate& r, const Graph& g, const Graph& h, int k,
                                            const ValidationOptions& opts) {
  if (r.k() != k || r.ng() != g.vertex_count() || r.nh() != h.vertex_count()) {
    throw CertificateError("certificate index set does not match the graphs and level");
  }
  std::vector<Violation> out;
  auto full = [&] { return opts.max_violations != 0 && out.size() >= opts.max_violations; };
  auto report = [&](const char* cond, const Word& s, const Word& t, std::string detail) {
    if (!full()) out.push_back({cond, s, t, std::move(detail)});
  };
  const auto& words = r.words();
  const std::size_t n = words.size();

  // (i)
  if (r.at(0, 0) != 1) report("i", {}, {}, "entry (eps,eps) is " + rational_string(r.at(0, 0)));

  for (std::size_t i = 0; i < n && !full(); ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (r.at(i, j) != r.at(j, i)) report("symmetry", words[i], words[j], "entry differs from its transpose");

  // (ii): one representative entry per class of s^R t.
  {
    std::unordered_map<Word, std::pair<std::size_t, std::size_t>, WordHash> first;
    std::unordered_map<Word, Word, WordHash> memo;
    const std::size_t max_len = 2 * static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < n && !full(); ++i) {
      const Word sr = reversed(words[i]);
      for (std::size_t j = 0; j < n; ++j) {
        const Word w = concat(sr, words[j]);
        auto it = memo.find(w);
        if (it == memo.end()) it = memo.emplace(w, word_canonical(w, max_len)).first;
        const auto [pos, fresh] = first.emplace(it->second, std::make_pair(i, j));
        if (fresh) continue;
        const auto [a, b] = pos->second;
        if (r.at(a, b) != r.at(i, j)) {
          report("ii", words[i], words[j],
                 "differs from equivalent entry (" + word_string(r, words[a]) + ", " + word_string(r, words[b]) + ")");
        }
      }
    }
  }

  // (iii): insert a letter into u = s s' at every position.
  {
    const std::size_t ng = r.ng(), nh = r.nh();
    for (std::size_t ui = 0; ui < n && !full(); ++ui) {
      const Word& u = words[ui];
      if (static_cast<int>(u.size()) + 1 > k) break;  // words are sorted by length
      for (std::size_t pos = 0; pos <= u.size(); ++pos) {
        auto with = [&](Vertex gv, Vertex hv) {
          Word w = u;
          w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), r.letter(gv, hv));
          return r.index_of(w);
        };
        auto check = [&](bool over_h, Vertex fixed, bool rows) {
          std::vector<std::size_t> idx;
          const std::size_t range = over_h ? nh : ng;
          for (Vertex x = 0; x < range; ++x) idx.push_back(over_h ? with(fixed, x) : with(x, fixed));
          for (std::size_t t = 0; t < n; ++t) {
            mpq_class sum = 0;
            for (std::size_t a : idx) sum += rows ? r.at(a, t) : r.at(t, a);
            const mpq_class& target = rows ? r.at(ui, t) : r.at(t, ui);
            if (sum != target) {
              const std::string which = std::string(over_h ? "sum over h' with g = " : "sum over g' with h = ") +
                                        std::to_string(fixed) + " at position " + std::to_string(pos);
              report("iii", rows ? u : words[t], rows ? words[t] : u,
                     which + (rows ? " (row side)" : " (column side)") + ": " + rational_string(sum) + " vs " +
                         rational_string(target));
            }
          }
        };
        for (Vertex gv = 0; gv < ng; ++gv) {
          check(true, gv, true);
          check(true, gv, false);
        }
        for (Vertex hv = 0; hv < nh; ++hv) {
          check(false, hv, true);
          check(false, hv, false);
        }
      }
    }
  }

  // (iv): literally consecutive letters of s^R t.
  for (std::size_t i = 0; i < n && !full(); ++i) {
    const Word sr = reversed(words[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(r.at(i, j)) == 0) continue;
      const Word w = concat(sr, words[j]);
      for (std::size_t q = 0; q + 1 < w.size(); ++q) {
        const Vertex g1 = r.g_of(w[q]), h1 = r.h_of(w[q]), g2 = r.g_of(w[q + 1]), h2 = r.h_of(w[q + 1]);
        if (rel(g, g1, g2) != rel(h, h1, h2)) {
          report("iv", words[i], words[j],
                 "letters " + std::to_string(q) + "," + std::to_string(q + 1) + " disagree (" +
                     to_string(rel(g, g1, g2)) + " vs " + to_string(rel(h, h1, h2)) + ") but entry is " +
                     rational_string(r.at(i, j)));
          break;
        }
      }
    }
  }

  if (opts.check_psd && !full()) {
    std::vector<mpq_class> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] = r.at(i, j);
    std::size_t bad = 0;
    if (!is_psd_exact(std::move(m), n, &bad)) report("psd", words[bad], words[bad], "matrix is not positive semidefinite");
  }
  return out;
}

nlohmann::json certificate_to_json(const NpaCertificate& r) {
  nlohmann::json words = nlohmann::json::array();
  for (const Word& w : r.words()) {
    nlohmann::json jw = nlohmann::json::array();
    for (auto x : w) jw.push_back({r.g_of(x), r.h_of(x)});
    words.push_back(std::move(jw));
  }
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < r.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < r.size(); ++j) row.push_back(rational_string(r.at(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"k", r.k()}, {"ng", r.ng()}, {"nh", r.nh()}, {"words", words}, {"entries", rows}};
}

NpaCertificate certificate_from_json(const nlohmann::json& j) {
  NpaCertificate r(j.at("k").get<int>(), j.at("ng").get<std::size_t>(), j.at("nh").get<std::size_t>());
  const auto& jw = j.at("words");
  if (jw.size() != r.size()) throw CertificateError("certificate index set has the wrong size");
  std::vector<std::size_t> position(r.size());
  for (std::size_t i = 0; i < jw.size(); ++i) {
    Word w;
    for (const auto& letter : jw[i]) {
      const auto gv = letter.at(0).get<Vertex>();
      const auto hv = letter.at(1).get<Vertex>();
      if (gv >= r.ng() || hv >= r.nh()) throw CertificateError("letter outside the alphabet");
      w.push_back(r.letter(gv, hv));
    }
    position[i] = r.index_of(w);
  }
  const auto& rows = j.at("entries");
  if (rows.size() != r.size()) throw CertificateError("entry matrix has the wrong number of rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != r.size()) throw CertificateError("entry matrix row has the wrong length");
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      mpq_class q;
      if (q.set_str(rows[i][c].get<std::string>(), 10) != 0 || sgn(q.get_den()) == 0) {
        throw CertificateError("malformed rational entry");
      }
      q.canonicalize();
      r.at(position[i], position[c]) = q;
    }
  }
  return r;
}

nlohmann::json violation_to_json(const NpaCertificate& r, const Violation& v) {
  return {{"condition", v.condition}, {"s", word_string(r, v.s)}, {"t", word_string(r, v.t)}, {"detail", v.detail}};
}

}  // namespace npaiso
