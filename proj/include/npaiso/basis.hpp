#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "npaiso/bilabelled.hpp"
#include "npaiso/kernels.hpp"
#include "npaiso/rng.hpp"

namespace npaiso {

/// Linearly independent vectors over a field, kept twice: as inserted (with the
/// expression that produced each) and as a row-echelon form whose rows are
/// normalized to a leading 1 and sorted by pivot column.
template <class Field>
class IncrementalBasis {
 public:
  using Elem = typename Field::Elem;
  using Vec = std::vector<Elem>;

  IncrementalBasis(Field field, std::size_t dimension) : field_(std::move(field)), dim_(dimension) {}

  const Field& field() const { return field_; }
  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return originals_.size(); }

  /// Inserted vectors in insertion order, with their provenance.
  const Vec& original(std::size_t i) const { return originals_[i]; }
  const ExprPtr& provenance(std::size_t i) const { return provenance_[i]; }

  const std::vector<Vec>& echelon_rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residual of v after elimination against the echelon rows.
  Vec reduce(Vec v) const {
    std::vector<Vec> one{std::move(v)};
    reduce_many(one);
    return std::move(one.front());
  }

  /// Reduces every vector in place. Rows are applied four at a time: the
  /// coefficients are settled on the pivot columns first, then one combined
  /// update sweeps the tail. Each block of rows is visited once for the whole
  /// batch, so it is read from memory once rather than once per vector.
  void reduce_many(std::vector<Vec>& vs) const {
    for (const Vec& v : vs) check(v);
    const std::size_t r = rows_.size();
    for (std::size_t j = 0; j < r; j += 4) {
      const std::size_t m = std::min<std::size_t>(4, r - j);
      for (Vec& v : vs) {
        Elem c[4];
        const Vec* x[4];
        std::size_t used = 0;
        for (std::size_t a = 0; a < m; ++a) {
          Elem e = v[pivots_[j + a]];
          for (std::size_t b = 0; b < used; ++b) e = field_.sub(e, field_.mul(c[b], (*x[b])[pivots_[j + a]]));
          if (field_.is_zero(e)) continue;
          c[used] = e;
          x[used] = &rows_[j + a];
          ++used;
        }
        if (used > 0) kernels::sub_combination(field_, v, c, x, used, pivots_[j]);
      }
    }
  }

  bool contains(const Vec& v) const {
    const Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [&](const Elem& e) { return field_.is_zero(e); });
  }

  /// Adds v when it lies outside the span; returns whether it was added.
  bool insert_if_independent(const Vec& v, ExprPtr provenance) {
    return insert_batch({v}, {std::move(provenance)}).front() == BatchStatus::Inserted;
  }

  enum class BatchStatus { Inserted, Dependent, Skipped };

  /// Same outcome as inserting the vectors one by one in order. With
  /// `stop_after`, processing ends after the first inserted vector whose flag
  /// is set and the remaining vectors are reported as Skipped.
  std::vector<BatchStatus> insert_batch(std::vector<Vec> vs, std::vector<ExprPtr> provenance,
                                        const std::vector<bool>& stop_after = {}) {
    if (provenance.size() != vs.size()) throw std::invalid_argument("basis: provenance count mismatch");
    std::vector<Vec> residual = vs;
    reduce_many(residual);
    std::vector<BatchStatus> status(vs.size(), BatchStatus::Skipped);
    // Rows added by this batch, by pivot. They vanish on the older pivots, as
    // do the residuals, so applying them afterwards keeps the result exact.
    std::vector<std::pair<std::size_t, std::size_t>> fresh;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      Vec& r = residual[i];
      for (const auto& [pivot, at] : fresh) {
        const Elem c = r[pivot];
        if (!field_.is_zero(c)) kernels::sub_scaled(field_, r, c, rows_[at], pivot);
      }
      const auto lead = std::find_if(r.begin(), r.end(), [&](const Elem& e) { return !field_.is_zero(e); });
      if (lead == r.end()) {
        status[i] = BatchStatus::Dependent;
        continue;
      }
      const std::size_t pivot = static_cast<std::size_t>(lead - r.begin());
      const Elem scale = field_.inv(*lead);
      for (std::size_t c = pivot; c < r.size(); ++c) r[c] = field_.mul(r[c], scale);
      const auto at = static_cast<std::size_t>(std::upper_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin());
      pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), pivot);
      rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(r));
      for (auto& f : fresh)
        if (f.second >= at) ++f.second;
      fresh.insert(std::upper_bound(fresh.begin(), fresh.end(), std::make_pair(pivot, at)), {pivot, at});
      originals_.push_back(std::move(vs[i]));
      provenance_.push_back(std::move(provenance[i]));
      status[i] = BatchStatus::Inserted;
      if (i < stop_after.size() && stop_after[i]) break;
    }
    return status;
  }

  /// Uniformly random vector y with <y, b> = 0 for every b in the span: free
  /// coordinates are drawn at random, pivot coordinates are solved bottom-up.
  Vec sample_annihilator(CounterRng& rng) const {
    Vec y(dim_);
    std::vector<bool> is_pivot(dim_, false);
    for (std::size_t p : pivots_) is_pivot[p] = true;
    for (std::size_t i = 0; i < dim_; ++i) y[i] = is_pivot[i] ? field_.zero() : random_elem(rng);
    for (std::size_t j = rows_.size(); j-- > 0;) {
      const Vec& row = rows_[j];
      Elem s = field_.zero();
      for (std::size_t c = pivots_[j] + 1; c < dim_; ++c) {
        if (!field_.is_zero(row[c])) s = field_.add(s, field_.mul(row[c], y[c]));
      }
      y[pivots_[j]] = field_.neg(s);
    }
    return y;
  }

  Elem random_elem(CounterRng& rng) const {
    return field_.from_integer(rng.below(mpz_class(field_.modulus_mpz())));
  }

 private:
  void check(const Vec& v) const {
    if (v.size() != dim_) {
      throw std::invalid_argument("basis: vector of length " + std::to_string(v.size()) + ", expected " +
                                  std::to_string(dim_));
    }
  }

  Field field_;
  std::size_t dim_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vec> originals_;
  std::vector<ExprPtr> provenance_;
};

/// Rank of a list of vectors by one-shot Gaussian elimination.
template <class Field>
std::size_t rank_of(const Field& f, std::vector<std::vector<typename Field::Elem>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && f.is_zero(m[piv][c])) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const auto inv = f.inv(m[rank][c]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (f.is_zero(m[r][c])) continue;
      const auto factor = f.mul(m[r][c], inv);
      for (std::size_t j = c; j < cols; ++j) m[r][j] = f.sub(m[r][j], f.mul(factor, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace npaiso
