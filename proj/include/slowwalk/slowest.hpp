#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "slowwalk/bigint.hpp"
#include "slowwalk/core_sequences.hpp"
#include "slowwalk/real.hpp"

namespace slowwalk {

/// A finite family of distinct coprime pairs, kept in ascending (alpha, beta)
/// order.
class ValidSet {
 public:
  explicit ValidSet(std::vector<Params> members);
  ValidSet(std::initializer_list<std::pair<std::int64_t, std::int64_t>> pairs);

  const std::vector<Params>& members() const { return members_; }
  bool contains(std::int64_t alpha, std::int64_t beta) const;
  bool contains(const Params& params) const { return contains(params.alpha(), params.beta()); }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<Params> members_;
};

// {(1,1), (2,1), (1,2), (1,3), (1,4)}
ValidSet default_R();

struct SlowestReport {
  BigInt n;
  long ss;
  std::vector<Params> achievers;  // ascending (alpha, beta)

  bool achieved_by(std::int64_t alpha, std::int64_t beta) const;
  bool exclusively(std::int64_t alpha, std::int64_t beta) const;
  std::string achievers_label() const;  // "1:1;1:2"
};

// Requires n > 1.
SlowestReport ss_and_S(const BigInt& n, const ValidSet& T);

struct GammaMin {
  Real gamma;
  std::vector<Params> argmin;
};

GammaMin gamma_min(const ValidSet& T);

struct FiniteFilters {
  std::vector<Params> candidate_superset;  // log_Gamma(gamma) < 4
  std::vector<Params> conjectured;         // gamma < Gamma^2
};

FiniteFilters finite_R_T(const ValidSet& T);

struct SeriesRow {
  std::int64_t n;
  double value;
};

// S_T(m) for m = 2..n_max, in order.
std::vector<SlowestReport> slowest_scan(const ValidSet& T, std::int64_t n_max);

// i(n) = |{2 <= m <= n : target in S_T(m)}|, sampled at multiples of stride
// and at n_max.
std::vector<SeriesRow> i_series(const ValidSet& T, const Params& target, std::int64_t n_max, std::int64_t stride);
// e(n) = |{2 <= m <= n : S_T(m) = {target}}| / n, same sampling.
std::vector<SeriesRow> e_series(const ValidSet& T, const Params& target, std::int64_t n_max, std::int64_t stride);

// Both series from an existing scan (avoids recomputation).
std::vector<SeriesRow> i_series_from(const std::vector<SlowestReport>& scan, const Params& target, std::int64_t stride);
std::vector<SeriesRow> e_series_from(const std::vector<SlowestReport>& scan, const Params& target, std::int64_t stride);

// Least-squares slope of log(value) against log(n) over rows with
// n >= n_last/10 and value > 0.
double loglog_slope_top_decade(const std::vector<SeriesRow>& rows);

struct WitnessCheck {
  BigInt n;
  std::vector<std::pair<std::int64_t, std::int64_t>> expected;
  SlowestReport report;
  bool ok;
};

// Recomputes the four singleton achiever sets over R.
std::vector<WitnessCheck> exclusive_witnesses();

// The two-element achiever sets over R.
std::vector<WitnessCheck> shared_witnesses();

}  // namespace slowwalk
