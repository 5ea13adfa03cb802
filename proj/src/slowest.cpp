#include "slowwalk/slowest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slowwalk/characterization.hpp"

namespace slowwalk {

ValidSet::ValidSet(std::vector<Params> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw std::invalid_argument("valid set members must be distinct");
  }
}

namespace {
std::vector<Params> to_params(std::initializer_list<std::pair<std::int64_t, std::int64_t>> pairs) {
  std::vector<Params> out;
  for (const auto& [alpha, beta] : pairs) out.push_back(make_params(alpha, beta));
  return out;
}
}  // namespace

ValidSet::ValidSet(std::initializer_list<std::pair<std::int64_t, std::int64_t>> pairs) : ValidSet(to_params(pairs)) {}

bool ValidSet::contains(std::int64_t alpha, std::int64_t beta) const {
  return std::any_of(members_.begin(), members_.end(),
                     [&](const Params& p) { return p.alpha() == alpha && p.beta() == beta; });
}

ValidSet default_R() { return ValidSet{{1, 1}, {2, 1}, {1, 2}, {1, 3}, {1, 4}}; }

bool SlowestReport::achieved_by(std::int64_t alpha, std::int64_t beta) const {
  return std::any_of(achievers.begin(), achievers.end(),
                     [&](const Params& p) { return p.alpha() == alpha && p.beta() == beta; });
}

bool SlowestReport::exclusively(std::int64_t alpha, std::int64_t beta) const {
  return achievers.size() == 1 && achieved_by(alpha, beta);
}

std::string SlowestReport::achievers_label() const {
  std::string out;
  for (const Params& p : achievers) {
    if (!out.empty()) out += ';';
    out += p.label();
  }
  return out;
}

SlowestReport ss_and_S(const BigInt& n, const ValidSet& T) {
  if (n <= 1) throw std::invalid_argument("slowest walks are defined for n > 1");
  if (T.size() == 0) throw std::invalid_argument("valid set is empty");
  SlowestReport out{n, 0, {}};
  for (const Params& member : T.members()) {
    const long s = characterize(member, n).s;
    if (s > out.ss) {
      out.ss = s;
      out.achievers.clear();
    }
    if (s == out.ss) out.achievers.push_back(member);
  }
  return out;
}

GammaMin gamma_min(const ValidSet& T) {
  if (T.size() == 0) throw std::invalid_argument("valid set is empty");
  GammaMin out{T.members().front().gamma(), {}};
  for (const Params& member : T.members()) {
    if (member.gamma() < out.gamma) {
      out.gamma = member.gamma();
      out.argmin.clear();
    }
    if (member.gamma() == out.gamma) out.argmin.push_back(member);
  }
  return out;
}

FiniteFilters finite_R_T(const ValidSet& T) {
  const GammaMin gm = gamma_min(T);
  const Real sq = gm.gamma * gm.gamma;
  const Real fourth = sq * sq;
  FiniteFilters out;
  for (const Params& member : T.members()) {
    if (member.gamma() < fourth) out.candidate_superset.push_back(member);
    if (member.gamma() < sq) out.conjectured.push_back(member);
  }
  return out;
}

std::vector<SlowestReport> slowest_scan(const ValidSet& T, std::int64_t n_max) {
  std::vector<SlowestReport> out;
  for (std::int64_t m = 2; m <= n_max; ++m) out.push_back(ss_and_S(big(m), T));
  return out;
}

namespace {

template <typename Hit, typename Value>
std::vector<SeriesRow> sample(const std::vector<SlowestReport>& scan, std::int64_t stride, Hit hit, Value value) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  std::vector<SeriesRow> rows;
  std::int64_t count = 0;
  std::int64_t n = 1;
  for (const SlowestReport& report : scan) {
    n = to_int64(report.n);
    if (hit(report)) ++count;
    if (n % stride == 0) rows.push_back({n, value(count, n)});
  }
  if (!scan.empty() && n % stride != 0) rows.push_back({n, value(count, n)});
  return rows;
}

}  // namespace

std::vector<SeriesRow> i_series_from(const std::vector<SlowestReport>& scan, const Params& target, std::int64_t stride) {
  return sample(
      scan, stride, [&](const SlowestReport& r) { return r.achieved_by(target.alpha(), target.beta()); },
      [](std::int64_t count, std::int64_t) { return static_cast<double>(count); });
}

std::vector<SeriesRow> e_series_from(const std::vector<SlowestReport>& scan, const Params& target, std::int64_t stride) {
  return sample(
      scan, stride, [&](const SlowestReport& r) { return r.exclusively(target.alpha(), target.beta()); },
      [](std::int64_t count, std::int64_t n) { return static_cast<double>(count) / static_cast<double>(n); });
}

std::vector<SeriesRow> i_series(const ValidSet& T, const Params& target, std::int64_t n_max, std::int64_t stride) {
  if (!T.contains(target)) throw std::invalid_argument("target must belong to the valid set");
  return i_series_from(slowest_scan(T, n_max), target, stride);
}

std::vector<SeriesRow> e_series(const ValidSet& T, const Params& target, std::int64_t n_max, std::int64_t stride) {
  if (!T.contains(target)) throw std::invalid_argument("target must belong to the valid set");
  return e_series_from(slowest_scan(T, n_max), target, stride);
}

double loglog_slope_top_decade(const std::vector<SeriesRow>& rows) {
  if (rows.empty()) return std::nan("");
  const double floor_n = static_cast<double>(rows.back().n) / 10.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (const SeriesRow& row : rows) {
    if (static_cast<double>(row.n) < floor_n || row.value <= 0) continue;
    const double x = std::log(static_cast<double>(row.n));
    const double y = std::log(row.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k < 2) return std::nan("");
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

namespace {

WitnessCheck check(const char* n, std::vector<std::pair<std::int64_t, std::int64_t>> expected) {
  const BigInt value = parse_decimal(n);
  SlowestReport report = ss_and_S(value, default_R());
  bool ok = report.achievers.size() == expected.size();
  for (const auto& [alpha, beta] : expected) ok = ok && report.achieved_by(alpha, beta);
  return {value, std::move(expected), std::move(report), ok};
}

}  // namespace

std::vector<WitnessCheck> exclusive_witnesses() {
  return {check("171", {{1, 2}}), check("22619537", {{2, 1}}), check("11228332", {{1, 3}}),
          check("5000966512101628011743180761388223", {{1, 4}})};
}

std::vector<WitnessCheck> shared_witnesses() {
  return {check("32", {{1, 1}, {1, 2}}), check("40", {{1, 1}, {1, 3}}), check("3363", {{1, 1}, {2, 1}}),
          check("5307721328585529", {{1, 1}, {1, 4}})};
}

}  // namespace slowwalk
