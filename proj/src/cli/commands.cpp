#include "slowwalk/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "slowwalk/characterization.hpp"
#include "slowwalk/cli/csv.hpp"
#include "slowwalk/cli/selftest.hpp"
#include "slowwalk/density.hpp"
#include "slowwalk/errors.hpp"
#include "slowwalk/extremal_bounds.hpp"
#include "slowwalk/oracles.hpp"
#include "slowwalk/slowest.hpp"

namespace slowwalk::cli {

namespace {

/// Every flag of every subcommand; each subcommand binds the ones it uses.
struct RunConfig {
  std::int64_t alpha = 1;
  std::int64_t beta = 1;
  std::string n;
  std::string b;
  std::string a;
  std::int64_t p = 1;
  long r = 6;
  long t = 12;
  long k = 10;
  std::vector<double> c;
  int grid = 17;
  std::string T;
  std::string target;
  std::string series = "i";
  std::int64_t nmax = 0;
  std::int64_t stride = 100;
  std::string out;
  std::string format = "csv";
  bool verify = false;
  bool theory = false;
  bool resume = false;
  bool quick = false;
  bool inject_fault = false;
};

std::pair<std::int64_t, std::int64_t> parse_pair(const std::string& token) {
  const std::size_t colon = token.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("expected a:b, got '" + token + "'");
  return {to_int64(parse_decimal(token.substr(0, colon))), to_int64(parse_decimal(token.substr(colon + 1)))};
}

ValidSet parse_valid_set(const std::string& text) {
  if (text.empty()) return default_R();
  std::vector<Params> members;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    const auto [alpha, beta] = parse_pair(token);
    members.push_back(make_params(alpha, beta));
  }
  return ValidSet(std::move(members));
}

BigInt parse_n(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("--n is required");
  return parse_decimal(text);
}

std::string opt(const std::optional<double>& value) { return value ? format_density(*value) : std::string(); }

/// Writes a table to --out or to the output stream in the requested format.
void emit(const Table& table, const RunConfig& cfg, std::ostream& out) {
  std::string body;
  if (cfg.format == "json") {
    body = to_json(table).dump(2) + "\n";
  } else {
    body = to_csv(table);
  }
  if (cfg.out.empty()) {
    out << body;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw std::invalid_argument("cannot write " + cfg.out);
  file << body;
}

/// Append-only CSV sink for resumable scans. Rows are flushed one at a time so
/// an interruption leaves at most one partial line, which the next resume cuts.
class RowSink {
 public:
  RowSink(const RunConfig& cfg, std::vector<std::string> header, std::ostream& out)
      : header_(std::move(header)), out_(out), to_file_(!cfg.out.empty()), json_(cfg.format == "json") {
    if (cfg.resume) {
      if (!to_file_) throw std::invalid_argument("--resume needs --out");
      if (json_) throw std::invalid_argument("--resume works with CSV output only");
      existing_ = resume_csv(cfg.out, header_).rows;
    }
    if (to_file_ && !json_) {
      const bool fresh = !cfg.resume || !std::filesystem::exists(cfg.out) || std::filesystem::file_size(cfg.out) == 0;
      file_.open(cfg.out, std::ios::binary | (fresh ? std::ios::trunc : std::ios::app));
      if (!file_) throw std::invalid_argument("cannot write " + cfg.out);
      if (fresh) file_ << csv_line(header_) << "\n" << std::flush;
    } else if (!json_) {
      out_ << csv_line(header_) << "\n";
    }
    json_path_ = cfg.out;
  }

  const std::vector<std::vector<std::string>>& existing() const { return existing_; }

  void write(const std::vector<std::string>& row) {
    if (json_) {
      buffered_.push_back(row);
    } else if (to_file_) {
      file_ << csv_line(row) << "\n" << std::flush;
    } else {
      out_ << csv_line(row) << "\n";
    }
  }

  void finish() {
    if (!json_) return;
    const std::string body = to_json(Table{header_, buffered_}).dump(2) + "\n";
    if (to_file_) {
      std::ofstream file(json_path_, std::ios::binary | std::ios::trunc);
      file << body;
    } else {
      out_ << body;
    }
  }

 private:
  std::vector<std::string> header_;
  std::ostream& out_;
  bool to_file_;
  bool json_;
  std::ofstream file_;
  std::string json_path_;
  std::vector<std::vector<std::string>> existing_;
  std::vector<std::vector<std::string>> buffered_;
};

// --- subcommands -----------------------------------------------------------

int cmd_pairs(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Params params = make_params(cfg.alpha, cfg.beta);
  const BigInt n = parse_n(cfg.n);
  const DivisibilityTest divisible = cfg.inject_fault ? off_by_one_divisibility : is_t_divisible;
  Table table{{"alpha", "beta", "n", "s", "t", "k", "b", "a"}, {}};
  const std::string head_a = std::to_string(cfg.alpha);
  const std::string head_b = std::to_string(cfg.beta);

  std::optional<Certificate> cert;
  try {
    cert = characterize(params, n, divisible);
  } catch (const ConsistencyError&) {
    if (!cfg.verify) throw;
  }
  if (cfg.verify) {
    if (!n.fits_slong_p() || n > BigInt(1L << 62)) throw std::invalid_argument("--verify needs n below 2^62");
    const OracleResult oracle = s_oracle_diophantine(params, to_int64(n));
    std::optional<std::string> diff =
        cert ? oracle_mismatch(*cert, oracle) : std::optional<std::string>("engine found no consistent certificate");
    if (diff) {
      err << "oracle mismatch: " << *diff << "\n";
      return kExitConsistency;
    }
    err << "verified against the Diophantine oracle (s=" << oracle.s << ")\n";
  }

  if (cert->degenerate) {
    err << "s(n)=2: every pair (x, n) is n-good\n";
    table.rows.push_back({head_a, head_b, to_decimal(n), "2", "", "", "", ""});
  } else {
    const GoodPairFamily family = enumerate_good_pairs(*cert);
    for (std::size_t k = 0; k < family.pairs.size(); ++k) {
      table.rows.push_back({head_a, head_b, to_decimal(n), std::to_string(cert->s), std::to_string(cert->t),
                            std::to_string(k), to_decimal(family.pairs[k].b), to_decimal(family.pairs[k].a)});
    }
  }
  emit(table, cfg, out);
  return kExitOk;
}

int cmd_walk(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Params params = make_params(cfg.alpha, cfg.beta);
  const BigInt b = parse_decimal(cfg.b);
  const BigInt a = parse_decimal(cfg.a);
  if (sgn(a) <= 0 || sgn(b) <= 0) throw std::invalid_argument("walk seeds must be positive");
  if (cfg.k < 1) throw std::invalid_argument("--k must be >= 1");
  Table table{{"k", "w"}, {}};
  for (long k = 1; k <= cfg.k; ++k) table.rows.push_back({std::to_string(k), to_decimal(walk_term(params, b, a, k))});
  emit(table, cfg, out);
  return kExitOk;
}

int cmd_p(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Params params = make_params(cfg.alpha, cfg.beta);
  const BigInt n = parse_n(cfg.n);
  const Certificate cert = characterize(params, n);
  const PairCount p = pair_count(cert);
  Table table{{"alpha", "beta", "n", "s", "p"}, {}};
  table.rows.push_back({std::to_string(cfg.alpha), std::to_string(cfg.beta), to_decimal(n), std::to_string(cert.s),
                        p.is_unbounded() ? "unbounded" : std::to_string(p.value())});
  emit(table, cfg, out);
  return kExitOk;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Params params = make_params(cfg.alpha, cfg.beta);
  const BigInt n = parse_n(cfg.n);
  const Certificate cert = characterize(params, n);
  Table table{{"alpha", "beta", "n", "s", "chicken_lower", "envelope_lower", "envelope_upper", "within_envelope"}, {}};
  std::vector<std::string> row{std::to_string(cfg.alpha), std::to_string(cfg.beta), to_decimal(n),
                               std::to_string(cert.s), std::to_string(s_lower_chicken(params, n))};
  if (cert.degenerate) {
    row.insert(row.end(), {"", "", ""});
  } else {
    const SBounds env = s_bounds(params, n);
    row.push_back(format_density(env.lower));
    row.push_back(format_density(env.upper));
    row.push_back(check_s_bounds(params, n, cert.s).ok() ? "true" : "false");
  }
  table.rows.push_back(std::move(row));
  emit(table, cfg, out);
  return kExitOk;
}

int cmd_extremal(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Params params = make_params(cfg.alpha, cfg.beta);
  if (cfg.t < 2) throw std::invalid_argument("--t must be >= 2");
  Table table{{"t", "n", "a", "b", "p", "k_t"}, {}};
  for (long t = 2; t <= cfg.t; ++t) {
    const ExtremalWitness w = extremal_witness(params, t);
    const PairCount p = p_of_n(params, w.n);
    table.rows.push_back({std::to_string(t), to_decimal(w.n), to_decimal(w.a), to_decimal(w.b),
                          std::to_string(p.value()), t >= 3 ? std::to_string(k_t(params, t)) : ""});
  }
  emit(table, cfg, out);

  const KtStabilization kt = k_t_stabilization(params);
  err << "max p(n): " << max_p_bound(params) << "\n"
      << "value attained infinitely often: " << recurrent_p_value(params) << "\n"
      << "maximum attained infinitely often (alpha >= beta): " << (infinitely_max_iff(params) ? "yes" : "no") << "\n"
      << "k_t on [" << kt.t_lo << "," << kt.t_hi << "]: limit " << kt.limit << ", "
      << (kt.stable ? "constant" : "not constant") << ", onset " << kt.onset << "\n";
  if (cfg.nmax > 0) {
    const MaxAttainmentScan scan = scan_max_attainment(params, cfg.nmax);
    err << "attainments of " << scan.bound << " per window up to " << scan.n_max << ":";
    for (std::int64_t c : scan.window_counts) err << " " << c;
    err << "\n";
  }
  return kExitOk;
}

std::vector<std::string> density_header() {
  return {"alpha", "beta", "p", "r", "c", "n_cr", "count", "empirical_density", "theory_density"};
}

int cmd_density(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Params params = make_params(cfg.alpha, cfg.beta);
  if (cfg.p < 1) throw std::invalid_argument("--p must be >= 1");
  if (cfg.r < 2) throw std::invalid_argument("--r must be >= 2");
  if (cfg.theory) {
    const std::int64_t top = ceil_gamma_squared(params) - 2;
    if (cfg.p < params.beta() || cfg.p > top) {
      throw RegimeError("density formula needs beta <= p <= ceil(gamma^2) - 2 = " + std::to_string(top));
    }
    for (double c : cfg.c) {
      if (!theory_applies(params, cfg.p, c)) throw RegimeError("density formula does not apply at c=" + std::to_string(c));
    }
  }
  std::vector<double> grid = cfg.c.empty() ? default_c_grid(params, cfg.grid) : cfg.c;
  std::sort(grid.begin(), grid.end());
  for (double c : grid) {
    if (!(c >= 1.0)) throw std::invalid_argument("c must be >= 1");
  }

  RowSink sink(cfg, density_header(), out);
  const auto& done = sink.existing();
  if (done.size() > grid.size()) throw std::invalid_argument("existing file has more rows than the grid");
  for (std::size_t i = 0; i < done.size(); ++i) {
    if (done[i].size() < 5 || done[i][4] != format_density(grid[i])) {
      throw std::invalid_argument("existing file does not match this grid at row " + std::to_string(i + 1));
    }
  }
  if (!done.empty()) err << "resuming after " << done.size() << " complete rows\n";
  const std::vector<double> rest(grid.begin() + static_cast<std::ptrdiff_t>(done.size()), grid.end());
  if (!rest.empty()) {
    for (const DensityRow& row : density_curve(DensityJob{params, cfg.p, cfg.r, rest})) {
      sink.write({std::to_string(cfg.alpha), std::to_string(cfg.beta), std::to_string(cfg.p), std::to_string(cfg.r),
                  format_density(row.c), to_decimal(row.n_cr), to_decimal(row.count),
                  format_density(row.empirical_density), opt(row.theory_density)});
    }
  }
  sink.finish();
  return kExitOk;
}

int cmd_slowest(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const BigInt n = parse_n(cfg.n);
  if (n <= 1) throw std::invalid_argument("slowest walks are defined for n > 1");
  const SlowestReport report = ss_and_S(n, parse_valid_set(cfg.T));
  emit(Table{{"n", "ss", "achievers"}, {{to_decimal(n), std::to_string(report.ss), report.achievers_label()}}}, cfg,
       out);
  return kExitOk;
}

int cmd_slowest_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ValidSet T = parse_valid_set(cfg.T);
  const auto [ta, tb] = parse_pair(cfg.target);
  if (!T.contains(ta, tb)) throw std::invalid_argument("--target must belong to the valid set");
  if (cfg.nmax < 2) throw std::invalid_argument("--nmax must be >= 2");
  if (cfg.stride < 1) throw std::invalid_argument("--stride must be >= 1");
  if (cfg.series != "i" && cfg.series != "e") throw std::invalid_argument("--series must be i or e");
  const bool exclusive = cfg.series == "e";

  RowSink sink(cfg, {"n", "value"}, out);
  std::int64_t m = 2;
  std::int64_t count = 0;
  if (!sink.existing().empty()) {
    const auto& last = sink.existing().back();
    const std::int64_t n = to_int64(parse_decimal(last.at(0)));
    const double value = std::stod(last.at(1));
    count = exclusive ? std::llround(value * static_cast<double>(n)) : std::llround(value);
    m = n + 1;
    err << "resuming at n=" << m << "\n";
  }
  for (; m <= cfg.nmax; ++m) {
    const SlowestReport report = ss_and_S(big(m), T);
    if (exclusive ? report.exclusively(ta, tb) : report.achieved_by(ta, tb)) ++count;
    if (m % cfg.stride == 0 || m == cfg.nmax) {
      const double value = exclusive ? static_cast<double>(count) / static_cast<double>(m) : static_cast<double>(count);
      sink.write({std::to_string(m), format_density(value)});
    }
  }
  sink.finish();
  return kExitOk;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SelftestOptions options;
  options.quick = cfg.quick;
  if (cfg.inject_fault) options.divisible = off_by_one_divisibility;
  const std::vector<SelftestRow> rows = run_selftest(options);
  std::vector<std::string> failed;
  for (const SelftestRow& row : rows) {
    out << std::left << std::setw(30) << row.label << (row.pass ? "PASS" : "FAIL") << "  " << std::fixed
        << std::setprecision(2) << std::setw(7) << std::right << row.seconds << "s";
    if (!row.pass) out << "  " << row.detail;
    out << "\n";
    if (!row.pass) failed.push_back(row.label);
  }
  if (failed.empty()) return kExitOk;
  err << "failing suites:";
  for (const std::string& label : failed) err << " " << label;
  err << "\n";
  return kExitConsistency;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Slow (alpha,beta)-walks: characterization, pair counts, densities and slowest walks", "slowwalk"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "alpha >= 1, coprime to beta")->capture_default_str();
    sub->add_option("--beta", cfg.beta, "beta >= 1, coprime to alpha")->capture_default_str();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--out", cfg.out, "write to this file instead of stdout");
  };
  auto add_fault = [&](CLI::App* sub) {
    sub->add_flag("--inject-fault", cfg.inject_fault, "use a broken divisibility test")->group("");
  };

  std::function<int()> action;
  auto bind = [&](CLI::App* sub, int (*fn)(const RunConfig&, std::ostream&, std::ostream&)) {
    sub->callback([&, fn] { action = [&, fn] { return fn(cfg, out, err); }; });
  };

  CLI::App* pairs = app.add_subcommand("pairs", "certificate (s, t, a, b) and every n-good pair");
  add_params(pairs);
  pairs->add_option("--n", cfg.n, "decimal n >= 1")->required();
  pairs->add_flag("--verify", cfg.verify, "cross-check against the Diophantine oracle");
  add_output(pairs);
  add_fault(pairs);
  bind(pairs, cmd_pairs);

  CLI::App* walk = app.add_subcommand("walk", "terms w_1..w_k of the walk seeded with (b, a)");
  add_params(walk);
  walk->add_option("--b", cfg.b, "w_1")->required();
  walk->add_option("--a", cfg.a, "w_2")->required();
  walk->add_option("--k", cfg.k, "number of terms")->capture_default_str();
  add_output(walk);
  bind(walk, cmd_walk);

  CLI::App* p = app.add_subcommand("p", "number of n-good pairs");
  add_params(p);
  p->add_option("--n", cfg.n, "decimal n >= 1")->required();
  add_output(p);
  bind(p, cmd_p);

  CLI::App* bounds = app.add_subcommand("bounds", "s(n) against its lower and upper envelopes");
  add_params(bounds);
  bounds->add_option("--n", cfg.n, "decimal n >= 1")->required();
  add_output(bounds);
  bind(bounds, cmd_bounds);

  CLI::App* extremal = app.add_subcommand("extremal", "extremal witnesses n_t = beta*g_t*g_{t+1}");
  add_params(extremal);
  extremal->add_option("--t", cfg.t, "largest index")->capture_default_str();
  extremal->add_option("--nmax", cfg.nmax, "also count attainments of the maximum up to this n");
  add_output(extremal);
  bind(extremal, cmd_extremal);

  CLI::App* density = app.add_subcommand("density", "empirical and predicted density of {m : p(m) > p}");
  add_params(density);
  density->add_option("--p", cfg.p, "pair-count threshold")->capture_default_str();
  density->add_option("--r", cfg.r, "scale exponent, r >= 2")->capture_default_str();
  density->add_option("--grid", cfg.grid, "number of evenly spaced c in [1, gamma^2]")->capture_default_str();
  density->add_option("--c", cfg.c, "explicit c values (comma separated)")->delimiter(',');
  density->add_flag("--theory", cfg.theory, "fail unless the closed form applies");
  density->add_flag("--resume", cfg.resume, "continue an interrupted --out file");
  add_output(density);
  bind(density, cmd_density);

  CLI::App* slowest = app.add_subcommand("slowest", "ss(n) and the pairs attaining it");
  slowest->add_option("--n", cfg.n, "decimal n > 1")->required();
  slowest->add_option("--T", cfg.T, "valid set as a:b,a:b (default 1:1,2:1,1:2,1:3,1:4)");
  add_output(slowest);
  bind(slowest, cmd_slowest);

  CLI::App* scan = app.add_subcommand("slowest-scan", "cumulative achiever series over 2..nmax");
  scan->add_option("--nmax", cfg.nmax, "last n")->required();
  scan->add_option("--target", cfg.target, "pair a:b in the valid set")->required();
  scan->add_option("--stride", cfg.stride, "sampling stride")->capture_default_str();
  scan->add_option("--T", cfg.T, "valid set as a:b,a:b (default 1:1,2:1,1:2,1:3,1:4)");
  scan->add_option("--series", cfg.series, "i: count of m with target among achievers; e: fraction of m with target "
                                           "the only achiever")
      ->capture_default_str();
  scan->add_flag("--resume", cfg.resume, "continue an interrupted --out file");
  add_output(scan);
  bind(scan, cmd_slowest_scan);

  CLI::App* selftest = app.add_subcommand("selftest", "run every invariant suite and print a pass/fail table");
  selftest->add_flag("--quick", cfg.quick, "n-caps reduced tenfold");
  add_fault(selftest);
  bind(selftest, cmd_selftest);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  try {
    return action();
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConsistency;
  }
}

}  // namespace slowwalk::cli
