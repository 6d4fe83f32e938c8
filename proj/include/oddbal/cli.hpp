#pragma once

// Command-line front end: one subcommand per report or verification.
// Exit codes: 0 all checks passed, 1 a check failed (a JSON failure record is
// written to stderr), 2 usage error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oddbal/asymptotics.hpp"
#include "oddbal/decomposition.hpp"
#include "oddbal/enumerator.hpp"
#include "oddbal/io.hpp"
#include "oddbal/parallel.hpp"
#include "oddbal/transforms.hpp"
#include "oddbal/unimodal_gf.hpp"

namespace oddbal::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct RunConfig {
  std::string subcommand;
  std::size_t n = 10;  // n-max for expand, n for enumerate
  std::size_t scan_n_max = 600;
  int a = 0;
  int c = 1;
  std::vector<std::size_t> checkpoints;
  std::vector<int> moduli{3, 5};
  std::vector<double> t_values{0.1, 0.05, 0.025};
  std::string grid = "default";
  std::string format = "csv";
  std::string output;  // empty: stdout
  int precision = 40;
  std::optional<double> threshold;
  std::string form = "printed";
  bool include_zeros = false;
  bool allow_even = false;
};

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void fail_record(std::ostream& err, const std::string& subcommand, const std::string& check, double observed,
                        double threshold, const std::string& detail = {}) {
  nlohmann::ordered_json rec{{"status", "check_failed"},
                             {"subcommand", subcommand},
                             {"check", check},
                             {"observed", observed},
                             {"threshold", threshold}};
  if (!detail.empty()) rec["detail"] = detail;
  err << rec.dump() << '\n';
}

inline bool json_out(const RunConfig& cfg) { return cfg.format == "json"; }

inline std::string join(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

inline std::string text(const BigInt& v) { return v.str(); }

// --- expand --------------------------------------------------------------

inline int run_expand(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto table = expand_V_rank(cfg.n);
  if (json_out(cfg)) {
    out << rank_table_json(table).dump(1) << '\n';
  } else {
    write_rank_table_csv(out, table, cfg.include_zeros);
  }
  return kOk;
}

// --- enumerate -----------------------------------------------------------

inline int run_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto seqs = enumerate_sequences(static_cast<int>(cfg.n));
  if (cfg.format == "csv") {
    out << "size,rank,sequence\n";
    for (const auto& s : seqs) out << s.size() << ',' << s.rank() << ',' << join(s.flatten(), ' ') << '\n';
  } else {
    for (const auto& s : seqs) out << to_json(s).dump() << '\n';  // JSON lines
  }
  return kOk;
}

// --- verify-transforms ---------------------------------------------------

inline int run_verify_transforms(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  struct Row {
    LawResidual r;
    double threshold;
  };
  std::vector<Row> rows;
  for (auto& r : verify_theta_eta_laws()) rows.push_back({r, cfg.threshold.value_or(1e-9)});
  for (auto& r : verify_appell_law()) rows.push_back({r, cfg.threshold.value_or(1e-8)});
  for (auto& r : verify_mordell_law()) rows.push_back({r, cfg.threshold.value_or(1e-8)});
  const Complex h00 = mordell(0.0, 0.0).value;
  rows.push_back({{"mordell(0;0) = 1", 0.0, 0.0, 0.0, std::abs(h00 - 1.0)}, cfg.threshold.value_or(1e-10)});

  int status = kOk;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  if (!json_out(cfg)) out << "law,tau_re,tau_im,z_re,z_im,v_re,v_im,residual,threshold,pass\n";
  for (const auto& [r, thr] : rows) {
    const bool pass = r.residual < thr;
    if (!pass) {
      status = kCheckFailed;
      fail_record(err, "verify-transforms", r.law, r.residual, thr,
                  "tau=" + csv_complex(r.tau) + " z=" + csv_complex(r.z));
    }
    if (json_out(cfg)) {
      arr.push_back({{"law", r.law},
                     {"tau", {format_double(r.tau.real()), format_double(r.tau.imag())}},
                     {"z", {format_double(r.z.real()), format_double(r.z.imag())}},
                     {"v", {format_double(r.v.real()), format_double(r.v.imag())}},
                     {"residual", format_double(r.residual)},
                     {"threshold", format_double(thr)},
                     {"pass", pass}});
    } else {
      out << r.law << ',' << csv_complex(r.tau) << ',' << csv_complex(r.z) << ',' << csv_complex(r.v) << ','
          << format_double(r.residual) << ',' << format_double(thr) << ',' << (pass ? "true" : "false") << '\n';
    }
  }
  if (json_out(cfg)) out << arr.dump(1) << '\n';
  return status;
}

// --- verify-decomposition ------------------------------------------------

inline std::vector<GridPoint> read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open grid file " + path);
  std::vector<GridPoint> grid;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double zr, zi, tr, ti;
    std::size_t order = 300;
    if (!(ls >> zr >> zi >> tr >> ti)) throw usage_error("grid line needs z_re,z_im,tau_re,tau_im[,order]: " + line);
    ls >> order;
    grid.push_back({{zr, zi}, {tr, ti}, order});
  }
  if (grid.empty()) throw usage_error("grid file " + path + " has no points");
  return grid;
}

inline int run_verify_decomposition(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto grid = cfg.grid == "default" ? default_decomposition_grid() : read_grid(cfg.grid);
  const double thr = cfg.threshold.value_or(1e-7);
  const auto samples =
      parallel_map(grid.size(), [&](std::size_t i) { return verify_decomposition(grid[i].z, grid[i].tau, grid[i].order); });
  const auto flips = scan_single_flips(samples);
  double worst = 0.0, worst_printed = 0.0;
  for (const auto& s : samples) {
    worst = std::max(worst, s.residual);
    worst_printed = std::max(worst_printed, s.residual_printed);
  }
  if (json_out(cfg)) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& s : samples) {
      arr.push_back({{"z", {format_double(s.point.z.real()), format_double(s.point.z.imag())}},
                     {"tau", {format_double(s.point.tau.real()), format_double(s.point.tau.imag())}},
                     {"order", s.order},
                     {"lhs", {format_double(s.lhs.real()), format_double(s.lhs.imag())}},
                     {"t1", {format_double(s.t1.real()), format_double(s.t1.imag())}},
                     {"t", {format_double(s.t.real()), format_double(s.t.imag())}},
                     {"t2", {format_double(s.t2.real()), format_double(s.t2.imag())}},
                     {"residual", format_double(s.residual)},
                     {"residual_printed_signs", format_double(s.residual_printed)}});
    }
    nlohmann::ordered_json scan = nlohmann::ordered_json::array();
    for (const auto& f : flips) scan.push_back({{"change", f.name}, {"max_residual", format_double(f.max_residual)}});
    out << nlohmann::ordered_json{{"samples", arr},
                                  {"max_residual", format_double(worst)},
                                  {"max_residual_printed_signs", format_double(worst_printed)},
                                  {"single_change_scan", scan}}
               .dump(1)
        << '\n';
  } else {
    out << "z_re,z_im,tau_re,tau_im,order,lhs_re,lhs_im,t1_re,t1_im,t_re,t_im,t2_re,t2_im,residual,residual_printed_signs\n";
    for (const auto& s : samples) {
      out << csv_complex(s.point.z) << ',' << csv_complex(s.point.tau) << ',' << s.order << ',' << csv_complex(s.lhs)
          << ',' << csv_complex(s.t1) << ',' << csv_complex(s.t) << ',' << csv_complex(s.t2) << ','
          << format_double(s.residual) << ',' << format_double(s.residual_printed) << '\n';
    }
  }
  err << "max residual (1+1/w)qV = T1 + T - wT2: " << format_double(worst) << '\n';
  err << "max residual with -T1 as commonly printed: " << format_double(worst_printed) << '\n';
  for (const auto& f : flips) err << "  single change [" << f.name << "]: " << format_double(f.max_residual) << '\n';
  if (!(worst < thr)) {
    fail_record(err, "verify-decomposition", "max residual", worst, thr);
    return kCheckFailed;
  }
  return kOk;
}

// --- asym-report ---------------------------------------------------------

inline std::vector<std::size_t> checkpoints_or(const RunConfig& cfg, std::vector<std::size_t> fallback) {
  auto cps = cfg.checkpoints.empty() ? std::move(fallback) : cfg.checkpoints;
  std::sort(cps.begin(), cps.end());
  return cps;
}

inline int run_asym_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto cps = checkpoints_or(cfg, {100, 400, 1600});
  const std::size_t top = cps.back();
  const AsymptoticReport rep = cfg.c == 1 ? asym_report_totals(expand_V_scalar(top), cps)
                                          : asym_report(cfg.a, cfg.c, cps, expand_V_rank(top), cfg.allow_even);
  const int digits = cfg.precision;
  std::vector<double> trend;  // deviations at n >= 100, where a trend is meaningful
  if (json_out(cfg)) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : rep.rows) {
      nlohmann::ordered_json row{{"n", r.n}, {"exact", text(r.exact)}};
      if (r.main_term) row["main_term"] = format_high(*r.main_term, digits);
      if (r.ratio) row["ratio"] = format_high(*r.ratio, digits);
      if (r.ratio) row["deviation"] = format_high(abs(*r.ratio - 1), digits);
      if (r.equidistribution) row["equidistribution"] = format_double(*r.equidistribution);
      rows.push_back(row);
    }
    out << nlohmann::ordered_json{{"a", rep.a}, {"c", rep.c}, {"formula", rep.formula}, {"rows", rows}}.dump(1) << '\n';
  } else {
    out << "n,a,c,exact,main_term,ratio,deviation,equidistribution\n";
    for (const auto& r : rep.rows) {
      out << r.n << ',' << rep.a << ',' << rep.c << ',' << text(r.exact) << ','
          << (r.main_term ? format_high(*r.main_term, digits) : "") << ','
          << (r.ratio ? format_high(*r.ratio, digits) : "") << ','
          << (r.ratio ? format_high(abs(*r.ratio - 1), digits) : "") << ','
          << (r.equidistribution ? format_double(*r.equidistribution) : "") << '\n';
    }
  }
  for (const auto& r : rep.rows) {
    if (r.ratio && r.n >= 100) trend.push_back(abs(*r.ratio - 1).convert_to<double>());
  }
  if (trend.size() >= 2 && !strictly_decreasing(trend)) {
    fail_record(err, "asym-report", "ratio deviation strictly decreasing over checkpoints >= 100", trend.back(),
                trend.front());
    return kCheckFailed;
  }
  return kOk;
}

// --- equidistribution ----------------------------------------------------

inline int run_equidistribution(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.c < 2) throw usage_error("equidistribution needs --c >= 2");
  const auto cps = checkpoints_or(cfg, {150, 600});
  const auto table = expand_V_rank(cps.back());
  std::vector<double> stats;
  for (std::size_t n : cps) stats.push_back(equidistribution_statistic(table, cfg.c, n));
  if (json_out(cfg)) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < cps.size(); ++i) {
      nlohmann::ordered_json counts = nlohmann::ordered_json::array();
      for (int a = 0; a < cfg.c; ++a) counts.push_back(text(table.residue_count(a, cfg.c, cps[i])));
      rows.push_back({{"n", cps[i]}, {"total", text(table.total(cps[i]))}, {"counts", counts},
                      {"statistic", format_double(stats[i])}});
    }
    out << nlohmann::ordered_json{{"c", cfg.c}, {"rows", rows}}.dump(1) << '\n';
  } else {
    out << "n,c,total,counts,statistic\n";
    for (std::size_t i = 0; i < cps.size(); ++i) {
      std::string counts;
      for (int a = 0; a < cfg.c; ++a) counts += (a ? " " : "") + text(table.residue_count(a, cfg.c, cps[i]));
      out << cps[i] << ',' << cfg.c << ',' << text(table.total(cps[i])) << ',' << counts << ','
          << format_double(stats[i]) << '\n';
    }
  }
  if (stats.size() >= 2 && !(stats.back() < stats.front())) {
    fail_record(err, "equidistribution", "statistic smaller at the largest checkpoint", stats.back(), stats.front());
    return kCheckFailed;
  }
  return kOk;
}

// --- logconcavity-scan ---------------------------------------------------

inline std::string opt_text(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "none"; }

inline int run_logconcavity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  // one extra row so that n = n_max itself can be scanned
  const std::size_t top = cfg.scan_n_max + 1;
  const auto table = expand_V_rank(top);
  const auto pbar = expand_overpartition(top);
  const auto rep = logconcavity_scan(cfg.a, cfg.c, table, pbar, top);
  const auto flag = [](std::optional<bool> b) { return b ? (*b ? "true" : "false") : ""; };
  if (json_out(cfg)) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : rep.rows) {
      nlohmann::ordered_json row{{"n", r.n}, {"squared", r.squared}, {"overpartition_bound", r.overpartition_bound}};
      if (r.doubled) row["doubled"] = *r.doubled;
      rows.push_back(row);
    }
    out << nlohmann::ordered_json{{"a", rep.a},
                                  {"c", rep.c},
                                  {"n_max", cfg.scan_n_max},
                                  {"n0_squared", opt_text(rep.n0_squared)},
                                  {"n0_doubled", opt_text(rep.n0_doubled)},
                                  {"n0_overpartition_bound", opt_text(rep.n0_bound)},
                                  {"squared_failures", rep.failures_squared},
                                  {"rows", rows}}
               .dump(1)
        << '\n';
  } else {
    out << "n,squared,doubled,overpartition_bound\n";
    for (const auto& r : rep.rows) {
      out << r.n << ',' << flag(r.squared) << ',' << flag(r.doubled) << ',' << flag(r.overpartition_bound) << '\n';
    }
  }
  err << "N0 for v(n)^2 <= v(n-1)v(n+1): " << opt_text(rep.n0_squared) << " (" << rep.failures_squared
      << " failures)\n";
  err << "N0 for v(2n) <= v(n-1)v(n+1): " << opt_text(rep.n0_doubled) << '\n';
  err << "N0 for v(n-1)v(n+1) < sqrt(n) pbar(n-1) pbar(n+1): " << opt_text(rep.n0_bound) << '\n';
  if (!rep.n0_squared) err << "finding: v(n)^2 <= v(n-1)v(n+1) does not hold up to n_max\n";
  if (!rep.n0_bound) {
    fail_record(err, "logconcavity-scan", "overpartition upper bound holds eventually", 0.0, 1.0);
    return kCheckFailed;
  }
  return kOk;
}

// --- lemma-ratios --------------------------------------------------------

inline int run_lemma_ratios(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.form != "printed" && cfg.form != "corrected") throw usage_error("--form must be printed or corrected");
  const LemmaForm form = cfg.form == "printed" ? LemmaForm::printed : LemmaForm::corrected;
  struct Job {
    double z, t;
  };
  std::vector<Job> jobs;
  std::vector<double> zs;
  for (int c : cfg.moduli) {
    if (c < 2) throw usage_error("--moduli entries must be >= 2");
    for (int j = 1; j < c; ++j) {
      const double z = static_cast<double>(j) / c;
      if (z == 0.25 || z == 0.5 || z == 0.75) continue;
      zs.push_back(z);
      for (double t : cfg.t_values) jobs.push_back({z, t});
    }
  }
  const auto res = parallel_map(jobs.size(), [&](std::size_t i) { return lemma_ratio(jobs[i].z, jobs[i].t, form); });
  if (json_out(cfg)) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : res) {
      arr.push_back({{"z", format_double(r.z)},
                     {"t", format_double(r.t)},
                     {"form", cfg.form},
                     {"series", {format_double(r.series.real()), format_double(r.series.imag())}},
                     {"main_term", {format_double(r.main_term.real()), format_double(r.main_term.imag())}},
                     {"deviation", format_double(r.deviation)}});
    }
    out << arr.dump(1) << '\n';
  } else {
    out << "z,t,form,v_re,v_im,main_re,main_im,deviation\n";
    for (const auto& r : res) {
      out << format_double(r.z) << ',' << format_double(r.t) << ',' << cfg.form << ',' << csv_complex(r.series) << ','
          << csv_complex(r.main_term) << ',' << format_double(r.deviation) << '\n';
    }
  }
  int status = kOk;
  const std::size_t per = cfg.t_values.size();
  for (std::size_t k = 0; k < zs.size() && per >= 2; ++k) {
    const double first = res[k * per].deviation;
    const double last = res[k * per + per - 1].deviation;
    if (!(last < first)) {
      fail_record(err, "lemma-ratios", "deviation smaller at the last t than the first", last, first,
                  "z=" + format_double(zs[k]) + " form=" + cfg.form);
      status = kCheckFailed;
    }
  }
  return status;
}

}  // namespace detail

/// Runs one configured subcommand.
inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.format != "csv" && cfg.format != "json") throw usage_error("--format must be csv or json");
  if (cfg.precision < 30 || cfg.precision > 50) throw usage_error("--precision must lie in [30, 50]");
  if (cfg.c < 1 || cfg.a < 0 || cfg.a >= cfg.c) throw usage_error("need c >= 1 and 0 <= a < c");
  const auto& s = cfg.subcommand;
  if (s == "expand") return detail::run_expand(cfg, out, err);
  if (s == "enumerate") return detail::run_enumerate(cfg, out, err);
  if (s == "verify-transforms") return detail::run_verify_transforms(cfg, out, err);
  if (s == "verify-decomposition") return detail::run_verify_decomposition(cfg, out, err);
  if (s == "asym-report") return detail::run_asym_report(cfg, out, err);
  if (s == "equidistribution") return detail::run_equidistribution(cfg, out, err);
  if (s == "logconcavity-scan") return detail::run_logconcavity(cfg, out, err);
  if (s == "lemma-ratios") return detail::run_lemma_ratios(cfg, out, err);
  throw usage_error("unknown subcommand " + s);
}

/// Builds the CLI11 parser writing into cfg.
inline std::unique_ptr<CLI::App> make_app(RunConfig& cfg) {
  auto app = std::make_unique<CLI::App>("Odd-balanced unimodal sequence workbench", "oddbal");
  app->require_subcommand(1);
  app->set_help_all_flag("--help-all", "Expand all help");

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--output,-o", cfg.output, "Write output here instead of stdout");
  };

  auto* expand = app->add_subcommand("expand", "Dump the rank table v(m,n) for n <= N");
  expand->add_option("--n-max", cfg.n, "Largest n")->check(CLI::PositiveNumber)->capture_default_str();
  expand->add_flag("--include-zeros", cfg.include_zeros, "Also list zero counts");
  common(expand);

  auto* enumerate = app->add_subcommand("enumerate", "List every sequence of size 2n+2 (JSON lines by default)");
  enumerate->add_option("--n", cfg.n, "Sequences of size 2n+2")->check(CLI::NonNegativeNumber)->required();
  enumerate->add_option("--format", cfg.format, "json (JSON lines) or csv")->check(CLI::IsMember({"csv", "json"}));
  enumerate->add_option("--output,-o", cfg.output, "Write output here instead of stdout");

  auto* transforms = app->add_subcommand(
      "verify-transforms",
      "Residuals of the theta, eta, Appell and Mordell transformation laws on fixed grids.\n"
      "Thresholds: 1e-9 theta/eta, 1e-8 Appell and Mordell, 1e-10 for mordell(0;0) = 1");
  transforms->add_option("--threshold", cfg.threshold, "Override every threshold");
  common(transforms);

  auto* decomp = app->add_subcommand(
      "verify-decomposition",
      "Residual of (1+1/w)qV = T1 + T - wT2.\n"
      "Default grid: z in {0.1, 0.2, 1/3, 0.45, 0.6, 0.85} x tau in {0.9i, 0.5+0.8i}, order 300.\n"
      "A grid file has lines z_re,z_im,tau_re,tau_im[,order]; '#' starts a comment");
  decomp->add_option("--grid", cfg.grid, "'default' or a grid file")->capture_default_str();
  decomp->add_option("--threshold", cfg.threshold, "Residual threshold (default 1e-7)");
  common(decomp);

  auto* asym = app->add_subcommand("asym-report", "Exact v(a,c;n) against the main term (default checkpoints 100,400,1600)");
  asym->add_option("--a", cfg.a, "Residue")->capture_default_str();
  asym->add_option("--c", cfg.c, "Modulus (odd; 1 for all ranks)")->capture_default_str();
  asym->add_option("--checkpoints", cfg.checkpoints, "Values of n")->delimiter(',');
  asym->add_option("--precision", cfg.precision, "Significant digits in [30, 50]")->capture_default_str();
  asym->add_flag("--allow-even", cfg.allow_even, "Accept even c and leave the main-term column empty");
  common(asym);

  auto* equi = app->add_subcommand("equidistribution",
                                   "max_a |c v(a,c;n)/v(n) - 1| at each checkpoint (default 150,600)");
  equi->add_option("--c", cfg.c, "Modulus")->required();
  equi->add_option("--checkpoints", cfg.checkpoints, "Values of n")->delimiter(',');
  common(equi);

  auto* scan = app->add_subcommand("logconcavity-scan",
                                   "Both readings of the log-concavity inequality and the overpartition bound");
  scan->add_option("--a", cfg.a, "Residue")->capture_default_str();
  scan->add_option("--c", cfg.c, "Modulus")->capture_default_str();
  scan->add_option("--n-max", cfg.scan_n_max, "Scan n = 1..N")->check(CLI::PositiveNumber)->capture_default_str();
  common(scan);

  auto* lemma = app->add_subcommand("lemma-ratios",
                                    "|V(e^{2 pi i z}; e^{-2 pi t}) / main term - 1| for z = j/c (default c = 3,5)");
  lemma->add_option("--moduli", cfg.moduli, "Moduli c")->delimiter(',')->capture_default_str();
  lemma->add_option("--t", cfg.t_values, "Values of t, largest first")->delimiter(',')->capture_default_str();
  lemma->add_option("--form", cfg.form, "printed or corrected")->check(CLI::IsMember({"printed", "corrected"}))
      ->capture_default_str();
  common(lemma);

  for (auto* sub : app->get_subcommands([](CLI::App*) { return true; })) {
    sub->callback([&cfg, sub] {
      cfg.subcommand = sub->get_name();
      if (cfg.subcommand == "enumerate" && sub->count("--format") == 0) cfg.format = "json";
    });
  }
  return app;
}

/// Parses, runs, and maps errors to exit codes.
inline int run(int argc, const char* const* argv, std::ostream& out_default, std::ostream& err) {
  RunConfig cfg;
  auto app = make_app(cfg);
  try {
    app->parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app->exit(e, out_default, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app->exit(e, out_default, err);
  } catch (const CLI::ParseError& e) {
    app->exit(e, out_default, err);
    return kUsage;
  }
  try {
    if (cfg.output.empty()) return dispatch(cfg, out_default, err);
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw usage_error("cannot write " + cfg.output);
    return dispatch(cfg, file, err);
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << nlohmann::ordered_json{{"status", "error"}, {"subcommand", cfg.subcommand}, {"what", e.what()}}.dump() << '\n';
    return kCheckFailed;
  }
}

}  // namespace oddbal::cli
