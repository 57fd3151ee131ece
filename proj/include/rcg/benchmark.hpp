#ifndef RCG_BENCHMARK_HPP
#define RCG_BENCHMARK_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rcg/objectives.hpp"
#include "rcg/solver.hpp"

namespace rcg {

struct RunRecord {
  std::string problem_id;
  std::string solver_id;
  std::uint64_t seed = 0;
  int n = 0;
  bool converged = false;
  int iterations = 0;
  long value_evals = 0;
  long gradient_evals = 0;
  long long elapsed_ns = 0;
  double f_final = 0.0;
  double g_norm_final = 0.0;
};

enum class Suite { rayleigh, stability };
enum class ProfileMetric { iterations, time };

struct SuiteOptions {
  Suite suite = Suite::rayleigh;
  int instances = 100;
  int n = 100;
  double p = 0.1;                  // edge probability (stability suite)
  std::vector<BetaRule> solvers;
  std::uint64_t base_seed = 0;
  SolverConfig config;
  bool parallel = true;
};

/// Runs every solver on the same seeded instance and start point, one
/// instance per seed base_seed + i. Records come back in (instance, solver)
/// order regardless of scheduling.
inline std::vector<RunRecord> run_suite(const SuiteOptions& opt) {
  if (opt.instances < 1) throw std::invalid_argument("run_suite: instances must be >= 1");
  if (opt.solvers.empty()) throw std::invalid_argument("run_suite: no solvers given");

  const std::size_t per = opt.solvers.size();
  std::vector<RunRecord> records(static_cast<std::size_t>(opt.instances) * per);

  auto run_instance = [&](int i) {
    const std::uint64_t seed = opt.base_seed + static_cast<std::uint64_t>(i);
    ObjectiveProblem problem;
    std::string problem_id;
    if (opt.suite == Suite::rayleigh) {
      problem_id = "rayleigh-n" + std::to_string(opt.n) + "-s" + std::to_string(seed);
      problem = make_rayleigh_problem(generate_spd(static_cast<std::size_t>(opt.n), seed), problem_id);
    } else {
      problem_id = "stability-n" + std::to_string(opt.n) + "-s" + std::to_string(seed);
      problem = make_stability_problem(generate_gnp(opt.n, opt.p, seed), problem_id);
    }
    const Point x0 = random_unit_point(problem.dimension, seed);
    for (std::size_t s = 0; s < per; ++s) {
      SolverConfig cfg = opt.config;
      cfg.rule = opt.solvers[s];
      const SolveResult r = solve(problem, x0, cfg);
      RunRecord& rec = records[static_cast<std::size_t>(i) * per + s];
      rec.problem_id = problem_id;
      rec.solver_id = beta_rule_name(opt.solvers[s].variant);
      rec.seed = seed;
      rec.n = opt.n;
      rec.converged = r.converged;
      rec.iterations = r.iterations;
      rec.value_evals = r.value_evals;
      rec.gradient_evals = r.gradient_evals;
      rec.elapsed_ns = std::max<long long>(1, r.elapsed.count());
      rec.f_final = r.f_final;
      rec.g_norm_final = r.g_norm_final;
    }
  };

  unsigned workers = opt.parallel ? std::thread::hardware_concurrency() : 1;
  if (workers <= 1 || opt.instances == 1) {
    for (int i = 0; i < opt.instances; ++i) run_instance(i);
  } else {
    workers = std::min<unsigned>(workers, static_cast<unsigned>(opt.instances));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int i = static_cast<int>(w); i < opt.instances; i += static_cast<int>(workers)) {
          run_instance(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return records;
}

struct ProfileCurve {
  std::string solver_id;
  /// Sorted (tau, P) breakpoints of the step function; P is the fraction of
  /// problems with performance ratio <= tau.
  std::vector<std::pair<double, double>> breakpoints;
};

/// Dolan-More performance profiles. Failed runs get t = +inf; problems where
/// every solver failed are dropped from the problem set.
inline std::vector<ProfileCurve> performance_profile(const std::vector<RunRecord>& records,
                                                     ProfileMetric metric) {
  if (records.empty()) throw std::invalid_argument("performance_profile: empty record set");

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::string> solvers;
  std::vector<std::string> problems;
  std::map<std::pair<std::string, std::string>, double> cost;  // (problem, solver) -> t
  for (const auto& r : records) {
    if (std::find(solvers.begin(), solvers.end(), r.solver_id) == solvers.end()) {
      solvers.push_back(r.solver_id);
    }
    if (std::find(problems.begin(), problems.end(), r.problem_id) == problems.end()) {
      problems.push_back(r.problem_id);
    }
    double t = inf;
    if (r.converged) {
      t = metric == ProfileMetric::iterations ? static_cast<double>(r.iterations)
                                              : static_cast<double>(r.elapsed_ns);
    }
    cost[{r.problem_id, r.solver_id}] = t;
  }

  // Ratios per solver over the problems at least one solver finished.
  std::map<std::string, std::vector<double>> ratios;
  std::size_t solved_problems = 0;
  for (const auto& p : problems) {
    double tmin = inf;
    for (const auto& s : solvers) {
      auto it = cost.find({p, s});
      if (it != cost.end()) tmin = std::min(tmin, it->second);
    }
    if (tmin == inf) continue;  // all solvers failed, drop the problem
    ++solved_problems;
    for (const auto& s : solvers) {
      auto it = cost.find({p, s});
      const double t = it == cost.end() ? inf : it->second;
      double r;
      if (t == inf) {
        r = inf;
      } else if (tmin == 0.0) {
        r = t == 0.0 ? 1.0 : inf;
      } else {
        r = t / tmin;
      }
      if (r != inf) ratios[s].push_back(r);
    }
  }
  if (solved_problems == 0) throw std::invalid_argument("performance_profile: no solved problems");

  std::vector<ProfileCurve> curves;
  for (const auto& s : solvers) {
    ProfileCurve c;
    c.solver_id = s;
    auto& rs = ratios[s];
    std::sort(rs.begin(), rs.end());
    const double denom = static_cast<double>(solved_problems);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const double tau = rs[i];
      // collapse duplicates to the last index with this tau
      if (i + 1 < rs.size() && rs[i + 1] == tau) continue;
      c.breakpoints.emplace_back(tau, static_cast<double>(i + 1) / denom);
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

/// P_s(tau) evaluated from a curve's breakpoints.
inline double profile_value(const ProfileCurve& c, double tau) {
  double p = 0.0;
  for (const auto& [t, v] : c.breakpoints) {
    if (t <= tau) p = v;
    else break;
  }
  return p;
}

// ---- Records CSV ----

inline constexpr const char* kRecordsCsvHeader =
    "problem_id,solver,seed,n,converged,iterations,value_evals,gradient_evals,"
    "elapsed_ns,f_final,g_norm_final";

namespace detail {
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace detail

inline void write_records_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << kRecordsCsvHeader << "\n";
  for (const auto& r : records) {
    out << r.problem_id << ',' << r.solver_id << ',' << r.seed << ',' << r.n << ','
        << (r.converged ? 1 : 0) << ',' << r.iterations << ',' << r.value_evals << ','
        << r.gradient_evals << ',' << r.elapsed_ns << ',' << detail::fmt_double(r.f_final) << ','
        << detail::fmt_double(r.g_norm_final) << "\n";
  }
}

inline void write_records_csv(const std::vector<RunRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_records_csv(records, out);
}

inline std::vector<RunRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordsCsvHeader) throw ParseError(1, "unexpected header, want '" + std::string(kRecordsCsvHeader) + "'");

  static const char* kColumns[] = {"problem_id", "solver", "seed", "n", "converged",
                                   "iterations", "value_evals", "gradient_evals",
                                   "elapsed_ns", "f_final", "g_norm_final"};
  std::vector<RunRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 11) {
      const std::string missing = fields.size() < 11 ? kColumns[fields.size()] : "(extra)";
      throw ParseError(line_no, "expected 11 columns, got " + std::to_string(fields.size()) +
                                    " (next missing column: " + missing + ")");
    }
    try {
      RunRecord r;
      r.problem_id = fields[0];
      r.solver_id = fields[1];
      r.seed = std::stoull(fields[2]);
      r.n = std::stoi(fields[3]);
      r.converged = std::stoi(fields[4]) != 0;
      r.iterations = std::stoi(fields[5]);
      r.value_evals = std::stol(fields[6]);
      r.gradient_evals = std::stol(fields[7]);
      r.elapsed_ns = std::stoll(fields[8]);
      r.f_final = std::stod(fields[9]);
      r.g_norm_final = std::stod(fields[10]);
      records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ParseError(line_no, std::string("bad field: ") + e.what());
    }
  }
  return records;
}

inline std::vector<RunRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_records_csv(in);
}

inline void write_profile_csv(const std::vector<ProfileCurve>& curves, std::ostream& out) {
  out << "solver,tau,P\n";
  for (const auto& c : curves) {
    for (const auto& [tau, p] : c.breakpoints) {
      out << c.solver_id << ',' << detail::fmt_double(tau) << ',' << detail::fmt_double(p) << "\n";
    }
  }
}

inline void write_profile_csv(const std::vector<ProfileCurve>& curves, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_profile_csv(curves, out);
}

// ---- SVG plot ----

/// Self-contained SVG: one step-function polyline per curve over a
/// log2-scaled tau axis from 1 to the largest finite ratio, with a legend.
inline void emit_profile_svg(const std::vector<ProfileCurve>& curves, std::ostream& out,
                             const std::string& title = "Performance profile") {
  if (curves.empty()) throw std::invalid_argument("emit_profile_svg: no curves");

  double tau_max = 1.0;
  for (const auto& c : curves) {
    for (const auto& [tau, p] : c.breakpoints) tau_max = std::max(tau_max, tau);
  }
  if (tau_max <= 1.0) tau_max = 2.0;
  const double log_max = std::log2(tau_max);

  const double w = 720, h = 480;
  const double ml = 60, mr = 170, mt = 40, mb = 50;
  const double pw = w - ml - mr, ph = h - mt - mb;
  auto xpix = [&](double tau) { return ml + pw * std::log2(std::max(tau, 1.0)) / log_max; };
  auto ypix = [&](double p) { return mt + ph * (1.0 - p); };

  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  const std::size_t ncolors = sizeof(kColors) / sizeof(kColors[0]);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
      << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n"
      << "<text x=\"" << ml + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";

  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\"" << mt + ph
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
      << "\" stroke=\"black\"/>\n";
  for (double p = 0.0; p <= 1.0001; p += 0.25) {
    out << "<text x=\"" << ml - 8 << "\" y=\"" << ypix(p) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << p << "</text>\n";
  }
  const int xticks = 4;
  for (int i = 0; i <= xticks; ++i) {
    const double tau = std::exp2(log_max * i / xticks);
    out << "<text x=\"" << xpix(tau) << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << detail::fmt_double(std::round(tau * 100.0) / 100.0) << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << h - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">tau (log scale)</text>\n";

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const auto& c = curves[ci];
    const char* color = kColors[ci % ncolors];
    std::ostringstream pts;
    double prev_p = 0.0;
    pts << xpix(1.0) << ',' << ypix(profile_value(c, 1.0)) << ' ';
    prev_p = profile_value(c, 1.0);
    for (const auto& [tau, p] : c.breakpoints) {
      if (tau <= 1.0) continue;
      pts << xpix(tau) << ',' << ypix(prev_p) << ' ';
      pts << xpix(tau) << ',' << ypix(p) << ' ';
      prev_p = p;
    }
    pts << xpix(tau_max) << ',' << ypix(prev_p);
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\""
        << pts.str() << "\"/>\n";
    const double ly = mt + 16 + 18 * static_cast<double>(ci);
    out << "<line x1=\"" << ml + pw + 14 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 40
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.8\"/>\n"
        << "<text x=\"" << ml + pw + 46 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << c.solver_id << "</text>\n";
  }
  out << "</svg>\n";
}

inline void emit_profile_svg(const std::vector<ProfileCurve>& curves, const std::string& path,
                             const std::string& title = "Performance profile") {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  emit_profile_svg(curves, out, title);
}

}  // namespace rcg

#endif
