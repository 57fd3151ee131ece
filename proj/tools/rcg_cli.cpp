// Command-line driver: solve single instances, generate instance files, run
// benchmark suites, compute performance profiles, and run the verification
// suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rcg/benchmark.hpp"
#include "rcg/direction.hpp"
#include "rcg/line_search.hpp"
#include "rcg/objectives.hpp"
#include "rcg/solver.hpp"
#include "rcg/verify.hpp"

namespace {

struct CommonSolveFlags {
  std::string method = "hz";
  double mu = 2.0;
  double zeta = 0.01;
  double c1 = 1e-4;
  double c2 = 0.9;
  double tol = 1e-6;
  int max_iter = 10000;
  std::string wolfe = "strong";
  std::uint64_t seed = 0;
};

void add_common_flags(CLI::App* cmd, CommonSolveFlags& f, bool with_method = true) {
  if (with_method) {
    cmd->add_option("--method", f.method, "direction rule: fr, prp, hs, dy, hsdy, frprp, hz, mhz")
        ->check(CLI::IsMember({"fr", "prp", "hs", "dy", "hsdy", "frprp", "hz", "mhz"}));
    cmd->add_option("--mu", f.mu, "HZ parameter mu (> 1/4)")
        ->check(CLI::Range(0.25, 1e9).description("mu must be > 1/4"));
    cmd->add_option("--zeta", f.zeta, "modified-HZ parameter zeta (> 0)");
  }
  cmd->add_option("--c1", f.c1, "Armijo constant");
  cmd->add_option("--c2", f.c2, "curvature constant");
  cmd->add_option("--tol", f.tol, "gradient-norm stopping tolerance");
  cmd->add_option("--max-iter", f.max_iter, "iteration cap");
  cmd->add_option("--wolfe", f.wolfe, "line search mode: weak or strong")
      ->check(CLI::IsMember({"weak", "strong"}));
  cmd->add_option("--seed", f.seed, "random seed");
}

rcg::SolverConfig make_config(const CommonSolveFlags& f) {
  rcg::SolverConfig cfg;
  cfg.rule.variant = rcg::parse_beta_variant(f.method);
  cfg.rule.mu = f.mu;
  cfg.rule.zeta = f.zeta;
  cfg.wolfe.c1 = f.c1;
  cfg.wolfe.c2 = f.c2;
  cfg.wolfe.mode = f.wolfe == "weak" ? rcg::WolfeParams::Mode::wolfe
                                     : rcg::WolfeParams::Mode::strong_wolfe;
  cfg.tolerance = f.tol;
  cfg.max_iterations = f.max_iter;
  if (!(cfg.rule.mu > 0.25)) throw CLI::ValidationError("--mu", "mu must be > 1/4");
  if (!(cfg.wolfe.c1 < cfg.wolfe.c2)) throw CLI::ValidationError("--c1/--c2", "need c1 < c2");
  return cfg;
}

void write_trace_csv(const std::vector<rcg::TraceRow>& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "k,f,g_norm,alpha,beta,g_dot_eta,zoutendijk_term\n";
  char buf[256];
  for (const auto& r : trace) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.k, r.f, r.g_norm,
                  r.alpha, r.beta, r.g_dot_eta, r.zoutendijk_term);
    out << buf;
  }
}

std::vector<rcg::BetaRule> parse_methods(const std::string& csv, double mu, double zeta) {
  std::vector<rcg::BetaRule> rules;
  std::istringstream ss(csv);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    rcg::BetaRule r;
    r.variant = rcg::parse_beta_variant(name);
    r.mu = mu;
    r.zeta = zeta;
    rules.push_back(r);
  }
  if (rules.empty()) throw std::invalid_argument("--methods: no rules given");
  return rules;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemannian conjugate-gradient toolkit for the unit sphere"};
  app.require_subcommand(1);

  // ---- solve ----
  auto* solve_cmd = app.add_subcommand("solve", "solve a single instance");
  std::string problem_kind;
  std::string input_path;
  int random_n = 0;
  double gnp_p = 0.1;
  int restarts = 1;
  std::string trace_path;
  CommonSolveFlags sf;
  solve_cmd->add_option("--problem", problem_kind, "rayleigh or stability")
      ->required()
      ->check(CLI::IsMember({"rayleigh", "stability"}));
  solve_cmd->add_option("--input", input_path, "instance file (matrix or edge list)");
  solve_cmd->add_option("--random", random_n, "generate a random instance of this dimension");
  solve_cmd->add_option("--p", gnp_p, "edge probability for random graphs");
  solve_cmd->add_option("--restarts", restarts, "random restarts (stability number)");
  solve_cmd->add_option("--trace", trace_path, "write per-iteration trace CSV here");
  add_common_flags(solve_cmd, sf);

  // ---- gen ----
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  std::string gen_kind;
  int gen_n = 100;
  double gen_p = 0.1;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen_cmd->add_option("--kind", gen_kind, "spd or gnp")->required()->check(CLI::IsMember({"spd", "gnp"}));
  gen_cmd->add_option("--n", gen_n, "dimension / vertex count");
  gen_cmd->add_option("--p", gen_p, "edge probability (gnp)");
  gen_cmd->add_option("--seed", gen_seed, "random seed");
  gen_cmd->add_option("--out", gen_out, "output file")->required();

  // ---- bench ----
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite, write records CSV");
  std::string suite_name = "rayleigh";
  int instances = 100;
  int bench_n = 100;
  double bench_p = 0.1;
  std::string methods_csv = "fr,prp,hs,dy,hsdy,frprp,hz,mhz";
  std::string bench_out = "runs.csv";
  bool sequential = false;
  CommonSolveFlags bf;
  bench_cmd->add_option("--suite", suite_name, "rayleigh or stability")
      ->check(CLI::IsMember({"rayleigh", "stability"}));
  bench_cmd->add_option("--instances", instances, "number of random instances");
  bench_cmd->add_option("--n", bench_n, "problem dimension");
  bench_cmd->add_option("--p", bench_p, "edge probability (stability)");
  bench_cmd->add_option("--methods", methods_csv, "comma-separated rule list");
  bench_cmd->add_option("--out", bench_out, "records CSV path");
  bench_cmd->add_flag("--sequential", sequential, "disable parallel instance solving (clean timing)");
  bench_cmd->add_option("--mu", bf.mu, "HZ parameter mu (> 1/4)");
  bench_cmd->add_option("--zeta", bf.zeta, "modified-HZ parameter zeta");
  add_common_flags(bench_cmd, bf, /*with_method=*/false);

  // ---- profile ----
  auto* profile_cmd = app.add_subcommand("profile", "compute performance profiles from records");
  std::string runs_path;
  std::string metric_name = "iterations";
  std::string profile_out;
  std::string svg_out;
  std::string svg_title = "Performance profile";
  profile_cmd->add_option("--runs", runs_path, "records CSV from 'bench'")->required();
  profile_cmd->add_option("--metric", metric_name, "iterations or time")
      ->check(CLI::IsMember({"iterations", "time"}));
  profile_cmd->add_option("--out", profile_out, "profile CSV path");
  profile_cmd->add_option("--svg", svg_out, "SVG plot path");
  profile_cmd->add_option("--title", svg_title, "SVG title");

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite of every module");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed()) {
      rcg::SolverConfig cfg = make_config(sf);
      if (input_path.empty() == (random_n == 0)) {
        std::cerr << "error: give exactly one of --input or --random\n";
        return 1;
      }
      if (problem_kind == "rayleigh") {
        rcg::SpdMatrix A = [&] {
          if (!input_path.empty()) {
            std::ifstream in(input_path);
            if (!in) throw std::runtime_error("cannot open " + input_path);
            return rcg::read_matrix(in);
          }
          return rcg::generate_spd(static_cast<std::size_t>(random_n), sf.seed);
        }();
        const auto problem = rcg::make_rayleigh_problem(std::move(A));
        cfg.record_trace = !trace_path.empty();
        const auto res = rcg::solve(problem, rcg::random_unit_point(problem.dimension, sf.seed), cfg);
        if (!trace_path.empty()) write_trace_csv(res.trace, trace_path);
        std::printf("f_final=%.12g\ng_norm_final=%.6g\niterations=%d\nconverged=%d\n", res.f_final,
                    res.g_norm_final, res.iterations, res.converged ? 1 : 0);
        if (res.failed) std::printf("failure=%s\n", res.failure_reason.c_str());
        return res.converged ? 0 : 2;
      }
      // stability
      rcg::Graph G = [&] {
        if (!input_path.empty()) {
          std::ifstream in(input_path);
          if (!in) throw std::runtime_error("cannot open " + input_path);
          return rcg::read_edge_list(in);
        }
        return rcg::generate_gnp(random_n, gnp_p, sf.seed);
      }();
      if (restarts > 1) {
        const auto est = rcg::stability_number(G, restarts, cfg, sf.seed);
        std::printf("stability_number=%d\nf_best=%.12g\n", est.stability_number, est.f_best);
        return 0;
      }
      const auto problem = rcg::make_stability_problem(std::move(G));
      cfg.record_trace = !trace_path.empty();
      const auto res = rcg::solve(problem, rcg::random_unit_point(problem.dimension, sf.seed), cfg);
      if (!trace_path.empty()) write_trace_csv(res.trace, trace_path);
      std::printf("f_final=%.12g\ng_norm_final=%.6g\niterations=%d\nconverged=%d\n", res.f_final,
                  res.g_norm_final, res.iterations, res.converged ? 1 : 0);
      if (res.failed) std::printf("failure=%s\n", res.failure_reason.c_str());
      return res.converged ? 0 : 2;
    }

    if (gen_cmd->parsed()) {
      std::ofstream out(gen_out);
      if (!out) throw std::runtime_error("cannot open " + gen_out + " for writing");
      if (gen_kind == "spd") {
        const auto A = rcg::generate_spd(static_cast<std::size_t>(gen_n), gen_seed);
        out << A.n() << "\n";
        char buf[40];
        for (std::size_t i = 0; i < A.n(); ++i) {
          for (std::size_t j = 0; j < A.n(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", A(i, j));
            out << buf << (j + 1 == A.n() ? "\n" : " ");
          }
        }
      } else {
        const auto G = rcg::generate_gnp(gen_n, gen_p, gen_seed);
        out << G.n() << "\n";
        for (const auto& [i, j] : G.edges()) out << i << ' ' << j << "\n";
      }
      return 0;
    }

    if (bench_cmd->parsed()) {
      rcg::SuiteOptions opt;
      opt.suite = suite_name == "rayleigh" ? rcg::Suite::rayleigh : rcg::Suite::stability;
      opt.instances = instances;
      opt.n = bench_n;
      opt.p = bench_p;
      opt.solvers = parse_methods(methods_csv, bf.mu, bf.zeta);
      opt.base_seed = bf.seed;
      CommonSolveFlags cf = bf;
      cf.method = "hz";  // per-run rule comes from --methods
      opt.config = make_config(cf);
      opt.parallel = !sequential;
      const auto records = rcg::run_suite(opt);
      rcg::write_records_csv(records, bench_out);
      std::printf("wrote %zu records to %s\n", records.size(), bench_out.c_str());
      return 0;
    }

    if (profile_cmd->parsed()) {
      const auto records = rcg::read_records_csv(runs_path);
      const auto metric = metric_name == "time" ? rcg::ProfileMetric::time
                                                : rcg::ProfileMetric::iterations;
      const auto curves = rcg::performance_profile(records, metric);
      if (!profile_out.empty()) rcg::write_profile_csv(curves, profile_out);
      if (!svg_out.empty()) rcg::emit_profile_svg(curves, svg_out, svg_title);
      if (profile_out.empty() && svg_out.empty()) rcg::write_profile_csv(curves, std::cout);
      return 0;
    }

    if (verify_cmd->parsed()) {
      return rcg::run_verification_suite(std::cout) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
