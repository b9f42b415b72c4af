#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omm/adversary.hpp"
#include "omm/experiment.hpp"
#include "omm/rng.hpp"

namespace {

using namespace omm;

std::vector<int> parse_sizes(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("converge: bad size list entry \"" + tok + "\"");
    }
  }
  if (out.empty()) throw ValidationError("converge: empty size list");
  return out;
}

void write_reports(const std::vector<RunReport>& reports, const std::string& out_path,
                   const std::string& format) {
  EmitFormat fmt = format_from_string(format);
  if (out_path.empty())
    emit(reports, fmt, std::cout);
  else
    emit_to_file(reports, fmt, out_path);
}

// The lower-bound game wants a fresh fractional algorithm per seed; integral
// baselines report one-hot rows.
FractionalServerFactory make_factory(const std::string& algo, int n) {
  std::vector<Point> servers;
  for (int i = 1; i <= n; ++i) servers.push_back(Point(static_cast<double>(i)));
  const MetricSpace space = MetricSpace::discrete();
  if (algo == "greedy" || algo == "permutation") {
    BaselineKind kind = baseline_from_string(algo);
    return [servers, space, kind, n](uint64_t seed) -> FractionalServer {
      auto matcher = std::make_shared<OnlineMatcher>(kind, space, servers, seed);
      return [matcher, n](const Point& req) {
        std::vector<double> row(n, 0.0);
        row[matcher->serve(req)] = 1.0;
        return row;
      };
    };
  }
  if (algo == "advice_fractional") {
    // Arbitrary advice: uniform over the server labels.
    AdviceDistribution advice = AdviceDistribution::finite(empirical(servers));
    return [servers, space, advice](uint64_t seed) -> FractionalServer {
      BlowupConfig cfg;
      cfg.seed = seed;
      auto matcher = std::make_shared<FractionalAdviceMatcher>(space, servers, advice, cfg);
      return [matcher](const Point& req) { return matcher->serve(req); };
    };
  }
  throw ValidationError("adversary: unknown algorithm " + algo);
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Online metric matching with distributional predictions"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run matching experiments");
  std::string run_instance, run_algo = "greedy", run_baseline = "greedy";
  std::string run_out, run_format = "csv";
  std::string gen_family = "uniform", gen_advice = "perfect";
  int gen_n = 8, gen_dim = 1, run_copies = 0, run_trials = 1;
  double gen_shift = 0.0, gen_sigma = 1.0;
  uint64_t run_seed = 0;
  run->add_option("--instance", run_instance, "Instance JSON file (omit to generate)");
  run->add_option("--algo", run_algo, "greedy|permutation|advice_fractional|advice_integral");
  run->add_option("--baseline", run_baseline, "Blackbox for the advice algorithms");
  run->add_option("--copies", run_copies, "Blow-up copies per unit (0 = default)");
  run->add_option("--trials", run_trials, "Number of trials");
  run->add_option("--seed", run_seed, "Master seed");
  run->add_option("--out", run_out, "Output path (default stdout)");
  run->add_option("--format", run_format, "csv|json");
  run->add_option("--family", gen_family, "Generator family: uniform|gaussian");
  run->add_option("--n", gen_n, "Generated instance size");
  run->add_option("--dim", gen_dim, "Generated instance dimension");
  run->add_option("--advice", gen_advice, "Generated advice: perfect|gaussian|box");
  run->add_option("--shift", gen_shift, "Generated advice shift");
  run->add_option("--sigma", gen_sigma, "Generated advice spread");

  // adversary
  auto* adv = app.add_subcommand("adversary", "Play the discrete-metric lower-bound game");
  std::string adv_algo = "greedy", adv_out, adv_format = "csv";
  int adv_n = 4, adv_replays = 1;
  uint64_t adv_seed = 0;
  adv->add_option("--n", adv_n, "Number of servers");
  adv->add_option("--algo", adv_algo, "greedy|permutation|advice_fractional");
  adv->add_option("--replays", adv_replays, "Replays per step for expectation estimates");
  adv->add_option("--seed", adv_seed, "Master seed");
  adv->add_option("--out", adv_out, "Output path (default stdout)");
  adv->add_option("--format", adv_format, "csv|json");

  // converge
  auto* conv = app.add_subcommand("converge", "Empirical-measure W1 convergence benchmark");
  std::string conv_family = "gaussian", conv_sizes = "64,128,256,512", conv_out,
              conv_format = "csv";
  int conv_dim = 1, conv_trials = 10;
  uint64_t conv_seed = 0;
  conv->add_option("--family", conv_family, "gaussian|box");
  conv->add_option("--dim", conv_dim, "Dimension (1..3)");
  conv->add_option("--sizes", conv_sizes, "Comma-separated sample sizes");
  conv->add_option("--trials", conv_trials, "Trials per size (>= 10)");
  conv->add_option("--seed", conv_seed, "Master seed");
  conv->add_option("--out", conv_out, "Output path (default stdout)");
  conv->add_option("--format", conv_format, "csv|json");

  // validate
  auto* val = app.add_subcommand("validate", "Validate an instance file");
  std::string val_instance;
  val->add_option("--instance", val_instance, "Instance JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the argument error
    return code == 0 ? 0 : 1;
  }
  const auto started = std::chrono::steady_clock::now();

  if (run->parsed()) {
    ExperimentConfig cfg;
    if (!run_instance.empty()) {
      cfg.source = run_instance;
    } else {
      GeneratorSpec g;
      g.family = gen_family;
      g.n = gen_n;
      g.dim = gen_dim;
      g.advice_mode = gen_advice;
      g.advice_shift = gen_shift;
      g.advice_sigma = gen_sigma;
      cfg.source = g;
    }
    cfg.algo = run_algo;
    cfg.baseline = baseline_from_string(run_baseline);
    cfg.copies = run_copies;
    cfg.trials = run_trials;
    cfg.seed = run_seed;
    std::vector<RunReport> reports = run_experiment(cfg);
    if (reports.empty()) throw std::runtime_error("run: every trial failed");
    write_reports(reports, run_out, run_format);
  } else if (adv->parsed()) {
    AdversaryGameResult g = run_adversary_game(adv_n, make_factory(adv_algo, adv_n), adv_seed,
                                               adv_replays);
    RunReport r;
    r.algo = "adversary_" + adv_algo;
    r.n = g.n;
    r.seed = adv_seed;
    r.trial = 0;
    r.actual_cost = g.algorithm_cost;
    r.opt_cost = g.bound;  // the harmonic lower bound, not an instance optimum
    r.ratio = g.algorithm_cost / g.bound;
    write_reports({r}, adv_out, adv_format);
  } else if (conv->parsed()) {
    AdviceDistribution dist = [&]() {
      if (conv_family == "gaussian") {
        GaussianComponent c;
        c.mean = Point(std::vector<double>(conv_dim, 0.0));
        c.stddev.assign(conv_dim, 1.0);
        c.weight = 1.0;
        return AdviceDistribution::gaussian_mixture({c});
      }
      if (conv_family == "box") {
        return AdviceDistribution::uniform_box(Point(std::vector<double>(conv_dim, 0.0)),
                                               Point(std::vector<double>(conv_dim, 1.0)));
      }
      throw ValidationError("converge: unknown family " + conv_family);
    }();
    ConvergenceResult res =
        convergence_benchmark(dist, parse_sizes(conv_sizes), conv_trials, conv_seed);
    write_reports(convergence_reports(res, "converge_" + conv_family, conv_seed), conv_out,
                  conv_format);
  } else if (val->parsed()) {
    Instance inst = load_instance(val_instance);
    std::printf("ok: %d servers, %zu requests, advice %s\n", inst.n(), inst.requests.size(),
                inst.advice ? "present" : "absent");
  }

  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  std::fprintf(stderr, "elapsed_ms=%.3f\n", ms);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const omm::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime error: %s\n", e.what());
    return 2;
  }
}
