// occuprob: block/bin occupancy probabilities from the command line.
//
// Subcommands:
//   prob subset --N --S --K --R [--method exact|bonferroni|asymptotic|mc|all]
//   prob bins   --m --n --R     [--method ...]
//   threshold   --N --S --R --target-prob p
//   validity    --N --S --K --R  (or --m --n --R)
//   sweep       --vary K|N|R|a --from --to --step  plus fixed params
//
// Exit codes: 0 ok; 1 MC estimate contradicts the exact value at 99.9%
// confidence under --method all; 2 invalid parameters; 3 exact method
// over the cost budget; 4 threshold regime unreachable (T domain).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "occupancy/asymptotics.hpp"
#include "occupancy/exact.hpp"
#include "occupancy/inclusion_exclusion.hpp"
#include "occupancy/monte_carlo.hpp"
#include "occupancy/record.hpp"

using namespace occupancy;

namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct CommonOpts {
  std::string method = "all";
  std::uint64_t trials = 100000;
  std::uint64_t seed = kDefaultMasterSeed;
  double confidence = 0.95;
  unsigned workers = 0;
  std::optional<std::uint64_t> max_terms;
  double budget_ops = CostBudget{}.max_ops;

  bool wants(const std::string& m) const { return method == "all" || method == m; }
  CostBudget budget() const {
    CostBudget b;
    b.max_ops = budget_ops;
    return b;
  }
  TrialConfig trial_config() const { return {trials, seed, confidence, workers}; }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--method", o.method, "exact|bonferroni|asymptotic|mc|all")
      ->check(CLI::IsMember({"exact", "bonferroni", "asymptotic", "mc", "all"}));
  cmd->add_option("--trials", o.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "master seed (default 1729, never entropy)");
  cmd->add_option("--confidence", o.confidence, "CI level for mc")
      ->check(CLI::Range(1e-6, 1.0 - 1e-6));
  cmd->add_option("--workers", o.workers, "mc worker threads (0 = hardware)");
  cmd->add_option("--max-terms", o.max_terms, "Bonferroni truncation");
  cmd->add_option("--budget", o.budget_ops, "exact-method cost budget");
}

OutputRecord base_record(const SubsetModelParams& p) {
  OutputRecord r;
  r.model = "subset";
  r.N = p.universe;
  r.S = p.block_len;
  r.K = p.sample;
  r.R = p.min_hits;
  return r;
}

OutputRecord base_record(const BinsModelParams& p) {
  OutputRecord r;
  r.model = "bins";
  r.m = p.balls;
  r.n = p.bins;
  r.R = p.min_load;
  return r;
}

ProbEstimate exact_estimate(const SubsetModelParams& p, const CostBudget& b) {
  return subset_prob_exact(p, b);
}
ProbEstimate exact_estimate(const BinsModelParams& p, const CostBudget& b) {
  return bins_prob_exact(p, b);
}

McResult simulate(const SubsetModelParams& p, const TrialConfig& cfg) {
  return simulate_subset(p, cfg);
}
McResult simulate(const BinsModelParams& p, const TrialConfig& cfg) {
  return simulate_bins(p, cfg);
}

CParameter c_parameter(const SubsetModelParams& p) { return c_subset(p); }
CParameter c_parameter(const BinsModelParams& p) { return c_bins(p); }

// Runs the requested methods for one parameter point; appends records.
// Returns the MC result when MC ran (for the cross-method gate).
template <class Params>
std::optional<McResult> run_methods(const Params& params, const CommonOpts& opts,
                                    std::vector<OutputRecord>& records) {
  params.validate();
  std::optional<McResult> mc;

  if (opts.wants("exact")) {
    Timer t;
    try {
      const ProbEstimate est = exact_estimate(params, opts.budget());
      OutputRecord r = base_record(params);
      r.method = "exact";
      r.value = est.value;
      r.lower = est.lower;
      r.upper = est.upper;
      r.exact = est.exact_rational;
      r.runtime_ms = t.ms();
      records.push_back(std::move(r));
    } catch (const BudgetExceeded&) {
      if (opts.method == "exact") throw;
      std::cerr << "note: exact method over budget, skipped\n";
    }
  }

  if (opts.wants("bonferroni")) {
    Timer t;
    IeOptions io;
    io.max_terms = opts.max_terms;
    const BonferroniBounds b = inclusion_exclusion_prob(params, io);
    OutputRecord r = base_record(params);
    r.method = "bonferroni";
    r.value = 0.5 * (b.lower + b.upper);
    r.lower = b.lower;
    r.upper = b.upper;
    r.exact = b.exact_rational;
    r.runtime_ms = t.ms();
    records.push_back(std::move(r));
  }

  if (opts.wants("asymptotic")) {
    Timer t;
    const CParameter c = c_parameter(params);
    if (c.left_of_mode) {
      std::cerr << "note: G_{R-1} evaluated left of its mode (outside the decreasing branch);"
                   " the asymptotic value is untrustworthy here\n";
    }
    OutputRecord r = base_record(params);
    r.method = "asymptotic";
    r.value = c.prob;
    r.c = c.c;
    r.apply_validity(validity(params));
    r.runtime_ms = t.ms();
    records.push_back(std::move(r));
  }

  if (opts.wants("mc")) {
    Timer t;
    const McResult res = simulate(params, opts.trial_config());
    OutputRecord r = base_record(params);
    r.method = "mc";
    r.value = res.estimate;
    r.lower = res.ci_lower;
    r.upper = res.ci_upper;
    r.trials = opts.trials;
    r.seed = opts.seed;
    r.runtime_ms = t.ms();
    records.push_back(std::move(r));
    mc = res;
  }

  return mc;
}

// MC-vs-exact gate at 99.9%: asymptotic-vs-exact differences are model
// error and only reported; an exact value outside the MC interval means
// an implementation bug somewhere.
int cross_validate(const std::vector<OutputRecord>& records,
                   const std::optional<McResult>& mc) {
  std::optional<double> exact_value, asym_value;
  for (const OutputRecord& r : records) {
    if (r.method == "exact" && r.value) exact_value = *r.value;
    if (r.method == "asymptotic" && r.value) asym_value = *r.value;
  }
  if (exact_value && asym_value) {
    std::cerr << "note: asymptotic - exact = "
              << format_double(*asym_value - *exact_value)
              << " (finite-size model error, reported only)\n";
  }
  if (!mc) return 0;
  if (!exact_value) return 0;
  const WilsonInterval w = wilson_interval(mc->successes, mc->trials, 0.999);
  if (*exact_value < w.lower || *exact_value > w.upper) {
    std::cerr << "disagreement: exact value " << format_double(*exact_value)
              << " outside the 99.9% MC interval [" << format_double(w.lower) << ", "
              << format_double(w.upper) << "]\n";
    return 1;
  }
  return 0;
}

void emit(const std::string& format, const std::vector<OutputRecord>& records) {
  if (format == "json") {
    for (const OutputRecord& r : records) std::cout << to_json(r) << "\n";
  } else if (format == "csv") {
    std::cout << csv_header() << "\n";
    for (const OutputRecord& r : records) std::cout << to_csv_row(r) << "\n";
  } else {
    std::cout << to_table(records);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"block/bin occupancy probability toolkit"};
  app.require_subcommand(1);
  std::string format = "table";
  app.add_option("--format", format, "json|csv|table")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  // prob
  CLI::App* prob = app.add_subcommand("prob", "success probability of one model");
  prob->require_subcommand(1);
  prob->fallthrough();
  SubsetModelParams sp;
  BinsModelParams bp;
  CommonOpts prob_opts;

  CLI::App* prob_subset = prob->add_subcommand("subset", "random K-subset model");
  prob_subset->fallthrough();
  prob_subset->add_option("--N", sp.universe, "universe size")->required();
  prob_subset->add_option("--S", sp.block_len, "block length")->required();
  prob_subset->add_option("--K", sp.sample, "subset cardinality")->required();
  prob_subset->add_option("--R", sp.min_hits, "min hits per block")->required();
  add_common(prob_subset, prob_opts);

  CLI::App* prob_bins = prob->add_subcommand("bins", "balls-into-bins model");
  prob_bins->fallthrough();
  prob_bins->add_option("--m", bp.balls, "ball count")->required();
  prob_bins->add_option("--n", bp.bins, "bin count")->required();
  prob_bins->add_option("--R", bp.min_load, "min load per bin")->required();
  add_common(prob_bins, prob_opts);

  // threshold
  CLI::App* threshold = app.add_subcommand("threshold", "smallest K reaching a target probability");
  threshold->fallthrough();
  std::uint64_t th_N = 0, th_S = 0, th_R = 1;
  double target_prob = 0.0;
  threshold->add_option("--N", th_N)->required();
  threshold->add_option("--S", th_S)->required();
  threshold->add_option("--R", th_R)->required();
  threshold->add_option("--target-prob", target_prob, "target success probability in (0,1)")
      ->required();

  // validity
  CLI::App* valid = app.add_subcommand("validity", "asymptotic-regime diagnostics");
  valid->fallthrough();
  std::optional<std::uint64_t> v_N, v_S, v_K, v_m, v_n;
  std::uint64_t v_R = 1;
  valid->add_option("--N", v_N);
  valid->add_option("--S", v_S);
  valid->add_option("--K", v_K);
  valid->add_option("--m", v_m);
  valid->add_option("--n", v_n);
  valid->add_option("--R", v_R)->required();

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "grid sweep emitting one record per point");
  sweep->fallthrough();
  std::string vary;
  double sw_from = 0.0, sw_to = 0.0, sw_step = 0.0;
  std::optional<std::uint64_t> sw_N, sw_S, sw_K;
  std::uint64_t sw_R = 1;
  CommonOpts sweep_opts;
  sweep_opts.method = "asymptotic";
  sweep->add_option("--vary", vary, "K|N|R|a")
      ->required()
      ->check(CLI::IsMember({"K", "N", "R", "a"}));
  sweep->add_option("--from", sw_from)->required();
  sweep->add_option("--to", sw_to)->required();
  sweep->add_option("--step", sw_step)->required();
  sweep->add_option("--N", sw_N);
  sweep->add_option("--S", sw_S);
  sweep->add_option("--K", sw_K);
  sweep->add_option("--R", sw_R);
  add_common(sweep, sweep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::vector<OutputRecord> records;
  int exit_code = 0;

  try {
    if (prob_subset->parsed()) {
      const auto mc = run_methods(sp, prob_opts, records);
      exit_code = cross_validate(records, mc);
    } else if (prob_bins->parsed()) {
      const auto mc = run_methods(bp, prob_opts, records);
      exit_code = cross_validate(records, mc);
    } else if (threshold->parsed()) {
      if (!(target_prob > 0.0 && target_prob < 1.0)) {
        throw std::invalid_argument("--target-prob must be in (0,1)");
      }
      Timer t;
      const double target_c = -std::log(target_prob);
      const std::uint64_t k = threshold_K(th_N, th_S, th_R, target_c);
      const CParameter c = c_subset({th_N, th_S, k, th_R});
      OutputRecord r = base_record(SubsetModelParams{th_N, th_S, k, th_R});
      r.method = "threshold";
      r.target_prob = target_prob;
      r.c = c.c;
      r.value = c.prob;
      r.runtime_ms = t.ms();
      records.push_back(std::move(r));
    } else if (valid->parsed()) {
      const bool subset_flags = v_N.has_value() || v_S.has_value() || v_K.has_value();
      const bool bins_flags = v_m.has_value() || v_n.has_value();
      if (subset_flags == bins_flags) {
        throw std::invalid_argument("validity: give either --N --S --K --R or --m --n --R");
      }
      Timer t;
      OutputRecord r;
      if (subset_flags) {
        if (!v_N || !v_S || !v_K) {
          throw std::invalid_argument("validity: subset form needs --N --S --K --R");
        }
        const SubsetModelParams p{*v_N, *v_S, *v_K, v_R};
        p.validate();
        r = base_record(p);
        r.apply_validity(validity(p));
      } else {
        if (!v_m || !v_n) {
          throw std::invalid_argument("validity: bins form needs --m --n --R");
        }
        const BinsModelParams p{*v_m, *v_n, v_R};
        p.validate();
        r = base_record(p);
        r.apply_validity(validity(p));
      }
      r.method = "validity";
      r.runtime_ms = t.ms();
      records.push_back(std::move(r));
    } else if (sweep->parsed()) {
      if (!(sw_step > 0.0) || sw_from > sw_to) {
        throw std::invalid_argument("sweep: empty or invalid grid");
      }
      if (vary == "a") {
        if (!sw_N || !sw_S) throw std::invalid_argument("sweep --vary a needs --N --S --R");
        const auto points =
            static_cast<std::uint64_t>(std::floor((sw_to - sw_from) / sw_step + 1e-9)) + 1;
        for (std::uint64_t i = 0; i < points; ++i) {
          const double a = sw_from + static_cast<double>(i) * sw_step;
          Timer t;
          const double c1 = perturbation_c(static_cast<double>(*sw_N),
                                           static_cast<double>(*sw_S), sw_R, a);
          OutputRecord r;
          r.model = "subset";
          r.N = sw_N;
          r.S = sw_S;
          r.R = sw_R;
          r.a = a;
          r.method = "perturbation";
          r.value = c1;  // the perturbed c; tends to e^{-a}
          r.c = c1;
          r.runtime_ms = t.ms();
          records.push_back(std::move(r));
        }
      } else {
        if (sw_from < 0.0) throw std::invalid_argument("sweep: integer grid cannot be negative");
        const auto grid_end = static_cast<std::uint64_t>(sw_to);
        const auto grid_step = static_cast<std::uint64_t>(sw_step);
        if (grid_step == 0) throw std::invalid_argument("sweep: step must be a positive integer");
        for (std::uint64_t x = static_cast<std::uint64_t>(sw_from); x <= grid_end;
             x += grid_step) {
          SubsetModelParams p;
          p.min_hits = sw_R;
          if (vary == "K") {
            if (!sw_N || !sw_S) throw std::invalid_argument("sweep --vary K needs --N --S --R");
            p.universe = *sw_N;
            p.block_len = *sw_S;
            p.sample = x;
          } else if (vary == "N") {
            if (!sw_S || !sw_K) throw std::invalid_argument("sweep --vary N needs --S --K --R");
            p.universe = x;
            p.block_len = *sw_S;
            p.sample = *sw_K;
          } else {  // R
            if (!sw_N || !sw_S || !sw_K) {
              throw std::invalid_argument("sweep --vary R needs --N --S --K");
            }
            p.universe = *sw_N;
            p.block_len = *sw_S;
            p.sample = *sw_K;
            p.min_hits = x;
          }
          run_methods(p, sweep_opts, records);
        }
      }
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  emit(format, records);
  return exit_code;
}
