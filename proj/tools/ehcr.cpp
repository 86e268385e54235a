// ehcr: outage sweeps for the interference-assisted energy-harvesting
// cognitive relay. Writes CSV to stdout or --out.
//
// Exit codes: 0 success, 1 input error, 2 internal-consistency error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ehcr/config.hpp"
#include "ehcr/errors.hpp"
#include "ehcr/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitConsistency = 2;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secondary outage of an interference-assisted EH cognitive relay network"};

  std::string config_path;
  std::string sweep = "alpha";
  std::optional<double> from, to, step;
  std::string values_text;
  std::string eval_text = "analytic";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  bool optimize = false;
  double alpha = 0.5;
  unsigned threads = 0;
  std::string out_path;

  // Scenario overrides; applied on top of the config file.
  std::optional<int> num_pairs;
  std::optional<double> theta_p, p_peak_db, p_pt_db, delta, rate_p, rate_s, bandwidth, rho;

  app.add_option("-c,--config", config_path, "Scenario config file (key = value)");
  app.add_option("--sweep", sweep, "Swept variable: alpha, theta_p or L");
  app.add_option("--from", from, "First sweep value");
  app.add_option("--to", to, "Last sweep value (inclusive)");
  app.add_option("--step", step, "Sweep step");
  app.add_option("--values", values_text, "Explicit comma-separated sweep values");
  app.add_option("--eval", eval_text, "Evaluators: analytic,mc,mc-baseline");
  app.add_option("--samples", samples, "Monte Carlo samples per point");
  app.add_option("--seed", seed, "Monte Carlo seed");
  app.add_flag("--optimize", optimize, "Optimize alpha per point (theta_p / L sweeps)");
  app.add_option("--alpha", alpha, "Fixed alpha for theta_p / L sweeps");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_option("-o,--out", out_path, "Write CSV here instead of stdout");

  app.add_option("--L", num_pairs, "Override: number of primary pairs");
  app.add_option("--theta-p", theta_p, "Override: primary outage threshold");
  app.add_option("--p-peak-db", p_peak_db, "Override: peak power P_t [dB]");
  app.add_option("--p-pt-db", p_pt_db, "Override: primary transmit power [dB]");
  app.add_option("--delta", delta, "Override: energy conversion efficiency");
  app.add_option("--rate-primary", rate_p, "Override: primary rate [bit/s/Hz]");
  app.add_option("--rate-secondary", rate_s, "Override: secondary rate [bit/s/Hz]");
  app.add_option("--bandwidth", bandwidth, "Override: per-pair bandwidth [Hz]");
  app.add_option("--rho", rho, "Override: path-loss exponent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    ehcr::Config config = config_path.empty() ? ehcr::Config{} : ehcr::Config::load(config_path);
    auto override_key = [&config](const char* key, const auto& value) {
      if (value) config.set(key, ehcr::format_double(static_cast<double>(*value)));
    };
    if (num_pairs) config.set("L", std::to_string(*num_pairs));
    override_key("theta_p", theta_p);
    override_key("p_peak_db", p_peak_db);
    override_key("p_pt_db", p_pt_db);
    override_key("delta", delta);
    override_key("rate_primary", rate_p);
    override_key("rate_secondary", rate_s);
    override_key("bandwidth", bandwidth);
    override_key("rho", rho);
    const ehcr::Scenario base = ehcr::build_scenario(config);

    ehcr::SweepSpec spec;
    spec.variable = ehcr::parse_sweep_variable(sweep);
    if (!values_text.empty()) {
      if (from || to || step) throw ehcr::ValidationError("sweep: give --values or --from/--to/--step, not both");
      for (const auto& v : split_list(values_text)) {
        try {
          std::size_t used = 0;
          spec.values.push_back(std::stod(v, &used));
          if (used != v.size()) throw std::invalid_argument(v);
        } catch (const std::exception&) {
          throw ehcr::ValidationError("values: cannot parse '" + v + "'");
        }
      }
    } else if (from && to && step) {
      spec.values = ehcr::linear_values(*from, *to, *step);
    } else if (from && !to && !step) {
      spec.values = {*from};
    } else {
      throw ehcr::ValidationError("sweep: need --values or all of --from/--to/--step");
    }
    spec.evaluators.clear();
    for (const auto& e : split_list(eval_text)) spec.evaluators.push_back(ehcr::parse_evaluator(e));
    spec.mc_samples = samples;
    spec.seed = seed;
    spec.optimize = optimize;
    spec.alpha = alpha;
    spec.threads = threads;

    const auto rows = ehcr::run_sweep(base, spec);
    if (out_path.empty()) {
      ehcr::write_csv(std::cout, rows);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw ehcr::ValidationError("out: cannot open " + out_path);
      ehcr::write_csv(out, rows);
    }
    return kExitOk;
  } catch (const ehcr::ConsistencyError& e) {
    std::cerr << "ehcr: internal consistency error: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ehcr: " << e.what() << '\n';
    return kExitInput;
  } catch (const ehcr::DomainError& e) {
    std::cerr << "ehcr: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const std::exception& e) {
    std::cerr << "ehcr: " << e.what() << '\n';
    return kExitConsistency;
  }
}
