// Apache License, Version 2.0, refer to LICENSE.txt
//
// Command-line front end: estimate entropy from count files, sample the PYM
// posterior, and run convergence benchmarks against known distributions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pymentropy/count_data.hpp"
#include "pymentropy/dirichlet_nsb.hpp"
#include "pymentropy/errors.hpp"
#include "pymentropy/pym.hpp"
#include "pymentropy/rng.hpp"
#include "pymentropy/sampler.hpp"
#include "pymentropy/synthetic.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace pymentropy;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoCoincidences = 3;
constexpr int kExitNumerical = 4;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) {
    return "";
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_positive_int(const std::string& field, std::size_t line,
                                 const std::string& what) {
  if (field.empty() ||
      field.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError("line " + std::to_string(line) + ": " + what +
                     " must be a positive integer, got '" + field + "'");
  }
  std::uint64_t value = 0;
  try {
    value = std::stoull(field);
  } catch (const std::exception&) {
    throw InputError("line " + std::to_string(line) + ": " + what +
                     " out of range: '" + field + "'");
  }
  if (value == 0) {
    throw InputError("line " + std::to_string(line) + ": " + what +
                     " must be >= 1, got 0");
  }
  return value;
}

// Input files: `#` comments and blank lines are skipped in every format.
Multiplicities read_input(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open input file '" + path + "'");
  }
  std::vector<std::string> samples;
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> mults;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') {
      continue;
    }
    if (format == "samples") {
      samples.push_back(line);
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw InputError("line " + std::to_string(line_no) +
                       ": expected two tab-separated fields");
    }
    const std::string left = trim(line.substr(0, tab));
    const std::string right = trim(line.substr(tab + 1));
    if (left.empty()) {
      throw InputError("line " + std::to_string(line_no) + ": empty symbol");
    }
    if (format == "counts") {
      const std::uint64_t c = parse_positive_int(right, line_no, "count");
      for (const auto& [sym, unused] : counts) {
        if (sym == left) {
          throw InputError("line " + std::to_string(line_no) +
                           ": duplicate symbol '" + left + "'");
        }
      }
      counts.emplace_back(left, c);
    } else {  // multiplicities
      const std::uint64_t freq = parse_positive_int(left, line_no, "frequency");
      const std::uint64_t mk =
          parse_positive_int(right, line_no, "symbol count");
      for (const auto& [f, unused] : mults) {
        if (f == freq) {
          throw InputError("line " + std::to_string(line_no) +
                           ": duplicate frequency " + left);
        }
      }
      mults.emplace_back(freq, mk);
    }
  }

  try {
    if (format == "samples") {
      return CountData::from_samples(samples).to_multiplicities();
    }
    if (format == "counts") {
      return CountData::from_counts(counts).to_multiplicities();
    }
    return Multiplicities::from_entries(mults);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

struct EstimateOptions {
  std::string input;
  std::string format = "counts";
  std::string estimator = "pym";
  std::optional<std::uint64_t> alphabet_size;
  std::string units = "nats";
  int grid_size = 30;
  double std_span = 6.0;
  std::string gamma_prior = "default";
  std::uint64_t seed = 0;
  std::string output;
};

PymConfig make_config(const EstimateOptions& opt) {
  PymConfig cfg;
  cfg.grid_size = opt.grid_size;
  cfg.std_span = opt.std_span;
  cfg.gamma_prior = (opt.gamma_prior == "flat") ? GammaPrior::kFlat
                                                : GammaPrior::kDefaultExp;
  cfg.validate();
  return cfg;
}

double to_units(double nats, const std::string& units) {
  return units == "bits" ? nats / std::log(2.0) : nats;
}

void write_out(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot open output file '" + path + "'");
  }
  out << payload;
}

EntropyEstimate run_estimator(const std::string& name, const Multiplicities& m,
                              const EstimateOptions& opt) {
  if (name == "plugin") {
    EntropyEstimate est;
    est.mean = plugin_entropy(m);
    return est;
  }
  if (name == "mima") {
    EntropyEstimate est;
    est.mean = miller_madow(m);
    return est;
  }
  if (name == "ansb") {
    return ansb_estimate(m);
  }
  if (name == "nsb") {
    if (!opt.alphabet_size) {
      throw InputError("the nsb estimator requires --alphabet-size");
    }
    return nsb_estimate(m, *opt.alphabet_size);
  }
  if (name == "dpm") {
    return dpm_estimate(m, make_config(opt));
  }
  if (name == "pym") {
    return pym_estimate(m, make_config(opt));
  }
  throw InputError("unknown estimator '" + name + "'");
}

json estimate_report(const std::string& estimator, const Multiplicities& m,
                     const EntropyEstimate& est, const EstimateOptions& opt,
                     std::vector<std::string>* warnings_out) {
  std::vector<std::string> warnings;
  if (est.diagnostics.mass_warning) {
    std::ostringstream msg;
    msg << "quadrature grid captured only " << est.diagnostics.mass_captured
        << " of the posterior mass";
    warnings.push_back(msg.str());
  }

  json report;
  report["estimator"] = estimator;
  report["units"] = opt.units;
  report["mean"] = to_units(est.mean, opt.units);
  report["std"] =
      est.std_dev ? json(to_units(*est.std_dev, opt.units)) : json(nullptr);
  report["mean_nats"] = est.mean;
  report["std_nats"] = est.std_dev ? json(*est.std_dev) : json(nullptr);
  report["map_d"] = est.map_d ? json(*est.map_d) : json(nullptr);
  report["map_alpha"] = est.map_alpha ? json(*est.map_alpha) : json(nullptr);
  report["N"] = m.total();
  report["K"] = m.distinct();
  json grid;
  grid["d_lo"] = est.diagnostics.d_lo;
  grid["d_hi"] = est.diagnostics.d_hi;
  grid["alpha_lo"] = est.diagnostics.alpha_lo;
  grid["alpha_hi"] = est.diagnostics.alpha_hi;
  json diag;
  diag["grid"] = grid;
  diag["node_count"] = est.diagnostics.node_count;
  diag["mass_captured"] = est.diagnostics.mass_captured;
  diag["fallback_grid"] = est.diagnostics.fallback_grid;
  diag["log_evidence_at_map"] =
      est.log_evidence_at_map ? json(*est.log_evidence_at_map) : json(nullptr);
  diag["warnings"] = warnings;
  report["diagnostics"] = diag;
  report["seed"] = opt.seed;
  if (warnings_out != nullptr) {
    *warnings_out = warnings;
  }
  return report;
}

int cmd_estimate(const EstimateOptions& opt) {
  const Multiplicities m = read_input(opt.input, opt.format);
  std::vector<std::string> warnings;
  const EntropyEstimate est = run_estimator(opt.estimator, m, opt);
  const json report = estimate_report(opt.estimator, m, est, opt, &warnings);
  for (const auto& w : warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  write_out(opt.output, report.dump(2) + "\n");
  return kExitOk;
}

int cmd_sample(const EstimateOptions& opt, std::uint64_t draws) {
  const Multiplicities m = read_input(opt.input, opt.format);
  const PymConfig cfg = make_config(opt);
  Rng rng(opt.seed);
  json arr = json::array();
  if (draws > 0) {
    const std::vector<double> samples =
        sample_pym_posterior(m, cfg, draws, rng);
    for (double h : samples) {
      arr.push_back(to_units(h, opt.units));
    }
  } else {
    // still validate the dataset against the sampler preconditions
    if (m.total() == 0) {
      throw EmptyDataError("sample: no samples in input");
    }
    if (m.coincidences() < 2) {
      throw NoCoincidencesError(
          "sample: a finite posterior requires at least two coincidences "
          "(N - K >= 2)");
    }
  }
  write_out(opt.output, arr.dump() + "\n");
  return kExitOk;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ConvergeOptions {
  std::string dist_spec;
  std::vector<std::uint64_t> sizes;
  std::vector<std::string> estimators;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> alphabet_size;
  EstimateOptions pym_opts;
  std::string output;
};

int cmd_converge(const ConvergeOptions& opt) {
  KnownDistribution dist;
  try {
    dist = parse_distribution_spec(opt.dist_spec);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  for (const auto& name : opt.estimators) {
    static const std::vector<std::string> known{"plugin", "mima", "nsb",
                                                "ansb",   "dpm",  "pym"};
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw InputError("unknown estimator '" + name + "'");
    }
  }

  std::ostringstream csv;
  csv << "size,trial,estimator,mean,std,true_entropy,error\n";
  for (std::size_t si = 0; si < opt.sizes.size(); ++si) {
    for (std::uint64_t trial = 0; trial < opt.trials; ++trial) {
      const std::uint64_t cell_seed =
          splitmix64(opt.seed ^ splitmix64(si * 1000003ull + trial));
      Rng rng(cell_seed);
      const KnownDistribution realized = realize(dist, rng);
      const CountData data = draw_counts(realized, opt.sizes[si], rng);
      const Multiplicities m = data.to_multiplicities();

      for (const auto& name : opt.estimators) {
        std::string mean_cell, std_cell, error_cell;
        try {
          EstimateOptions eopt = opt.pym_opts;
          eopt.alphabet_size = opt.alphabet_size;
          if (name == "nsb" && !eopt.alphabet_size) {
            if (realized.kind == KnownDistribution::Kind::kPyDraw) {
              throw InputError("nsb needs --alphabet-size for py draws");
            }
            eopt.alphabet_size = realized.probabilities.size();
          }
          const EntropyEstimate est = run_estimator(name, m, eopt);
          mean_cell = format_double(est.mean);
          if (est.std_dev) {
            std_cell = format_double(*est.std_dev);
          }
        } catch (const NoCoincidencesError&) {
          error_cell = "no_coincidences";
        } catch (const NumericalError&) {
          error_cell = "numerical";
        } catch (const EmptyDataError&) {
          error_cell = "empty";
        } catch (const InputError&) {
          error_cell = "needs_alphabet";
        }
        csv << opt.sizes[si] << ',' << trial << ',' << name << ','
            << mean_cell << ',' << std_cell << ','
            << format_double(realized.true_entropy) << ',' << error_cell
            << '\n';
      }
    }
  }
  write_out(opt.output, csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian entropy estimation for undersampled discrete data"};
  app.set_version_flag("--version", "pymentropy 0.1.0");
  app.require_subcommand(1);

  EstimateOptions eopt;
  ConvergeOptions copt;
  std::uint64_t draws = 1000;

  CLI::App* est = app.add_subcommand(
      "estimate",
      "Estimate entropy from a samples/counts/multiplicities file");
  est->add_option("--input,-i", eopt.input, "input file")->required();
  est->add_option("--format,-f", eopt.format, "input format")
      ->check(CLI::IsMember({"samples", "counts", "multiplicities"}));
  est->add_option("--estimator,-e", eopt.estimator, "estimator")
      ->check(CLI::IsMember({"plugin", "mima", "nsb", "ansb", "dpm", "pym"}));
  est->add_option("--alphabet-size", eopt.alphabet_size,
                  "total alphabet size (nsb only)");
  est->add_option("--units", eopt.units, "output units")
      ->check(CLI::IsMember({"nats", "bits"}));
  est->add_option("--grid-size", eopt.grid_size, "quadrature nodes per axis");
  est->add_option("--std-span", eopt.std_span, "grid half-width in stds");
  est->add_option("--gamma-prior", eopt.gamma_prior, "tail-weight prior")
      ->check(CLI::IsMember({"default", "flat"}));
  est->add_option("--seed", eopt.seed, "seed recorded in the report");
  est->add_option("--output,-o", eopt.output, "write the report here");

  CLI::App* smp = app.add_subcommand(
      "sample", "Draw exact samples from the PYM posterior over entropy");
  smp->add_option("--input,-i", eopt.input, "input file")->required();
  smp->add_option("--format,-f", eopt.format, "input format")
      ->check(CLI::IsMember({"samples", "counts", "multiplicities"}));
  smp->add_option("--draws", draws, "number of posterior draws");
  smp->add_option("--seed", eopt.seed, "random seed");
  smp->add_option("--units", eopt.units, "output units")
      ->check(CLI::IsMember({"nats", "bits"}));
  smp->add_option("--grid-size", eopt.grid_size, "quadrature nodes per axis");
  smp->add_option("--std-span", eopt.std_span, "grid half-width in stds");
  smp->add_option("--gamma-prior", eopt.gamma_prior, "tail-weight prior")
      ->check(CLI::IsMember({"default", "flat"}));
  smp->add_option("--output,-o", eopt.output, "write the sample array here");

  CLI::App* cnv = app.add_subcommand(
      "converge", "Benchmark estimators against a known distribution");
  cnv->add_option("--dist", copt.dist_spec,
                  "distribution spec, e.g. uniform:1000, powerlaw:2:10000, "
                  "py:0.25:40, poisson:2.71828")
      ->required();
  cnv->add_option("--sizes", copt.sizes, "sample sizes")
      ->required()
      ->delimiter(',');
  cnv->add_option("--estimators", copt.estimators, "estimators to run")
      ->required()
      ->delimiter(',');
  cnv->add_option("--trials", copt.trials, "trials per size");
  cnv->add_option("--seed", copt.seed, "base seed");
  cnv->add_option("--alphabet-size", copt.alphabet_size,
                  "alphabet size forwarded to nsb");
  cnv->add_option("--grid-size", copt.pym_opts.grid_size,
                  "quadrature nodes per axis");
  cnv->add_option("--std-span", copt.pym_opts.std_span,
                  "grid half-width in stds");
  cnv->add_option("--gamma-prior", copt.pym_opts.gamma_prior,
                  "tail-weight prior")
      ->check(CLI::IsMember({"default", "flat"}));
  cnv->add_option("--output,-o", copt.output, "write the CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (est->parsed()) {
      return cmd_estimate(eopt);
    }
    if (smp->parsed()) {
      return cmd_sample(eopt, draws);
    }
    return cmd_converge(copt);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const EmptyDataError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InconsistentAlphabetError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NoCoincidencesError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoCoincidences;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
