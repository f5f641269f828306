// mixkit: mixing coefficients of finite joint distributions and binned
// samples. JSON on stdout by default, --tsv for tab-separated tables.
//
// Exit codes: 0 success, 1 input error, 2 size refusal, 3 solver did not
// converge.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixkit/alpha_bounds.hpp"
#include "mixkit/dpi.hpp"
#include "mixkit/errors.hpp"
#include "mixkit/estimator.hpp"
#include "mixkit/io.hpp"
#include "mixkit/mixing_exact.hpp"
#include "mixkit/pairwise.hpp"
#include "mixkit/parallel.hpp"

namespace {

using mixkit::Json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSize = 2;
constexpr int kExitSolver = 3;

struct RunConfig {
  std::string input;
  std::string joint_path;
  std::string channel_path;
  std::string tensor_path;
  std::optional<std::size_t> bins;
  std::string schedule = "cuberoot";
  std::uint64_t seed = mixkit::kDefaultSeed;
  std::optional<double> tol;  // solver gap for bounds, inequality slack for dpi
  std::size_t enum_limit = mixkit::kDefaultEnumLimit;
  std::optional<int> threads;
  bool tsv = false;
  bool trace = false;
  bool prune = false;
  double margin = 0.0;
  std::vector<std::size_t> l_list = {10, 100, 1000};
  std::string generator;
  std::size_t rows = 1000;
  std::size_t max_newton = mixkit::SdpOptions{}.max_newton;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "Tolerance (SDP gap for bounds, slack for dpi)");
  cmd->add_option("--enum-limit", cfg.enum_limit, "Largest side enumerated for exact alpha")
      ->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "OpenMP threads (fallback: MIXKIT_THREADS)");
  cmd->add_flag("--tsv", cfg.tsv, "Tab-separated output");
}

void add_binning(CLI::App* cmd, RunConfig& cfg) {
  auto* bins = cmd->add_option("--bins", cfg.bins, "Fixed number of percentile bins");
  cmd->add_option("--schedule", cfg.schedule, "Bin schedule when --bins is absent")
      ->check(CLI::IsMember({"cuberoot", "sqrt"}))
      ->capture_default_str()
      ->excludes(bins);
}

mixkit::MixingOptions mixing_options(const RunConfig& cfg) {
  mixkit::MixingOptions o;
  o.enum_limit = cfg.enum_limit;
  o.bounds.seed = cfg.seed;
  if (cfg.tol) o.bounds.sdp.tol = *cfg.tol;
  o.bounds.sdp.max_newton = cfg.max_newton;
  return o;
}

mixkit::BinningSpec binning(const RunConfig& cfg) {
  mixkit::BinningSpec spec;
  spec.fixed_bins = cfg.bins;
  spec.schedule = *mixkit::parse_schedule(cfg.schedule);
  return spec;
}

void emit(const std::string& text) {
  std::fwrite(text.data(), 1, text.size(), stdout);
  std::fflush(stdout);
}

int cmd_exact(const RunConfig& cfg) {
  const mixkit::JointDist theta = mixkit::io::read_joint(cfg.input);
  mixkit::MixingReport r;
  r.alpha_lower = r.alpha_upper = mixkit::alpha_exact(theta, cfg.enum_limit);
  r.alpha_is_exact = true;
  r.beta = mixkit::beta(theta);
  r.phi_x_given_y = mixkit::phi(theta);
  r.phi_y_given_x = mixkit::phi_reverse(theta);
  r.mutual_information = mixkit::mutual_information(theta);
  const bool chain = mixkit::satisfies_chain(r);
  if (cfg.tsv) {
    emit(mixkit::io::report_tsv(r));
  } else {
    emit(mixkit::io::dump(Json{{"command", "exact"},
                               {"rows", theta.rows()},
                               {"cols", theta.cols()},
                               {"report", r},
                               {"chain_holds", chain},
                               {"information_units", "nats"}}));
  }
  return kExitOk;
}

int cmd_bounds(const RunConfig& cfg) {
  const mixkit::JointDist theta = mixkit::io::read_joint(cfg.input);
  const mixkit::AlphaBounds b = mixkit::alpha_bounds(theta, mixing_options(cfg).bounds);
  if (cfg.tsv) {
    emit(mixkit::io::bounds_tsv(b));
  } else {
    emit(mixkit::io::dump(Json{{"command", "bounds"},
                               {"rows", theta.rows()},
                               {"cols", theta.cols()},
                               {"bounds", b}}));
  }
  if (!b.sdp_converged) {
    std::cerr << "mixkit: SDP did not converge; upper bound uses the last feasible point\n";
    return kExitSolver;
  }
  return kExitOk;
}

int cmd_estimate(const RunConfig& cfg) {
  const mixkit::SampleSet samples = mixkit::io::read_samples(cfg.input);
  const auto spec = binning(cfg);
  const auto options = mixing_options(cfg);
  const mixkit::Estimate e = mixkit::estimate_mixing(samples, spec, options);
  std::optional<mixkit::EstimateTrace> trace;
  if (cfg.trace) trace = mixkit::prefix_trace(samples, spec, options);
  if (cfg.tsv) {
    emit(trace ? mixkit::io::trace_tsv(*trace) : mixkit::io::report_tsv(e.report));
    return kExitOk;
  }
  Json out{{"command", "estimate"},
           {"samples", e.samples},
           {"bins", e.bins},
           {"report", e.report},
           {"information_units", "nats"}};
  if (trace) out["trace"] = *trace;
  emit(mixkit::io::dump(out));
  return kExitOk;
}

int cmd_dpi(const RunConfig& cfg) {
  const bool tensor = !cfg.tensor_path.empty();
  if (tensor == (!cfg.joint_path.empty() || !cfg.channel_path.empty())) {
    throw mixkit::InputError("dpi: give either --tensor or both --joint and --channel");
  }
  if (!tensor && (cfg.joint_path.empty() || cfg.channel_path.empty())) {
    throw mixkit::InputError("dpi: --joint and --channel must be given together");
  }
  const mixkit::TripleDist delta =
      tensor ? mixkit::io::read_tensor(cfg.tensor_path)
             : mixkit::compose_triple(mixkit::io::read_joint(cfg.joint_path),
                                      mixkit::io::read_channel(cfg.channel_path));
  const mixkit::DpiReport d =
      mixkit::dpi_check(delta, mixing_options(cfg), cfg.tol.value_or(mixkit::kDpiTolerance));
  if (cfg.tsv) {
    emit(mixkit::io::dpi_tsv(d));
  } else {
    Json out = d;
    out["command"] = "dpi";
    emit(mixkit::io::dump(out));
  }
  return kExitOk;
}

int cmd_pairwise(const RunConfig& cfg) {
  const mixkit::io::Table table = mixkit::io::read_columns(cfg.input);
  std::vector<std::vector<double>> columns(table.cols);
  for (std::size_t c = 0; c < table.cols; ++c) columns[c] = table.column(c);
  const mixkit::EdgeList edges =
      mixkit::pairwise_phi(columns, binning(cfg), {cfg.prune, cfg.margin});
  if (cfg.tsv) {
    emit(mixkit::io::edges_tsv(edges));
  } else {
    Json out = edges;
    out["command"] = "pairwise";
    out["names"] = table.header;
    out["prune"] = cfg.prune;
    out["margin"] = cfg.margin;
    emit(mixkit::io::dump(out));
  }
  return kExitOk;
}

int cmd_demo_inconsistency(const RunConfig& cfg) {
  std::vector<std::size_t> lengths = cfg.l_list;
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  if (lengths.empty() || lengths.front() < 2) {
    throw mixkit::InputError("demo-inconsistency: sample sizes must be >= 2");
  }
  // One independent stream; each size reads a prefix of it.
  const auto gen = mixkit::Generator::parse("independent");
  const mixkit::SampleSet stream = gen.draw(lengths.back(), cfg.seed);
  const auto options = mixing_options(cfg);
  mixkit::EstimateTrace trace;
  for (std::size_t l : lengths) {
    const mixkit::SampleSet prefix(stream.begin(), stream.begin() + static_cast<std::ptrdiff_t>(l));
    const mixkit::Estimate e = mixkit::estimate_mixing(prefix, {}, options);
    trace.push_back({e.samples, e.bins, e.report, mixkit::naive_estimate_beta(prefix)});
  }
  if (cfg.tsv) {
    std::string out = "samples\tbins\tnaive_beta\tbinned_beta\tbinned_phi_x_given_y\n";
    for (const auto& r : trace) {
      out += std::to_string(r.samples) + "\t" + std::to_string(r.bins) + "\t" +
             mixkit::io::format_double(*r.naive_beta) + "\t" +
             mixkit::io::format_double(r.report.beta) + "\t" +
             mixkit::io::format_double(r.report.phi_x_given_y) + "\n";
    }
    emit(out);
  } else {
    emit(mixkit::io::dump(Json{{"command", "demo-inconsistency"},
                               {"generator", gen.name()},
                               {"true_beta", *gen.true_beta()},
                               {"seed", cfg.seed},
                               {"rows", trace}}));
  }
  return kExitOk;
}

int cmd_generate(const RunConfig& cfg) {
  const auto gen = mixkit::Generator::parse(cfg.generator);
  std::string out = "x,y\n";
  for (const auto& s : gen.draw(cfg.rows, cfg.seed)) {
    out += mixkit::io::format_double(s.x) + "," + mixkit::io::format_double(s.y) + "\n";
  }
  emit(out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixing coefficients (alpha, beta, phi) of finite joints and samples"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* exact = app.add_subcommand("exact", "Exact alpha, beta, phi of a joint matrix");
  exact->add_option("joint", cfg.input, "CSV/TSV joint matrix")->required();
  add_common(exact, cfg);

  auto* bounds = app.add_subcommand("bounds", "Certified interval for alpha");
  bounds->add_option("joint", cfg.input, "CSV/TSV joint matrix")->required();
  bounds->add_option("--max-newton", cfg.max_newton, "Newton step budget for the SDP")
      ->capture_default_str();
  add_common(bounds, cfg);

  auto* estimate = app.add_subcommand("estimate", "Binned estimate from x,y samples");
  estimate->add_option("samples", cfg.input, "CSV with two numeric columns")->required();
  estimate->add_flag("--trace", cfg.trace, "Also report prefixes 10, 100, ...");
  add_binning(estimate, cfg);
  add_common(estimate, cfg);

  auto* dpi = app.add_subcommand("dpi", "Data-processing inequalities on a triple");
  dpi->add_option("--joint", cfg.joint_path, "Joint matrix of (X, Y)");
  dpi->add_option("--channel", cfg.channel_path, "Row-stochastic channel Y -> Z");
  dpi->add_option("--tensor", cfg.tensor_path, "Tensor file of (X, Y, Z)");
  add_common(dpi, cfg);

  auto* pairwise = app.add_subcommand("pairwise", "phi for all ordered column pairs");
  pairwise->add_option("matrix", cfg.input, "CSV, l rows by p variable columns")->required();
  pairwise->add_flag("--prune", cfg.prune, "Mark edges explained by an intermediate variable");
  pairwise->add_option("--margin", cfg.margin, "Pruning margin")->capture_default_str();
  add_binning(pairwise, cfg);
  add_common(pairwise, cfg);

  auto* demo = app.add_subcommand("demo-inconsistency",
                                  "Naive versus binned beta on independent samples");
  demo->add_option("--l-list", cfg.l_list, "Sample sizes")->delimiter(',')->capture_default_str();
  add_common(demo, cfg);

  auto* generate = app.add_subcommand("generate", "Write synthetic x,y samples as CSV");
  generate->add_option("generator", cfg.generator, "independent | block(b) | comonotone")
      ->required();
  generate->add_option("--rows", cfg.rows, "Number of samples")->capture_default_str();
  add_common(generate, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    mixkit::configure_threads(cfg.threads);
    if (exact->parsed()) return cmd_exact(cfg);
    if (bounds->parsed()) return cmd_bounds(cfg);
    if (estimate->parsed()) return cmd_estimate(cfg);
    if (dpi->parsed()) return cmd_dpi(cfg);
    if (pairwise->parsed()) return cmd_pairwise(cfg);
    if (demo->parsed()) return cmd_demo_inconsistency(cfg);
    if (generate->parsed()) return cmd_generate(cfg);
  } catch (const mixkit::SizeRefusal& e) {
    std::cerr << "mixkit: " << e.what() << "\n";
    return kExitSize;
  } catch (const mixkit::SolverError& e) {
    std::cerr << "mixkit: " << e.what() << "\n";
    return kExitSolver;
  } catch (const mixkit::InputError& e) {
    std::cerr << "mixkit: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
