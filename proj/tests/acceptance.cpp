// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <omp.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mixkit/alpha_bounds.hpp"
#include "mixkit/dpi.hpp"
#include "mixkit/estimator.hpp"
#include "mixkit/io.hpp"
#include "mixkit/mixing_exact.hpp"
#include "mixkit/pairwise.hpp"
#include "mixkit/reductions.hpp"
#include "oracles.hpp"

using namespace mixkit;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

std::vector<JointDist> shared_instances() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<std::size_t> dim(2, 5);
  std::vector<JointDist> out;
  for (int t = 0; t < 1000; ++t) out.push_back(oracle::random_joint(dim(rng), dim(rng), rng, 0.1));
  return out;
}

Outcome oracle_equivalence(const std::vector<JointDist>& cases) {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (std::size_t t = 0; t < cases.size(); ++t) {
    const JointDist& theta = cases[t];
    const double errs[] = {
        std::abs(beta(theta) - oracle::beta_events(theta)),
        std::abs(phi(theta) - oracle::phi_abs(theta)),
        std::abs(phi_reverse(theta) - oracle::phi_abs(oracle::transposed(theta))),
        std::abs(alpha_exact(theta) - oracle::alpha_abs(theta)),
    };
    for (double e : errs) {
      worst = std::max(worst, e);
      o.require(e <= 1e-12, "instance " + std::to_string(t));
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs <= 60.0, "runtime");
  o.detail << "1000 instances, max |err| " << worst << ", " << secs << " s";
  return o;
}

Outcome inequality_chain(const std::vector<JointDist>& cases) {
  Outcome o;
  const double tol = 1e-9;
  for (std::size_t t = 0; t < cases.size(); ++t) {
    const MixingReport r = mixing_report(cases[t]);
    const double lo = std::min(r.phi_x_given_y, r.phi_y_given_x);
    const double hi = std::max(r.phi_x_given_y, r.phi_y_given_x);
    const bool ok = r.alpha_is_exact && 0.0 <= r.alpha() + tol && 2 * r.alpha() <= r.beta + tol &&
                    r.beta <= lo + tol && hi <= 1.0 + tol && r.alpha() <= 0.25 + tol;
    o.require(ok, "instance " + std::to_string(t));
  }
  o.detail << "1000 instances";
  return o;
}

Outcome pinsker(const std::vector<JointDist>& cases) {
  Outcome o;
  double min_slack = 1.0;
  for (std::size_t t = 0; t < cases.size(); ++t) {
    const double slack = std::sqrt(0.5 * mutual_information(cases[t])) - beta(cases[t]);
    min_slack = std::min(min_slack, slack);
    o.require(slack >= -1e-9, "instance " + std::to_string(t));
  }
  o.detail << "min slack " << min_slack;
  return o;
}

Outcome partition_reduction() {
  Outcome o;
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<std::size_t> size(2, 12);
  int disagreements = 0;
  int yes = 0;
  for (int t = 0; t < 200; ++t) {
    const RoundTrip r = reduction_roundtrip(PartitionInstance::random_dyadic(size(rng), rng));
    disagreements += !r.agrees();
    yes += r.has_equal_split;
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  const RoundTrip a = reduction_roundtrip(PartitionInstance(ProbVector{0.5, 0.25, 0.25}));
  const RoundTrip b = reduction_roundtrip(PartitionInstance(ProbVector{0.6, 0.2, 0.2}));
  o.require(a.has_equal_split && std::abs(a.alpha - 0.25) <= 1e-12, "(0.5,0.25,0.25)");
  o.require(!b.has_equal_split && b.alpha < 0.25, "(0.6,0.2,0.2)");
  o.detail << "200 instances (" << yes << " splittable), " << disagreements << " disagreements";
  return o;
}

Outcome sdp_sandwich() {
  Outcome o;
  std::mt19937_64 rng(1005);
  std::uniform_int_distribution<std::size_t> dim(2, 6);
  double worst_ratio = 0.0;
  double slowest = 0.0;
  for (int t = 0; t < 200; ++t) {
    const JointDist theta = oracle::random_joint(dim(rng), dim(rng), rng, 0.1);
    const double alpha = alpha_exact(theta);
    const double norm = 4.0 * alpha;
    const auto t0 = Clock::now();
    const double c = nesterov_c(gamma_matrix(theta), 1e-6);
    slowest = std::max(slowest, seconds_since(t0));
    const std::string id = "instance " + std::to_string(t);
    o.require(norm <= c + 1e-12, id + " lower sandwich");
    o.require(c <= 2.3 * norm + 1e-15, id + " upper sandwich");
    o.require(kSdpLowerFactor * c - 1e-6 <= alpha && alpha <= kSdpUpperFactor * c + 1e-6,
              id + " alpha sandwich");
    if (norm > 0) worst_ratio = std::max(worst_ratio, c / norm);
  }
  o.require(slowest <= 1.0, "per-instance runtime");
  o.detail << "200 instances, max c/norm " << worst_ratio << ", slowest " << slowest << " s";
  return o;
}

Outcome bound_enclosure() {
  Outcome o;
  std::mt19937_64 rng(1006);
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  const double tol = 1e-9 + 1e-6;
  double widest = 0.0;
  for (int t = 0; t < 500; ++t) {
    const JointDist theta = oracle::random_joint(dim(rng), dim(rng), rng, 0.1);
    const AlphaBounds b = alpha_bounds(theta);
    const double a = alpha_bruteforce(theta);
    o.require(b.lower <= a + tol && a <= b.upper + tol, "instance " + std::to_string(t));
    widest = std::max(widest, b.upper - b.lower);
  }
  o.detail << "500 instances up to 8x8, widest interval " << widest;
  return o;
}

Outcome dpi_suite() {
  Outcome o;
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = dim(rng), m = dim(rng), l = dim(rng);
    const JointDist theta = oracle::random_joint(n, m, rng, 0.1);
    const DpiReport r = dpi_check(compose_triple(theta, oracle::random_channel(m, l, rng)));
    o.require(r.conditionally_independent, "composed triple not Markov");
    for (const auto& c : r.checks) {
      o.require(c.verdict == Verdict::kPass && c.slack >= -1e-9,
                "instance " + std::to_string(t) + " " + std::string(c.name));
    }
    const DpiReport id = dpi_check(compose_triple(theta, Channel::identity(m)));
    o.require(std::abs(id.xz.phi_x_given_y - id.xy.phi_x_given_y) <= 1e-12, "identity channel");

    std::exponential_distribution<double> expo;
    std::vector<double> rho(l);
    for (double& x : rho) x = expo(rng);
    double s = 0.0;
    for (double x : rho) s += x;
    for (double& x : rho) x /= s;
    const DpiReport k = dpi_check(compose_triple(theta, Channel::constant(m, ProbVector(rho))));
    o.require(std::abs(k.xz.alpha()) <= 1e-12 && std::abs(k.xz.beta) <= 1e-12 &&
                  std::abs(k.xz.phi_x_given_y) <= 1e-12 && std::abs(k.xz.phi_y_given_x) <= 1e-12,
              "constant channel");
  }
  o.detail << "1000 composed, identity and constant triples";
  return o;
}

Outcome inconsistency() {
  Outcome o;
  const Generator gen = Generator::parse("independent");
  for (std::size_t l : {2, 10, 100, 1000}) {
    const double got = naive_estimate_beta(gen.draw(l, l));
    const double want = static_cast<double>(l - 1) / static_cast<double>(l);
    o.require(got == want, "l = " + std::to_string(l));
    o.detail << "l=" << l << ": " << io::format_double(got) << " ";
  }
  return o;
}

Outcome consistency() {
  Outcome o;
  const auto t0 = Clock::now();
  BinningSpec spec;
  spec.schedule = Schedule::kCubeRoot;
  const std::size_t lengths[] = {1000, 100000};
  const EstimateTrace ind =
      convergence_experiment(Generator::parse("independent"), lengths, spec, kDefaultSeed);
  const std::size_t big[] = {100000};
  const EstimateTrace block =
      convergence_experiment(Generator::parse("block(2)"), big, spec, kDefaultSeed);
  const double b3 = ind[0].report.beta, b5 = ind[1].report.beta;
  const MixingReport& blk = block[0].report;
  o.require(ind[1].bins == 47, "k at 1e5");
  o.require(b5 < 0.1 && b5 < b3, "independent trend");
  o.require(blk.beta >= 0.45 && blk.beta <= 0.55, "block beta");
  o.require(blk.phi_x_given_y >= 0.45 && blk.phi_x_given_y <= 0.55, "block phi(X|Y)");
  o.require(blk.phi_y_given_x >= 0.45 && blk.phi_y_given_x <= 0.55, "block phi(Y|X)");
  const double secs = seconds_since(t0);
  o.require(secs <= 120.0, "runtime");
  o.detail << "independent beta " << b3 << " (1e3) -> " << b5 << " (1e5); block(2) beta "
           << blk.beta << ", phi " << blk.phi_x_given_y << "/" << blk.phi_y_given_x << ", "
           << secs << " s";
  return o;
}

std::string run_cli(const std::string& args) {
  std::string out;
  FILE* pipe = ::popen((MIXKIT_CLI_PATH " " + args + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = ::pclose(pipe);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) out = "<exit " + std::to_string(status) + ">";
  return out;
}

Outcome determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("mixkit_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  const std::string samples = (dir / "samples.csv").string();
  std::ofstream(samples) << run_cli("generate 'block(2)' --rows 5000 --seed 3");
  std::mt19937_64 rng(1010);
  std::normal_distribution<double> noise(0.0, 0.3);
  std::string matrix = "a,b,c,d\n";
  for (int s = 0; s < 3000; ++s) {
    const double a = noise(rng), b = a + noise(rng), c = b + noise(rng), d = noise(rng);
    matrix += io::format_double(a) + "," + io::format_double(b) + "," + io::format_double(c) +
              "," + io::format_double(d) + "\n";
  }
  const std::string columns = (dir / "columns.csv").string();
  std::ofstream(columns) << matrix;

  for (const std::string& args : std::vector<std::string>{"estimate --trace " + samples, "demo-inconsistency",
                                 "generate independent --rows 100 --seed 4",
                                 "pairwise --prune " + columns}) {
    const std::string a = run_cli(args), b = run_cli(args);
    o.require(!a.empty() && a[0] != '<' && a == b, "rerun of '" + args + "'");
  }
  const std::string p1 = run_cli("pairwise --prune --threads 1 " + columns);
  const std::string p4 = run_cli("pairwise --prune --threads 4 " + columns);
  o.require(!p1.empty() && p1 == p4, "pairwise thread invariance");

  std::mt19937_64 r2(1011);
  int trips = 0;
  for (int t = 0; t < 1000; ++t) {
    const MixingReport rep = mixing_report(oracle::random_joint(1 + t % 6, 1 + t % 5, r2));
    const MixingReport back = Json::parse(io::dump(Json(rep))).get<MixingReport>();
    o.require(back == rep, "JSON round trip");
    trips += back == rep;
  }
  fs::remove_all(dir);
  o.detail << "CLI reruns identical, pairwise 1 vs 4 threads identical, " << trips
           << "/1000 lossless JSON round trips";
  return o;
}

}  // namespace

int main() {
  const std::vector<JointDist> cases = shared_instances();
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const Criterion criteria[] = {
      {"oracle equivalence", [&] { return oracle_equivalence(cases); }},
      {"inequality chain", [&] { return inequality_chain(cases); }},
      {"pinsker", [&] { return pinsker(cases); }},
      {"partition reduction", partition_reduction},
      {"sdp sandwich", sdp_sandwich},
      {"bound enclosure", bound_enclosure},
      {"dpi suite", dpi_suite},
      {"naive inconsistency", inconsistency},
      {"binned consistency", consistency},
      {"determinism and plumbing", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto t0 = Clock::now();
    const Outcome o = c.check();
    std::printf("[%s] %2d %-26s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, c.name,
                o.detail.str().c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
