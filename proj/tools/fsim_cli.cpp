#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "fsim/analytic.hpp"
#include "fsim/ensemble.hpp"
#include "fsim/primes.hpp"
#include "fsim/semiclassical.hpp"
#include "fsim/spectrum.hpp"

namespace {

using namespace fsim;

struct RunConfig {
  std::optional<u64> j;
  std::optional<u64> N;
  std::string output;
  std::string zeros_path;
  std::string cache_path;
  u64 p1 = 2, p2 = 3, x0 = 3;
  double domain_factor = 10.0;
  double budget = 1e8;
  std::string mode = "empirical";
  int grid = 400;
  double tol = 1e-10;
  double e_lo = 1e-3;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  auto* jopt = cmd->add_option("--j", cfg.j, "ensemble index j (N = p_j^2)");
  auto* nopt = cmd->add_option("--N", cfg.N, "number under study");
  jopt->excludes(nopt);
  cmd->add_option("-o,--output", cfg.output, "output file (default stdout)");
  cmd->add_option("--p1", cfg.p1, "first fit anchor prime");
  cmd->add_option("--p2", cfg.p2, "second fit anchor prime");
  cmd->add_option("--x0", cfg.x0, "anchor prime for the constant C");
  cmd->add_option("--domain-factor", cfg.domain_factor,
                  "prediction domain is x <= sqrt(N)/factor");
  cmd->add_option("--budget", cfg.budget, "largest ensemble size to enumerate");
  cmd->add_option("--zeros", cfg.zeros_path, "zeta zeros file");
  cmd->add_option("--cache", cfg.cache_path, "pi cache file");
  cmd->add_option("--mode", cfg.mode, "kappa mode: empirical | asymptotic")
      ->check(CLI::IsMember({"empirical", "asymptotic"}));
}

u64 isqrt_u64(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while ((r + 1) * (r + 1) <= n) ++r;
  while (r * r > n) --r;
  return r;
}

struct Session {
  u64 j, N;
  std::shared_ptr<const PrimeTable> table;
  std::unique_ptr<PiOracle> oracle;
};

Session open_session(const RunConfig& cfg) {
  Session s;
  if (cfg.j) {
    s.j = *cfg.j;
    auto [pj, pj1] = prime_window(s.j);
    (void)pj1;
    s.N = pj * pj;
  } else if (cfg.N) {
    s.N = *cfg.N;
    if (s.N < 4) throw std::invalid_argument("N must be at least 4");
    PrimeTable boot(isqrt_u64(s.N) + 1);
    s.j = boot.pi(isqrt_u64(s.N));
  } else {
    throw std::invalid_argument("one of --j or --N is required");
  }
  double sq_n = static_cast<double>(prime_window(s.j).first);
  double estimate = sq_n * (std::log(std::log(sq_n)) + 1.0);
  if (estimate > cfg.budget)
    throw CapacityExceeded(
        "estimated ensemble size exceeds --budget; use --mode asymptotic "
        "at a smaller scale");
  u64 limit = std::max(ensemble_sieve_limit(s.j), s.N / 2 + 1);
  s.table = std::make_shared<const PrimeTable>(limit);
  s.oracle = std::make_unique<PiOracle>(s.table, cfg.cache_path);
  return s;
}

std::ostream& open_output(const RunConfig& cfg, std::ofstream& file) {
  if (cfg.output.empty()) return std::cout;
  file.open(cfg.output, std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output: " + cfg.output);
  return file;
}

KappaMode mode_of(const RunConfig& cfg) {
  return cfg.mode == "asymptotic" ? KappaMode::asymptotic
                                  : KappaMode::empirical;
}

FitModel make_fit(const RunConfig& cfg, const Ensemble& ens,
                  const SpectralContext& ctx, const PiOracle& oracle) {
  FitModel fit = fit_u_of_kappa(ens, ctx, cfg.p1, cfg.p2, mode_of(cfg));
  fit.x0 = cfg.x0;
  fit.c_const = constant_c(fit, ctx, oracle, cfg.x0, &ens);
  return fit;
}

int cmd_ensemble(const RunConfig& cfg) {
  Session s = open_session(cfg);
  Ensemble ens = build_ensemble(s.j, *s.oracle);
  auto est = cardinality_estimate(s.j, *s.oracle);
  std::ofstream file;
  write_ensemble_csv(ens, open_output(cfg, file));
  std::cerr << "j=" << s.j << " N=" << s.N << " size=" << ens.size()
            << " estimate=" << est.evaluated << " prime_sum=" << est.prime_sum
            << " distinct_x=" << ens.per_x_counts().size() << '\n';
  return 0;
}

int cmd_stats(const RunConfig& cfg) {
  Session s = open_session(cfg);
  Ensemble ens = build_ensemble(s.j, *s.oracle);
  std::ofstream file;
  auto& out = open_output(cfg, file);
  out << "x,observed,predicted\n";
  out.precision(15);
  for (const auto& stat : coprime_statistics(ens))
    out << stat.x << ',' << stat.observed << ',' << stat.predicted << '\n';
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  Session s = open_session(cfg);
  Ensemble ens = build_ensemble(s.j, *s.oracle);
  std::ofstream file;
  auto& out = open_output(cfg, file);
  out << "x,y,n_k,E,u\n";
  out.precision(15);
  double jj = static_cast<double>(s.j) * static_cast<double>(s.j);
  double gamma = static_cast<double>(s.j) / std::sqrt(static_cast<double>(s.N));
  for (const auto& e : ens.entries()) {
    double energy_k = static_cast<double>(e.pi_x * e.pi_y) / jj;
    double u_k = gamma * std::log(std::sqrt(static_cast<double>(e.n_k)) /
                                  static_cast<double>(e.x));
    out << e.x << ',' << e.y << ',' << e.n_k << ',' << energy_k << ',' << u_k
        << '\n';
  }
  return 0;
}

int cmd_scan(const RunConfig& cfg) {
  Session s = open_session(cfg);
  Ensemble ens = build_ensemble(s.j, *s.oracle);
  SpectralContext ctx = build_context(s.N, ens, *s.oracle);
  auto roots = scan_eigenvalues(ctx, {}, cfg.grid, cfg.tol, cfg.e_lo);
  std::ofstream file;
  write_scan_csv(roots, open_output(cfg, file));
  return roots.empty() ? 1 : 0;
}

int cmd_fit(const RunConfig& cfg) {
  Session s = open_session(cfg);
  Ensemble ens = build_ensemble(s.j, *s.oracle);
  SpectralContext ctx = build_context(s.N, ens, *s.oracle);
  FitModel fit = make_fit(cfg, ens, ctx, *s.oracle);
  std::ofstream file;
  auto& out = open_output(cfg, file);
  out.precision(15);
  out << "j=" << s.j << " N=" << s.N << " mode=" << cfg.mode
      << " alpha1=" << fit.alpha1 << " alpha2=" << fit.alpha2
      << " C=" << fit.c_const << " x0=" << fit.x0 << '\n';
  return 0;
}

int cmd_predict(const RunConfig& cfg) {
  Session s = open_session(cfg);
  Ensemble ens = build_ensemble(s.j, *s.oracle);
  SpectralContext ctx = build_context(s.N, ens, *s.oracle);
  FitModel fit = make_fit(cfg, ens, ctx, *s.oracle);
  std::size_t zeros_m = 0;
  if (!cfg.zeros_path.empty()) zeros_m = load_zeros(cfg.zeros_path).size();
  u64 x_max = static_cast<u64>(std::sqrt(static_cast<double>(s.N)) /
                               cfg.domain_factor);
  PredictionSeries series = build_series(ctx, *s.oracle, x_max);
  std::ofstream file;
  write_series_csv(series, fit, zeros_m, open_output(cfg, file));
  return 0;
}

int cmd_invert(const RunConfig& cfg, u64 numerator) {
  Session s = open_session(cfg);
  EnergyValue e{numerator, s.j * s.j,
                static_cast<double>(numerator) /
                    static_cast<double>(s.j * s.j)};
  auto pair = invert_energy(e, s.N, *s.oracle);
  if (!pair) {
    std::cerr << "no solution for numerator " << numerator << '\n';
    return 1;
  }
  std::ofstream file;
  open_output(cfg, file) << pair->first << ' ' << pair->second << '\n';
  return 0;
}

int cmd_qc(const RunConfig& cfg, double energy_value) {
  Session s = open_session(cfg);
  Ensemble ens = build_ensemble(s.j, *s.oracle);
  SpectralContext ctx = build_context(s.N, ens, *s.oracle);
  cplx ratio = quantum_condition(energy_value, ctx, {});
  std::ofstream file;
  auto& out = open_output(cfg, file);
  out.precision(15);
  out << "E=" << energy_value << " re=" << ratio.real()
      << " im=" << ratio.imag()
      << " residual=" << wavefunction(energy_value, ctx.rho_m, ctx) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"factorization-ensemble spectrum toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  u64 numerator = 0;
  double qc_energy = 1.0;

  auto* ens = app.add_subcommand("ensemble", "enumerate F(j) as CSV");
  auto* stats = app.add_subcommand("stats", "per-x coprime statistics");
  auto* spec = app.add_subcommand("spectrum", "E_k vs u for every pair");
  auto* scan = app.add_subcommand("scan", "quantum-condition root scan");
  auto* fitc = app.add_subcommand("fit", "Lagrange fit and constant C");
  auto* pred = app.add_subcommand("predict", "pi(x|N) prediction series");
  auto* inv = app.add_subcommand("invert", "recover (x, y) from an energy");
  auto* qc = app.add_subcommand("qc", "evaluate the quantum condition once");
  for (auto* cmd : {ens, stats, spec, scan, fitc, pred, inv, qc})
    add_common(cmd, cfg);
  scan->add_option("--grid", cfg.grid, "scan grid points");
  scan->add_option("--tol", cfg.tol, "bisection tolerance");
  scan->add_option("--e-lo", cfg.e_lo, "lower end of the scan interval");
  inv->add_option("--numerator", numerator, "pi(x) pi(y) value")->required();
  qc->add_option("--E", qc_energy, "energy to evaluate at")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ens->parsed()) return cmd_ensemble(cfg);
    if (stats->parsed()) return cmd_stats(cfg);
    if (spec->parsed()) return cmd_spectrum(cfg);
    if (scan->parsed()) return cmd_scan(cfg);
    if (fitc->parsed()) return cmd_fit(cfg);
    if (pred->parsed()) return cmd_predict(cfg);
    if (inv->parsed()) return cmd_invert(cfg, numerator);
    if (qc->parsed()) return cmd_qc(cfg, qc_energy);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
