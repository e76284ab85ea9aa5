#include "fsim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace fsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

u64 isqrt_u64(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while ((r + 1) * (r + 1) <= n) ++r;
  while (r * r > n) --r;
  return r;
}

cplx alpha_of(double E) { return {0.75, -E / 4.0}; }

cplx d0_of(double E, const HypergeomParams& params) {
  cplx a = alpha_of(E);
  cplx iz{0.0, E};
  return -tricomi_u(a, {1.5, 0.0}, iz, params) /
         kummer_m(a, {1.5, 0.0}, iz, params);
}

}  // namespace

EnergyValue energy(u64 x, u64 y, u64 j, const PiOracle& oracle) {
  auto [pj, pj1] = prime_window(j);
  const PrimeTable& table = oracle.table();
  if (x > y || !table.is_prime(x) || !table.is_prime(y) || x * y < pj * pj ||
      x * y >= pj1 * pj1)
    throw std::invalid_argument("pair not in factorization ensemble");
  EnergyValue e{};
  e.numerator = oracle.pi(x) * oracle.pi(y);
  e.denominator = j * j;
  e.value = static_cast<double>(e.numerator) / static_cast<double>(e.denominator);
  return e;
}

double u_regular(u64 N, double x, const SpectralContext& ctx) {
  double sq_n = std::sqrt(static_cast<double>(N));
  if (x <= 0.0 || x > sq_n)
    throw std::domain_error("u_regular requires 0 < x <= sqrt(N)");
  return ctx.gamma * std::log(sq_n / x);
}

std::pair<Fraction, Fraction> canonical_pq(u64 x, u64 y, u64 j,
                                           const PiOracle& oracle) {
  long long px = static_cast<long long>(oracle.pi(x));
  long long py = static_cast<long long>(oracle.pi(y));
  return {Fraction{py - px, 2 * j}, Fraction{py + px, 2 * j}};
}

SpectralContext build_context(u64 N, const Ensemble& ensemble,
                              const PiOracle& oracle) {
  if (ensemble.size() == 0) throw std::invalid_argument("empty ensemble");
  u64 j = oracle.pi(isqrt_u64(N));
  if (j != ensemble.j())
    throw std::invalid_argument("ensemble j does not match pi(sqrt(N))");
  SpectralContext ctx{};
  ctx.N = N;
  ctx.j = j;
  ctx.gamma = static_cast<double>(j) / std::sqrt(static_cast<double>(N));
  ctx.x_m = ensemble.per_x_counts().begin()->first;
  double jj = static_cast<double>(j) * static_cast<double>(j);
  u64 pi_cof = oracle.pi(N / ctx.x_m);
  ctx.q_m = static_cast<double>(pi_cof + oracle.pi(ctx.x_m)) / (2.0 * j);
  ctx.rho_m = ctx.q_m * ctx.q_m;
  if (ensemble.count_for(3) > 0)
    ctx.e_max = 2.0 * static_cast<double>(oracle.pi(N / 3)) / jj;
  else
    ctx.e_max = static_cast<double>(oracle.pi(ctx.x_m)) *
                static_cast<double>(pi_cof) / jj;
  return ctx;
}

double wavefunction(double E, double rho, const SpectralContext& ctx,
                    const HypergeomParams& params) {
  if (rho <= 0.0 || rho > ctx.rho_m * (1.0 + 1e-12))
    throw std::domain_error("wavefunction requires 0 < rho <= rho_m");
  cplx a = alpha_of(E);
  cplx d0 = d0_of(E, params);
  cplx iz{0.0, rho};
  cplx inner = tricomi_u(a, {1.5, 0.0}, iz, params) +
               d0 * kummer_m(a, {1.5, 0.0}, iz, params);
  cplx phase = std::exp(cplx{0.0, -rho / 2.0});
  return std::pow(rho, -0.25) * (phase * inner).real();
}

cplx quantum_condition(double E, const SpectralContext& ctx,
                       const HypergeomParams& params) {
  if (E <= 0.0) throw std::domain_error("quantum_condition requires E > 0");
  cplx a = alpha_of(E);
  cplx b{1.5, 0.0};
  cplx ie{0.0, E}, irho{0.0, ctx.rho_m};
  return kummer_m(a, b, irho, params) * tricomi_u(a, b, ie, params) /
         (kummer_m(a, b, ie, params) * tricomi_u(a, b, irho, params));
}

std::vector<ScanRoot> scan_eigenvalues(const SpectralContext& ctx,
                                       const HypergeomParams& params, int grid,
                                       double tol, double e_lo,
                                       double re_tolerance) {
  if (grid < 2) throw std::invalid_argument("scan grid must be >= 2");
  auto im_ratio = [&](double E) {
    return quantum_condition(E, ctx, params).imag();
  };
  std::vector<ScanRoot> roots;
  double step = (ctx.e_max - e_lo) / grid;
  double prev_e = e_lo + step;
  double prev_g = im_ratio(prev_e);
  for (int i = 2; i <= grid; ++i) {
    double e = e_lo + i * step;
    double g = im_ratio(e);
    if ((prev_g < 0.0) != (g < 0.0)) {
      double lo = prev_e, hi = e, glo = prev_g;
      while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double gm = im_ratio(mid);
        if ((glo < 0.0) != (gm < 0.0))
          hi = mid;
        else
          lo = mid, glo = gm;
      }
      double root = 0.5 * (lo + hi);
      cplx ratio = quantum_condition(root, ctx, params);
      if (std::abs(ratio.real() - 1.0) < re_tolerance)
        roots.push_back({root, ratio.real(), ratio.imag(),
                         wavefunction(root, ctx.rho_m, ctx, params)});
    }
    prev_e = e;
    prev_g = g;
  }
  return roots;
}

void write_scan_csv(const std::vector<ScanRoot>& roots, std::ostream& out) {
  out << "E_root,re_ratio,im_ratio,residual_at_rho_m\n";
  out.precision(15);
  for (const auto& r : roots)
    out << r.e_root << ',' << r.re_ratio << ',' << r.im_ratio << ','
        << r.residual_at_rho_m << '\n';
}

double phase_delta0(double E, const HypergeomParams& params) {
  if (E <= 0.0) throw std::domain_error("phase_delta0 requires E > 0");
  double d0 = d0_of(E, params).real();
  if (d0 == 0.0) return 0.0;
  // atan(e^{3 pi E/8} d0) via log magnitude so the scale factor cannot overflow
  double log_mag = 3.0 * kPi * E / 8.0 + std::log(std::abs(d0));
  double sign = d0 > 0.0 ? 1.0 : -1.0;
  if (log_mag > 700.0) return sign * kPi / 2.0;
  return std::atan(sign * std::exp(log_mag));
}

std::optional<std::pair<u64, u64>> invert_energy(const EnergyValue& e, u64 N,
                                                 const PiOracle& oracle) {
  u64 root = isqrt_u64(N);
  u64 j = oracle.pi(root);
  if (e.denominator != j * j || e.numerator == 0) return std::nullopt;
  const PrimeTable& table = oracle.table();
  u64 pi_x = 0;
  for (u64 x = 2; x <= root; x = table.next_prime(x)) {
    ++pi_x;
    if (pi_x * pi_x > e.numerator) break;  // pi(x) <= pi(y) is monotone
    if (e.numerator % pi_x || N % x) continue;
    u64 y = N / x;
    if (y > table.limit()) throw CapacityExceeded("cofactor beyond sieve");
    if (table.is_prime(y) && pi_x * oracle.pi(y) == e.numerator)
      return std::make_pair(x, y);
  }
  return std::nullopt;
}

}  // namespace fsim
