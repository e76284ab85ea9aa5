#include "fsim/semiclassical.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fsim/analytic.hpp"

namespace fsim {

double kappa_empirical(u64 x, const Ensemble& ensemble) {
  const auto& counts = ensemble.per_x_counts();
  if (!counts.contains(x))
    throw std::invalid_argument("x not present as a smaller factor");
  u64 before = 0;
  for (const auto& [p, c] : counts) {
    if (p >= x) break;
    before += c;
  }
  return 1.0 - static_cast<double>(before) / static_cast<double>(ensemble.size());
}

FitModel fit_u_of_kappa(const Ensemble& ensemble, const SpectralContext& ctx,
                        u64 p1, u64 p2, KappaMode mode) {
  if (p1 >= p2) throw std::invalid_argument("fit requires p1 < p2");
  FitModel fit;
  fit.p1 = p1;
  fit.p2 = p2;
  fit.mode = mode;
  double sq_n = std::sqrt(static_cast<double>(ctx.N));
  double u1 = ctx.gamma * std::log(sq_n / p1);
  double u2 = ctx.gamma * std::log(sq_n / p2);
  if (mode == KappaMode::asymptotic) {
    // nu = sqrt(N)/|F| sum_{p1 <= p <= p2} 1/p, tau = gamma/nu (1-nu) ln(p2/p1)
    double inv_sum = 0.0;
    for (const auto& [p, c] : ensemble.per_x_counts())
      if (p >= p1 && p <= p2) inv_sum += 1.0 / static_cast<double>(p);
    double nu = inv_sum * sq_n / static_cast<double>(ensemble.size());
    double lp = std::log(static_cast<double>(p2) / static_cast<double>(p1));
    double tau = ctx.gamma / nu * (1.0 - nu) * lp;
    fit.alpha2 = (1.0 - tau) / (1.0 - nu);
    fit.alpha1 = 1.0 + fit.alpha2 + ctx.gamma * lp;
    return fit;
  }
  // anchors: exclusive kappa at p1, inclusive (cumulative through p2) at p2
  double k1 = kappa_empirical(p1, ensemble);
  double k2 = 1.0 - static_cast<double>(ensemble.cumulative_count(p2)) /
                        static_cast<double>(ensemble.size());
  double det = k1 * k2 * (k1 - k2);
  if (det == 0.0) throw std::invalid_argument("singular fit system");
  fit.alpha1 = (k1 * k1 * u2 - k2 * k2 * u1) / det;
  fit.alpha2 = (k1 * u2 - k2 * u1) / det;
  return fit;
}

double kappa_of_u(double u, const FitModel& fit) {
  if (fit.alpha2 == 0.0) throw std::invalid_argument("fit with alpha2 = 0");
  double apex = fit.alpha1 / (2.0 * fit.alpha2);
  double disc = apex * apex - u / fit.alpha2;
  if (disc < 0.0) throw std::domain_error("u beyond parabola apex");
  return apex - std::sqrt(disc);
}

double constant_c(const FitModel& fit, const SpectralContext& ctx,
                  const PiOracle& oracle, u64 x0, const Ensemble* ensemble) {
  double sq_n = std::sqrt(static_cast<double>(ctx.N));
  double u0 = ctx.gamma * std::log(sq_n / x0);
  if (u0 <= -1.0) throw std::domain_error("1 + u(N, x0) must be positive");
  double kappa0 = 1.0;
  if (fit.mode == KappaMode::empirical) {
    if (!ensemble) throw std::invalid_argument("empirical C needs the ensemble");
    kappa0 = 1.0 - static_cast<double>(ensemble->cumulative_count(x0)) /
                       static_cast<double>(ensemble->size());
  }
  return static_cast<double>(oracle.pi(x0)) / (x0 * (1.0 + u0)) *
         std::pow(ctx.gamma, kappa0 - 1.0);
}

double semiclassical_energy(u64 x, const FitModel& fit,
                            const SpectralContext& ctx) {
  double u = u_regular(ctx.N, static_cast<double>(x), ctx);
  return fit.c_const * std::pow(ctx.gamma, -kappa_of_u(u, fit));
}

double predict_pi(u64 x, const SpectralContext& ctx, const PiOracle& oracle) {
  double u = u_regular(ctx.N, static_cast<double>(x), ctx);
  double jj = static_cast<double>(ctx.j) * static_cast<double>(ctx.j);
  double e = static_cast<double>(oracle.pi(x)) *
             static_cast<double>(oracle.pi(ctx.N / x)) / jj;
  return ctx.gamma * static_cast<double>(x) * (1.0 + u) * e;
}

PredictionSeries build_series(const SpectralContext& ctx, const PiOracle& oracle,
                              u64 x_max) {
  PredictionSeries series;
  series.N = ctx.N;
  series.j = ctx.j;
  if (x_max < 2) return series;
  const PrimeTable& table = oracle.table();
  table.for_primes(2, x_max, [&](u64 x) {
    series.rows.push_back({x, oracle.pi(x), predict_pi(x, ctx, oracle),
                           riemann_r(static_cast<double>(x)),
                           li(static_cast<double>(x))});
  });
  return series;
}

void write_series_csv(const PredictionSeries& series, const FitModel& fit,
                      std::size_t zeros_m, std::ostream& out) {
  out.precision(15);
  out << "# N=" << series.N << " j=" << series.j << " alpha1=" << fit.alpha1
      << " alpha2=" << fit.alpha2 << " C=" << fit.c_const
      << " zeros=" << zeros_m << '\n';
  out << "x,pi_exact,pi_sim,R,Li\n";
  for (const auto& row : series.rows)
    out << row.x << ',' << row.pi_exact << ',' << row.pi_sim << ','
        << row.r_of_x << ',' << row.li_of_x << '\n';
}

}  // namespace fsim
