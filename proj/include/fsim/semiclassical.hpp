#ifndef FSIM_SEMICLASSICAL_HPP
#define FSIM_SEMICLASSICAL_HPP

#include <iosfwd>
#include <vector>

#include "fsim/ensemble.hpp"
#include "fsim/primes.hpp"
#include "fsim/spectrum.hpp"

namespace fsim {

enum class KappaMode { empirical, asymptotic };

struct FitModel {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  u64 p1 = 2;
  u64 p2 = 3;
  double c_const = 0.0;
  u64 x0 = 3;
  KappaMode mode = KappaMode::empirical;
};

// Stepwise kappa: 1 - (#entries with smaller factor < x) / |F|.
double kappa_empirical(u64 x, const Ensemble& ensemble);

// Degree-2 Lagrange fit u = alpha1 kappa - alpha2 kappa^2 through the
// anchors at p1 (predecessor-exclusive kappa) and p2 (inclusive kappa), or
// the supplement's nu/tau asymptotic coefficients.
FitModel fit_u_of_kappa(const Ensemble& ensemble, const SpectralContext& ctx,
                        u64 p1, u64 p2, KappaMode mode);

// Branch with kappa(0) = 0 of the parabola inversion.
double kappa_of_u(double u, const FitModel& fit);

// C = pi(x0) / (x0 (1 + u(N, x0))) * gamma^{kappa(x0) - 1}; asymptotic mode
// takes kappa(x0) = 1, empirical mode reads kappa from the ensemble.
double constant_c(const FitModel& fit, const SpectralContext& ctx,
                  const PiOracle& oracle, u64 x0,
                  const Ensemble* ensemble = nullptr);

// C gamma^{-kappa} with kappa = kappa_of_u(u(N, x))
double semiclassical_energy(u64 x, const FitModel& fit,
                            const SpectralContext& ctx);

// pi(x|N) = gamma x (1 + u) E(x) with the arithmetic E(x) = pi(x)pi(N/x)/j^2
double predict_pi(u64 x, const SpectralContext& ctx, const PiOracle& oracle);

struct PredictionRow {
  u64 x;
  u64 pi_exact;
  double pi_sim;
  double r_of_x;
  double li_of_x;
};

struct PredictionSeries {
  u64 N = 0;
  u64 j = 0;
  std::vector<PredictionRow> rows;  // ascending x
};

PredictionSeries build_series(const SpectralContext& ctx, const PiOracle& oracle,
                              u64 x_max);

// "# N=... j=... alpha1=... alpha2=... C=... zeros=M" then
// "x,pi_exact,pi_sim,R,Li"
void write_series_csv(const PredictionSeries& series, const FitModel& fit,
                      std::size_t zeros_m, std::ostream& out);

}  // namespace fsim

#endif
