#ifndef FSIM_SPECTRUM_HPP
#define FSIM_SPECTRUM_HPP

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "fsim/ensemble.hpp"
#include "fsim/primes.hpp"
#include "fsim/specfun.hpp"

namespace fsim {

struct SpectralContext {
  u64 N;
  u64 j;          // pi(floor(sqrt(N)))
  double gamma;   // j / sqrt(N)
  u64 x_m;        // smallest x occurring in F(j)
  double q_m;     // (pi(N/x_m) + pi(x_m)) / (2j)
  double rho_m;   // q_m^2
  double e_max;   // 2 pi(N/3)/j^2 when x=3 is present
};

struct EnergyValue {
  u64 numerator;    // pi(x) pi(y)
  u64 denominator;  // j^2
  double value;
};

struct Fraction {
  long long num;
  u64 den;
};

EnergyValue energy(u64 x, u64 y, u64 j, const PiOracle& oracle);

double u_regular(u64 N, double x, const SpectralContext& ctx);

// p = (pi(y) - pi(x)) / (2j), q = (pi(y) + pi(x)) / (2j), exact
std::pair<Fraction, Fraction> canonical_pq(u64 x, u64 y, u64 j,
                                           const PiOracle& oracle);

SpectralContext build_context(u64 N, const Ensemble& ensemble,
                              const PiOracle& oracle);

// R_E(rho), Eq.-13 form with D0 fixed by R_E(E) = 0
double wavefunction(double E, double rho, const SpectralContext& ctx,
                    const HypergeomParams& params = {});

// F(a,3/2,i rho_m) U(a,3/2,iE) / (F(a,3/2,iE) U(a,3/2,i rho_m))
cplx quantum_condition(double E, const SpectralContext& ctx,
                       const HypergeomParams& params = {});

struct ScanRoot {
  double e_root;
  double re_ratio;
  double im_ratio;
  double residual_at_rho_m;  // wavefunction(e_root, rho_m)
};

// Roots of Im(ratio) in (e_lo, e_max], bisected to tol, kept when
// |Re(ratio) - 1| < re_tolerance.
std::vector<ScanRoot> scan_eigenvalues(const SpectralContext& ctx,
                                       const HypergeomParams& params,
                                       int grid = 400, double tol = 1e-10,
                                       double e_lo = 1e-3,
                                       double re_tolerance = 1e-4);

void write_scan_csv(const std::vector<ScanRoot>& roots, std::ostream& out);

// delta_0 = arctan(e^{3 pi E / 8} D0(E)), log-magnitude scaled
double phase_delta0(double E, const HypergeomParams& params = {});

// Unique prime pair with pi(x) pi(y) = numerator and x y = N.
std::optional<std::pair<u64, u64>> invert_energy(const EnergyValue& e, u64 N,
                                                 const PiOracle& oracle);

}  // namespace fsim

#endif
