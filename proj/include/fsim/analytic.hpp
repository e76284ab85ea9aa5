#ifndef FSIM_ANALYTIC_HPP
#define FSIM_ANALYTIC_HPP

#include <complex>
#include <filesystem>
#include <vector>

#include "fsim/primes.hpp"

namespace fsim {

using cplx = std::complex<double>;

// Riemann zeta on the real axis, s > 1 (Euler-Maclaurin accelerated).
double zeta_real(double s);

// Exponential integral Ei(z), principal branch off the negative real axis.
cplx expint_ei(cplx z);

// Logarithmic integral li(x) = Ei(ln x), x > 1.
double li(double x);

struct GramSeriesParams {
  int max_terms = 400;
  double tolerance = 1e-15;
};

// Gram series: R(x) = 1 + sum_{n>=1} (ln x)^n / (n n! zeta(n+1)).
double riemann_r(double x, const GramSeriesParams& params = {});

// R(x^rho) for complex rho, via R(s) = sum_{n} mu(n)/n li(s^{1/n}).
cplx riemann_r_power(double x, cplx rho, const GramSeriesParams& params = {});

class ZetaZeros {
 public:
  ZetaZeros() = default;
  explicit ZetaZeros(std::vector<double> ordinates);

  std::size_t size() const { return ordinates_.size(); }
  const std::vector<double>& ordinates() const { return ordinates_; }

 private:
  std::vector<double> ordinates_;  // strictly increasing positive ordinates
};

// One positive decimal per line, strictly increasing.
ZetaZeros load_zeros(const std::filesystem::path& path);

// f(x) = sum_rho R(x^rho) over nontrivial zeros, conjugate pairs folded:
// 2 sum_n Re R(x^{1/2 + i gamma_n}).
double fluctuation_f(double x, const ZetaZeros& zeros,
                     const GramSeriesParams& params = {});

// -(f(x)R(y) + f(y)R(x) - f(x)f(y)) / j^2
double epsilon_fl(u64 x, u64 y, u64 j, const ZetaZeros& zeros,
                  const GramSeriesParams& params = {});

}  // namespace fsim

#endif
