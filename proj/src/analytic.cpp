#include "fsim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace fsim {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;
constexpr double kEiSwitchRadius = 34.0;

// B_2, B_4, ..., B_12
constexpr double kBernoulli[] = {1.0 / 6,  -1.0 / 30, 1.0 / 42,
                                 -1.0 / 30, 5.0 / 66,  -691.0 / 2730};

// Moebius mu(1..64), enough for every Gram/li truncation used here.
constexpr int kMoebius[65] = {
    0, 1,  -1, -1, 0, -1, 1,  -1, 0, 0, 1,  -1, 0, -1, 1,  1, 0,
    -1, 0,  -1, 0, 1, 1,  -1, 0, 0, 1,  0,  0, -1, -1, -1, 0, 1,
    1,  1,  0, -1, 1, 1,  0, -1, -1, -1, 0, 0, 1,  -1, 0, 0, 0,
    1,  0,  -1, 0, 1, 0,  1, 1, -1, 0,  -1, 1, 0,  0};

const std::vector<double>& zeta_cache() {
  static std::vector<double> cache;
  static std::once_flag once;
  std::call_once(once, [] {
    cache.resize(64);
    for (int n = 1; n < 64; ++n) cache[n] = zeta_real(n + 1.0);
  });
  return cache;
}

double zeta_n_plus_1(int n) {
  if (n >= 64) return 1.0;
  return zeta_cache()[n];
}

}  // namespace

double zeta_real(double s) {
  if (s <= 1.0) throw std::domain_error("zeta_real requires s > 1");
  const int n = 20;
  double sum = 0.0;
  for (int k = 1; k < n; ++k) sum += std::pow(k, -s);
  double np = std::pow(n, -s);
  sum += np * n / (s - 1.0) + 0.5 * np;
  // Euler-Maclaurin tail: B_{2i}/(2i)! * s(s+1)...(s+2i-2) * n^{-s-2i+1}
  double factor = s * np / n;
  double fact = 2.0;
  for (std::size_t i = 0; i < std::size(kBernoulli); ++i) {
    sum += kBernoulli[i] / fact * factor;
    factor *= (s + 2 * i + 1) * (s + 2 * i + 2) / (n * static_cast<double>(n));
    fact *= (2 * i + 3) * (2 * i + 4);
  }
  return sum;
}

cplx expint_ei(cplx z) {
  if (z == cplx{0.0, 0.0}) throw std::domain_error("Ei pole at 0");
  using cld = std::complex<long double>;
  cld w(z.real(), z.imag());
  if (std::abs(z) < kEiSwitchRadius) {
    cld sum = 0.0L, term = 1.0L;
    for (int n = 1; n < 400; ++n) {
      term *= w / static_cast<long double>(n);
      cld add = term / static_cast<long double>(n);
      sum += add;
      if (std::abs(add) < 1e-18L * (std::abs(sum) + 1.0L)) break;
    }
    cld value = static_cast<long double>(kEulerGamma) + std::log(w) + sum;
    return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
  }
  // e^z/z * sum k!/z^k, truncated at the smallest term
  cld sum = 0.0L, term = 1.0L / w;
  long double prev = std::abs(term);
  for (int k = 0; k < 200; ++k) {
    sum += term;
    term *= static_cast<long double>(k + 1) / w;
    long double mag = std::abs(term);
    if (mag >= prev || mag < 1e-20L * std::abs(sum)) break;
    prev = mag;
  }
  cld value = std::exp(w) * sum;
  if (z.imag() > 0.0)
    value += cld(0.0L, 3.14159265358979323846L);
  else if (z.imag() < 0.0)
    value -= cld(0.0L, 3.14159265358979323846L);
  return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

double li(double x) {
  if (x <= 1.0) throw std::domain_error("li requires x > 1");
  return expint_ei(cplx{std::log(x), 0.0}).real();
}

double riemann_r(double x, const GramSeriesParams& params) {
  if (x <= 1.0) throw std::domain_error("riemann_r requires x > 1");
  double lx = std::log(x);
  double sum = 1.0, t = 1.0;
  for (int n = 1; n < params.max_terms; ++n) {
    t *= lx / n;
    double term = t / (n * zeta_n_plus_1(n));
    sum += term;
    if (std::abs(term) < params.tolerance * std::abs(sum)) return sum;
  }
  throw std::runtime_error("Gram series did not converge");
}

cplx riemann_r_power(double x, cplx rho, const GramSeriesParams& params) {
  if (x <= 1.0) throw std::domain_error("riemann_r_power requires x > 1");
  (void)params;
  double lx = std::log(x);
  // R(s) = sum mu(n)/n li(s^{1/n}); cut when |s|^{1/n} = x^{Re rho/n} < 2
  cplx sum = 0.0;
  for (int n = 1; n <= 64; ++n) {
    if (rho.real() * lx / n < std::log(2.0)) break;
    if (kMoebius[n] == 0) continue;
    sum += static_cast<double>(kMoebius[n]) / n * expint_ei(rho * lx / static_cast<double>(n));
  }
  return sum;
}

ZetaZeros::ZetaZeros(std::vector<double> ordinates)
    : ordinates_(std::move(ordinates)) {
  double prev = 0.0;
  for (double g : ordinates_) {
    if (g <= prev) throw std::runtime_error("zeta zeros not strictly increasing");
    prev = g;
  }
}

ZetaZeros load_zeros(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open zeros file: " + path.string());
  std::vector<double> ordinates;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double value;
    if (!(ls >> value) || value <= 0.0)
      throw std::runtime_error("malformed zeros line: " + line);
    std::string rest;
    if (ls >> rest) throw std::runtime_error("malformed zeros line: " + line);
    ordinates.push_back(value);
  }
  return ZetaZeros(std::move(ordinates));
}

double fluctuation_f(double x, const ZetaZeros& zeros,
                     const GramSeriesParams& params) {
  if (x <= 2.0) throw std::domain_error("fluctuation_f requires x > 2");
  double sum = 0.0;
  for (double g : zeros.ordinates())
    sum += riemann_r_power(x, cplx{0.5, g}, params).real();
  return 2.0 * sum;
}

double epsilon_fl(u64 x, u64 y, u64 j, const ZetaZeros& zeros,
                  const GramSeriesParams& params) {
  if (x <= 2 || y <= 2) throw std::domain_error("epsilon_fl requires x, y > 2");
  if (j < 1) throw std::invalid_argument("epsilon_fl requires j >= 1");
  if (zeros.size() == 0) return 0.0;
  double fx = fluctuation_f(static_cast<double>(x), zeros, params);
  double fy = fluctuation_f(static_cast<double>(y), zeros, params);
  double rx = riemann_r(static_cast<double>(x), params);
  double ry = riemann_r(static_cast<double>(y), params);
  double jj = static_cast<double>(j) * static_cast<double>(j);
  return -(fx * ry + fy * rx - fx * fy) / jj;
}

}  // namespace fsim
