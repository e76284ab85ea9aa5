#ifndef FSIM_SPECFUN_HPP
#define FSIM_SPECFUN_HPP

#include <complex>

namespace fsim {

using cplx = std::complex<double>;

struct HypergeomParams {
  double series_tolerance = 1e-15;
  int series_max_terms = 600;
  double asymptotic_switch_radius = 30.0;
};

// Principal-branch log Gamma (Lanczos, reflection for Re z < 1/2).
cplx log_gamma(cplx z);

// Kummer's M(a, b, z): direct series below the switch radius, two-branch
// large-|z| asymptotics beyond.
cplx kummer_m(cplx a, cplx b, cplx z, const HypergeomParams& params = {});

// Tricomi's U(a, b, z): two-M connection formula for moderate |z| (needs
// non-integer b), z^{-a} asymptotic series for large |z|.
cplx tricomi_u(cplx a, cplx b, cplx z, const HypergeomParams& params = {});

// delta_C = arg Gamma(3/4 - iE/4)
double coulomb_phase(double E);

}  // namespace fsim

#endif
