#pragma once

#include <vector>

#include "sinai/environment.hpp"
#include "sinai/error.hpp"
#include "sinai/random.hpp"

namespace sinai {

/// A(x) = int_0^x exp(V_y) dy, signed, exact for the step potential.
/// Defined for -(L + 1) <= x <= R + 1 (the last unit segment on each side is
/// flat at the last site value).
double scale_A(const Environment& env, double x);
/// log A(x) for x > 0, safe when A overflows.
double log_scale_A(const Environment& env, double x);

/// One sample of the hitting time sigma_X(v) = I_1(v) + I_2(v).
struct QuenchedHit {
  double v;
  double sigma;
  double i1;
  double i2;
  double log_sigma;  // kept separately: sigma overflows for deep potentials
  double log_i1;
  double log_i2;
  double mesh;
};

/// The dimension-0 part of the local time was still alive when the
/// environment's left end was reached.
class TruncatedI2 : public Error {
 public:
  TruncatedI2(double partial_log_i2, double reached)
      : Error("quenched hitting time: absorption not reached inside the environment"),
        partial_(partial_log_i2),
        reached_(reached) {}
  double partial_log_i2() const noexcept { return partial_; }
  double reached() const noexcept { return reached_; }

 private:
  double partial_;
  double reached_;
};

/// Samples sigma_X(v) for the diffusion in potential V through the
/// Ray-Knight description of Brownian local time at sigma_B(A(v)): a BESQ(2)
/// from 0 on [0, A(v)] read downwards, continued as BESQ(0) below 0 until
/// absorption. Integrals use midpoint quadrature on sub-segments of length
/// `mesh` (mesh <= 1, 1 / mesh an integer preferred).
QuenchedHit quenched_hitting_time(const Environment& env, double v, double mesh,
                                  RandomStream& rng);

/// sigma_X(v_1) <= ... <= sigma_X(v_m) on one environment and one local-time
/// field: the field at sigma_B(A(v_i)) is the field at sigma_B(A(v_{i-1}))
/// plus an independent Ray-Knight increment started at A(v_{i-1}).
std::vector<QuenchedHit> quenched_hitting_times(const Environment& env,
                                                const std::vector<double>& v_levels,
                                                double mesh, RandomStream& rng);

/// V#_v v U~(max_{[0,v]} V): the deterministic proxy for log sigma_X(v).
/// NotAttained when the backward passage leaves the environment.
double surrogate_log_sigma(const Environment& env, double v);

}  // namespace sinai
