#pragma once

#include <cstddef>
#include <vector>

#include "sinai/harness/config.hpp"
#include "sinai/harness/record.hpp"
#include "sinai/mc.hpp"
#include "sinai/random.hpp"
#include "sinai/stable.hpp"

namespace sinai::lab {

// Monte Carlo building blocks shared by several experiments.

/// E exp(-q tau#_1) for Brownian paths with E exp(l S_t) = exp(t l^2), on a
/// grid of mesh 2^-mesh_log2 with Brownian-bridge minima and crossings. Path
/// i uses rng.substream(i).
std::vector<McEstimate> tau_sharp_laplace_mc(const std::vector<double>& qs, std::size_t n,
                                             int mesh_log2, const RandomStream& rng,
                                             std::size_t workers = 0);

struct ExitMc {
  McEstimate p_survive;
  McEstimate p_exit_low;
};

/// Exit of (b - 1, b) before an exponential time of rate q by a stable process
/// without negative jumps (Brownian at alpha = 2, with bridge crossings),
/// simulated on a grid with steps_per_unit steps per unit time.
ExitMc exit_two_sided_mc(double alpha, double q, double b, std::size_t n,
                         std::size_t steps_per_unit, const RandomStream& rng,
                         std::size_t workers = 0);

/// CDF of Xi at each t by Gaver-Stehfest inversion of its Laplace transform.
struct XiCdf {
  std::vector<double> cdf;
  double max_divergence;
};
XiCdf xi_cdf(const StableLaw& law, const std::vector<double>& t, int order = 16);

// Registered experiments.
ResultRecord ksharp_mc(const ExperimentConfig& c);
ResultRecord ksharp_roots(const ExperimentConfig& c);
ResultRecord xi_laplace_mc(const ExperimentConfig& c);
ResultRecord xi_cdf_inversion(const ExperimentConfig& c);
ResultRecord tau_sharp_mc(const ExperimentConfig& c);
ResultRecord exit_gambler(const ExperimentConfig& c);
ResultRecord exit_bertoin_mc(const ExperimentConfig& c);
ResultRecord range_inequalities(const ExperimentConfig& c);
ResultRecord renewal_scaling(const ExperimentConfig& c);
ResultRecord quenched_bm(const ExperimentConfig& c);
ResultRecord surrogate_convergence(const ExperimentConfig& c);
ResultRecord rwre_limit_law(const ExperimentConfig& c);
ResultRecord envelope_table(const ExperimentConfig& c);
ResultRecord classifier_table(const ExperimentConfig& c);

}  // namespace sinai::lab
