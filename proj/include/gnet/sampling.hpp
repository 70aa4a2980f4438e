#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gnet/staircase.hpp"

namespace gnet {

// n unit directions summing to zero: n-2 uniform, closed by two unit vectors whose
// sum cancels the partial sum. Sorted ccw, consecutive gaps >= min_gap.
std::vector<double> random_balanced_directions(int n, std::mt19937_64& rng, double min_gap = 1e-6);

// Minimise the imbalance of even-degree configurations forced to have a combined
// angle of 180 deg or more, angular gaps bounded below by gap_min.
struct EvenSearchReport {
    int degree = 0;
    int restarts = 0;
    double gap_min = 0;
    double min_imbalance = 0;
    int below_tol = 0;
    std::vector<double> best_dirs;
};

EvenSearchReport even_degree_search(int degree, int restarts, std::uint64_t seed, double gap_min = 1e-2,
                                    double tol = 1e-8);

// balanced, odd degree n >= 5, with some combined angle of 180 deg or more
std::vector<double> random_wide_configuration(int n, std::mt19937_64& rng, int max_tries = 1000000);

// arcs from random region points (corners included), random m, C, theta_max
ArcFactReport arc_fact_monte_carlo(int arcs, std::uint64_t seed, int samples_per_arc = 16);

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

} // namespace gnet
