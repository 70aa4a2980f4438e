#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gnet/net.hpp"

namespace gnet {

enum class StepRule { Fixed, Backtracking };

struct RelaxParams {
    int max_iters = 20000;
    StepRule step_rule = StepRule::Backtracking;
    double fixed_step = 0.05;
    double shrink = 0.5;
    double armijo_c = 1e-4;
    double grad_tol = 1e-10;
    double collision_eps = 1e-6;
    double antialign_eps = 1e-7;
    bool check_preconditions = true;
};

enum class RelaxStatus { Converged, Degenerated, MaxItersExceeded };
const char* to_string(RelaxStatus s);

struct RelaxResult {
    Net net;
    RelaxStatus status = RelaxStatus::MaxItersExceeded;
    std::string reason;
    int iterations = 0;
    std::vector<double> length_history; // after every accepted step, starting value first
    double max_imbalance = 0;           // over free vertices
};

double total_length(const Net& net);
// gradient of total_length w.r.t. moving v, in the tangent frame at v
Vec2 length_gradient(const Net& net, int v, double collision_eps = 1e-6);

RelaxResult relax(const Net& net, const RelaxParams& params = {});

// Balanced point of the three-spoke net, nullopt when some angle is >= 120 deg.
std::optional<Point> fermat_point(const Surface& s, Point p1, Point p2, Point p3, RelaxParams params = {});
// Torricelli construction (flat)
std::optional<Point> torricelli_point(Point p1, Point p2, Point p3);

struct TrialResult {
    int index = 0;
    std::uint64_t seed = 0;
    int n_fixed = 0, n_free = 0, n_edges = 0;
    RelaxStatus status = RelaxStatus::Degenerated;
    std::string reason;
    int iterations = 0;
    int balanced = 0, unbalanced = 0;
    double max_imbalance = 0;
    std::vector<std::pair<int, int>> topology;
};

struct SearchParams {
    SurfaceKind surface = SurfaceKind::Flat;
    double curvature = 0; // 0 means the surface default
    int free_min = 1, free_max = 5;
    RelaxParams relax{5000};
    double balance_tol = 1e-8;
    bool keep_nets = false;
    std::string seed_topology; // "" or "fig2"
    double jitter = 1e-4;
    int threads = 0; // 0: hardware, capped by GNET_THREADS
};

struct SearchReport {
    int trials = 0;
    std::uint64_t seed = 0;
    int n_unbalanced = 0;
    std::vector<TrialResult> results;
    int converged = 0, degenerate = 0, max_iters = 0;
    int max_balanced_observed = 0;
    // keyed by the unbalanced count of the converged net
    std::map<int, int> f_estimate;
    std::vector<Net> kept;

    int f(int n) const {
        auto it = f_estimate.find(n);
        return it == f_estimate.end() ? 0 : it->second;
    }
};

SearchReport search_counterexamples(int n_unbalanced, int trials, std::uint64_t seed, const SearchParams& params = {});

// random trial topology, exposed for tests
Net random_trial_net(int n_fixed, const SearchParams& params, std::uint64_t seed, std::uint64_t index);

int search_threads(int requested);

} // namespace gnet
