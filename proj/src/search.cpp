#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <thread>

#include "gnet/constructions.hpp"
#include "gnet/relax.hpp"
#include "gnet/sampling.hpp"

namespace gnet {

int search_threads(int requested) {
    int n = requested > 0 ? requested : int(std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("GNET_THREADS")) {
        int c = std::atoi(cap);
        if (c > 0) n = std::min(n, c);
    }
    return std::max(1, n);
}

namespace {

Surface make_surface(const SearchParams& p) {
    if (p.curvature == 0) {
        switch (p.surface) {
        case SurfaceKind::Flat: return Surface::flat();
        case SurfaceKind::Hyperbolic: return Surface::hyperbolic();
        case SurfaceKind::Spherical: return Surface::spherical();
        }
    }
    return Surface::make(p.surface, p.curvature);
}

// chart point of a planar sampling coordinate in the unit disc scaled by R0
Point chart_point(const Surface& s, Vec2 v) {
    switch (s.kind) {
    case SurfaceKind::Flat: return v;
    case SurfaceKind::Hyperbolic: return v * 0.5;
    case SurfaceKind::Spherical: return {wrap_2pi(v.arg()), 0.8 * v.norm()};
    }
    return v;
}

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void join(int a, int b) { p[find(a)] = find(b); }
};

bool connected_without(int n, const std::vector<std::pair<int, int>>& es, size_t skip) {
    Dsu d(n);
    for (size_t i = 0; i < es.size(); ++i)
        if (i != skip) d.join(es[i].first, es[i].second);
    for (int v = 1; v < n; ++v)
        if (d.find(v) != d.find(0)) return false;
    return true;
}

std::optional<Net> try_sample(int n_fixed, const SearchParams& prm, std::mt19937_64& rng) {
    const Surface S = make_surface(prm);
    std::uniform_real_distribution<double> U(0, 1);
    int kmin = prm.free_min, kmax = std::max(prm.free_min, prm.free_max);
    if (n_fixed == 0) kmin = std::max(kmin, 4), kmax = std::max(kmax, kmin);
    int k = kmin + int(U(rng) * (kmax - kmin + 1));
    k = std::min(k, kmax);

    std::vector<Vec2> raw;
    for (int i = 0; i < n_fixed; ++i) {
        double a = kTwoPi * i / n_fixed + (U(rng) - 0.5) * 0.5 * kTwoPi / n_fixed;
        raw.push_back(polar(0.85 + 0.3 * U(rng), a));
    }
    for (int i = 0, tries = 0; i < k && tries < 1000; ++tries) {
        Vec2 v = polar(0.75 * std::sqrt(U(rng)), kTwoPi * U(rng));
        bool ok = true;
        for (auto w : raw) ok = ok && (v - w).norm() >= 0.08;
        if (!ok) continue;
        raw.push_back(v);
        ++i;
    }
    const int n = int(raw.size());
    if (n - n_fixed < k) return std::nullopt;

    std::vector<Vertex> vs;
    for (int i = 0; i < n; ++i) {
        bool fx = i < n_fixed;
        vs.push_back({(fx ? "U" : "V") + std::to_string(fx ? i : i - n_fixed), chart_point(S, raw[i]),
                      fx ? Role::Fixed : Role::Free});
    }

    struct Cand {
        double len;
        int a, b;
    };
    std::vector<Cand> cand;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (b < n_fixed) {
                bool consecutive = b == a + 1 || (a == 0 && b == n_fixed - 1);
                if (!consecutive || U(rng) >= 0.3) continue;
            }
            cand.push_back({distance(S, vs[a].pos, vs[b].pos), a, b});
        }
    std::sort(cand.begin(), cand.end(), [](const Cand& x, const Cand& y) { return x.len < y.len; });
    std::vector<std::pair<int, int>> es;
    for (const auto& c : cand) {
        bool ok = true;
        for (auto [x, y] : es)
            if (segments_conflict(S, vs[c.a].pos, vs[c.b].pos, vs[x].pos, vs[y].pos)) {
                ok = false;
                break;
            }
        if (ok) es.emplace_back(c.a, c.b);
    }

    std::vector<int> deg(n, 0);
    for (auto [a, b] : es) ++deg[a], ++deg[b];
    std::vector<size_t> order(es.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<bool> gone(es.size(), false);
    for (size_t idx : order) {
        if (U(rng) >= 0.5) continue;
        auto [a, b] = es[idx];
        auto floor_of = [&](int v) { return v < n_fixed ? 1 : 3; };
        if (deg[a] - 1 < floor_of(a) || deg[b] - 1 < floor_of(b)) continue;
        std::vector<std::pair<int, int>> rest;
        for (size_t i = 0; i < es.size(); ++i)
            if (!gone[i] && i != idx) rest.push_back(es[i]);
        if (!connected_without(n, rest, rest.size())) continue;
        gone[idx] = true;
        --deg[a], --deg[b];
    }
    std::vector<std::pair<int, int>> kept;
    for (size_t i = 0; i < es.size(); ++i)
        if (!gone[i]) kept.push_back(es[i]);
    for (int v = n_fixed; v < n; ++v)
        if (deg[v] < 3) return std::nullopt;
    for (int v = 0; v < n_fixed; ++v)
        if (deg[v] < 1) return std::nullopt;
    if (kept.empty() || !connected_without(n, kept, kept.size())) return std::nullopt;
    try {
        return Net(S, std::move(vs), std::move(kept));
    } catch (const Error&) {
        return std::nullopt;
    }
}

} // namespace

Net random_trial_net(int n_fixed, const SearchParams& params, std::uint64_t seed, std::uint64_t index) {
    auto rng = trial_rng(seed, index);
    for (int attempt = 0; attempt < 200; ++attempt)
        if (auto net = try_sample(n_fixed, params, rng)) return *net;
    throw Error(ErrorKind::PreconditionViolated, "could not sample a trial topology");
}

namespace {

Net jittered_fig2(std::uint64_t seed, std::uint64_t index, double jitter) {
    static const Net base = build_fig2_net().net;
    auto rng = trial_rng(seed, index);
    std::normal_distribution<double> G(0, jitter);
    auto pos = base.positions();
    for (int v = 0; v < base.num_vertices(); ++v)
        if (!base.fixed(v)) pos[v] += Vec2{G(rng), G(rng)};
    return base.moved(pos, Validation::Full);
}

TrialResult run_trial(int n, const SearchParams& prm, std::uint64_t seed, int index, Net* keep) {
    TrialResult t;
    t.index = index;
    t.seed = seed;
    Net net;
    try {
        net = prm.seed_topology == "fig2" ? jittered_fig2(seed, std::uint64_t(index), prm.jitter)
                                          : random_trial_net(n, prm, seed, std::uint64_t(index));
    } catch (const Error& e) {
        t.status = RelaxStatus::Degenerated;
        t.reason = std::string("sampling: ") + e.what();
        return t;
    }
    for (int v = 0; v < net.num_vertices(); ++v) (net.fixed(v) ? t.n_fixed : t.n_free)++;
    t.n_edges = net.num_edges();
    t.topology = net.edges();
    RelaxParams rp = prm.relax;
    // with no fixed vertex the net can only shrink; let relax report how
    if (net.num_vertices() == t.n_free) rp.check_preconditions = false;
    try {
        auto r = relax(net, rp);
        t.status = r.status;
        t.reason = r.reason;
        t.iterations = r.iterations;
        if (r.status == RelaxStatus::Converged) {
            auto rep = classify_vertices(r.net, prm.balance_tol);
            t.balanced = rep.balanced();
            t.unbalanced = rep.unbalanced();
            t.max_imbalance = rep.max_balanced_imbalance();
            if (keep) *keep = r.net;
        }
    } catch (const Error& e) {
        t.status = RelaxStatus::Degenerated;
        t.reason = e.what();
    }
    return t;
}

} // namespace

SearchReport search_counterexamples(int n_unbalanced, int trials, std::uint64_t seed, const SearchParams& params) {
    if (n_unbalanced < 0) throw Error(ErrorKind::PreconditionViolated, "n_unbalanced must be >= 0");
    SearchReport rep;
    rep.trials = std::max(trials, 0);
    rep.seed = seed;
    rep.n_unbalanced = n_unbalanced;
    rep.results.resize(rep.trials);
    std::vector<Net> nets(params.keep_nets ? rep.trials : 0);

    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i; (i = next.fetch_add(1)) < rep.trials;)
            rep.results[i] = run_trial(n_unbalanced, params, seed, i, params.keep_nets ? &nets[i] : nullptr);
    };
    int nt = std::min(search_threads(params.threads), std::max(rep.trials, 1));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (int i = 0; i < rep.trials; ++i) {
        const auto& t = rep.results[i];
        switch (t.status) {
        case RelaxStatus::Converged: {
            ++rep.converged;
            int& f = rep.f_estimate[t.unbalanced];
            f = std::max(f, t.balanced);
            if (t.unbalanced == n_unbalanced) rep.max_balanced_observed = std::max(rep.max_balanced_observed, t.balanced);
            if (params.keep_nets) rep.kept.push_back(std::move(nets[i]));
            break;
        }
        case RelaxStatus::Degenerated: ++rep.degenerate; break;
        case RelaxStatus::MaxItersExceeded: ++rep.max_iters; break;
        }
    }
    return rep;
}

} // namespace gnet
