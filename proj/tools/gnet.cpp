// gnet: command line front end for the geodesic net library
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gnet/constructions.hpp"
#include "gnet/io.hpp"
#include "gnet/relax.hpp"
#include "gnet/sampling.hpp"
#include "gnet/staircase.hpp"
#include "gnet/svg.hpp"
#include "gnet/walks.hpp"

using namespace gnet;
using nlohmann::json;

namespace {

// exit codes
constexpr int kPass = 0, kFail = 1, kUsage = 2;

SurfaceKind parse_kind(const std::string& s) {
    if (s == "flat") return SurfaceKind::Flat;
    if (s == "hyperbolic") return SurfaceKind::Hyperbolic;
    if (s == "spherical") return SurfaceKind::Spherical;
    throw Error(ErrorKind::Usage, "unknown surface '" + s + "'");
}

Surface surface_of(const std::string& kind, double K) {
    SurfaceKind k = parse_kind(kind);
    if (K == 0 && k != SurfaceKind::Flat) K = k == SurfaceKind::Hyperbolic ? -1 : 1;
    return Surface::make(k, K);
}

Point parse_point(const std::string& s) {
    double x, y;
    char comma;
    std::istringstream in(s);
    if (!(in >> x >> comma >> y) || comma != ',') throw Error(ErrorKind::Usage, "expected x,y but got '" + s + "'");
    return {x, y};
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Usage, "cannot write " + path);
    out << text;
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

void print_census(const Census& c, std::FILE* to) {
    std::fprintf(to, "%-12s %6s\n", "class", "count");
    std::fprintf(to, "%-12s %6d\n", "unbalanced", c.unbalanced);
    std::fprintf(to, "%-12s %6d\n", "balanced", c.balanced);
    for (auto [d, k] : c.balanced_by_degree) std::fprintf(to, "  degree %-3d %6d\n", d, k);
    std::fprintf(to, "max imbalance (balanced) %.3e\n", c.max_imbalance);
}

std::string walk_ids(const Net& net, const Walk& w) {
    std::string s;
    for (int v : w.vertices()) s += (s.empty() ? "" : " ") + net.id(v);
    return s;
}

json walk_json(const Net& net, const Walk& w) {
    json a = json::array();
    for (int v : w.vertices()) a.push_back(net.id(v));
    return a;
}

// ---- verify ----

struct VerifyOpts {
    std::string file;
    double tol = 1e-8;
    std::string report = "text";
};

int cmd_verify(const VerifyOpts& o) {
    NetFile nf = load(o.file);
    const Net& net = nf.net;
    double tol = o.tol;
    auto rep = classify_vertices(net, tol);
    json out;
    out["tol"] = tol;
    json verts = json::array();
    for (const auto& e : rep.entries) {
        json v = {{"id", net.id(e.vertex)},
                  {"degree", e.degree},
                  {"imbalance", e.norm},
                  {"class", e.cls == VertexClass::Balanced ? "balanced" : "unbalanced"}};
        if (e.fixed_but_balanced) v["fixed_but_balanced"] = true;
        verts.push_back(v);
    }
    out["vertices"] = verts;
    out["balanced"] = rep.balanced();
    out["unbalanced"] = rep.unbalanced();

    std::vector<std::string> failures;
    json lemmas = json::array();
    for (const auto& e : rep.entries) {
        if (e.cls != VertexClass::Balanced) continue;
        auto vs = check_local_lemmas(net, e.vertex);
        std::vector<double> dirs;
        for (const auto& sp : net.rotation(e.vertex)) dirs.push_back(sp.theta);
        auto ts = check_turn_lemmas(dirs);
        vs.insert(vs.end(), ts.begin(), ts.end());
        for (const auto& x : vs) {
            lemmas.push_back({{"vertex", net.id(e.vertex)}, {"lemma", x.lemma}, {"detail", x.detail}});
            failures.push_back(net.id(e.vertex) + ": " + x.lemma);
        }
    }
    out["lemma_violations"] = lemmas;

    if (net.surface().kind != SurfaceKind::Spherical) {
        auto hull = convex_hull_check(net, tol);
        out["hull"] = {{"ok", hull.ok()}, {"violations", hull.violations}};
        for (const auto& v : hull.violations) failures.push_back("hull: " + v);
        if (net.num_edges() > 0) {
            auto c = circumference_check(net, tol);
            out["circumference"] = {{"walk", walk_json(net, c.walk)},
                                    {"essentially_simple", c.cls.essentially_simple},
                                    {"counterclockwise", c.cls.counterclockwise}};
            if (!c.cls.essentially_simple) failures.push_back("circumference is not essentially simple");
            if (rep.balanced() > 0 && !c.nonnegative_turns.empty())
                failures.push_back("circumference turns left at a balanced vertex");
        }
    }
    if (!nf.meta.balanced.empty()) {
        std::vector<std::string> mine;
        for (const auto& e : rep.entries)
            if (e.cls == VertexClass::Balanced) mine.push_back(net.id(e.vertex));
        auto theirs = nf.meta.balanced;
        std::sort(mine.begin(), mine.end());
        std::sort(theirs.begin(), theirs.end());
        out["meta_matches"] = mine == theirs;
        if (mine != theirs) failures.push_back("classification differs from meta.balanced");
    }
    out["ok"] = failures.empty();
    out["failures"] = failures;

    if (o.report == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("%d balanced, %d unbalanced (tol %.1e)\n", rep.balanced(), rep.unbalanced(), tol);
        for (const auto& f : failures) std::printf("FAIL %s\n", f.c_str());
        std::printf("%s\n", failures.empty() ? "ok" : "verification failed");
    }
    return failures.empty() ? kPass : kFail;
}

// ---- relax ----

struct RelaxOpts {
    std::string file, output;
    int max_iters = 20000;
    double grad_tol = 1e-10;
    std::string step = "backtracking";
};

int cmd_relax(const RelaxOpts& o) {
    NetFile nf = load(o.file);
    RelaxParams p;
    p.max_iters = o.max_iters;
    p.grad_tol = o.grad_tol;
    if (o.step == "fixed") p.step_rule = StepRule::Fixed;
    else if (o.step != "backtracking") throw Error(ErrorKind::Usage, "--step is fixed or backtracking");
    auto r = relax(nf.net, p);
    std::fprintf(stderr, "%s after %d iterations, max imbalance %.3e%s%s\n", to_string(r.status), r.iterations,
                 r.max_imbalance, r.reason.empty() ? "" : ": ", r.reason.c_str());
    if (r.status == RelaxStatus::Converged) {
        NetMeta m = meta_for(r.net, nf.meta.name, std::max(p.grad_tol, 1e-8));
        emit(dump_net(r.net, &m), o.output);
        return kPass;
    }
    return kFail;
}

// ---- construct ----

struct ConstructOpts {
    std::string output;
    bool census = false;
    // fermat
    std::string p1 = "0,0", p2 = "1,0", p3 = "0,1", surface = "flat";
    double curvature = 0;
    // fig2
    double R = 2, r = 1, d = 5;
    // hemisphere
    double lift = 0;
};

int finish_construct(const Net& net, const std::string& name, const ConstructOpts& o, json extra) {
    NetMeta m = meta_for(net, name);
    emit(dump_net(net, &m), o.output);
    Census c = census(net);
    if (o.census) {
        // keep stdout clean when the net itself goes there
        std::FILE* to = o.output.empty() || o.output == "-" ? stderr : stdout;
        print_census(c, to);
        for (auto& [k, v] : extra.items()) std::fprintf(to, "%s %s\n", k.c_str(), v.dump().c_str());
    }
    return kPass;
}

int cmd_fermat(const ConstructOpts& o) {
    Surface s = surface_of(o.surface, o.curvature);
    Net net = build_fermat_net(s, parse_point(o.p1), parse_point(o.p2), parse_point(o.p3));
    return finish_construct(net, "fermat", o, {{"F", vec_json(net.pos(3))}});
}

int cmd_fig2(const ConstructOpts& o) {
    auto f = build_fig2_net({o.R, o.r, o.d});
    return finish_construct(f.net, "fig2", o, {{"ZXA_deg", deg(f.zxa)}, {"crossings", f.crossings}});
}

int cmd_hemisphere(const ConstructOpts& o) {
    auto h = build_hemisphere_net(o.lift);
    return finish_construct(h.net, "hemisphere", o,
                            {{"colatitude_deg", deg(h.colatitude)},
                             {"area", h.area},
                             {"angles_deg", {deg(h.angles[0]), deg(h.angles[1]), deg(h.angles[2])}}});
}

// ---- circumference ----

int cmd_circumference(const std::string& file, const std::string& report, double tol) {
    NetFile nf = load(file);
    auto c = circumference_check(nf.net, tol);
    auto turns = turn_angles(nf.net, c.walk);
    if (report == "json") {
        json t = json::array();
        for (double x : turns) t.push_back(deg(x));
        std::cout << json({{"walk", walk_json(nf.net, c.walk)},
                           {"turns_deg", t},
                           {"essentially_simple", c.cls.essentially_simple},
                           {"counterclockwise", c.cls.counterclockwise},
                           {"unbalanced_visited", c.unbalanced_visited},
                           {"ok", c.ok()}})
                         .dump(2)
                  << "\n";
    } else {
        std::printf("%s\n", walk_ids(nf.net, c.walk).c_str());
        std::printf("essentially simple: %s, unbalanced visited: %d\n", c.cls.essentially_simple ? "yes" : "no",
                    c.unbalanced_visited);
    }
    return c.cls.essentially_simple ? kPass : kFail;
}

// ---- render ----

int cmd_render(const std::string& file, const std::string& output, const SvgOptions& so) {
    NetFile nf = load(file);
    emit(render_svg(nf.net, so), output);
    return kPass;
}

// ---- search ----

struct SearchOpts {
    int unbalanced = 3, trials = 100, threads = 0, max_iters = 5000;
    std::uint64_t seed = 1;
    std::string surface = "flat", seed_topology, output;
    double curvature = 0;
    bool stream = false;
};

json trial_json(const TrialResult& t) {
    return {{"trial", t.index},     {"status", to_string(t.status)}, {"reason", t.reason},
            {"fixed", t.n_fixed},   {"free", t.n_free},              {"edges", t.n_edges},
            {"iterations", t.iterations}, {"balanced", t.balanced},   {"unbalanced", t.unbalanced},
            {"max_imbalance", t.max_imbalance}};
}

int cmd_search(const SearchOpts& o) {
    SearchParams p;
    p.surface = parse_kind(o.surface);
    p.curvature = o.curvature;
    p.relax.max_iters = o.max_iters;
    p.seed_topology = o.seed_topology;
    p.threads = o.threads;
    if (!p.seed_topology.empty() && p.seed_topology != "fig2")
        throw Error(ErrorKind::Usage, "--seed-topology accepts only fig2");
    auto r = search_counterexamples(o.unbalanced, o.trials, o.seed, p);
    if (o.stream)
        for (const auto& t : r.results) std::cout << trial_json(t).dump() << "\n";
    json f = json::object();
    for (auto [n, b] : r.f_estimate) f[std::to_string(n)] = b;
    json out = {{"unbalanced", o.unbalanced}, {"trials", o.trials},      {"seed", o.seed},
                {"surface", o.surface},       {"converged", r.converged}, {"degenerate", r.degenerate},
                {"max_iters_exceeded", r.max_iters},
                {"f_estimate", r.f(o.unbalanced)},
                {"f_estimate_by_unbalanced", f}};
    int with2 = 0;
    for (const auto& t : r.results)
        if (t.status == RelaxStatus::Converged && t.unbalanced == o.unbalanced && t.balanced >= 2) ++with2;
    out["converged_with_2plus_balanced"] = with2;
    std::string text = (o.stream ? json({{"summary", out}}).dump() : out.dump(2)) + "\n";
    emit(text, o.output);

    // the bound only holds off positive curvature and without a seeded net
    bool bounded = p.surface != SurfaceKind::Spherical && p.seed_topology.empty();
    if (bounded && o.unbalanced <= 2 && r.f(o.unbalanced) > 0) return kFail;
    if (bounded && o.unbalanced == 3 && r.f(3) > 1) return kFail;
    return kPass;
}

// ---- lemmas ----

struct LemmaOpts {
    int samples = 1000, degree_min = 3, degree_max = 9, restarts = 0;
    std::uint64_t seed = 1;
};

int cmd_lemmas_combined(const LemmaOpts& o) {
    int violations = 0, wide = 0;
    json by_lemma = json::object();
    for (int i = 0; i < o.samples; ++i) {
        auto rng = trial_rng(o.seed, std::uint64_t(i));
        int n = o.degree_min + int(i % (o.degree_max - o.degree_min + 1));
        auto d = random_balanced_directions(n, rng);
        auto c = combined_angles(d);
        if (n >= 5 && *std::max_element(c.begin(), c.end()) >= kPi) ++wide;
        for (const auto& v : check_local_lemmas(d)) {
            ++violations;
            by_lemma[v.lemma] = by_lemma.value(v.lemma, 0) + 1;
        }
    }
    json out = {{"samples", o.samples}, {"violations", violations}, {"by_lemma", by_lemma}, {"wide_configs", wide}};
    bool ok = violations == 0;
    if (o.restarts > 0) {
        json ev = json::array();
        for (int n = 6; n <= std::max(6, o.degree_max); n += 2) {
            auto e = even_degree_search(n, o.restarts, o.seed);
            ev.push_back({{"degree", n}, {"restarts", e.restarts}, {"min_imbalance", e.min_imbalance},
                          {"below_tol", e.below_tol}});
            ok = ok && e.below_tol == 0;
        }
        out["even_search"] = ev;
    }
    std::cout << out.dump(2) << "\n";
    return ok ? kPass : kFail;
}

int cmd_lemmas_staircase(const LemmaOpts& o) {
    auto arc = arc_fact_monte_carlo(o.samples, o.seed);
    int bad = 0, walks = std::max(1, o.samples / 100);
    for (int i = 0; i < walks; ++i) {
        auto rng = trial_rng(o.seed ^ 0x5157u, std::uint64_t(i));
        auto d = random_wide_configuration(5 + 2 * (i % 3), rng);
        if (!sum_walk_verify(d).ok()) ++bad;
    }
    json out = {{"arcs", o.samples},       {"arc_samples", arc.samples}, {"outside", arc.outside},
                {"corner", arc.corner},    {"not_interior", arc.not_interior},
                {"sum_walks", walks},      {"sum_walk_failures", bad}};
    std::cout << out.dump(2) << "\n";
    return arc.ok() && bad == 0 ? kPass : kFail;
}

int cmd_lemmas_turn(const LemmaOpts& o) {
    int violations = 0;
    for (int i = 0; i < o.samples; ++i) {
        auto rng = trial_rng(o.seed, std::uint64_t(i));
        int n = o.degree_min + int(i % (o.degree_max - o.degree_min + 1));
        violations += int(check_turn_lemmas(random_balanced_directions(n, rng)).size());
    }
    std::cout << json({{"samples", o.samples}, {"violations", violations}}).dump(2) << "\n";
    return violations == 0 ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geodesic nets: verify, relax, construct, search"};
    app.require_subcommand(1);
    std::function<int()> run;

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "classify vertices and check the local and global lemmas");
    verify->add_option("file", vo.file, "net file")->required();
    verify->add_option("--tol", vo.tol, "balance tolerance");
    verify->add_option("--report", vo.report, "text or json")->check(CLI::IsMember({"text", "json"}));
    verify->callback([&] { run = [&] { return cmd_verify(vo); }; });

    RelaxOpts ro;
    auto* rel = app.add_subcommand("relax", "minimise total length over free vertices");
    rel->add_option("file", ro.file)->required();
    rel->add_option("-o,--output", ro.output, "output net file (stdout if omitted)");
    rel->add_option("--max-iters", ro.max_iters);
    rel->add_option("--grad-tol", ro.grad_tol);
    rel->add_option("--step", ro.step, "backtracking or fixed");
    rel->callback([&] { run = [&] { return cmd_relax(ro); }; });

    ConstructOpts co;
    auto* con = app.add_subcommand("construct", "build one of the explicit nets");
    con->require_subcommand(1);
    auto common = [&](CLI::App* c) {
        c->add_option("-o,--output", co.output, "output net file (stdout if omitted)");
        c->add_flag("--census", co.census, "print the vertex census");
    };
    auto* fer = con->add_subcommand("fermat", "three leaves and their Fermat point");
    common(fer);
    fer->add_option("--p1", co.p1, "x,y");
    fer->add_option("--p2", co.p2, "x,y");
    fer->add_option("--p3", co.p3, "x,y");
    fer->add_option("--surface", co.surface)->check(CLI::IsMember({"flat", "hyperbolic"}));
    fer->add_option("--curvature", co.curvature);
    fer->callback([&] { run = [&] { return cmd_fermat(co); }; });
    auto* f2 = con->add_subcommand("fig2", "four unbalanced vertices, many balanced ones");
    common(f2);
    f2->add_option("--R", co.R);
    f2->add_option("--r", co.r);
    f2->add_option("--d", co.d);
    f2->callback([&] { run = [&] { return cmd_fig2(co); }; });
    auto* hem = con->add_subcommand("hemisphere", "three unbalanced and three balanced on the sphere");
    common(hem);
    hem->add_option("--lift", co.lift, "raise X, Y, Z off the equator by this angle");
    hem->callback([&] { run = [&] { return cmd_hemisphere(co); }; });

    std::string cfile, creport = "text";
    double ctol = 1e-8;
    auto* cir = app.add_subcommand("circumference", "boundary walk of the outer face");
    cir->add_option("file", cfile)->required();
    cir->add_option("--report", creport)->check(CLI::IsMember({"text", "json"}));
    cir->add_option("--tol", ctol);
    cir->callback([&] { run = [&] { return cmd_circumference(cfile, creport, ctol); }; });

    std::string rfile, rout;
    SvgOptions so;
    auto* ren = app.add_subcommand("render", "SVG picture of a net");
    ren->add_option("file", rfile)->required();
    ren->add_option("-o,--output", rout);
    ren->add_option("--size", so.size);
    ren->add_flag("--imbalance", so.imbalance_glyphs, "draw imbalance vectors");
    ren->add_flag("--labels", so.labels);
    ren->callback([&] { run = [&] { return cmd_render(rfile, rout, so); }; });

    SearchOpts sopt;
    auto* sea = app.add_subcommand("search", "randomised relaxation search for balanced vertices");
    sea->add_option("--unbalanced", sopt.unbalanced)->required();
    sea->add_option("--trials", sopt.trials);
    sea->add_option("--seed", sopt.seed);
    sea->add_option("--surface", sopt.surface)->check(CLI::IsMember({"flat", "hyperbolic", "spherical"}));
    sea->add_option("--curvature", sopt.curvature);
    sea->add_option("--seed-topology", sopt.seed_topology);
    sea->add_option("--threads", sopt.threads);
    sea->add_option("--max-iters", sopt.max_iters);
    sea->add_option("-o,--output", sopt.output);
    sea->add_flag("--stream", sopt.stream, "one JSON line per trial, then a summary line");
    sea->callback([&] { run = [&] { return cmd_search(sopt); }; });

    LemmaOpts lo;
    auto* lem = app.add_subcommand("lemmas", "randomised checks of the local lemmas");
    lem->require_subcommand(1);
    auto lopts = [&](CLI::App* c) {
        c->add_option("--samples", lo.samples);
        c->add_option("--seed", lo.seed);
        c->add_option("--degree-min", lo.degree_min);
        c->add_option("--degree-max", lo.degree_max);
    };
    auto* lc = lem->add_subcommand("combined", "combined-angle bounds on random balanced vertices");
    lopts(lc);
    lc->add_option("--even-restarts", lo.restarts, "also search for an even-degree counterexample");
    lc->callback([&] { run = [&] { return cmd_lemmas_combined(lo); }; });
    auto* ls = lem->add_subcommand("staircase", "arc fact and sum walk");
    lopts(ls);
    ls->callback([&] { run = [&] { return cmd_lemmas_staircase(lo); }; });
    auto* lt = lem->add_subcommand("turn", "first and second turn lemmas");
    lopts(lt);
    lt->callback([&] { run = [&] { return cmd_lemmas_turn(lo); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }
    try {
        return run ? run() : kUsage;
    } catch (const Error& e) {
        std::cerr << "gnet: " << e.what() << "\n";
        switch (e.kind()) {
        case ErrorKind::SchemaError:
        case ErrorKind::Usage:
        case ErrorKind::NetInvariantViolated:
        case ErrorKind::NetDegenerate:
        case ErrorKind::UnknownVertex: return kUsage;
        default: return kFail;
        }
    }
}
