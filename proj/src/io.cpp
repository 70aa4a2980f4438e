#include "gnet/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gnet {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& why) {
    throw Error(ErrorKind::SchemaError, field + ": " + why);
}

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) schema(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema(path + "." + key, "missing");
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) schema(path, "expected a number");
    return j.get<double>();
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) schema(path, "expected a string");
    return j.get<std::string>();
}

} // namespace

std::string format_double(double x) {
    if (!std::isfinite(x)) throw Error(ErrorKind::SchemaError, "non-finite number");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

NetFile parse_net(const std::string& src) {
    json j;
    try {
        j = json::parse(src);
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character
        size_t at = std::min<size_t>(e.byte ? e.byte - 1 : 0, src.size()), line = 1, col = 1;
        for (size_t i = 0; i < at; ++i) {
            if (src[i] == '\n') ++line, col = 1;
            else ++col;
        }
        schema("$", "invalid JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
    }
    const json& surf = need(j, "surface", "$");
    std::string kind = text(need(surf, "kind", "$.surface"), "$.surface.kind");
    SurfaceKind sk;
    if (kind == "flat") sk = SurfaceKind::Flat;
    else if (kind == "hyperbolic") sk = SurfaceKind::Hyperbolic;
    else if (kind == "spherical") sk = SurfaceKind::Spherical;
    else schema("$.surface.kind", "unknown kind '" + kind + "'");
    double K = 0;
    if (surf.contains("curvature")) K = number(surf["curvature"], "$.surface.curvature");
    else K = sk == SurfaceKind::Flat ? 0 : sk == SurfaceKind::Hyperbolic ? -1 : 1;
    Surface S;
    try {
        S = Surface::make(sk, K);
    } catch (const Error& e) {
        schema("$.surface.curvature", e.detail());
    }

    const json& jv = need(j, "vertices", "$");
    if (!jv.is_array()) schema("$.vertices", "expected an array");
    std::vector<Vertex> vs;
    std::set<std::string> seen;
    for (size_t i = 0; i < jv.size(); ++i) {
        std::string p = "$.vertices[" + std::to_string(i) + "]";
        Vertex v;
        v.id = text(need(jv[i], "id", p), p + ".id");
        if (!seen.insert(v.id).second) schema(p + ".id", "duplicate id '" + v.id + "'");
        const json& c = need(jv[i], "coords", p);
        if (!c.is_array() || c.size() != 2) schema(p + ".coords", "expected [x, y]");
        v.pos = {number(c[0], p + ".coords[0]"), number(c[1], p + ".coords[1]")};
        const json& f = need(jv[i], "fixed", p);
        if (!f.is_boolean()) schema(p + ".fixed", "expected a boolean");
        v.role = f.get<bool>() ? Role::Fixed : Role::Free;
        vs.push_back(std::move(v));
    }
    std::map<std::string, int> index;
    for (size_t i = 0; i < vs.size(); ++i) index[vs[i].id] = int(i);

    const json& je = need(j, "edges", "$");
    if (!je.is_array()) schema("$.edges", "expected an array");
    std::vector<std::pair<int, int>> es;
    for (size_t i = 0; i < je.size(); ++i) {
        std::string p = "$.edges[" + std::to_string(i) + "]";
        if (!je[i].is_array() || je[i].size() != 2) schema(p, "expected [id, id]");
        int ends[2];
        for (int k = 0; k < 2; ++k) {
            std::string id = text(je[i][k], p + "[" + std::to_string(k) + "]");
            auto it = index.find(id);
            if (it == index.end()) schema(p + "[" + std::to_string(k) + "]", "unknown vertex '" + id + "'");
            ends[k] = it->second;
        }
        es.emplace_back(ends[0], ends[1]);
    }

    NetFile out;
    if (j.contains("meta")) {
        const json& m = j["meta"];
        if (!m.is_object()) schema("$.meta", "expected an object");
        if (m.contains("tol")) {
            out.meta.tol = number(m["tol"], "$.meta.tol");
            out.meta.has_tol = true;
        }
        if (m.contains("name")) out.meta.name = text(m["name"], "$.meta.name");
        if (m.contains("balanced")) {
            if (!m["balanced"].is_array()) schema("$.meta.balanced", "expected an array");
            for (size_t i = 0; i < m["balanced"].size(); ++i)
                out.meta.balanced.push_back(text(m["balanced"][i], "$.meta.balanced[" + std::to_string(i) + "]"));
        }
    }
    out.net = Net(S, std::move(vs), std::move(es));
    return out;
}

NetFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) schema(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_net(ss.str());
}

namespace {

std::string quote(const std::string& s) { return json(s).dump(); }

} // namespace

// hand-written so the float formatting is ours, and the layout stable
std::string dump_net(const Net& net, const NetMeta* meta) {
    std::string o = "{\n";
    o += "  \"surface\": {\"kind\": \"" + std::string(to_string(net.surface().kind)) +
         "\", \"curvature\": " + format_double(net.surface().curvature) + "},\n";
    o += "  \"vertices\": [\n";
    for (int i = 0; i < net.num_vertices(); ++i) {
        const auto& v = net.vertex(i);
        o += "    {\"id\": " + quote(v.id) + ", \"coords\": [" + format_double(v.pos.x) + ", " +
             format_double(v.pos.y) + "], \"fixed\": " + (v.role == Role::Fixed ? "true" : "false") + "}";
        o += i + 1 < net.num_vertices() ? ",\n" : "\n";
    }
    o += "  ],\n  \"edges\": [\n";
    const auto& es = net.edges();
    for (size_t i = 0; i < es.size(); ++i) {
        o += "    [" + quote(net.id(es[i].first)) + ", " + quote(net.id(es[i].second)) + "]";
        o += i + 1 < es.size() ? ",\n" : "\n";
    }
    o += "  ]";
    if (meta) {
        o += ",\n  \"meta\": {\"tol\": " + format_double(meta->tol) + ", \"name\": " + quote(meta->name) +
             ", \"balanced\": [";
        for (size_t i = 0; i < meta->balanced.size(); ++i) o += (i ? ", " : "") + quote(meta->balanced[i]);
        o += "]}";
    }
    o += "\n}\n";
    return o;
}

void save(const Net& net, const std::string& path, const NetMeta* meta) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::SchemaError, path + ": cannot write file");
    out << dump_net(net, meta);
}

NetMeta meta_for(const Net& net, const std::string& name, double tol) {
    NetMeta m;
    m.tol = tol;
    m.has_tol = true;
    m.name = name;
    auto rep = classify_vertices(net, tol);
    for (const auto& e : rep.entries)
        if (rep.is_balanced(e.vertex)) m.balanced.push_back(net.id(e.vertex));
    return m;
}

} // namespace gnet
