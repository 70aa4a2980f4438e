#pragma once

#include <string>
#include <vector>

#include "gnet/net.hpp"

namespace gnet {

struct NetMeta {
    double tol = 1e-8;
    std::string name;
    bool has_tol = false;
    std::vector<std::string> balanced; // ids the writer classified as balanced
};

struct NetFile {
    Net net;
    NetMeta meta;
};

NetFile parse_net(const std::string& json_text);
NetFile load(const std::string& path);

std::string dump_net(const Net& net, const NetMeta* meta = nullptr);
void save(const Net& net, const std::string& path, const NetMeta* meta = nullptr);

// meta filled from classify_vertices at tol
NetMeta meta_for(const Net& net, const std::string& name, double tol = 1e-8);

// shortest decimal with 17 significant digits; round-trips every finite double
std::string format_double(double x);

} // namespace gnet
