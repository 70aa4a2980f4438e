#pragma once

#include <string>

#include "gnet/net.hpp"

namespace gnet {

struct SvgOptions {
    int size = 600;          // pixels, square canvas
    double tol = 1e-8;       // balance threshold for filled disks
    bool imbalance_glyphs = false;
    bool labels = false;
};

std::string render_svg(const Net& net, const SvgOptions& opt = {});

} // namespace gnet
