#pragma once

#include <string>
#include <vector>

#include "cvnn/complex_cube.hpp"

namespace cvnn {

/// Built-in experiment targets on Omega_n.  Closed world: zero, conj
/// (conjugate of the first coordinate), resq (Re of the first coordinate,
/// squared), gauss (exp of minus the squared norm), wave (Re z_1 times
/// cos(pi Im z_1)).
struct TargetSpec {
    std::string name;
    ComplexField fn;
};

TargetSpec make_target(const std::string& id);

std::vector<std::string> target_names();

} // namespace cvnn
