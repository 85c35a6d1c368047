#include "cvnn/targets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvnn {

TargetSpec make_target(const std::string& id) {
    if (id == "zero")
        return {"zero", [](const CVector&) { return Complex(0.0, 0.0); }};
    if (id == "conj")
        return {"conj", [](const CVector& z) { return std::conj(z.at(0)); }};
    if (id == "resq")
        return {"resq", [](const CVector& z) {
                    double r = z.at(0).real();
                    return Complex(r * r, 0.0);
                }};
    if (id == "gauss")
        return {"gauss", [](const CVector& z) {
                    double s = 0.0;
                    for (const auto& zt : z) s += std::norm(zt);
                    return Complex(std::exp(-s), 0.0);
                }};
    if (id == "wave")
        return {"wave", [](const CVector& z) {
                    return Complex(z.at(0).real() *
                                       std::cos(std::numbers::pi * z.at(0).imag()),
                                   0.0);
                }};
    throw std::invalid_argument("unknown target '" + id + "'");
}

std::vector<std::string> target_names() {
    return {"zero", "conj", "resq", "gauss", "wave"};
}

} // namespace cvnn
