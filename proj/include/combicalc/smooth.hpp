#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "combicalc/types.hpp"

namespace combicalc {

/// A plane vector field that can only be evaluated (no derivatives), e.g.
/// the pullback of a smooth field through a map.
struct FieldEval {
    std::function<double(double, double)> M;
    std::function<double(double, double)> N;

    Vec2 operator()(Vec2 p) const { return {M(p.x, p.y), N(p.x, p.y)}; }
};

/**
 * An analytic plane vector field (M, N) with its four first partials.
 * The scalar curl is dN/dx - dM/dy.
 */
struct SmoothField {
    std::string name;
    std::function<double(double, double)> M, N;
    std::function<double(double, double)> dMdx, dMdy, dNdx, dNdy;

    double scurl(double x, double y) const { return dNdx(x, y) - dMdy(x, y); }
    Vec2 operator()(Vec2 p) const { return {M(p.x, p.y), N(p.x, p.y)}; }
    FieldEval eval() const { return {M, N}; }
};

/// The built-in analytic field catalog. Every field used by the convergence
/// and Green checks has a closed-form scalar curl.
inline SmoothField builtin_field(const std::string& name) {
    auto zero = [](double, double) { return 0.0; };
    if (name == "zero")
        return {name, zero, zero, zero, zero, zero, zero};
    if (name == "const")
        return {name, [](double, double) { return 1.0; }, zero, zero, zero, zero, zero};
    if (name == "rot")  // (-y, x), rigid rotation, scurl 2
        return {name,
                [](double, double y) { return -y; },
                [](double x, double) { return x; },
                zero,
                [](double, double) { return -1.0; },
                [](double, double) { return 1.0; },
                zero};
    if (name == "grad-xy")  // gradient of x*y, scurl 0
        return {name,
                [](double, double y) { return y; },
                [](double x, double) { return x; },
                zero,
                [](double, double) { return 1.0; },
                [](double, double) { return 1.0; },
                zero};
    if (name == "grad-r2")  // gradient of x^2 + y^2, scurl 0
        return {name,
                [](double x, double) { return 2.0 * x; },
                [](double, double y) { return 2.0 * y; },
                [](double, double) { return 2.0; },
                zero,
                zero,
                [](double, double) { return 2.0; }};
    if (name == "x2")  // (0, x^2), scurl 2x
        return {name,
                zero,
                [](double x, double) { return x * x; },
                zero,
                zero,
                [](double x, double) { return 2.0 * x; },
                zero};
    if (name == "y2")  // (y^2, 0), scurl -2y
        return {name,
                [](double, double y) { return y * y; },
                zero,
                zero,
                [](double, double y) { return 2.0 * y; },
                zero,
                zero};
    if (name == "x3")  // (0, x^3), scurl 3x^2
        return {name,
                zero,
                [](double x, double) { return x * x * x; },
                zero,
                zero,
                [](double x, double) { return 3.0 * x * x; },
                zero};
    if (name == "trig")  // (-sin y, sin x), scurl cos x + cos y
        return {name,
                [](double, double y) { return -std::sin(y); },
                [](double x, double) { return std::sin(x); },
                zero,
                [](double, double y) { return -std::cos(y); },
                [](double x, double) { return std::cos(x); },
                zero};
    if (name == "vortex")  // (-y, x)/(x^2+y^2), scurl 0 away from the origin
        return {name,
                [](double x, double y) { return -y / (x * x + y * y); },
                [](double x, double y) { return x / (x * x + y * y); },
                [](double x, double y) {
                    double r2 = x * x + y * y;
                    return 2.0 * x * y / (r2 * r2);
                },
                [](double x, double y) {
                    double r2 = x * x + y * y;
                    return (y * y - x * x) / (r2 * r2);
                },
                [](double x, double y) {
                    double r2 = x * x + y * y;
                    return (y * y - x * x) / (r2 * r2);
                },
                [](double x, double y) {
                    double r2 = x * x + y * y;
                    return -2.0 * x * y / (r2 * r2);
                }};
    throw std::invalid_argument("unknown builtin field: " + name);
}

inline const std::vector<std::string>& builtin_field_names() {
    static const std::vector<std::string> names = {
        "zero", "const", "rot", "grad-xy", "grad-r2", "x2", "y2", "x3", "trig", "vortex"};
    return names;
}

}  // namespace combicalc
