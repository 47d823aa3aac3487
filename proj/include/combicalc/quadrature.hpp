#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "combicalc/types.hpp"

namespace combicalc {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

inline GaussRule compute_gauss_rule(unsigned order) {
    if (order == 0) throw std::invalid_argument("gauss rule: order must be positive");
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const double pi = 3.141592653589793238462643383279502884;
    for (unsigned i = 0; i < order; ++i) {
        // Newton iteration on the Legendre polynomial from the Chebyshev guess.
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (unsigned k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace detail

/// Cached rule lookup; rules are computed once per order.
inline const GaussRule& gauss_rule(unsigned order) {
    static std::map<unsigned, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, detail::compute_gauss_rule(order)).first;
    return it->second;
}

/// Composite Gauss-Legendre scheme: `order` nodes on each of `panels`
/// equal sub-panels, exact for polynomials of degree <= 2*order - 1.
struct Quadrature {
    unsigned order = 8;
    unsigned panels = 4;
};

/// Integral of g over [a, b].
template <typename G>
double integrate_1d(const Quadrature& q, double a, double b, G&& g) {
    const GaussRule& rule = gauss_rule(q.order);
    double sum = 0.0;
    double panel = (b - a) / q.panels;
    for (unsigned p = 0; p < q.panels; ++p) {
        double lo = a + panel * p;
        double mid = lo + panel / 2.0;
        double half = panel / 2.0;
        for (unsigned i = 0; i < rule.nodes.size(); ++i)
            sum += rule.weights[i] * half * g(mid + half * rule.nodes[i]);
    }
    return sum;
}

/// Work integral of a plane vector field along a straight segment.
/// `field` maps Vec2 -> Vec2.
template <typename F>
double line_integral_segment(const Quadrature& q, F&& field, Vec2 from, Vec2 to) {
    Vec2 dir = to - from;
    return integrate_1d(q, 0.0, 1.0,
                        [&](double t) { return field(from + t * dir).dot(dir); });
}

/// Work integral along a polyline, segment by segment.
template <typename F>
double line_integral_polyline(const Quadrature& q, F&& field, const std::vector<Vec2>& pts) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        sum += line_integral_segment(q, field, pts[i], pts[i + 1]);
    return sum;
}

/// Work integral along a parameterized curve with explicit velocity.
template <typename F, typename C, typename V>
double line_integral_curve(const Quadrature& q, F&& field, C&& curve, V&& velocity, double a,
                           double b) {
    return integrate_1d(q, a, b, [&](double t) { return field(curve(t)).dot(velocity(t)); });
}

}  // namespace combicalc
