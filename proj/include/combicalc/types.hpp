#pragma once

#include <cstdint>
#include <vector>

namespace combicalc {

// Dense indices into a CombSurface. All three run contiguously from 0.
using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using FaceId = std::uint32_t;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
};

/// A reference to an edge together with a direction of travel.
/// `forward` means the stored source -> target direction.
struct DirectedEdge {
    EdgeId edge = 0;
    bool forward = true;

    DirectedEdge reversed() const { return {edge, !forward}; }

    friend bool operator==(const DirectedEdge& a, const DirectedEdge& b) {
        return a.edge == b.edge && a.forward == b.forward;
    }
};

/// An ordered sequence of directed edges. Consecutive steps must chain
/// (sink of step i = source of step i+1); see paths.hpp for the checks.
struct EdgePath {
    std::vector<DirectedEdge> steps;

    bool empty() const { return steps.empty(); }
    std::size_t size() const { return steps.size(); }

    EdgePath reversed() const {
        EdgePath r;
        r.steps.reserve(steps.size());
        for (auto it = steps.rbegin(); it != steps.rend(); ++it)
            r.steps.push_back(it->reversed());
        return r;
    }

    friend bool operator==(const EdgePath& a, const EdgePath& b) {
        return a.steps == b.steps;
    }
};

}  // namespace combicalc
