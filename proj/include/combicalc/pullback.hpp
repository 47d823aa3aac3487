#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "combicalc/quadrature.hpp"
#include "combicalc/refine.hpp"
#include "combicalc/smooth.hpp"
#include "combicalc/types.hpp"

namespace combicalc {

/// Row-major 2x2 real matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
    Mat2 transposed() const { return {a, c, b, d}; }
    Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

/// Scalar curl of a 2x2 matrix: the lower-left entry minus the upper-right.
inline double mat_scurl(const Mat2& m) { return m.c - m.b; }

/// Defect of the congruence identity relating scurl(B^T A B) to
/// scurl(A) det(B); identically zero in exact arithmetic.
inline double congruence_residual(const Mat2& A, const Mat2& B) {
    return mat_scurl(B.transposed() * A * B) - mat_scurl(A) * B.det();
}

/**
 * A planar diffeomorphism on a rectangle: the map, its analytic Jacobian,
 * and the (constant) sign of the Jacobian determinant. Use make_diffeo to
 * build one; it verifies the determinant sign on a sample grid.
 */
struct Diffeo {
    std::string name;
    std::function<Vec2(Vec2)> H;
    std::function<Mat2(Vec2)> DH;
    Rect domain;
    int epsilon = 1;
};

inline Diffeo make_diffeo(std::string name, std::function<Vec2(Vec2)> H,
                          std::function<Mat2(Vec2)> DH, Rect domain, unsigned det_samples = 9) {
    int eps = 0;
    for (unsigned i = 0; i < det_samples; ++i)
        for (unsigned j = 0; j < det_samples; ++j) {
            double x = domain.lo.x + (domain.hi.x - domain.lo.x) * i / (det_samples - 1);
            double y = domain.lo.y + (domain.hi.y - domain.lo.y) * j / (det_samples - 1);
            double det = DH({x, y}).det();
            if (det == 0.0 || !std::isfinite(det))
                throw std::invalid_argument("make_diffeo: Jacobian determinant vanishes on domain");
            int sign = det > 0.0 ? 1 : -1;
            if (eps == 0) eps = sign;
            if (sign != eps)
                throw std::invalid_argument("make_diffeo: Jacobian determinant changes sign");
        }
    return {std::move(name), std::move(H), std::move(DH), domain, eps};
}

/// Pull a field back through a diffeomorphism: DH(x)^T F(H(x)). The result
/// is evaluable only; no analytic partials are carried along.
inline FieldEval pullback_field(const Diffeo& dif, const FieldEval& f) {
    auto H = dif.H;
    auto DH = dif.DH;
    auto M = f.M, N = f.N;
    auto value = [H, DH, M, N](double x, double y) -> Vec2 {
        Vec2 img = H({x, y});
        return DH({x, y}).transposed() * Vec2{M(img.x, img.y), N(img.x, img.y)};
    };
    return {[value](double x, double y) { return value(x, y).x; },
            [value](double x, double y) { return value(x, y).y; }};
}

/**
 * Pullback through an affine map H(x) = B x + t, carried out analytically:
 * the chain rule gives the pulled-back field full partials, so it can feed
 * the Green harness as a SmoothField.
 */
inline SmoothField pullback_affine(const Mat2& B, Vec2 t, const SmoothField& f) {
    auto img = [B, t](double x, double y) { return B * Vec2{x, y} + t; };
    SmoothField out;
    out.name = f.name + "-pulled";
    out.M = [f, img, B](double x, double y) {
        Vec2 p = img(x, y);
        return B.a * f.M(p.x, p.y) + B.c * f.N(p.x, p.y);
    };
    out.N = [f, img, B](double x, double y) {
        Vec2 p = img(x, y);
        return B.b * f.M(p.x, p.y) + B.d * f.N(p.x, p.y);
    };
    // D(F hat) = B^T DF(Bx + t) B, expanded entrywise.
    auto dF = [f, img](double x, double y) {
        Vec2 p = img(x, y);
        return Mat2{f.dMdx(p.x, p.y), f.dMdy(p.x, p.y), f.dNdx(p.x, p.y), f.dNdy(p.x, p.y)};
    };
    auto dhat = [dF, B](double x, double y) { return B.transposed() * dF(x, y) * B; };
    out.dMdx = [dhat](double x, double y) { return dhat(x, y).a; };
    out.dMdy = [dhat](double x, double y) { return dhat(x, y).b; };
    out.dNdx = [dhat](double x, double y) { return dhat(x, y).c; };
    out.dNdy = [dhat](double x, double y) { return dhat(x, y).d; };
    return out;
}

struct CovReport {
    int epsilon = 1;
    double line_residual = 0.0;
    double scurl_residual = 0.0;
    double boundary_integral_image = 0.0;    // field over the image boundary
    double boundary_integral_pullback = 0.0; // pulled-back field over the domain boundary
};

/**
 * Verify the change-of-variables identities on a rectangle inside the
 * diffeomorphism's domain. The image boundary is parameterized through the
 * map itself, side by side, so both boundary integrals use identical
 * quadrature nodes. The scalar curl of the pullback is estimated by central
 * finite differences on interior sample points and compared against
 * epsilon * scurl(F)(H(x)) |det DH(x)|.
 */
inline CovReport verify_cov(const Diffeo& dif, const Rect& rect, const SmoothField& field,
                            const Quadrature& q, unsigned samples, double fd_step = 1e-5) {
    if (samples < 1) throw std::invalid_argument("verify_cov: need at least one sample");
    FieldEval f = field.eval();
    FieldEval fhat = pullback_field(dif, f);

    Vec2 corners[5] = {rect.lo,
                       {rect.hi.x, rect.lo.y},
                       rect.hi,
                       {rect.lo.x, rect.hi.y},
                       rect.lo};
    double i_hat = 0.0, i_img = 0.0;
    for (int side = 0; side < 4; ++side) {
        Vec2 from = corners[side], to = corners[side + 1];
        Vec2 dir = to - from;
        i_hat += line_integral_segment(q, fhat, from, to);
        i_img += integrate_1d(q, 0.0, 1.0, [&](double t) {
            Vec2 at = from + t * dir;
            return f(dif.H(at)).dot(dif.DH(at) * dir);
        });
    }
    if (!std::isfinite(i_hat) || !std::isfinite(i_img))
        throw std::runtime_error("verify_cov: quadrature produced a non-finite value");

    double scurl_residual = 0.0;
    for (unsigned i = 0; i < samples; ++i)
        for (unsigned j = 0; j < samples; ++j) {
            double x = rect.lo.x + (rect.hi.x - rect.lo.x) * (i + 0.5) / samples;
            double y = rect.lo.y + (rect.hi.y - rect.lo.y) * (j + 0.5) / samples;
            double dn_dx = (fhat.N(x + fd_step, y) - fhat.N(x - fd_step, y)) / (2.0 * fd_step);
            double dm_dy = (fhat.M(x, y + fd_step) - fhat.M(x, y - fd_step)) / (2.0 * fd_step);
            double approx = dn_dx - dm_dy;
            Vec2 img = dif.H({x, y});
            double expected = dif.epsilon * field.scurl(img.x, img.y) *
                              std::abs(dif.DH({x, y}).det());
            if (!std::isfinite(approx) || !std::isfinite(expected))
                throw std::runtime_error("verify_cov: non-finite scalar curl sample");
            scurl_residual = std::max(scurl_residual, std::abs(approx - expected));
        }

    CovReport r;
    r.epsilon = dif.epsilon;
    r.line_residual = std::abs(i_img - i_hat);
    r.scurl_residual = scurl_residual;
    r.boundary_integral_image = i_img;
    r.boundary_integral_pullback = i_hat;
    return r;
}

/// Built-in diffeomorphism catalog.
inline Diffeo builtin_diffeo(const std::string& name, double oscillating_min_x = 1e-2) {
    if (name == "identity")
        return make_diffeo(
            name, [](Vec2 p) { return p; }, [](Vec2) { return Mat2{1, 0, 0, 1}; },
            Rect{{0.0, 0.0}, {1.0, 1.0}});
    if (name == "affine")  // diag(1.5, 0.5) plus a shift; orientation-preserving
        return make_diffeo(
            name, [](Vec2 p) { return Vec2{1.5 * p.x + 0.5, 0.5 * p.y + 0.5}; },
            [](Vec2) { return Mat2{1.5, 0, 0, 0.5}; }, Rect{{0.0, 0.0}, {1.0, 1.0}});
    if (name == "affine-flip")  // diag(1.5, -0.5) plus a shift; orientation-reversing
        return make_diffeo(
            name, [](Vec2 p) { return Vec2{1.5 * p.x, 1.0 - 0.5 * p.y}; },
            [](Vec2) { return Mat2{1.5, 0, 0, -0.5}; }, Rect{{0.0, 0.0}, {1.0, 1.0}});
    if (name == "oscillating") {
        // Shears the square vertically by x^3 sin(1/x); the image boundary
        // oscillates infinitely often as x -> 0, so the domain is truncated
        // on the left.
        auto osc = [](double x) { return x == 0.0 ? 0.0 : x * x * x * std::sin(1.0 / x); };
        auto dosc = [](double x) {
            return x == 0.0 ? 0.0
                            : 3.0 * x * x * std::sin(1.0 / x) - x * std::cos(1.0 / x);
        };
        return make_diffeo(
            name, [osc](Vec2 p) { return Vec2{p.x, p.y + osc(p.x)}; },
            [dosc](Vec2 p) { return Mat2{1.0, 0.0, dosc(p.x), 1.0}; },
            Rect{{oscillating_min_x, 0.0}, {1.0, 1.0}});
    }
    throw std::invalid_argument("unknown builtin diffeomorphism: " + name);
}

inline const std::vector<std::string>& builtin_diffeo_names() {
    static const std::vector<std::string> names = {"identity", "affine", "affine-flip",
                                                   "oscillating"};
    return names;
}

}  // namespace combicalc
