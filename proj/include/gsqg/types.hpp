#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace gsqg {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
    /// counterclockwise quarter turn
    Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

/// counterclockwise rotation by angle t
struct Rotation {
    double c, s;
    explicit Rotation(double t) : c(std::cos(t)), s(std::sin(t)) {}
    Vec2 operator()(Vec2 v) const { return {c * v.x - s * v.y, s * v.x + c * v.y}; }
};

/// invalid physical or numerical-control parameters, degenerate configurations
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// boundary overlap, self-intersection, invalid shapes
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// iteration failures
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// NaN/overflow in quadrature or evaluation
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gsqg
