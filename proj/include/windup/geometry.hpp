#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace windup {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 midpoint(const Vec3& a, const Vec3& b) { return (a + b) * 0.5; }

inline constexpr double kRadToDeg = 180.0 / M_PI;
inline constexpr double kDegToRad = M_PI / 180.0;

// Wrap an angle in degrees to (-180, 180].
inline double wrap_degrees(double d) {
    d = std::fmod(d, 360.0);
    if (d <= -180.0) d += 360.0;
    if (d > 180.0) d -= 360.0;
    return d;
}

// Angle between two direction vectors in [0, 180] degrees. The cosine is
// clamped to [-1, 1]: collinear joints at full extension drift past the acos
// domain otherwise.
inline double angle_between_deg(const Vec3& u, const Vec3& v, const char* what = "angle_between") {
    const double nu = norm(u);
    const double nv = norm(v);
    if (nu < 1e-15 || nv < 1e-15) {
        throw std::invalid_argument(std::string(what) + ": zero-length direction vector");
    }
    double c = dot(u, v) / (nu * nv);
    c = std::max(-1.0, std::min(1.0, c));
    return std::acos(c) * kRadToDeg;
}

// Three-point interior angle at vertex b between rays b->a and b->c.
inline double interior_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 ba = a - b;
    const Vec3 bc = c - b;
    if (norm(ba) < 1e-15) {
        throw std::invalid_argument("interior_angle: zero-length ray from vertex b to a");
    }
    if (norm(bc) < 1e-15) {
        throw std::invalid_argument("interior_angle: zero-length ray from vertex b to c");
    }
    return angle_between_deg(ba, bc, "interior_angle");
}

// Horizontal heading atan2(v_y, v_x) in degrees, range (-180, 180].
inline double heading_xy(const Vec3& v) {
    if (std::abs(v.x) < 1e-15 && std::abs(v.y) < 1e-15) {
        throw std::invalid_argument("heading_xy: zero horizontal projection");
    }
    double d = std::atan2(v.y, v.x) * kRadToDeg;
    if (d <= -180.0) d += 360.0;
    return d;
}

}  // namespace windup
