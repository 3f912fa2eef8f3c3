#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace autocam {

// World frame: z up, meters, rig base at the origin.
struct Vec3 {
    double x{0.0}, y{0.0}, z{0.0};

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Throws DegenerateRay for vectors shorter than eps.
Vec3 normalized(const Vec3& v, double eps = 1e-12);

// Projection onto the ground (x-y) plane.
constexpr Vec3 ground(const Vec3& v) { return {v.x, v.y, 0.0}; }

inline constexpr Vec3 kGravityDir{0.0, 0.0, -1.0};
inline constexpr Vec3 kWorldUp{0.0, 0.0, 1.0};

// Rotates v by the rotation vector (axis * angle).
Vec3 rotate(const Vec3& v, const Vec3& rotation_vector);

struct Ray {
    Vec3 origin;
    Vec3 direction;  // unit

    // Normalizes direction; throws DegenerateRay when it has no length.
    static Ray through(const Vec3& origin, const Vec3& direction);

    Vec3 at(double s) const { return origin + direction * s; }
};

struct CameraIntrinsics {
    double fov_h{std::numbers::pi / 3.0};
    double aspect{16.0 / 9.0};

    double fov_v() const { return 2.0 * std::atan(std::tan(fov_h / 2.0) / aspect); }

    // Throws InvalidConfig unless 0 < fov_h < pi and aspect > 0.
    void validate() const;
};

// A level camera: the image-plane horizontal axis stays parallel to the ground.
struct CameraPose {
    Vec3 position;
    Vec3 forward{0.0, 1.0, 0.0};
    Vec3 up{0.0, 0.0, 1.0};
    double zoom{1.0};

    Vec3 right() const { return normalized(cross(forward, up)); }
};

// Level pose looking from position at target.  Throws DegeneratePose when the
// two coincide or the view is exactly vertical.
CameraPose look_at(const Vec3& position, const Vec3& target);

// Level pose with the given view direction; on a vertical view the previous up
// vector is re-orthogonalized against forward instead of failing.
CameraPose look_along(const Vec3& position, const Vec3& forward, const Vec3& fallback_up);

// look_at with the vertical-view fallback above.
CameraPose look_at_or(const Vec3& position, const Vec3& target, const Vec3& fallback_up);

// Level pose that keeps `feature` horizontally centered and places it at the
// given fraction of the frame height measured from the top (1/3 = rule of thirds).
CameraPose aim_feature_at_fraction(const Vec3& position, const Vec3& feature,
                                   const CameraIntrinsics& intr, double zoom,
                                   double fraction_from_top, const Vec3& fallback_up);

struct ImagePoint {
    double u{0.5};  // 0 left, 1 right
    double v{0.5};  // 0 top, 1 bottom
};

// Pinhole projection; zoom multiplies the focal length.  Throws BehindCamera.
ImagePoint project(const CameraPose& pose, const CameraIntrinsics& intr, const Vec3& point);

struct PolarCoord {
    double theta{0.0};  // elevation in the vertical plane
    double psi{0.0};    // azimuth in the horizontal plane, 0 along +y, positive toward +x
    double R{0.0};
};

// The polar origin sits 0.333 m above the rig base.
inline constexpr Vec3 kPolarOriginOffset{0.0, 0.0, 0.333};

PolarCoord to_polar(const Vec3& p, const Vec3& origin = kPolarOriginOffset);
Vec3 from_polar(const PolarCoord& c, const Vec3& origin = kPolarOriginOffset);

// Columns d(x)/d(theta), d(x)/d(psi), d(x)/d(R).
std::array<Vec3, 3> polar_jacobian(const PolarCoord& c);

struct PolarBounds {
    double theta_min{-std::numbers::pi / 10.0};
    double theta_max{0.4 * std::numbers::pi};
    double psi_min{-0.4 * std::numbers::pi};
    double psi_max{0.4 * std::numbers::pi};
    double r_min{0.36};
    double r_max{0.66};
    // The open intervals are treated as closed, shrunk by this margin.
    double margin{1e-6};

    bool contains(const PolarCoord& c) const;
    PolarCoord clamp(const PolarCoord& c) const;
    // Smallest distance to any face, radians for angles and meters for R.
    double clearance(const PolarCoord& c) const;
    void validate() const;
};

} // namespace autocam
