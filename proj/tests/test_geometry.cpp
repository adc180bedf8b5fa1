#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "windup/geometry.hpp"
#include "windup/pose.hpp"
#include "windup/rng.hpp"

using namespace windup;

TEST_CASE("interior_angle on axis-aligned rays") {
    CHECK(interior_angle({0, 0, 1}, {0, 0, 0}, {1, 0, 0}) == doctest::Approx(90.0).epsilon(1e-12));
    CHECK(interior_angle({0, 0, 2}, {0, 0, 1}, {0, 0, 0}) == doctest::Approx(180.0).epsilon(1e-12));
    CHECK(interior_angle({1, 0, 0}, {0, 0, 0}, {2, 0, 0}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("interior_angle rejects degenerate rays") {
    CHECK_THROWS_AS(interior_angle({1, 2, 3}, {1, 2, 3}, {0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(interior_angle({0, 0, 0}, {1, 2, 3}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("interior_angle matches the law-of-cosines oracle on random triples") {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        std::array<double, 3> a, b, c;
        for (int i = 0; i < 3; ++i) {
            a[i] = rng.uniform(-5, 5);
            b[i] = rng.uniform(-5, 5);
            c[i] = rng.uniform(-5, 5);
        }
        const double got = interior_angle({a[0], a[1], a[2]}, {b[0], b[1], b[2]}, {c[0], c[1], c[2]});
        const double want = oracle::angle_law_of_cosines(a, b, c);
        CHECK(std::abs(got - want) < 1e-9);
    }
}

TEST_CASE("interior_angle symmetry and invariances") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Vec3 a{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Vec3 b{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Vec3 c{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const double base = interior_angle(a, b, c);

        CHECK(interior_angle(c, b, a) == doctest::Approx(base).epsilon(1e-12));

        // Uniform scaling of both rays about the vertex.
        const double s = rng.uniform(0.1, 4.0);
        const Vec3 a2 = b + (a - b) * s;
        const Vec3 c2 = b + (c - b) * s;
        CHECK(interior_angle(a2, b, c2) == doctest::Approx(base).epsilon(1e-9));

        // Global rotation about the z axis.
        const double th = rng.uniform(0, 2 * M_PI);
        auto rot = [&](const Vec3& p) {
            return Vec3{p.x * std::cos(th) - p.y * std::sin(th),
                        p.x * std::sin(th) + p.y * std::cos(th), p.z};
        };
        CHECK(interior_angle(rot(a), rot(b), rot(c)) == doctest::Approx(base).epsilon(1e-8));
    }
}

TEST_CASE("heading_xy basics") {
    CHECK(heading_xy({1, 0, 5}) == doctest::Approx(0.0));
    CHECK(heading_xy({0, 1, 0}) == doctest::Approx(90.0));
    CHECK(heading_xy({-1, -1, 0}) == doctest::Approx(-135.0));
    CHECK(heading_xy({-1, 0, 0}) == doctest::Approx(180.0));
    CHECK_THROWS_AS(heading_xy({0, 0, 3}), std::invalid_argument);
}

TEST_CASE("heading_xy antipode identity") {
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        Vec3 v{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        if (std::abs(v.x) < 1e-9 && std::abs(v.y) < 1e-9) continue;
        const double h1 = heading_xy(v);
        const double h2 = heading_xy(v * -1.0);
        double diff = std::fmod(h1 + 180.0 - h2, 360.0);
        if (diff < -180.0) diff += 360.0;
        if (diff > 180.0) diff -= 360.0;
        CHECK(std::abs(diff) < 1e-9);
    }
}

TEST_CASE("wrap_degrees range and fixed points") {
    CHECK(wrap_degrees(180.0) == doctest::Approx(180.0));
    CHECK(wrap_degrees(-180.0) == doctest::Approx(180.0));
    CHECK(wrap_degrees(540.0) == doctest::Approx(180.0));
    CHECK(wrap_degrees(-190.0) == doctest::Approx(170.0));
    CHECK(wrap_degrees(0.0) == doctest::Approx(0.0));
}

TEST_CASE("joint names round-trip") {
    for (int i = 0; i < kJointCount; ++i) {
        const JointId id = static_cast<JointId>(i);
        CHECK(parse_joint(joint_name(id)) == id);
    }
    CHECK_THROWS_AS(parse_joint("hip"), std::invalid_argument);
}

TEST_CASE("pitch codes round-trip") {
    for (int i = 0; i < kPitchTypeCount; ++i) {
        const PitchType t = static_cast<PitchType>(i);
        CHECK(parse_pitch_type(pitch_code(t)) == t);
    }
    CHECK_THROWS_AS(parse_pitch_type("XX"), std::invalid_argument);
}

TEST_CASE("handedness side helpers") {
    CHECK(lead_side(Handedness::RHP) == Side::Left);
    CHECK(throwing_side(Handedness::RHP) == Side::Right);
    CHECK(lead_side(Handedness::LHP) == Side::Right);
    CHECK(throwing_side(Handedness::LHP) == Side::Left);
    CHECK(lead_side(Handedness::RHP) != throwing_side(Handedness::RHP));
    CHECK(lead_side(Handedness::LHP) != throwing_side(Handedness::LHP));
}

TEST_CASE("mirror_x swaps sides and negates x") {
    PoseFrame f;
    f[JointId::LeftWrist] = {1.0, 2.0, 3.0};
    f[JointId::RightWrist] = {-4.0, 5.0, 6.0};
    f[JointId::Nose] = {0.5, -0.5, 5.0};
    const PoseFrame m = mirror_x(f);
    CHECK(m[JointId::RightWrist].x == doctest::Approx(-1.0));
    CHECK(m[JointId::RightWrist].y == doctest::Approx(2.0));
    CHECK(m[JointId::LeftWrist].x == doctest::Approx(4.0));
    CHECK(m[JointId::Nose].x == doctest::Approx(-0.5));
    CHECK(m[JointId::Nose].y == doctest::Approx(-0.5));
}
