#include <doctest.h>

#include <cmath>

#include "quadloc/error.hpp"
#include "quadloc/model/kinematics.hpp"
#include "quadloc/model/robot_params.hpp"
#include "support/oracles.hpp"
#include "support/rng.hpp"
#include "testdata.hpp"

using namespace quadloc;
using namespace quadloc::model;
using la::Mat3;
using la::Mat6;
using la::Vec3;
using la::Vec6;
using testsupport::Rng;

namespace {

Vec6 pose(double x, double y, double z, double phi, double theta, double psi) {
  Vec6 q(6, 1);
  q[0] = x;
  q[1] = y;
  q[2] = z;
  q[3] = phi;
  q[4] = theta;
  q[5] = psi;
  return q;
}

}  // namespace

TEST_CASE("body rotation composes yaw, pitch, roll in that order") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const double phi = rng.uniform(-1.0, 1.0);
    const double theta = rng.uniform(-1.0, 1.0);
    const double psi = rng.uniform(-3.0, 3.0);
    const Mat3 r = body_rotation(phi, theta, psi);
    CHECK(la::max_abs(r - la::rot_z(psi) * la::rot_y(theta) * la::rot_x(phi)) == 0.0);
    CHECK(la::max_abs(r * r.transposed() - Mat3::identity(3)) < 1e-14);
  }
  // Pure yaw turns the body x axis within the ground plane.
  const Vec3 fwd = body_rotation(0, 0, M_PI / 2) * la::vec3(1, 0, 0);
  CHECK(la::max_abs(fwd - la::vec3(0, 1, 0)) < 1e-15);
}

TEST_CASE("euler rate map determinant is cos(theta) and the inverse matches") {
  Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const double phi = rng.uniform(-1.5, 1.5);
    const double theta = rng.uniform(-1.4, 1.4);
    const Mat3 w = euler_rate_map(phi, theta);
    CHECK(la::det3(w) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    CHECK(la::max_abs(w * euler_rate_map_inverse(phi, theta) - Mat3::identity(3)) < 1e-13);
  }
  CHECK_THROWS_AS(euler_rate_map_inverse(0.3, M_PI / 2), GimbalSingularityError);
  CHECK_THROWS_AS(body_jacobian_inverse(pose(0, 0, 0, 0.3, M_PI / 2 - 1e-9, 1.0)),
                  GimbalSingularityError);
}

TEST_CASE("euler rate map relates angle rates to rigid-body angular velocity") {
  // omega in the body frame from finite differences of R: [omega x] = R^T dR/dt.
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 angles = rng.vec3(-1.0, 1.0);
    const Vec3 rates = rng.vec3(-2.0, 2.0);
    auto r_of_t = [&](double t) {
      return body_rotation(angles[0] + rates[0] * t, angles[1] + rates[1] * t,
                           angles[2] + rates[2] * t);
    };
    const Mat3 dr = testsupport::central_difference([&](double t) { return r_of_t(t); }, 0.0);
    const Mat3 omega_hat = r_of_t(0.0).transposed() * dr;
    const Vec3 omega_fd = la::vec3(omega_hat(2, 1), omega_hat(0, 2), omega_hat(1, 0));
    const Vec3 omega = euler_rate_map(angles[0], angles[1]) * rates;
    CHECK(la::max_abs(omega - omega_fd) < 1e-8);
  }
}

TEST_CASE("body jacobian rate matches finite differences of the jacobian") {
  Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec6 q0 = pose(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0, 1),
                         rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8), rng.uniform(-2, 2));
    Vec6 q0d(6, 1);
    for (int i = 0; i < 6; ++i) q0d[i] = rng.uniform(-1.5, 1.5);

    const Mat6 dj_fd = testsupport::central_difference(
        [&](double t) { return body_jacobian(q0 + t * q0d); }, 0.0);
    const Mat6 dj = body_jacobian_rate(q0, q0d);
    CHECK(la::max_abs(dj - dj_fd) < 1e-7);

    CHECK(la::max_abs(body_jacobian(q0) * body_jacobian_inverse(q0) - Mat6::identity(6)) <
          1e-13);
  }
}

TEST_CASE("leg forward kinematics has the closed-form stance and FD jacobian") {
  const RobotParams rp = load_robot_params(testdata::path("synthetic.params"));

  // At the bundled stance the foot sits exactly 0.25 m under the hip plane,
  // laterally offset by d.
  for (int leg = 0; leg < 4; ++leg) {
    const auto kin = leg_forward_kinematics(rp, leg, rp.q_stance[leg]);
    CHECK(kin.ge[0] == doctest::Approx(rp.p_hip[leg][0]).epsilon(1e-14));
    CHECK(kin.ge[1] == doctest::Approx(rp.p_hip[leg][1] + rp.d[leg]).epsilon(1e-14));
    CHECK(kin.ge[2] == doctest::Approx(-0.25).epsilon(1e-14));
  }

  Rng rng(35);
  for (int trial = 0; trial < 40; ++trial) {
    const int leg = static_cast<int>(rng.next_u64() % 4);
    const Vec3 q = la::vec3(rng.uniform(-0.5, 0.5), rng.uniform(0.2, 1.4),
                            rng.uniform(-2.4, -0.4));
    const auto kin = leg_forward_kinematics(rp, leg, q);
    for (int col = 0; col < 3; ++col) {
      const Vec3 fd = testsupport::central_difference(
          [&](double t) {
            Vec3 qq = q;
            qq[col] += t;
            return leg_forward_kinematics(rp, leg, qq).ge;
          },
          0.0);
      CHECK(la::max_abs(kin.J.block<3, 1>(0, col) - fd) < 1e-8);
    }
  }
}

TEST_CASE("stretched legs are rejected by the jacobian guard") {
  const RobotParams rp = load_robot_params(testdata::path("synthetic.params"));
  const auto stretched = leg_forward_kinematics(rp, 0, la::vec3(0.0, 0.3, 0.0));
  CHECK_THROWS_AS(leg_jacobian_inverse(stretched.J), LegSingularityError);
  const auto bent = leg_forward_kinematics(rp, 0, rp.q_stance[0]);
  CHECK_NOTHROW(leg_jacobian_inverse(bent.J));
}

TEST_CASE("foot points drop the ankle by the sphere radius in the world frame") {
  Rng rng(36);
  for (int trial = 0; trial < 30; ++trial) {
    const Vec3 og = rng.vec3(-1.0, 1.0);
    const Mat3 R = body_rotation(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6),
                                 rng.uniform(-3.0, 3.0));
    const Vec3 ge = rng.vec3(-0.4, 0.4);
    const double zeta = 0.022;
    const auto fp = foot_point(og, R, ge, zeta);
    CHECK(la::max_abs(fp.of_w - (fp.oe_w - la::vec3(0, 0, zeta))) == 0.0);
    // gf is the body-frame vector to the same world point.
    CHECK(la::max_abs((og + R * fp.gf_0) - fp.of_w) < 1e-15);
  }
}

TEST_CASE("foot point velocity equals the chain rule on the world position") {
  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const Mat3 R = body_rotation(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6),
                                 rng.uniform(-3.0, 3.0));
    Vec6 V(6, 1);
    for (int i = 0; i < 6; ++i) V[i] = rng.uniform(-1.0, 1.0);
    const Vec3 gf = rng.vec3(-0.4, 0.4);
    const Vec3 dgf = rng.vec3(-1.0, 1.0);
    const Vec3 v = la::vec3(V[0], V[1], V[2]);
    const Vec3 omega = la::vec3(V[3], V[4], V[5]);
    // d/dt (og + R gf) = R v + R [omega x] gf + R dgf, assembled independently.
    const Vec3 expected = R * v + R * la::cross(omega, gf) + R * dgf;
    CHECK(la::max_abs(foot_point_velocity(R, gf, V, dgf) - expected) < 1e-14);
  }
}

TEST_CASE("angle wrap lands in (-pi, pi]") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_angle(-M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_angle(3 * M_PI / 2) == doctest::Approx(-M_PI / 2));
  CHECK(wrap_angle(7 * M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_angle(-11.5 * M_PI) == doctest::Approx(0.5 * M_PI));
}
