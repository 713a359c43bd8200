#include "quadloc/control/body_manager.hpp"

#include <cmath>

#include "quadloc/model/dynamics.hpp"

namespace quadloc::control {

namespace {

// Scales the columns of a 6 x r matrix by 1/d.
la::Mat<6, 6> scale_cols_inv(const la::Mat<6, 6>& m, const la::Mat<6, 1>& d, int r) {
  la::Mat<6, 6> out(m.rows(), r);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < r; ++j) out(i, j) = m(i, j) / d[j];
  return out;
}

}  // namespace

DecompositionCache refresh_decomposition(const std::array<int, 4>& sigma,
                                         const std::array<la::Vec3, 4>& gf_0,
                                         const model::RobotParams& rp, const la::Mat3& R,
                                         const la::Vec6& V, const std::array<la::Vec3, 4>& dgf_0) {
  DecompositionCache c;
  const int grounded = sigma[0] + sigma[1] + sigma[2] + sigma[3];
  c.r = model::stance_rank(grounded);

  const la::Mat<12, 6> A = model::constraint_matrix(sigma, gf_0);
  c.ldq = la::ldq_decompose<6, 12>(A.transposed(), c.r);

  const la::Mat6 P = la::perm_matrix<6>(c.ldq.perm, 6);
  c.PL = P * c.ldq.L;

  la::Mat6 Minv;
  for (int i = 0; i < 3; ++i) Minv(i, i) = 1.0 / rp.m;
  Minv.set_block(3, 3, la::inverse3(rp.I_g));

  // Lambda = Minv (I + PL Phi (PL)^T Minv) with Phi = -[(PL)^T Minv PL]^-1.
  if (c.r > 0) {
    const la::Mat<6, 6> S = c.PL.transposed() * Minv * c.PL;  // r x r, positive definite
    const la::Mat<6, 6> Phi = -la::inverse_via_ldu<6>(S);
    const la::Mat<6, 6> Psi = Minv * c.PL * Phi;  // 6 x r
    c.Lambda = Minv * (la::Mat6::identity(6) + c.PL * Psi.transposed());
    c.PsiDinv = scale_cols_inv(Psi, c.ldq.d, c.r);
  } else {
    c.Lambda = Minv;
    c.PsiDinv = la::Mat<6, 6>(6, 0);
  }

  c.h_V = model::drift_wrench(rp, R, V);
  c.h_feet.resize(12, 1);
  for (int i = 0; i < 4; ++i) {
    const la::Vec3 h = model::drift_foot(gf_0[i], V, dgf_0[i]);
    for (int k = 0; k < 3; ++k) c.h_feet[3 * i + k] = h[k];
  }

  c.f_V = c.Lambda * c.h_V;
  if (c.r > 0) c.f_V = c.f_V + c.PsiDinv * (c.ldq.Q * c.h_feet);
  return c;
}

la::Mat<6, 1> body_control(const BodyRefs& refs, const la::Vec6& q0, const la::Vec6& dq0,
                           const la::Mat6& J, const la::Mat6& dJ, const DecompositionCache& cache,
                           const model::RobotParams& rp) {
  la::Vec6 e = refs.q0_star - q0;
  e[5] = model::wrap_angle(e[5]);
  const la::Vec6 de = refs.dq0_star - dq0;

  const la::Vec6 arg = J * (rp.k_p_body * e + rp.k_d_body * de) + dJ * dq0 - cache.f_V;
  la::Mat<6, 1> u(cache.r, 1);
  // u = -D L^T P^T arg, expanded through the stored permutation.
  for (int a = 0; a < cache.r; ++a) {
    double s = 0.0;
    for (int i = 0; i < 6; ++i) s += cache.ldq.L(i, a) * arg[cache.ldq.perm[i]];
    u[a] = -cache.ldq.d[a] * s;
  }
  return u;
}

la::Vec3 joint_velocity_command(const model::LegKin& leg, const la::Vec3& dgf,
                                const la::Vec3& omega, const la::Mat3& R, double zeta) {
  const la::Vec3 corr = la::cross(omega, zeta * (R.transposed() * la::vec3(0.0, 0.0, 1.0)));
  return model::leg_jacobian_inverse(leg.J) * (dgf - corr);
}

BodyManager::BodyManager(const model::RobotParams& rp, const la::Vec6& q0_init,
                         const std::array<la::Vec3, 4>& q_init)
    : rp_(rp) {
  for (int i = 0; i < 3; ++i) Minv_(i, i) = 1.0 / rp_.m;
  Minv_.set_block(3, 3, la::inverse3(rp_.I_g));
  st_.q0 = q0_init;
  st_.q = q_init;
}

void BodyManager::step_internal_model(const DecompositionCache& cache,
                                      const std::array<model::LegKin, 4>& legs,
                                      const la::Mat<6, 1>& u_V,
                                      const std::array<la::Vec3, 4>& ddof_w,
                                      std::array<la::Vec3, 4>* qdot_cmd) {
  const la::Mat3 R = model::body_rotation(st_.q0);
  const la::Mat6 Jinv = model::body_jacobian_inverse(st_.q0);

  la::Vec6 dV = cache.f_V;
  if (cache.r > 0) dV = dV + cache.PsiDinv * u_V;

  const la::Vec3 dv = la::vec3(dV[0], dV[1], dV[2]);
  const la::Vec3 domega = la::vec3(dV[3], dV[4], dV[5]);

  // Rates first, positions with the updated rates.
  st_.V = st_.V + rp_.T_s * dV;
  for (int i = 0; i < 4; ++i) {
    const la::Vec3 gf = legs[i].ge - rp_.zeta * (R.transposed() * la::vec3(0.0, 0.0, 1.0));
    la::Vec3 h;
    for (int k = 0; k < 3; ++k) h[k] = cache.h_feet[3 * i + k];
    const la::Vec3 ddgf = -h - (dv + la::cross(domega, gf)) + R.transposed() * ddof_w[i];
    st_.dgf[i] = st_.dgf[i] + rp_.T_s * ddgf;
  }

  st_.q0 = st_.q0 + rp_.T_s * (Jinv * st_.V);

  const la::Vec3 omega = la::vec3(st_.V[3], st_.V[4], st_.V[5]);
  for (int i = 0; i < 4; ++i) {
    const la::Vec3 qd = joint_velocity_command(legs[i], st_.dgf[i], omega, R, rp_.zeta);
    st_.q[i] = st_.q[i] + rp_.T_s * qd;
    if (qdot_cmd) (*qdot_cmd)[i] = qd;
  }
}

ManagerOutput BodyManager::step(const ModelData& md, const BodyRefs& refs,
                                const std::array<la::Vec3, 4>& ddof_w) {
  st_.q = md.q;  // reconcile with the measured joints

  const la::Mat3 R = model::body_rotation(st_.q0);
  const la::Vec3 foot_drop = rp_.zeta * (R.transposed() * la::vec3(0.0, 0.0, 1.0));
  std::array<model::LegKin, 4> legs;
  std::array<la::Vec3, 4> gf;
  for (int i = 0; i < 4; ++i) {
    legs[i] = model::leg_forward_kinematics(rp_, i, st_.q[i]);
    gf[i] = legs[i].ge - foot_drop;
  }

  const la::Mat6 J = model::body_jacobian(st_.q0);
  const la::Mat6 Jinv = model::body_jacobian_inverse(st_.q0);
  const la::Vec6 dq0 = Jinv * st_.V;
  const la::Mat6 dJ = model::body_jacobian_rate(st_.q0, dq0);

  const DecompositionCache cache = refresh_decomposition(md.sigma, gf, rp_, R, st_.V, st_.dgf);

  ManagerOutput out;
  out.r = cache.r;
  out.iterations = cache.ldq.iterations;
  out.u_V = body_control(refs, st_.q0, dq0, J, dJ, cache, rp_);

  step_internal_model(cache, legs, out.u_V, ddof_w, &out.qdot_cmd);

  // Velocity-level residual of the grounded-foot constraints after the step.
  double res = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (!md.sigma[i]) continue;
    const la::Vec3 v = la::vec3(st_.V[0], st_.V[1], st_.V[2]);
    const la::Vec3 w = la::vec3(st_.V[3], st_.V[4], st_.V[5]);
    const la::Vec3 rr = v + la::cross(w, gf[i]) + st_.dgf[i];
    res = std::max(res, la::max_abs(rr));
  }
  out.constraint_residual = res;
  return out;
}

}  // namespace quadloc::control
