#include "navsim/ekf.hpp"

#include <cmath>
#include <stdexcept>

#include "navsim/angles.hpp"

namespace navsim::ekf {

namespace {

Eigen::Matrix4d symmetrize(const Eigen::Matrix4d& p) {
  return 0.5 * (p + p.transpose());
}

}  // namespace

Estimate initial_estimate(const vehicle::VehicleState& q0,
                          const EkfConfig& cfg) {
  return {q0, symmetrize(cfg.p0)};
}

Estimate predict(const Estimate& e, const vehicle::ControlInput& u, double dt,
                 const vehicle::VehicleParams& params, const EkfConfig& cfg) {
  const Eigen::Matrix4d f = vehicle::motion_jacobian(e.q, u, dt, params);
  Estimate out;
  out.q = vehicle::step(e.q, u, dt, params);
  out.p = symmetrize(f * e.p * f.transpose() + cfg.q_process);
  return out;
}

Estimate update_position(const Estimate& e, const Eigen::Vector2d& z_xy,
                         const EkfConfig& cfg) {
  Eigen::Matrix<double, 2, 4> h = Eigen::Matrix<double, 2, 4>::Zero();
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  const Eigen::Matrix2d s = h * e.p * h.transpose() + cfg.r_gps;
  Eigen::FullPivLU<Eigen::Matrix2d> lu(s);
  if (!lu.isInvertible()) {
    throw std::runtime_error("position innovation covariance is singular");
  }
  const Eigen::Matrix<double, 4, 2> k = e.p * h.transpose() * lu.inverse();
  const Eigen::Vector2d innovation = z_xy - Eigen::Vector2d{e.q.x, e.q.y};
  const Eigen::Vector4d dq = k * innovation;
  Estimate out;
  out.q = e.q;
  out.q.x += dq(0);
  out.q.y += dq(1);
  out.q.theta = wrap_angle(out.q.theta + dq(2));
  out.q.v = std::max(0.0, out.q.v + dq(3));
  out.p = symmetrize((Eigen::Matrix4d::Identity() - k * h) * e.p);
  return out;
}

Estimate update_heading(const Estimate& e, double z_theta,
                        const EkfConfig& cfg) {
  Eigen::RowVector4d h{0.0, 0.0, 1.0, 0.0};
  const double s = (h * e.p * h.transpose())(0) + cfg.r_heading;
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::runtime_error("heading innovation covariance is singular");
  }
  const Eigen::Vector4d k = e.p * h.transpose() / s;
  const double innovation = angle_diff(z_theta, e.q.theta);
  const Eigen::Vector4d dq = k * innovation;
  Estimate out;
  out.q = e.q;
  out.q.x += dq(0);
  out.q.y += dq(1);
  out.q.theta = wrap_angle(out.q.theta + dq(2));
  out.q.v = std::max(0.0, out.q.v + dq(3));
  out.p = symmetrize((Eigen::Matrix4d::Identity() - k * h) * e.p);
  return out;
}

}  // namespace navsim::ekf
