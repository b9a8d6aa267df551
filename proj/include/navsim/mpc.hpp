#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "navsim/angles.hpp"
#include "navsim/qp.hpp"
#include "navsim/trajectory.hpp"
#include "navsim/vehicle.hpp"

namespace navsim::mpc {

struct MpcConfig {
  int horizon = 10;
  double dt = 0.1;
  Eigen::Matrix4d q_weight =
      Eigen::Vector4d{10.0, 10.0, 5.0, 1.0}.asDiagonal();
  Eigen::Matrix2d r_weight = Eigen::Matrix2d::Identity();
  /// Box on the error state, symmetric around zero.
  Eigen::Vector4d e_bound{10.0, 10.0, kPi, 5.0};
  /// How many samples past the closest reference the horizon starts.
  int lookahead = 3;
  qp::Settings solver;

  void validate() const;
};

/// Tracking error expressed in the vehicle frame: e1 longitudinal, e2
/// lateral, e3 heading, e4 speed (reference minus actual throughout).
struct ErrorState {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  double e4 = 0.0;

  Eigen::Vector4d vec() const { return {e1, e2, e3, e4}; }
};

ErrorState error_state(const vehicle::VehicleState& q,
                       const traj::ReferencePoint& ref);

struct LookupResult {
  std::size_t ref_index;  ///< horizon start (closest sample plus lookahead)
  std::size_t cursor;     ///< closest sample, becomes the next search start
};

/// Finds the closest reference at or after `cursor` (ties keep the earliest
/// sample) and advances by the lookahead, clamped to the final sample. The
/// cursor makes the search monotone so self-intersecting paths do not snap
/// backwards. Throws std::invalid_argument on an empty trajectory.
LookupResult reference_lookup(const vehicle::VehicleState& q,
                              const traj::Trajectory& t, std::size_t cursor,
                              int lookahead);

/// Discrete error-dynamics linearization about the current error and a
/// nominal steering sequence, one pair per horizon step.
struct HorizonModel {
  std::vector<Eigen::Matrix4d> a;
  std::vector<Eigen::Matrix<double, 4, 2>> b;
};

HorizonModel linearize_horizon(const ErrorState& e0,
                               const std::vector<traj::ReferencePoint>& refs,
                               const std::vector<double>& deltas, double dt,
                               const vehicle::VehicleParams& params);

/// Stage layout of the stacked QP: variables are all error states
/// e_0..e_N followed by all inputs u_0..u_{N-1}.
struct StackedQp {
  qp::Problem problem;
  int horizon = 0;

  Eigen::Index e_offset(int k) const { return 4 * k; }
  Eigen::Index u_offset(int k) const { return 4 * (horizon + 1) + 2 * k; }
};

/// Builds the condensed-horizon QP: quadratic tracking cost with input
/// deviations priced around the reference inputs, equality rows for the
/// linearized error dynamics (the reference input enters their right-hand
/// side), the pinned initial error, and box constraints on later errors
/// and on all inputs.
StackedQp build_qp(const ErrorState& e0, const HorizonModel& model,
                   const std::vector<traj::ReferencePoint>& refs,
                   const MpcConfig& cfg,
                   const vehicle::VehicleParams& params);

/// Controller memory carried between calls by the owner.
struct ControllerState {
  std::size_t cursor = 0;
  std::optional<qp::WarmStart> warm;
  std::vector<double> last_deltas;  ///< steering plan from the last solve
  vehicle::ControlInput last_input;
};

struct StepDiagnostics {
  qp::Status status = qp::Status::solved;
  int iterations = 0;
  double objective = 0.0;
  bool held_last = false;  ///< solver failed; previous input re-applied
};

struct StepResult {
  vehicle::ControlInput input;
  std::size_t ref_index = 0;  ///< sample the horizon started from
  StepDiagnostics diag;
};

/// One controller tick: look up the reference, linearize, solve, and return
/// the first input of the plan clamped to the input box. On an infeasible
/// QP the previous input is held and the warm start dropped.
StepResult step_controller(const vehicle::VehicleState& q,
                           const traj::Trajectory& t, ControllerState& state,
                           const MpcConfig& cfg,
                           const vehicle::VehicleParams& params);

}  // namespace navsim::mpc
