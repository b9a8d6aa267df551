#include "navsim/qp.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace navsim::qp {

void Problem::validate() const {
  const Eigen::Index n = q.size();
  const Eigen::Index m = lower.size();
  if (p.rows() != n || p.cols() != n) {
    throw std::invalid_argument("quadratic term must be n x n");
  }
  if (a.cols() != n || a.rows() != m || upper.size() != m) {
    throw std::invalid_argument("constraint dimensions are inconsistent");
  }
  if (!q.allFinite()) {
    throw std::invalid_argument("linear term must be finite");
  }
  for (int k = 0; k < p.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(p, k); it; ++it) {
      if (!std::isfinite(it.value())) {
        throw std::invalid_argument("quadratic term must be finite");
      }
    }
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::isnan(lower(i)) || std::isnan(upper(i)) || lower(i) > upper(i) ||
        lower(i) == std::numeric_limits<double>::infinity() ||
        upper(i) == -std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("constraint bounds must satisfy lower <= upper");
    }
  }
}

const char* status_name(Status s) {
  switch (s) {
    case Status::solved: return "solved";
    case Status::max_iterations: return "max_iterations";
    case Status::primal_infeasible: return "primal_infeasible";
  }
  return "unknown";
}

namespace {

double box_violation(const Eigen::VectorXd& v, const Eigen::VectorXd& lower,
                     const Eigen::VectorXd& upper) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    worst = std::max({worst, lower(i) - v(i), v(i) - upper(i)});
  }
  return worst;
}

double objective_of(const Problem& prob, const Eigen::VectorXd& x) {
  return 0.5 * x.dot(prob.p * x) + prob.q.dot(x) + prob.objective_offset;
}

// Checks whether the change in duals certifies primal infeasibility:
// A'dy ~ 0 while the support function of the box along dy is negative.
bool certifies_infeasibility(const Problem& prob, const Eigen::VectorXd& dy,
                             double eps_inf) {
  const double dy_norm = dy.lpNorm<Eigen::Infinity>();
  if (!(dy_norm > 1e-12)) return false;
  const double at_dy =
      (prob.a.transpose() * dy).lpNorm<Eigen::Infinity>();
  if (at_dy > eps_inf * dy_norm) return false;
  double support = 0.0;
  for (Eigen::Index i = 0; i < dy.size(); ++i) {
    if (dy(i) > 0.0) {
      if (std::isinf(prob.upper(i))) return false;
      support += prob.upper(i) * dy(i);
    } else if (dy(i) < 0.0) {
      if (std::isinf(prob.lower(i))) return false;
      support += prob.lower(i) * dy(i);
    }
  }
  return support <= -eps_inf * dy_norm;
}

// Equality solve on the detected active set. Returns true and overwrites
// x/y/z when the polished point has consistent multiplier signs and does
// not worsen the residuals.
bool try_polish(const Problem& prob, Eigen::VectorXd& x, Eigen::VectorXd& y,
                Eigen::VectorXd& z) {
  const Eigen::Index n = prob.num_vars();
  const Eigen::Index m = prob.num_constraints();

  enum class Side { lower, upper, equality };
  std::vector<Eigen::Index> active;
  std::vector<Side> side;
  for (Eigen::Index i = 0; i < m; ++i) {
    const bool at_lower = z(i) <= prob.lower(i);
    const bool at_upper = z(i) >= prob.upper(i);
    if (at_lower && at_upper) {
      active.push_back(i);
      side.push_back(Side::equality);
    } else if (at_lower) {
      active.push_back(i);
      side.push_back(Side::lower);
    } else if (at_upper) {
      active.push_back(i);
      side.push_back(Side::upper);
    }
  }
  const auto na = static_cast<Eigen::Index>(active.size());

  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + na, n + na);
  kkt.topLeftCorner(n, n) = Eigen::MatrixXd(prob.p);
  const Eigen::MatrixXd a_dense(prob.a);
  for (Eigen::Index r = 0; r < na; ++r) {
    kkt.block(n + r, 0, 1, n) = a_dense.row(active[static_cast<std::size_t>(r)]);
    kkt.block(0, n + r, n, 1) =
        a_dense.row(active[static_cast<std::size_t>(r)]).transpose();
  }
  Eigen::VectorXd rhs(n + na);
  rhs.head(n) = -prob.q;
  for (Eigen::Index r = 0; r < na; ++r) {
    rhs(n + r) = z(active[static_cast<std::size_t>(r)]);
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
  if (!lu.isInvertible()) return false;
  const Eigen::VectorXd sol = lu.solve(rhs);

  Eigen::VectorXd x_pol = sol.head(n);
  Eigen::VectorXd y_pol = Eigen::VectorXd::Zero(m);
  constexpr double sign_tol = 1e-8;
  for (Eigen::Index r = 0; r < na; ++r) {
    const Eigen::Index i = active[static_cast<std::size_t>(r)];
    const double nu = sol(n + r);
    if (side[static_cast<std::size_t>(r)] == Side::lower && nu > sign_tol) {
      return false;
    }
    if (side[static_cast<std::size_t>(r)] == Side::upper && nu < -sign_tol) {
      return false;
    }
    y_pol(i) = nu;
  }

  const Eigen::VectorXd ax_cur = prob.a * x;
  const Eigen::VectorXd ax_pol = prob.a * x_pol;
  const double cur = std::max(
      box_violation(ax_cur, prob.lower, prob.upper),
      (prob.p * x + prob.q + prob.a.transpose() * y).lpNorm<Eigen::Infinity>());
  const double pol =
      std::max(box_violation(ax_pol, prob.lower, prob.upper),
               (prob.p * x_pol + prob.q + prob.a.transpose() * y_pol)
                   .lpNorm<Eigen::Infinity>());
  if (!(pol <= cur) || !x_pol.allFinite()) return false;

  x = x_pol;
  y = y_pol;
  z = ax_pol.cwiseMax(prob.lower).cwiseMin(prob.upper);
  return true;
}

}  // namespace

Solution solve(const Problem& prob, const Settings& settings,
               const std::optional<WarmStart>& warm) {
  prob.validate();
  if (!(settings.rho > 0.0) || !(settings.sigma > 0.0) ||
      settings.alpha <= 0.0 || settings.alpha >= 2.0 ||
      settings.max_iterations < 1) {
    throw std::invalid_argument("solver settings out of range");
  }
  const Eigen::Index n = prob.num_vars();
  const Eigen::Index m = prob.num_constraints();

  Eigen::SparseMatrix<double> identity(n, n);
  identity.setIdentity();
  const Eigen::SparseMatrix<double> at = prob.a.transpose();
  const Eigen::SparseMatrix<double> ata = at * prob.a;
  const Eigen::SparseMatrix<double> base = prob.p + settings.sigma * identity;

  double rho = settings.rho;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor;
  const auto refactor = [&] {
    const Eigen::SparseMatrix<double> kkt = base + rho * ata;
    factor.compute(kkt);
    if (factor.info() != Eigen::Success) {
      throw std::runtime_error("failed to factor the reduced KKT system");
    }
  };
  refactor();

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  if (warm) {
    if (warm->x.size() != n || warm->y.size() != m) {
      throw std::invalid_argument("warm start dimensions do not match");
    }
    x = warm->x;
    y = warm->y;
    z = (prob.a * x).cwiseMax(prob.lower).cwiseMin(prob.upper);
  }

  Solution out;
  out.status = Status::max_iterations;

  for (int iter = 1; iter <= settings.max_iterations; ++iter) {
    const Eigen::VectorXd rhs = settings.sigma * x - prob.q + at * (rho * z - y);
    const Eigen::VectorXd x_tilde = factor.solve(rhs);
    const Eigen::VectorXd z_tilde = prob.a * x_tilde;

    const Eigen::VectorXd x_next =
        settings.alpha * x_tilde + (1.0 - settings.alpha) * x;
    const Eigen::VectorXd z_relaxed =
        settings.alpha * z_tilde + (1.0 - settings.alpha) * z;
    const Eigen::VectorXd z_next = (z_relaxed + y / rho)
                                       .cwiseMax(prob.lower)
                                       .cwiseMin(prob.upper);
    const Eigen::VectorXd y_next = y + rho * (z_relaxed - z_next);
    const Eigen::VectorXd dy = y_next - y;

    x = x_next;
    z = z_next;
    y = y_next;
    out.iterations = iter;

    const Eigen::VectorXd ax = prob.a * x;
    const Eigen::VectorXd px = prob.p * x;
    const Eigen::VectorXd aty = at * y;
    const double r_prim = m == 0 ? 0.0 : (ax - z).lpNorm<Eigen::Infinity>();
    const double r_dual = (px + prob.q + aty).lpNorm<Eigen::Infinity>();
    if (r_prim <= settings.eps && r_dual <= settings.eps) {
      out.status = Status::solved;
      break;
    }
    if (m > 0 && certifies_infeasibility(prob, dy, settings.eps_infeasible)) {
      out.status = Status::primal_infeasible;
      y = dy;  // expose the certificate through the dual
      break;
    }

    // Rebalance the penalty when the normalized residuals drift apart, so
    // badly scaled problems still converge. The factor-of-five deadband
    // keeps refactorizations rare.
    if (m > 0 && iter % 25 == 0) {
      const double pri_scale =
          std::max({ax.lpNorm<Eigen::Infinity>(), z.lpNorm<Eigen::Infinity>(),
                    1e-6});
      const double dua_scale =
          std::max({px.lpNorm<Eigen::Infinity>(), aty.lpNorm<Eigen::Infinity>(),
                    prob.q.lpNorm<Eigen::Infinity>(), 1e-6});
      const double ratio =
          (r_prim / pri_scale) / std::max(r_dual / dua_scale, 1e-12);
      const double rho_new =
          std::min(1e6, std::max(1e-6, rho * std::sqrt(ratio)));
      if (rho_new > 5.0 * rho || 5.0 * rho_new < rho) {
        rho = rho_new;
        refactor();
      }
    }
  }

  if (out.status == Status::solved && settings.polish && m > 0) {
    out.polished = try_polish(prob, x, y, z);
  }

  out.x = x;
  out.z = z;
  out.y = y;
  out.objective = objective_of(prob, x);
  out.primal_residual =
      m == 0 ? 0.0 : box_violation(prob.a * x, prob.lower, prob.upper);
  out.dual_residual =
      (prob.p * x + prob.q + at * y).lpNorm<Eigen::Infinity>();
  return out;
}

}  // namespace navsim::qp
