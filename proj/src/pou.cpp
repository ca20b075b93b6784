#include "lcn/pou.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lcn {

double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double CutoffFunction::operator()(double chord) const {
  if (unit_) return 1.0;
  if (chord <= inner_) return 1.0;
  if (chord >= outer_) return 0.0;
  return 1.0 - smoothstep5((chord - inner_) / (outer_ - inner_));
}

double PartitionOfUnity::nodal_zeta(Eigen::Index a, const Vec3& x) const {
  const Vec3 xa = centers_.col(a);
  const double t2 = (x - xa).squaredNorm();
  // Largest signed distance of x past the bisector between x_a and x_c.
  double beyond = -std::numeric_limits<double>::infinity();
  double nearest2 = std::numeric_limits<double>::infinity();
  for (Eigen::Index c : competitors_[static_cast<std::size_t>(a)]) {
    const Vec3 xc = centers_.col(c);
    const double s2 = (x - xc).squaredNorm();
    nearest2 = std::min(nearest2, s2);
    beyond = std::max(beyond, (t2 - s2) / (2.0 * (xa - xc).norm()));
  }
  if (beyond <= 0.0) return 0.5 * t2 / nearest2;
  if (beyond >= offset_(a)) return 1.0;
  return 0.5 + 0.5 * beyond / offset_(a);
}

double PartitionOfUnity::zeta(Eigen::Index a, const Vec3& x) const {
  const double t = (x - centers_.col(a)).norm();
  if (t >= support_(a)) return 1.0;
  if (kind_ == PouKind::nodal) return nodal_zeta(a, x);
  const double s = t / radius_(a);
  return ramp_ == Ramp::quadratic ? std::min(1.0, s * s) : smoothstep5(s);
}

std::vector<PartitionOfUnity::Entry> PartitionOfUnity::support(
    const Vec3& x) const {
  std::vector<Entry> out;
  grid_.for_each_within(x, max_support_, [&](Eigen::Index b) {
    const double zh = zeta_hat(b, x);
    if (zh > 0.0) out.push_back({b, zh});
  });
  std::sort(out.begin(), out.end(),
            [](const Entry& l, const Entry& r) { return l.index < r.index; });
  return out;
}

std::vector<Eigen::Index> PartitionOfUnity::support_set(const Vec3& x) const {
  std::vector<Eigen::Index> out;
  for (const Entry& e : support(x)) out.push_back(e.index);
  return out;
}

double PartitionOfUnity::overlap(const Vec3& x) const {
  double sum = 0.0;
  for (const Entry& e : support(x)) sum += e.zeta_hat;
  return sum;
}

double radial_kappa(int p, int q, double kappa_scale) {
  return kappa_scale * 0.5 * (p + 1) / q;
}

std::vector<Vec3> audit_points(const SurfaceMesh& mesh, const NodeSet& nodes) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(nodes.size()) + 9 * mesh.size());
  for (Eigen::Index a = 0; a < nodes.size(); ++a)
    pts.emplace_back(nodes.points.col(a));
  for (const Element& e : mesh.elements) {
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) {
        const double u = e.u0 + 0.5 * i * (e.u1 - e.u0);
        const double v = e.v0 + 0.5 * j * (e.v1 - e.v0);
        pts.push_back(mesh.surface.chart_point(e.face, u, v));
      }
  }
  return pts;
}

namespace {

Eigen::VectorXd nearest_neighbour(const Eigen::Matrix3Xd& pts,
                                  const PointGrid& grid, double reach) {
  const Eigen::Index n = pts.cols();
  Eigen::VectorXd nn(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    double best = std::numeric_limits<double>::infinity();
    grid.for_each_within(pts.col(a), reach, [&](Eigen::Index b) {
      if (b != a) best = std::min(best, (pts.col(a) - pts.col(b)).norm());
    });
    if (!std::isfinite(best))
      for (Eigen::Index b = 0; b < n; ++b)
        if (b != a) best = std::min(best, (pts.col(a) - pts.col(b)).norm());
    nn(a) = best;
  }
  return nn;
}

}  // namespace

PartitionOfUnity build_pou(const SurfaceMesh& mesh, const NodeSet& nodes,
                           int p, const PouOptions& options) {
  if (p < 0) throw ConfigError("correction degree must be non-negative");
  if (nodes.size() < 2) throw ConstructionError("need at least two nodes");
  if (!(options.theta > 0.0 && options.theta < 1.0))
    throw ConfigError("pou.theta must lie in (0, 1)");
  if (!(options.kappa_scale > 0.0))
    throw ConfigError("pou.kappa_scale must be positive");

  PartitionOfUnity pou;
  pou.degree_ = p;
  pou.ramp_ = options.ramp;
  pou.centers_ = nodes.points;
  const Eigen::Index n = nodes.size();
  const double h = mesh.h;
  const PointGrid probe(nodes.points, h / nodes.q);
  const Eigen::VectorXd nn = nearest_neighbour(nodes.points, probe, h);

  if (p == 0) {
    pou.kind_ = PouKind::nodal;
    pou.offset_ = 0.5 * options.theta * nn;
    pou.radius_ = 0.5 * nn;
    // Voronoi cells lie within h of their node, widened by the outer ramp.
    pou.support_ = (1.1 * h + options.theta * nn.array()).matrix();
    pou.competitors_.resize(static_cast<std::size_t>(n));
    for (Eigen::Index a = 0; a < n; ++a) {
      auto& list = pou.competitors_[static_cast<std::size_t>(a)];
      probe.for_each_within(nodes.points.col(a),
                            2.0 * pou.support_(a) + nn(a),
                            [&](Eigen::Index c) {
                              if (c != a) list.push_back(c);
                            });
      std::sort(list.begin(), list.end());
    }
  } else {
    pou.kind_ = PouKind::radial;
    const double r = radial_kappa(p, nodes.q, options.kappa_scale) * h;
    pou.radius_ = Eigen::VectorXd::Constant(n, r);
    pou.support_ = pou.radius_;
  }
  pou.max_support_ = pou.support_.maxCoeff();
  pou.grid_ = PointGrid(nodes.points, pou.max_support_);

  if (options.audit) {
    const auto needed = static_cast<std::size_t>((p + 1) * (p + 2) / 2);
    double worst = std::numeric_limits<double>::infinity();
    Vec3 worst_x = Vec3::Zero();
    for (const Vec3& x : audit_points(mesh, nodes)) {
      const auto entries = pou.support(x);
      double score;
      if (p == 0) {
        score = 0.0;
        for (const auto& e : entries) score += e.zeta_hat;
        score -= 0.5;
      } else {
        score = static_cast<double>(entries.size()) -
                static_cast<double>(needed);
      }
      if (score < worst) {
        worst = score;
        worst_x = x;
      }
    }
    if (worst < 0.0) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "partition of unity support audit failed at (" << worst_x(0)
          << ", " << worst_x(1) << ", " << worst_x(2) << "): "
          << (p == 0 ? "overlap below 0.5" : "too few nodes in J_x");
      throw ConstructionError(msg.str());
    }
  }
  return pou;
}

}  // namespace lcn
