#include "lcn/meshquad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lcn {

GaussRule gauss_legendre(int q) {
  if (q < 1) throw ConfigError("quadrature needs q >= 1");
  GaussRule rule{Eigen::VectorXd(q), Eigen::VectorXd(q)};
  // P_q and its derivative by the three-term recurrence.
  const auto legendre = [q](double x, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= q; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = q * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  for (int i = 0; i < q; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, dp);
    rule.nodes(q - 1 - i) = x;
    rule.weights(q - 1 - i) = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

namespace {

GaussRule closed_newton_cotes(int q) {
  GaussRule rule{Eigen::VectorXd(q), Eigen::VectorXd(q)};
  if (q == 1) {
    rule.nodes(0) = -1.0;
    rule.weights(0) = 2.0;
    return rule;
  }
  // Composite trapezoid through the endpoints.
  const double step = 2.0 / (q - 1);
  for (int i = 0; i < q; ++i) {
    rule.nodes(i) = -1.0 + i * step;
    rule.weights(i) = (i == 0 || i == q - 1) ? 0.5 * step : step;
  }
  return rule;
}

double element_diameter(const Surface& surface, const Element& e) {
  constexpr int per_edge = 6;
  std::vector<Vec3> samples;
  samples.reserve(4 * per_edge);
  for (int k = 0; k < per_edge; ++k) {
    const double t = static_cast<double>(k) / per_edge;
    const double su = e.u0 + t * (e.u1 - e.u0);
    const double sv = e.v0 + t * (e.v1 - e.v0);
    const double ru = e.u1 - t * (e.u1 - e.u0);
    const double rv = e.v1 - t * (e.v1 - e.v0);
    samples.push_back(surface.chart_point(e.face, su, e.v0));
    samples.push_back(surface.chart_point(e.face, e.u1, sv));
    samples.push_back(surface.chart_point(e.face, ru, e.v1));
    samples.push_back(surface.chart_point(e.face, e.u0, rv));
  }
  double diam = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      diam = std::max(diam, (samples[i] - samples[j]).norm());
  return diam;
}

}  // namespace

double SurfaceMesh::total_area() const {
  double sum = 0.0;
  for (const auto& e : elements) sum += e.area;
  return sum;
}

SurfaceMesh build_mesh(const Surface& surface, int level, int max_level) {
  if (level < 0) throw ConfigError("mesh level must be non-negative");
  if (level > max_level) {
    std::ostringstream msg;
    msg << "mesh level " << level << " exceeds the dense-solver budget ("
        << max_level << ")";
    throw ConfigError(msg.str());
  }
  SurfaceMesh mesh{surface, level, {}, 0.0};
  const int per_side = 1 << level;
  const double step = 2.0 / per_side;
  // Coarse elements need a subdivided rule for a 1e-8 area budget.
  const int area_subdivisions = std::max(1, 8 >> level);
  mesh.elements.reserve(static_cast<std::size_t>(6 * per_side * per_side));
  for (int face = 0; face < 6; ++face) {
    for (int j = 0; j < per_side; ++j) {
      for (int i = 0; i < per_side; ++i) {
        Element e;
        e.face = face;
        e.u0 = -1.0 + i * step;
        e.u1 = e.u0 + step;
        e.v0 = -1.0 + j * step;
        e.v1 = e.v0 + step;
        e.area = integrate_element(
            surface, e, [](const Vec3&) { return 1.0; }, 12,
            area_subdivisions);
        e.diameter = element_diameter(surface, e);
        mesh.h = std::max(mesh.h, e.diameter);
        mesh.elements.push_back(e);
      }
    }
  }
  return mesh;
}

NodeSet quadrature_nodes(const SurfaceMesh& mesh, int q, RuleKind kind) {
  if (q < 1) throw ConfigError("quadrature needs q >= 1");
  const GaussRule rule = kind == RuleKind::gauss_legendre
                             ? gauss_legendre(q)
                             : closed_newton_cotes(q);
  const auto n = static_cast<Eigen::Index>(mesh.size()) * q * q;
  NodeSet nodes;
  nodes.q = q;
  nodes.points.resize(3, n);
  nodes.normals.resize(3, n);
  nodes.weights.resize(n);
  nodes.params.resize(2, n);
  nodes.element.resize(static_cast<std::size_t>(n));
  nodes.local.resize(static_cast<std::size_t>(n));
  Eigen::Index a = 0;
  for (std::size_t e = 0; e < mesh.size(); ++e) {
    const Element& el = mesh.elements[e];
    const double hu = 0.5 * (el.u1 - el.u0), hv = 0.5 * (el.v1 - el.v0);
    const double cu = 0.5 * (el.u1 + el.u0), cv = 0.5 * (el.v1 + el.v0);
    for (int j = 0; j < q; ++j) {
      for (int i = 0; i < q; ++i, ++a) {
        const double u = cu + hu * rule.nodes(i);
        const double v = cv + hv * rule.nodes(j);
        const Vec3 x = mesh.surface.chart_point(el.face, u, v);
        nodes.points.col(a) = x;
        nodes.normals.col(a) = mesh.surface.normal(x);
        nodes.weights(a) = rule.weights(i) * rule.weights(j) * hu * hv *
                           mesh.surface.chart_area_element(el.face, u, v);
        nodes.params.col(a) = Vec2(u, v);
        nodes.element[static_cast<std::size_t>(a)] = static_cast<int>(e);
        nodes.local[static_cast<std::size_t>(a)] = i + q * j;
      }
    }
  }
  return nodes;
}

double integrate_element(const Surface& surface, const Element& element,
                         const ScalarField& f, int q, int subdivisions) {
  const GaussRule rule = gauss_legendre(q);
  const double du = (element.u1 - element.u0) / subdivisions;
  const double dv = (element.v1 - element.v0) / subdivisions;
  double sum = 0.0;
  for (int sj = 0; sj < subdivisions; ++sj) {
    for (int si = 0; si < subdivisions; ++si) {
      const double cu = element.u0 + (si + 0.5) * du;
      const double cv = element.v0 + (sj + 0.5) * dv;
      for (int j = 0; j < q; ++j) {
        for (int i = 0; i < q; ++i) {
          const double u = cu + 0.5 * du * rule.nodes(i);
          const double v = cv + 0.5 * dv * rule.nodes(j);
          const double w = rule.weights(i) * rule.weights(j) * 0.25 * du * dv;
          sum += w * surface.chart_area_element(element.face, u, v) *
                 f(surface.chart_point(element.face, u, v));
        }
      }
    }
  }
  return sum;
}

double integrate(const NodeSet& nodes, const ScalarField& f) {
  double sum = 0.0;
  for (Eigen::Index a = 0; a < nodes.size(); ++a)
    sum += f(nodes.points.col(a)) * nodes.weights(a);
  return sum;
}

double local_truncation(const Surface& surface, const Element& element,
                        const ScalarField& f, int q) {
  const double reference = integrate_element(surface, element, f, q + 6, 4);
  const double area = integrate_element(
      surface, element, [](const Vec3&) { return 1.0; }, q + 6, 4);
  const double approx = integrate_element(surface, element, f, q, 1);
  return std::abs(reference - approx) / area;
}

double max_local_truncation(const SurfaceMesh& mesh, const ScalarField& f,
                            int q) {
  double worst = 0.0;
  for (const auto& e : mesh.elements)
    worst = std::max(worst, local_truncation(mesh.surface, e, f, q));
  return worst;
}

double area_ratio(const SurfaceMesh& mesh) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& e : mesh.elements) {
    lo = std::min(lo, e.area);
    hi = std::max(hi, e.area);
  }
  return hi / lo;
}

double min_boundary_offset(const SurfaceMesh& mesh, const NodeSet& nodes) {
  double best = 0.5;
  for (Eigen::Index a = 0; a < nodes.size(); ++a) {
    const Element& e = mesh.elements[static_cast<std::size_t>(
        nodes.element[static_cast<std::size_t>(a)])];
    const double u = (nodes.params(0, a) - e.u0) / (e.u1 - e.u0);
    const double v = (nodes.params(1, a) - e.v0) / (e.v1 - e.v0);
    best = std::min({best, u, 1.0 - u, v, 1.0 - v});
  }
  return std::max(best, 0.0);
}

double gauss_boundary_offset(int q) {
  return 0.5 * (1.0 + gauss_legendre(q).nodes(0));
}

double min_node_distance(const NodeSet& nodes) {
  double best = std::numeric_limits<double>::infinity();
  const Eigen::Index n = nodes.size();
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b)
      best = std::min(best,
                      (nodes.points.col(a) - nodes.points.col(b)).squaredNorm());
  return std::sqrt(best);
}

}  // namespace lcn
