#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <vector>

#include "lcn/geometry.hpp"

namespace lcn {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussRule gauss_legendre(int q);

/// Element of the cube-sphere decomposition: a parameter rectangle of a chart.
struct Element {
  int face = 0;
  double u0 = 0, u1 = 0, v0 = 0, v1 = 0;
  double area = 0;
  double diameter = 0;
};

/// Uniform refinement of the six cube faces into 4^level elements each.
struct SurfaceMesh {
  Surface surface;
  int level = 0;
  std::vector<Element> elements;
  double h = 0;  ///< max element diameter

  std::size_t size() const { return elements.size(); }
  double total_area() const;
};

/// Default budget guard for build_mesh.
inline constexpr int default_max_level = 7;

SurfaceMesh build_mesh(const Surface& surface, int level,
                       int max_level = default_max_level);

enum class RuleKind {
  gauss_legendre,  ///< open rule, nodes strictly interior
  closed_newton_cotes,  ///< closed rule with endpoint nodes (negative control)
};

/// Quadrature nodes of the whole surface; weights carry the chart Jacobian.
struct NodeSet {
  int q = 0;
  Eigen::Matrix3Xd points;
  Eigen::Matrix3Xd normals;
  Eigen::VectorXd weights;
  Eigen::Matrix2Xd params;  ///< (u, v) in the element's chart
  std::vector<int> element;
  std::vector<int> local;  ///< intra-element index, i + q*j

  Eigen::Index size() const { return weights.size(); }
  SurfacePoint point(Eigen::Index a) const {
    return {points.col(a), normals.col(a)};
  }
  /// Nominal order l = 2q of the tensor rule.
  int nominal_order() const { return 2 * q; }
};

NodeSet quadrature_nodes(const SurfaceMesh& mesh, int q,
                         RuleKind kind = RuleKind::gauss_legendre);

using ScalarField = std::function<double(const Vec3&)>;

/// Integral over one element with a q x q Gauss rule split into
/// `subdivisions`^2 sub-rectangles.
double integrate_element(const Surface& surface, const Element& element,
                         const ScalarField& f, int q, int subdivisions = 1);

/// Sum of f(x_a) W_a.
double integrate(const NodeSet& nodes, const ScalarField& f);

/// Normalized local truncation error of the q-point rule on one element,
/// against a (q+6)-point rule on a 4 x 4 subdivision.
double local_truncation(const Surface& surface, const Element& element,
                        const ScalarField& f, int q);

/// Maximum of local_truncation over the mesh.
double max_local_truncation(const SurfaceMesh& mesh, const ScalarField& f,
                            int q);

/// max_e |e| / min_e |e|.
double area_ratio(const SurfaceMesh& mesh);

/// Smallest parameter distance from a node to the boundary of its element,
/// as a fraction of the element width. Zero for closed rules.
double min_boundary_offset(const SurfaceMesh& mesh, const NodeSet& nodes);

/// The same fraction for the first Gauss-Legendre abscissa, (1 + x_1) / 2.
double gauss_boundary_offset(int q);

/// Smallest distance between two distinct nodes.
double min_node_distance(const NodeSet& nodes);

/// Uniformly distributed chart sample: random face, random (u, v).
/// Not area-uniform, which is fine for sampling invariants.
template <class Rng>
Vec3 random_surface_point(const Surface& surface, Rng& rng) {
  std::uniform_int_distribution<int> face(0, 5);
  std::uniform_real_distribution<double> uv(-1.0, 1.0);
  const int f = face(rng);
  const double u = uv(rng);
  const double v = uv(rng);
  return surface.chart_point(f, u, v);
}

}  // namespace lcn
