#pragma once

#include <array>

#include "lcn/kernels.hpp"
#include "lcn/meshquad.hpp"
#include "lcn/pou.hpp"

namespace lcn {

/// Brute-force reference quadrature. Deliberately shares no integration
/// code with the moment routines: composite Gauss panels in angle, bisection
/// for the cap radii, and its own smooth partition between cap and far field.
struct OracleConfig {
  double cap_fraction = 0.6;  ///< cap chord radius as a fraction of d
  int panels = 8;             ///< angular panels
  int q = 10;                 ///< Gauss points per panel
  int radial_panels = 4;      ///< per radial segment
  int outer_level = 2;        ///< element level for the far field
  int outer_subdivisions = 4;
  double tol = 1e-8;
};

struct OracleValue {
  double value = 0.0;   ///< (G phi)(x) + (H phi)(x)
  double g_part = 0.0;
  double h_part = 0.0;
  double error_estimate = 0.0;
};

class Oracle {
 public:
  Oracle(const Surface& surface, KernelPair kernels, OracleConfig config = {});

  const OracleConfig& config() const { return config_; }

  /// Self-checked against the same rule with every panel count doubled;
  /// throws OracleError when the two differ by more than tol.
  OracleValue apply(const ScalarField& phi, const Vec3& x) const;

  /// Integral of H(x, y) eta_x(y) xi^beta(y) dA_y in `frame`.
  double moment(const Vec3& x, const TangentFrame& frame,
                const CutoffFunction& eta, std::array<int, 2> beta) const;

 private:
  struct Rule {
    int panels, radial_panels, subdivisions;
  };
  OracleValue evaluate(const ScalarField& phi, const SurfacePoint& x,
                       const Rule& rule) const;

  Surface surface_;
  KernelPair kernels_;
  OracleConfig config_;
  SurfaceMesh outer_;
  GaussRule gauss_;
};

/// One-shot convenience wrapper.
OracleValue oracle_apply(const Surface& surface, const KernelPair& kernels,
                         const ScalarField& phi, const Vec3& x,
                         const OracleConfig& config = {});

}  // namespace lcn
