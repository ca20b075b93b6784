#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcn/harness.hpp"

namespace lcn {

/// One check. `expected_pass` is false for negative controls, which must
/// fail for the suite to be healthy.
struct InvariantResult {
  std::string module;
  std::string name;
  bool passed = false;
  bool expected_pass = true;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;

  bool ok() const { return passed == expected_pass; }
};

struct InvariantReport {
  std::vector<InvariantResult> results;

  bool ok() const;
  std::string csv() const;
  std::string text() const;
};

struct InvariantOptions {
  std::uint64_t seed = 20240917;
  LevelRange levels{1, 3};  ///< refinement checks run over these levels
  int q = 2;
  int frame_samples = 1000;
  int pair_samples = 10000;
  int overlap_samples = 10000;
  int support_samples = 1000;
  int flux_points = 4;
  int rotation_samples = 100;
};

InvariantOptions invariant_options(const RunConfig& config);

/// Runs the property suites of every module, including the two negative
/// controls (closed quadrature rule, odd kernel).
InvariantReport run_invariants(const InvariantOptions& options = {});

// Building blocks shared with the acceptance suite.

/// max over |beta| <= p of |sum_b H_b(x) eta(x_b) xi^beta(x_b) - moment|,
/// in unscaled tangent coordinates.
double moment_defect(const LocalCorrector& corrector,
                     const LocalCorrection& local);

/// max over a, b in J_{x_a} of |R_{x_a}(x_b)|.
double max_correction(const LocalCorrector& corrector);

/// max_a sum_b |zeta_b(x_a) H(x_a, x_b) W_b|.
double max_raw_singular_sum(const LocalCorrector& corrector);

/// Largest |R_x(z) - R'_x(z)| over random nodes x, random frame rotations
/// and 10 points z of J_x per node.
double frame_invariance_defect(const LocalCorrector& corrector, int samples,
                               std::uint64_t seed);

/// Terminal observed order of max_e tau(e, f) over the levels.
struct TruncationStudy {
  std::vector<double> h, tau, eoc;
};
TruncationStudy truncation_study(const Surface& surface, const ScalarField& f,
                                 int q, LevelRange levels);

}  // namespace lcn
