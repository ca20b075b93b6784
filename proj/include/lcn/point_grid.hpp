#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <unordered_map>
#include <vector>

namespace lcn {

/// Uniform bucket grid over a fixed point cloud for fixed-radius queries.
class PointGrid {
 public:
  PointGrid() = default;
  PointGrid(Eigen::Matrix3Xd points, double cell)
      : points_(std::move(points)), cell_(cell) {
    const Eigen::Matrix3Xd& pts = points_;
    for (Eigen::Index i = 0; i < pts.cols(); ++i)
      buckets_[key(pts.col(i))].push_back(i);
  }

  /// Indices of points with |p - x| < radius.
  template <class Fn>
  void for_each_within(const Eigen::Vector3d& x, double radius, Fn&& fn) const {
    const int reach = static_cast<int>(std::ceil(radius / cell_));
    const auto c = coords(x);
    const double r2 = radius * radius;
    for (int i = -reach; i <= reach; ++i)
      for (int j = -reach; j <= reach; ++j)
        for (int k = -reach; k <= reach; ++k) {
          const auto it = buckets_.find(pack(c[0] + i, c[1] + j, c[2] + k));
          if (it == buckets_.end()) continue;
          for (Eigen::Index idx : it->second)
            if ((points_.col(idx) - x).squaredNorm() < r2) fn(idx);
        }
  }

  std::vector<Eigen::Index> within(const Eigen::Vector3d& x,
                                   double radius) const {
    std::vector<Eigen::Index> out;
    for_each_within(x, radius, [&](Eigen::Index i) { out.push_back(i); });
    return out;
  }

 private:
  std::array<long, 3> coords(const Eigen::Vector3d& x) const {
    return {static_cast<long>(std::floor(x(0) / cell_)),
            static_cast<long>(std::floor(x(1) / cell_)),
            static_cast<long>(std::floor(x(2) / cell_))};
  }
  static long long pack(long i, long j, long k) {
    constexpr long long span = 1 << 20;
    return ((static_cast<long long>(i) + span / 2) * span +
            (static_cast<long long>(j) + span / 2)) *
               span +
           (static_cast<long long>(k) + span / 2);
  }
  long long key(const Eigen::Vector3d& x) const {
    const auto c = coords(x);
    return pack(c[0], c[1], c[2]);
  }

  Eigen::Matrix3Xd points_;
  double cell_ = 1.0;
  std::unordered_map<long long, std::vector<Eigen::Index>> buckets_;
};

}  // namespace lcn
