// Copyright 2026 The noisymc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

#include "noisymc/design_set.hpp"
#include "noisymc/kdtree.hpp"

namespace noisymc {

inline constexpr double kUniformFallback = 1.0;
inline constexpr double kDefaultFloor = 1e-300 * kUniformFallback;

/// k-nearest-neighbor regression surrogate m^(theta).
///
/// With fewer than K nodes the surrogate is the flat fallback level; with K
/// or more it is the mean value of the K nearest nodes, floored at delta so
/// that it is strictly positive on the whole domain. predict() is const and
/// safe to call from many threads; insert() and mark_snapshot() need
/// exclusive access.
class KnnSurrogate {
 public:
  struct Options {
    std::size_t k = 1;
    double floor = kDefaultFloor;
    double fallback = kUniformFallback;
    bool use_kdtree = true;
  };

  KnnSurrogate(BoundedDomain domain, Options options);

  const DesignSet& design() const { return design_; }
  const BoundedDomain& domain() const { return domain_; }
  const Options& options() const { return opts_; }
  std::size_t k() const { return opts_.k; }

  /// Throws DomainError for theta outside the domain.
  double predict(PointView theta) const;

  /// Prediction of the surrogate as it was when snapshot `id` was taken.
  double predict_snapshot(PointView theta, std::size_t id) const;

  /// Freezes the current design length; returns the snapshot id.
  std::size_t mark_snapshot();
  std::size_t snapshot_count() const { return snapshots_.size(); }

  /// Appends (theta, value). Throws DomainError if theta is outside the
  /// domain or value < 0.
  void insert(PointView theta, double value);

  /// Indices of the K nearest nodes within the first `prefix` nodes.
  std::vector<std::size_t> neighbors(PointView theta, std::size_t prefix) const;

 private:
  struct Snapshot {
    std::size_t length;
    KdTree tree;
  };

  double predict_prefix(PointView theta, std::size_t prefix) const;
  void maybe_rebuild();

  BoundedDomain domain_;
  Options opts_;
  DesignSet design_;
  KdTree tree_;  // covers design_[0, tree_.size())
  std::vector<Snapshot> snapshots_;
};

}  // namespace noisymc
