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
#include <utility>
#include <vector>

#include "noisymc/design_set.hpp"

namespace noisymc {

/// Candidate neighbor: squared distance and insertion index.
struct Neighbor {
  double dist2;
  std::size_t index;

  friend bool operator<(const Neighbor& a, const Neighbor& b) {
    return a.dist2 < b.dist2 || (a.dist2 == b.dist2 && a.index < b.index);
  }
};

/// Static kd-tree over the first `count` nodes of a design set.
///
/// Queries return exactly the same neighbors, in the same order, as the
/// brute-force scan: candidates are ranked by (dist2, index) and subtrees
/// are pruned only when they cannot contain a better-ranked candidate.
class KdTree {
 public:
  KdTree() = default;
  KdTree(const DesignSet& design, std::size_t count);

  std::size_t size() const { return index_.size(); }

  /// Merges this tree's k best into `best` (kept sorted, at most k long).
  void search(PointView theta, std::size_t k, std::vector<Neighbor>& best) const;

 private:
  struct Node {
    std::size_t begin;
    std::size_t end;
    std::size_t axis;
    double split;
    int left = -1;
    int right = -1;
  };

  int build(std::size_t begin, std::size_t end);
  void search_node(int node, PointView theta, std::size_t k,
                   std::vector<Neighbor>& best) const;

  std::size_t dim_ = 0;
  std::vector<double> coords_;      // tree-ordered copy
  std::vector<std::size_t> index_;  // tree position -> insertion index
  std::vector<Node> nodes_;
};

/// Inserts `cand` into a sorted list capped at k entries.
void offer_neighbor(std::vector<Neighbor>& best, std::size_t k, Neighbor cand);

}  // namespace noisymc
