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

#include "noisymc/kdtree.hpp"

#include <algorithm>
#include <numeric>

namespace noisymc {

namespace {
constexpr std::size_t kLeafSize = 16;
}

void offer_neighbor(std::vector<Neighbor>& best, std::size_t k,
                    Neighbor cand) {
  if (best.size() == k && !(cand < best.back())) return;
  auto pos = std::upper_bound(best.begin(), best.end(), cand);
  best.insert(pos, cand);
  if (best.size() > k) best.pop_back();
}

KdTree::KdTree(const DesignSet& design, std::size_t count)
    : dim_(design.dimension()) {
  index_.resize(count);
  std::iota(index_.begin(), index_.end(), std::size_t{0});
  coords_.assign(design.coords().begin(),
                 design.coords().begin() + static_cast<long>(count * dim_));
  if (count > 0) {
    nodes_.reserve(2 * count / kLeafSize + 2);
    build(0, count);
  }
  // coords_ is permuted into tree order after the index permutation is final
  std::vector<double> ordered(count * dim_);
  for (std::size_t p = 0; p < count; ++p) {
    auto src = design.point(index_[p]);
    std::copy(src.begin(), src.end(), ordered.begin() + static_cast<long>(p * dim_));
  }
  coords_ = std::move(ordered);
}

int KdTree::build(std::size_t begin, std::size_t end) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({begin, end, 0, 0.0});
  if (end - begin <= kLeafSize) return id;

  // split on the axis of largest spread
  std::size_t axis = 0;
  double spread = -1.0;
  for (std::size_t a = 0; a < dim_; ++a) {
    double lo = coords_[index_[begin] * dim_ + a];
    double hi = lo;
    for (std::size_t i = begin; i < end; ++i) {
      const double v = coords_[index_[i] * dim_ + a];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > spread) {
      spread = hi - lo;
      axis = a;
    }
  }
  const std::size_t mid = begin + (end - begin) / 2;
  auto first = index_.begin() + static_cast<long>(begin);
  std::nth_element(first, index_.begin() + static_cast<long>(mid),
                   index_.begin() + static_cast<long>(end),
                   [&](std::size_t a, std::size_t b) {
                     return coords_[a * dim_ + axis] < coords_[b * dim_ + axis];
                   });
  const double split = coords_[index_[mid] * dim_ + axis];
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  // left holds values <= split, right holds values >= split
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void KdTree::search(PointView theta, std::size_t k,
                    std::vector<Neighbor>& best) const {
  if (nodes_.empty() || k == 0) return;
  search_node(0, theta, k, best);
}

void KdTree::search_node(int id, PointView theta, std::size_t k,
                         std::vector<Neighbor>& best) const {
  const Node& node = nodes_[id];
  if (node.left < 0) {
    for (std::size_t p = node.begin; p < node.end; ++p) {
      PointView pt(coords_.data() + p * dim_, dim_);
      offer_neighbor(best, k, {squared_distance(pt, theta), index_[p]});
    }
    return;
  }
  const double diff = theta[node.axis] - node.split;
  const int near = diff <= 0.0 ? node.left : node.right;
  const int far = diff <= 0.0 ? node.right : node.left;
  search_node(near, theta, k, best);
  // ties must still be visited: a node at equal distance may have a
  // smaller insertion index
  if (best.size() < k || diff * diff <= best.back().dist2)
    search_node(far, theta, k, best);
}

}  // namespace noisymc
