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

#include "noisymc/knn_surrogate.hpp"

#include <algorithm>
#include <cmath>

#include "noisymc/error.hpp"

namespace noisymc {

namespace {

// Nodes past the tree are scanned linearly; the tree is rebuilt once this
// tail grows beyond a few times sqrt(n).
std::size_t tail_limit(std::size_t n) {
  return std::max<std::size_t>(
      128, 4 * static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
}

}  // namespace

KnnSurrogate::KnnSurrogate(BoundedDomain domain, Options options)
    : domain_(std::move(domain)), opts_(options), design_(domain_.dimension()) {
  if (opts_.k == 0) throw SizeError("K must be >= 1");
  if (!(opts_.floor > 0.0)) throw DomainError("surrogate floor must be > 0");
  if (!(opts_.fallback > 0.0))
    throw DomainError("surrogate fallback level must be > 0");
}

void KnnSurrogate::insert(PointView theta, double value) {
  if (!domain_.contains(theta))
    throw DomainError("design node outside the surrogate domain");
  design_.add(theta, value);
  maybe_rebuild();
}

void KnnSurrogate::maybe_rebuild() {
  if (!opts_.use_kdtree) return;
  const std::size_t n = design_.size();
  if (n - tree_.size() > tail_limit(n)) tree_ = KdTree(design_, n);
}

std::size_t KnnSurrogate::mark_snapshot() {
  Snapshot snap{design_.size(), {}};
  if (opts_.use_kdtree && snap.length > tail_limit(snap.length))
    snap.tree = KdTree(design_, snap.length);
  snapshots_.push_back(std::move(snap));
  return snapshots_.size() - 1;
}

std::vector<std::size_t> KnnSurrogate::neighbors(PointView theta,
                                                 std::size_t prefix) const {
  if (prefix > design_.size()) throw SizeError("prefix exceeds design size");
  const KdTree* tree = nullptr;
  if (opts_.use_kdtree) {
    if (prefix >= tree_.size() && tree_.size() > 0) {
      tree = &tree_;
    } else {
      for (const auto& s : snapshots_)
        if (s.length == prefix && s.tree.size() > 0) tree = &s.tree;
    }
  }
  if (tree == nullptr) return nearest_k(design_, theta, opts_.k, prefix);

  require_dimension(theta, design_.dimension());
  if (opts_.k > prefix) throw SizeError("K exceeds design size");
  std::vector<Neighbor> best;
  best.reserve(opts_.k + 1);
  tree->search(theta, opts_.k, best);
  for (std::size_t i = tree->size(); i < prefix; ++i)
    offer_neighbor(best, opts_.k, {squared_distance(design_.point(i), theta), i});
  std::vector<std::size_t> out(best.size());
  for (std::size_t i = 0; i < best.size(); ++i) out[i] = best[i].index;
  return out;
}

double KnnSurrogate::predict_prefix(PointView theta,
                                    std::size_t prefix) const {
  if (!domain_.contains(theta))
    throw DomainError("surrogate queried outside its domain");
  if (prefix < opts_.k) return std::max(opts_.floor, opts_.fallback);
  double sum = 0.0;
  for (std::size_t i : neighbors(theta, prefix)) sum += design_.value(i);
  return std::max(opts_.floor, sum / static_cast<double>(opts_.k));
}

double KnnSurrogate::predict(PointView theta) const {
  return predict_prefix(theta, design_.size());
}

double KnnSurrogate::predict_snapshot(PointView theta, std::size_t id) const {
  if (id >= snapshots_.size()) throw SizeError("unknown surrogate snapshot");
  return predict_prefix(theta, snapshots_[id].length);
}

}  // namespace noisymc
