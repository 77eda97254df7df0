// Copyright 2026 The qtsp Authors
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

#include "qtsp/instance.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qtsp {
namespace {

std::vector<CityPair> NormalizePairs(std::vector<CityPair> pairs, int n) {
  for (auto& p : pairs) {
    if (p.first < 0 || p.second < 0 || p.first >= n || p.second >= n) {
      throw std::invalid_argument("non-edge endpoint out of range");
    }
    if (p.first == p.second) {
      throw std::invalid_argument("self-loop in edge list");
    }
    if (p.first > p.second) std::swap(p.first, p.second);
  }
  std::sort(pairs.begin(), pairs.end(), [](const CityPair& a, const CityPair& b) {
    return std::pair(a.first, a.second) < std::pair(b.first, b.second);
  });
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace

TspInstance::TspInstance(Eigen::MatrixXd dist,
                         std::optional<std::vector<Point>> coords,
                         std::vector<CityPair> non_edges)
    : dist_(std::move(dist)),
      coords_(std::move(coords)),
      non_edges_(std::move(non_edges)) {
  const int n = size();
  missing_.assign(static_cast<size_t>(n) * n, false);
  for (const auto& p : non_edges_) {
    missing_[p.first * n + p.second] = true;
    missing_[p.second * n + p.first] = true;
  }
}

TspInstance TspInstance::FromCoordinates(std::vector<Point> coords,
                                         std::vector<CityPair> non_edges) {
  const int n = static_cast<int>(coords.size());
  if (n < 2) throw std::invalid_argument("instance needs at least 2 cities");
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double d = std::hypot(coords[u].x - coords[v].x, coords[u].y - coords[v].y);
      dist(u, v) = d;
      dist(v, u) = d;
    }
  }
  auto pairs = NormalizePairs(std::move(non_edges), n);
  return TspInstance(std::move(dist), std::move(coords), std::move(pairs));
}

TspInstance TspInstance::FromDistances(Eigen::MatrixXd dist,
                                       std::vector<CityPair> non_edges) {
  const int n = static_cast<int>(dist.rows());
  if (n < 2) throw std::invalid_argument("instance needs at least 2 cities");
  if (dist.cols() != n) throw std::invalid_argument("distance matrix is not square");
  for (int u = 0; u < n; ++u) {
    if (dist(u, u) != 0.0) throw std::invalid_argument("distance diagonal must be zero");
    for (int v = 0; v < n; ++v) {
      if (!std::isfinite(dist(u, v)) || dist(u, v) < 0.0) {
        throw std::invalid_argument("distances must be finite and nonnegative");
      }
      if (dist(u, v) != dist(v, u)) {
        throw std::invalid_argument("distance matrix is not symmetric");
      }
    }
  }
  auto pairs = NormalizePairs(std::move(non_edges), n);
  return TspInstance(std::move(dist), std::nullopt, std::move(pairs));
}

bool TspInstance::has_edge(City u, City v) const {
  return u != v && !missing_[u * size() + v];
}

double TspInstance::max_distance() const { return dist_.maxCoeff(); }

double TspInstance::mean_distance() const {
  const int n = size();
  return dist_.sum() / (static_cast<double>(n) * (n - 1));
}

double TourLength(const TspInstance& instance, std::span<const City> order) {
  double length = 0.0;
  const size_t n = order.size();
  for (size_t j = 0; j < n; ++j) {
    length += instance.distance(order[j], order[(j + 1) % n]);
  }
  return length;
}

bool IsPermutation(std::span<const City> order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (City c : order) {
    if (c < 0 || c >= n || seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

Tour::Tour(const TspInstance& instance, std::vector<City> order)
    : order_(std::move(order)) {
  if (!IsPermutation(order_, instance.size())) {
    throw std::invalid_argument("tour is not a permutation of " +
                                std::to_string(instance.size()) + " cities");
  }
  length_ = TourLength(instance, order_);
}

std::vector<City> Tour::CanonicalOrder() const {
  const int n = size();
  const auto zero = std::find(order_.begin(), order_.end(), 0);
  std::vector<City> out(order_.size());
  std::rotate_copy(order_.begin(), zero, order_.end(), out.begin());
  if (n > 2 && out[1] > out[n - 1]) std::reverse(out.begin() + 1, out.end());
  return out;
}

bool Tour::SameCycle(const Tour& other) const {
  return size() == other.size() && CanonicalOrder() == other.CanonicalOrder();
}

double GapPercent(double found, double reference) {
  // Equal tours summed from different starting cities differ in the last bits.
  if (std::abs(found - reference) <= 1e-9 * std::max(1.0, std::abs(reference))) return 0.0;
  if (reference <= 0.0) return found <= reference ? 0.0 : 100.0;
  return 100.0 * (found - reference) / reference;
}

}  // namespace qtsp
