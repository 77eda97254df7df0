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

#ifndef QTSP_INSTANCE_H_
#define QTSP_INSTANCE_H_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qtsp {

using City = int;

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

// Unordered city pair. Stored with first < second.
struct CityPair {
  City first = 0;
  City second = 0;
  bool operator==(const CityPair&) const = default;
};

// A symmetric TSP instance over a (by default complete) graph. Immutable
// once constructed; the edge set is represented by its complement.
class TspInstance {
 public:
  // Euclidean instance; distances are computed from the points.
  static TspInstance FromCoordinates(std::vector<Point> coords,
                                     std::vector<CityPair> non_edges = {});
  // Explicit distance matrix. Must be square, symmetric, nonnegative with a
  // zero diagonal.
  static TspInstance FromDistances(Eigen::MatrixXd dist,
                                   std::vector<CityPair> non_edges = {});

  int size() const { return static_cast<int>(dist_.rows()); }
  double distance(City u, City v) const { return dist_(u, v); }
  const Eigen::MatrixXd& distances() const { return dist_; }
  const std::optional<std::vector<Point>>& coords() const { return coords_; }

  bool has_edge(City u, City v) const;
  bool is_complete() const { return non_edges_.empty(); }
  const std::vector<CityPair>& non_edges() const { return non_edges_; }

  double max_distance() const;
  // Mean over unordered pairs u < v.
  double mean_distance() const;

 private:
  TspInstance(Eigen::MatrixXd dist, std::optional<std::vector<Point>> coords,
              std::vector<CityPair> non_edges);

  Eigen::MatrixXd dist_;
  std::optional<std::vector<Point>> coords_;
  std::vector<CityPair> non_edges_;
  std::vector<bool> missing_;  // n*n, true where {u,v} is a non-edge
};

// Closed tour length including the wrap-around edge.
double TourLength(const TspInstance& instance, std::span<const City> order);

// A validated permutation of the cities with its cached length.
class Tour {
 public:
  Tour(const TspInstance& instance, std::vector<City> order);

  const std::vector<City>& order() const { return order_; }
  int size() const { return static_cast<int>(order_.size()); }
  double length() const { return length_; }
  City operator[](int position) const { return order_[position]; }

  // Rotated to start at city 0 and oriented so that order[1] < order[n-1].
  std::vector<City> CanonicalOrder() const;
  // True when both tours describe the same cycle up to rotation and
  // reflection.
  bool SameCycle(const Tour& other) const;

 private:
  std::vector<City> order_;
  double length_ = 0.0;
};

bool IsPermutation(std::span<const City> order, int n);

// gap = (found - reference) / reference, in percent.
double GapPercent(double found, double reference);

}  // namespace qtsp

#endif  // QTSP_INSTANCE_H_
