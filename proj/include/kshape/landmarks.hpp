#ifndef KSHAPE_LANDMARKS_HPP
#define KSHAPE_LANDMARKS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kshape {

using Point = std::vector<double>;

enum class Topology { Open, Closed };

inline const char* to_string(Topology topology) {
  return topology == Topology::Open ? "open" : "closed";
}

inline Topology topology_from_string(const std::string& s) {
  if (s == "open") return Topology::Open;
  if (s == "closed") return Topology::Closed;
  throw std::invalid_argument("topology must be \"open\" or \"closed\", got \"" + s + "\"");
}

/// Ordered landmarks r_0 .. r_{N-1} in R^D plus the open/closed flag.
/// Storage is row-major, one row per landmark. Duplicates are kept as given:
/// a repeated landmark carries proportionally more weight.
class LandmarkSet {
 public:
  LandmarkSet(std::size_t dim, std::vector<double> coords, Topology topology,
              std::vector<std::string> labels = {})
      : dim_(dim), coords_(std::move(coords)), topology_(topology), labels_(std::move(labels)) {
    if (dim_ == 0) throw std::invalid_argument("landmark dimension must be at least 1");
    if (coords_.empty() || coords_.size() % dim_ != 0) {
      throw std::invalid_argument("landmark coordinates must hold a positive multiple of dim values");
    }
    if (!labels_.empty() && labels_.size() != size()) {
      throw std::invalid_argument("labels must be empty or one per landmark");
    }
    for (double c : coords_) {
      if (!std::isfinite(c)) throw std::invalid_argument("landmark coordinates must be finite");
    }
  }

  static LandmarkSet from_points(const std::vector<Point>& points, Topology topology) {
    if (points.empty()) throw std::invalid_argument("a landmark set needs at least one point");
    const std::size_t dim = points.front().size();
    std::vector<double> coords;
    coords.reserve(points.size() * dim);
    for (const auto& p : points) {
      if (p.size() != dim) throw std::invalid_argument("all landmarks must share one dimension");
      coords.insert(coords.end(), p.begin(), p.end());
    }
    return LandmarkSet(dim, std::move(coords), topology);
  }

  std::size_t size() const noexcept { return coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  Topology topology() const noexcept { return topology_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::span<const double> coords() const noexcept { return coords_; }

  std::span<const double> point(std::size_t j) const {
    if (j >= size()) throw std::out_of_range("landmark index " + std::to_string(j) + " out of range");
    return std::span<const double>(coords_).subspan(j * dim_, dim_);
  }

  LandmarkSet with_topology(Topology topology) const {
    return LandmarkSet(dim_, coords_, topology, labels_);
  }

  /// Cyclic rotation: landmark j of the result is landmark (j + m) mod N.
  LandmarkSet rotated(std::size_t m) const {
    const std::size_t n = size();
    std::vector<double> out;
    out.reserve(coords_.size());
    for (std::size_t j = 0; j < n; ++j) {
      auto p = point((j + m) % n);
      out.insert(out.end(), p.begin(), p.end());
    }
    return LandmarkSet(dim_, std::move(out), topology_);
  }

  double max_abs_coordinate() const noexcept {
    double m = 0.0;
    for (double c : coords_) m = std::max(m, std::abs(c));
    return m;
  }

  friend bool operator==(const LandmarkSet&, const LandmarkSet&) = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  Topology topology_;
  std::vector<std::string> labels_;
};

/// Dense row-major matrix, just enough for linear maps on landmarks.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
      : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (rows_ == 0 || cols_ == 0 || data_.size() != rows_ * cols_) {
      throw std::invalid_argument("matrix data does not match its shape");
    }
  }

  static Matrix identity(std::size_t n) {
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
    return Matrix(n, n, std::move(d));
  }

  static Matrix rotation2d(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return Matrix(2, 2, {c, -s, s, c});
  }

  /// Rotation about the z axis, leaving z untouched.
  static Matrix rotation_z(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return Matrix(3, 3, {c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0});
  }

  static Matrix scaling(std::size_t n, double factor) {
    Matrix m = identity(n);
    for (auto& v : m.data_) v *= factor;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Point apply(std::span<const double> v) const {
    if (v.size() != cols_) {
      throw std::invalid_argument("matrix has " + std::to_string(cols_) + " columns but vector has " +
                                  std::to_string(v.size()) + " entries");
    }
    Point out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) acc += data_[i * cols_ + j] * v[j];
      out[i] = acc;
    }
    return out;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

}  // namespace kshape

#endif  // KSHAPE_LANDMARKS_HPP
