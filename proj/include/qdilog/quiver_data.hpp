#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace qdilog {

/// Finite quiver on vertices 0..n-1 given by arrow multiplicities.
/// (User-facing formats number vertices from 1.)
class Quiver {
 public:
  Quiver() = default;
  explicit Quiver(int n) : n_(n), mult_(static_cast<std::size_t>(n * n), 0) {
    if (n < 0) throw std::invalid_argument("Quiver: negative vertex count");
  }

  /// arrows: (source, target, multiplicity), 0-based.
  Quiver(int n, const std::vector<std::tuple<int, int, int>>& arrows) : Quiver(n) {
    for (const auto& [i, j, m] : arrows) add_arrows(i, j, m);
  }

  int size() const { return n_; }
  int arrows(int i, int j) const { return mult_[idx(i, j)]; }

  void add_arrows(int i, int j, int m = 1) {
    if (m < 0) throw std::invalid_argument("Quiver: negative multiplicity");
    mult_[idx(i, j)] += m;
  }

  bool has_loops() const {
    for (int i = 0; i < n_; ++i)
      if (arrows(i, i) > 0) return true;
    return false;
  }

  /// True if some vertex i has arrows both to and from k.
  bool has_two_cycle_at(int k) const {
    for (int i = 0; i < n_; ++i)
      if (arrows(i, k) > 0 && arrows(k, i) > 0) return true;
    return false;
  }

  std::vector<std::tuple<int, int, int>> arrow_list() const {
    std::vector<std::tuple<int, int, int>> out;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (arrows(i, j) > 0) out.emplace_back(i, j, arrows(i, j));
    return out;
  }

  Quiver opposite() const {
    Quiver r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.mult_[r.idx(j, i)] = arrows(i, j);
    return r;
  }

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  std::size_t idx(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
      throw std::out_of_range("Quiver: vertex out of range (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    return static_cast<std::size_t>(i * n_ + j);
  }

  int n_ = 0;
  std::vector<int> mult_;
};

}  // namespace qdilog
