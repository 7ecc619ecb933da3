#pragma once

#include <cstddef>
#include <vector>

namespace srk {

/// Sorted, duplicate-free set of column indices into {0, ..., n-1}.
class SupportSet {
 public:
  SupportSet() = default;
  /// Sorts `indices`; throws InvalidSparsityError on duplicates or an index >= n.
  SupportSet(std::vector<std::size_t> indices, std::size_t n);

  static SupportSet full(std::size_t n);

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(std::size_t i) const noexcept;

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

}  // namespace srk
