/*
 * Copyright 2026 The SIAN Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SIAN_INTERACTION_SET_H_
#define SIAN_INTERACTION_SET_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sian {

// A nonempty, strictly increasing list of feature indices naming the inputs
// of one shape function.
class InteractionSet {
 public:
  // Throws ValidationError if indices is empty or not strictly increasing.
  explicit InteractionSet(std::vector<size_t> indices);
  InteractionSet(std::initializer_list<size_t> indices)
      : InteractionSet(std::vector<size_t>(indices)) {}

  // Sorts first; duplicates are still a ValidationError.
  static InteractionSet FromUnsorted(std::vector<size_t> indices);
  // Parses the '+'-joined form produced by ToString, e.g. "0+3+7".
  static InteractionSet Parse(std::string_view text);
  // Members of a bitmask over at most 64 features.
  static InteractionSet FromMask(uint64_t mask);

  const std::vector<size_t>& indices() const { return indices_; }
  size_t degree() const { return indices_.size(); }
  size_t max_index() const { return indices_.back(); }
  bool Contains(size_t feature) const;
  bool IsSubsetOf(const InteractionSet& other) const;
  // Throws DomainError if any index is >= 64.
  uint64_t Mask() const;
  std::string ToString() const;

  // Plain lexicographic comparison of the index lists.
  auto operator<=>(const InteractionSet&) const = default;
  bool operator==(const InteractionSet&) const = default;

 private:
  std::vector<size_t> indices_;
};

// Degree first, then lexicographic: the order in which interaction selection
// discovers sets.
struct DegreeLexLess {
  bool operator()(const InteractionSet& a, const InteractionSet& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a < b;
  }
};

}  // namespace sian

#endif  // SIAN_INTERACTION_SET_H_
