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

#include "sian/interaction_set.h"

#include <algorithm>
#include <charconv>

#include "sian/errors.h"

namespace sian {

InteractionSet::InteractionSet(std::vector<size_t> indices)
    : indices_(std::move(indices)) {
  if (indices_.empty()) throw ValidationError("interaction set is empty");
  for (size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i] <= indices_[i - 1]) {
      throw ValidationError("interaction set indices must be strictly "
                            "increasing");
    }
  }
}

InteractionSet InteractionSet::FromUnsorted(std::vector<size_t> indices) {
  std::sort(indices.begin(), indices.end());
  return InteractionSet(std::move(indices));
}

InteractionSet InteractionSet::Parse(std::string_view text) {
  std::vector<size_t> indices;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t end = std::min(text.find('+', pos), text.size());
    size_t value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last) {
      throw FormatError("bad interaction set '" + std::string(text) + "'");
    }
    indices.push_back(value);
    pos = end + 1;
  }
  return InteractionSet(std::move(indices));
}

InteractionSet InteractionSet::FromMask(uint64_t mask) {
  std::vector<size_t> indices;
  for (size_t i = 0; i < 64; ++i) {
    if (mask & (uint64_t{1} << i)) indices.push_back(i);
  }
  return InteractionSet(std::move(indices));
}

bool InteractionSet::Contains(size_t feature) const {
  return std::binary_search(indices_.begin(), indices_.end(), feature);
}

bool InteractionSet::IsSubsetOf(const InteractionSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(),
                       indices_.begin(), indices_.end());
}

uint64_t InteractionSet::Mask() const {
  uint64_t mask = 0;
  for (size_t i : indices_) {
    if (i >= 64) throw DomainError("bitmask subsets hold at most 64 features");
    mask |= uint64_t{1} << i;
  }
  return mask;
}

std::string InteractionSet::ToString() const {
  std::string s;
  for (size_t i = 0; i < indices_.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(indices_[i]);
  }
  return s;
}

}  // namespace sian
