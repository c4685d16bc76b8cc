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

#ifndef SIAN_FIS_H_
#define SIAN_FIS_H_

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sian/archipelago.h"
#include "sian/interaction_set.h"
#include "sian/loss.h"
#include "sian/sian_model.h"

namespace sian {

struct FisConfig {
  // Largest interaction order K.
  size_t max_order = 2;
  // Heredity threshold; a candidate needs strictly more than this fraction of
  // its immediate subsets already selected.
  double tau = 0.5;
  // Strength thresholds by degree (entry k-1 for degree k). A single value
  // applies to every degree; a shorter list repeats its last value.
  std::vector<double> theta = {0.0};

  double ThetaFor(size_t degree) const;
  // Throws ConfigError.
  void Validate() const;
};

struct FamilyMember {
  InteractionSet set;
  // Aggregated strength when the set was admitted.
  double strength = 0.0;
  // Heredity score at admission; singletons are admitted unconditionally and
  // record 1.
  double heredity = 1.0;
};

// Selected sets in discovery order: by degree, lexicographic within a degree.
class InteractionFamily {
 public:
  InteractionFamily() = default;
  // Throws ValidationError on duplicates.
  explicit InteractionFamily(std::vector<FamilyMember> members);

  void Add(FamilyMember member);
  const std::vector<FamilyMember>& members() const { return members_; }
  size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool Contains(const InteractionSet& set) const { return index_.count(set) > 0; }
  std::vector<InteractionSet> Sets() const;

 private:
  std::vector<FamilyMember> members_;
  std::set<InteractionSet> index_;
};

// Fraction of the |J|-1 subsets of `set` present in the family. Requires
// degree >= 2 (DomainError otherwise).
double HeredityScore(const InteractionSet& set, const InteractionFamily& family);

struct FisResult {
  InteractionFamily family;
  // Every candidate that was scored, in evaluation order.
  ArchipelagoReport scores;
  // Number of candidates scored at each level, starting with level 1.
  std::vector<size_t> candidates_per_level;
  // Candidates skipped because detection was impossible for them.
  std::vector<std::string> warnings;
};

// Breadth-first selection over the subset lattice up to max_order.
FisResult SelectInteractions(const DetectionContext& ctx, const FisConfig& config);

// Architecture whose subnets follow the family order. Throws ValidationError
// for duplicate sets or indices >= num_features.
GamArchitecture FamilyToArchitecture(const InteractionFamily& family,
                                     size_t num_features,
                                     std::vector<size_t> hidden_widths,
                                     TaskHead head);

// {"format": "sian-family", "version": 1, "num_features": d,
//  "sets": [{"indices": [...], "strength": s, "heredity": v}, ...]}
nlohmann::json FamilyToJson(const InteractionFamily& family, size_t num_features);
// Also returns the recorded feature count through num_features when non-null.
InteractionFamily FamilyFromJson(const nlohmann::json& doc,
                                 size_t* num_features = nullptr);

}  // namespace sian

#endif  // SIAN_FIS_H_
