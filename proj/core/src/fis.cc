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

#include "sian/fis.h"

#include <cmath>

#include "sian/errors.h"

namespace sian {

double FisConfig::ThetaFor(size_t degree) const {
  if (theta.empty()) return 0.0;
  return theta[std::min(degree, theta.size()) - 1];
}

void FisConfig::Validate() const {
  if (max_order < 1) throw ConfigError("max_order must be at least 1");
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw ConfigError("tau must lie in [0, 1]");
  }
  if (theta.empty()) throw ConfigError("theta needs at least one value");
  for (double t : theta) {
    if (!(t >= 0.0)) throw ConfigError("theta values must be non-negative");
  }
}

InteractionFamily::InteractionFamily(std::vector<FamilyMember> members) {
  for (FamilyMember& m : members) Add(std::move(m));
}

void InteractionFamily::Add(FamilyMember member) {
  if (!index_.insert(member.set).second) {
    throw ValidationError("interaction " + member.set.ToString() +
                          " appears twice in the family");
  }
  members_.push_back(std::move(member));
}

std::vector<InteractionSet> InteractionFamily::Sets() const {
  std::vector<InteractionSet> out;
  out.reserve(members_.size());
  for (const FamilyMember& m : members_) out.push_back(m.set);
  return out;
}

double HeredityScore(const InteractionSet& set, const InteractionFamily& family) {
  if (set.degree() < 2) {
    throw DomainError("heredity is defined for sets of two or more features");
  }
  const auto& idx = set.indices();
  size_t present = 0;
  for (size_t skip = 0; skip < idx.size(); ++skip) {
    std::vector<size_t> sub;
    for (size_t p = 0; p < idx.size(); ++p) {
      if (p != skip) sub.push_back(idx[p]);
    }
    if (family.Contains(InteractionSet(std::move(sub)))) ++present;
  }
  return static_cast<double>(present) / static_cast<double>(idx.size());
}

FisResult SelectInteractions(const DetectionContext& ctx,
                             const FisConfig& config) {
  config.Validate();
  FisResult result;
  const size_t d = ctx.num_features();
  if (d == 0) return result;

  std::vector<InteractionSet> candidates;
  std::vector<double> heredity;
  for (size_t i = 0; i < d; ++i) {
    candidates.push_back(InteractionSet{i});
    heredity.push_back(1.0);
  }
  for (size_t level = 1; level <= config.max_order && !candidates.empty();
       ++level) {
    result.candidates_per_level.push_back(candidates.size());
    const double theta = config.ThetaFor(level);
    std::vector<InteractionSet> admitted;
    for (size_t c = 0; c < candidates.size(); ++c) {
      AggregateScore score;
      try {
        score = Aggregate(ctx, candidates[c]);
      } catch (const DetectionError& e) {
        result.warnings.push_back(e.what());
        continue;
      }
      result.scores.Add(candidates[c], score);
      if (score.mean > theta) {
        result.family.Add({candidates[c], score.mean, heredity[c]});
        admitted.push_back(candidates[c]);
      }
    }
    if (level == config.max_order) break;

    // Any set whose heredity exceeds tau >= 0 contains at least one admitted
    // set of this level, so extending those sets by one feature reaches
    // every candidate of the next level.
    std::set<InteractionSet> next;
    for (const InteractionSet& s : admitted) {
      for (size_t j = 0; j < d; ++j) {
        if (s.Contains(j)) continue;
        std::vector<size_t> grown = s.indices();
        grown.push_back(j);
        next.insert(InteractionSet::FromUnsorted(std::move(grown)));
      }
    }
    candidates.clear();
    heredity.clear();
    for (const InteractionSet& s : next) {
      const double nu = HeredityScore(s, result.family);
      if (nu > config.tau) {
        candidates.push_back(s);
        heredity.push_back(nu);
      }
    }
  }
  return result;
}

GamArchitecture FamilyToArchitecture(const InteractionFamily& family,
                                     size_t num_features,
                                     std::vector<size_t> hidden_widths,
                                     TaskHead head) {
  GamArchitecture arch;
  arch.num_features = num_features;
  arch.family = family.Sets();
  arch.hidden_widths = std::move(hidden_widths);
  arch.head = head;
  arch.Validate();
  return arch;
}

nlohmann::json FamilyToJson(const InteractionFamily& family,
                            size_t num_features) {
  nlohmann::json sets = nlohmann::json::array();
  for (const FamilyMember& m : family.members()) {
    sets.push_back({{"indices", m.set.indices()},
                    {"strength", m.strength},
                    {"heredity", m.heredity}});
  }
  return {{"format", "sian-family"},
          {"version", 1},
          {"num_features", num_features},
          {"sets", sets}};
}

InteractionFamily FamilyFromJson(const nlohmann::json& doc,
                                 size_t* num_features) {
  try {
    if (doc.at("format").get<std::string>() != "sian-family") {
      throw FormatError("not a sian-family document");
    }
    if (doc.at("version").get<int>() != 1) {
      throw FormatError("unsupported sian-family version");
    }
    const size_t d = doc.at("num_features").get<size_t>();
    if (num_features) *num_features = d;
    InteractionFamily family;
    for (const auto& entry : doc.at("sets")) {
      InteractionSet set(entry.at("indices").get<std::vector<size_t>>());
      if (set.max_index() >= d) {
        throw ValidationError("interaction " + set.ToString() +
                              " refers to a feature beyond " +
                              std::to_string(d));
      }
      family.Add({std::move(set), entry.value("strength", 0.0),
                  entry.value("heredity", 1.0)});
    }
    return family;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed family: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("malformed family: ") + e.what());
  }
}

}  // namespace sian
