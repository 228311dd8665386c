// Copyright 2026 The mmcurate Authors
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

#include "mmcurate/dataset/split.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "mmcurate/common/assets.hpp"
#include "mmcurate/common/digest.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/text.hpp"

namespace mmcurate::dataset {

namespace {

constexpr std::array<const char*, 3> kSubtypes{"yes_no", "what", "where"};

int subtype_bit(std::string_view s) {
  for (std::size_t i = 0; i < kSubtypes.size(); ++i) {
    if (s == kSubtypes[i]) return 1 << i;
  }
  throw ValidationError("unknown VQA subtype \"" + std::string(s) + "\"");
}

struct Candidate {
  std::string image_id;
  std::string stratum;
};

std::string stratum_of(const ManifestRecord& r, const std::vector<std::string>& fields) {
  std::string key;
  for (const auto& f : fields) {
    if (!key.empty()) key += "|";
    if (f == "modality") {
      key += backends::to_string(r.modality);
    } else if (f == "condition") {
      key += r.condition_tags.empty() ? "none" : r.condition_tags.front();
    } else {
      throw ConfigError("unknown split stratum field \"" + f + "\"");
    }
  }
  return key;
}

// counts[mask] for masks 1..7 such that each subtype total matches the target.
// Single-subtype images are preferred; multi-subtype images fill any deficit,
// lexicographically smallest (triple, yes_no+what, yes_no+where) first.
std::optional<std::array<int, 8>> solve_signatures(const std::array<int, 8>& avail, const std::array<int, 3>& target) {
  auto fits = [&](std::array<int, 8>& n) {
    for (int t = 0; t < 3; ++t) {
      int multi = 0;
      for (int mask = 1; mask < 8; ++mask) {
        if (mask != (1 << t) && (mask & (1 << t))) multi += n[mask];
      }
      int single = target[t] - multi;
      if (single < 0 || single > avail[1 << t]) return false;
      n[1 << t] = single;
    }
    return true;
  };
  const int lim = *std::max_element(target.begin(), target.end());
  for (int n7 = 0; n7 <= std::min(avail[7], lim); ++n7) {
    for (int n3 = 0; n3 <= std::min(avail[3], lim); ++n3) {
      for (int n5 = 0; n5 <= std::min(avail[5], lim); ++n5) {
        if (n7 + n3 + n5 > target[0]) break;
        // Smallest yes_no-free pair count that covers what/where deficits.
        int need_w = std::max(0, target[1] - n7 - n3 - avail[2]);
        int need_h = std::max(0, target[2] - n7 - n5 - avail[4]);
        int n6 = std::max(need_w, need_h);
        if (n6 > avail[6]) continue;
        std::array<int, 8> n{};
        n[7] = n7;
        n[3] = n3;
        n[5] = n5;
        n[6] = n6;
        if (fits(n)) return n;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

void SplitSpec::validate() const {
  for (const auto& [k, v] : targets) {
    if (std::find(kSubtypes.begin(), kSubtypes.end(), k) == kSubtypes.end())
      throw ConfigError("unknown split target \"" + k + "\" (expected yes_no, what, where)");
    if (v < 0) throw ConfigError("split target for " + k + " is negative");
  }
  for (const auto& f : strata) {
    if (f != "modality" && f != "condition") throw ConfigError("unknown split stratum field \"" + f + "\"");
  }
}

void to_json(nlohmann::json& j, const SplitSpec& s) {
  j = nlohmann::json{{"targets", s.targets}, {"seed", s.seed}, {"strata", s.strata}};
}

void from_json(const nlohmann::json& j, SplitSpec& s) {
  SplitSpec d;
  s.targets = j.value("targets", d.targets);
  s.seed = j.value("seed", d.seed);
  s.strata = j.value("strata", d.strata);
}

std::vector<std::string> extract_condition_tags(std::string_view text, const std::vector<std::string>& vocabulary) {
  std::vector<std::string> tags;
  for (const auto& term : vocabulary) {
    if (text::contains_phrase(text, term)) tags.push_back(term);
  }
  return tags;
}

const std::vector<std::string>& builtin_condition_vocabulary() {
  static const std::vector<std::string> vocab = [] {
    std::vector<std::string> out;
    for (auto& t : parse_term_lines(asset("vocab/conditions.txt"))) out.push_back(text::normalize_for_matching(t));
    return out;
  }();
  return vocab;
}

std::vector<std::size_t> largest_remainder(const std::vector<std::size_t>& weights, std::size_t total) {
  const std::size_t sum = std::accumulate(weights.begin(), weights.end(), std::size_t{0});
  std::vector<std::size_t> out(weights.size(), 0);
  if (sum == 0 || total == 0) return out;
  std::vector<std::pair<std::size_t, std::size_t>> rema;  // (remainder numerator, index)
  std::size_t given = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] != 0 && total > std::numeric_limits<std::size_t>::max() / weights[i])
      throw ValidationError("apportionment overflow");
    const std::size_t num = weights[i] * total;
    out[i] = num / sum;
    rema.emplace_back(num % sum, i);
    given += out[i];
  }
  std::stable_sort(rema.begin(), rema.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; given < total && k < rema.size(); ++k, ++given) ++out[rema[k].second];
  return out;
}

DatasetManifest split_eval(DatasetManifest manifest, const SplitSpec& spec) {
  spec.validate();
  std::array<int, 3> target{};
  for (std::size_t t = 0; t < kSubtypes.size(); ++t) {
    auto it = spec.targets.find(kSubtypes[t]);
    target[t] = it == spec.targets.end() ? 0 : it->second;
  }

  // Per image: subtype mask, whether it is VQA-only, and a stratum key.
  std::map<std::string, int> mask;
  std::set<std::string> blocked;
  std::map<std::string, std::string> stratum;
  std::array<int, 3> available{};
  for (const auto& r : manifest.records) {
    if (r.kind == InstanceKind::kVqa) {
      const int bit = subtype_bit(r.subtype);
      if (mask[r.image_id] & bit) blocked.insert(r.image_id);  // two instances of one subtype on an image
      mask[r.image_id] |= bit;
      for (std::size_t t = 0; t < 3; ++t) available[t] += r.subtype == kSubtypes[t];
    } else {
      blocked.insert(r.image_id);
    }
    stratum.emplace(r.image_id, stratum_of(r, spec.strata));
  }
  for (std::size_t t = 0; t < 3; ++t) {
    if (target[t] > available[t])
      throw ValidationError(std::string("split target for ") + kSubtypes[t] + " (" + std::to_string(target[t]) +
                            ") exceeds the " + std::to_string(available[t]) + " available instances");
  }

  std::array<std::vector<Candidate>, 8> by_mask;
  for (const auto& [image, m] : mask) {
    if (!blocked.count(image)) by_mask[m].push_back({image, stratum[image]});
  }
  std::array<int, 8> avail{};
  for (int m = 1; m < 8; ++m) avail[m] = static_cast<int>(by_mask[m].size());
  for (std::size_t t = 0; t < 3; ++t) {
    int eligible = 0;
    for (int m = 1; m < 8; ++m) eligible += (m & (1 << t)) ? avail[m] : 0;
    if (target[t] > eligible)
      throw ValidationError(std::string("split target for ") + kSubtypes[t] + " cannot be met: only " +
                            std::to_string(eligible) + " images hold that subtype without non-VQA instances");
  }
  auto solved = solve_signatures(avail, target);
  if (!solved) {
    std::size_t worst = 0;
    int worst_gap = -1;
    for (std::size_t t = 0; t < 3; ++t) {
      int gap = target[t] - avail[1 << t];
      if (gap > worst_gap) worst_gap = gap, worst = t;
    }
    throw ValidationError(std::string("split targets are unsatisfiable under image disjointness; deficient subtype: ") +
                          kSubtypes[worst]);
  }

  std::set<std::string> test_images;
  for (int m = 1; m < 8; ++m) {
    const auto want = static_cast<std::size_t>((*solved)[m]);
    if (want == 0) continue;
    std::map<std::string, std::vector<std::string>> strata;
    for (const auto& c : by_mask[m]) strata[c.stratum].push_back(c.image_id);
    std::vector<std::size_t> sizes;
    for (const auto& [key, imgs] : strata) sizes.push_back(imgs.size());
    const auto alloc = largest_remainder(sizes, want);
    std::size_t i = 0;
    for (auto& [key, imgs] : strata) {
      std::sort(imgs.begin(), imgs.end());
      std::mt19937_64 rng(digest_seed(std::to_string(spec.seed) + "/" + std::to_string(m) + "/" + key));
      // Fisher-Yates with an explicit draw so results do not depend on the
      // standard library's shuffle implementation.
      for (std::size_t k = imgs.size(); k > 1; --k) std::swap(imgs[k - 1], imgs[rng() % k]);
      for (std::size_t k = 0; k < alloc[i]; ++k) test_images.insert(imgs[k]);
      ++i;
    }
  }

  for (auto& r : manifest.records) r.split = test_images.count(r.image_id) ? Split::kTest : Split::kTrain;
  manifest.validate();
  return manifest;
}

}  // namespace mmcurate::dataset
