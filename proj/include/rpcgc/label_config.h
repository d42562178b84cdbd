#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace rpcgc {

// JSON sidecar mapping label ids to category names and selecting the
// background set:
//   {"background_labels": [1, 3], "label_names": {"0": "chair", "1": "wall"}}
// When background_labels is absent, ids whose name matches one of the
// default background categories (wall, floor, door, furniture) are used.
struct LabelConfig {
  std::set<int32_t> backgroundLabels;
  std::map<int32_t, std::string> labelNames;
  uint32_t hash = 0;  // CRC32 of the config file bytes
};

LabelConfig parseLabelConfig(const std::string& jsonText);
LabelConfig loadLabelConfig(const std::string& path);

}  // namespace rpcgc
