/*
 * Copyright 2026 The kgdistill Authors.
 *
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

#ifndef KGDISTILL_CHECKPOINT_H_
#define KGDISTILL_CHECKPOINT_H_

#include <map>
#include <string>
#include <string_view>

#include "kgdistill/graph.h"
#include "kgdistill/model.h"

namespace kgdistill {

// Versioned textual checkpoint: free-form configuration entries, the node and
// relation dictionary, and every parameter tensor. Values are written in the
// shortest form that parses back to the same double, so a save/load cycle is
// bit-exact.
struct Checkpoint {
  std::map<std::string, std::string> config;
  Schema dictionary;
  ModelParams params;
};

constexpr int kCheckpointVersion = 1;

std::string SerializeCheckpoint(const Checkpoint& checkpoint);
Checkpoint ParseCheckpoint(std::string_view text);

// Writes through a temporary file and renames, so a crash never leaves a
// truncated checkpoint under `path`.
void SaveCheckpoint(const Checkpoint& checkpoint, const std::string& path);
Checkpoint LoadCheckpoint(const std::string& path);

// Round-trip-exact textual form of a double.
std::string FormatDouble(double value);
double ParseDouble(std::string_view text);

}  // namespace kgdistill

#endif  // KGDISTILL_CHECKPOINT_H_
