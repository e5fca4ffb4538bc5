// Copyright 2026 The tropgon Authors
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

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tropgon {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;     // semantic violation or failed check
inline constexpr int kExitMalformed = 2;  // unreadable or malformed input

struct CommandResult {
  int exit_code = kExitOk;
  std::string report;  // for stdout
  std::string error;   // for stderr; empty on success
};

// Parses and validates every file.
CommandResult cmd_validate(const std::vector<std::string>& paths);

// Principal divisor of a function, terms ordered by decreasing coefficient
// and then by position: "+1 @ e1@1/1, -1 @ e1@0/1"; "0" when empty.
CommandResult cmd_div(const std::string& path, const std::string& function);

struct ConstructOptions {
  std::string input;
  std::optional<std::string> system;  // needed when the file has several
  std::string bundle;                 // output path
  std::optional<std::string> certificate;
};

/// Writes a bundle with the original, modified and target curves and the
/// maps "witness" (modified -> target) and "retraction" (modified ->
/// original).
CommandResult cmd_construct(const ConstructOptions& opts);

// Re-checks a bundle from scratch: both maps, finiteness, harmonicity at
// every checkpoint, the degree and the retraction.
CommandResult cmd_verify(const std::string& bundle, const std::optional<std::string>& certificate = std::nullopt);

/// The system of a bundle for the divisor 1*point on the target tree,
/// written as a workspace file (to `output`, or into the report).
CommandResult cmd_from_witness(const std::string& bundle, const std::string& point,
                               const std::optional<std::string>& output = std::nullopt);

/// A file with a system runs system -> witness -> system; a bundle runs
/// witness -> system -> witness.
CommandResult cmd_roundtrip(const std::string& path, const std::optional<std::string>& system = std::nullopt);

}  // namespace tropgon
