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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tropgon/harmonic.hpp"
#include "tropgon/linear_system.hpp"

namespace tropgon {

struct NamedPoint {
  std::string curve;
  Point point;
};

// A map as written: not yet checked to be continuous.
struct MapRecord {
  CurvePtr source;
  CurvePtr target;
  std::vector<EdgeMap> edges;  // one per source edge
};

struct NamedSystem {
  std::string base;  // divisor id
  std::vector<std::string> generators;  // function ids
  GenSystem system;
};

/// Named curves, points, functions, divisors, systems and maps.
///
/// Ids are unique per kind. Every object other than a map belongs to a
/// registered curve, and a system refers to registered parts.
class Workspace {
 public:
  // All adders throw Error on a duplicate id or an unregistered curve.
  void add_curve(const std::string& id, CurvePtr c);
  void add_point(const std::string& id, const std::string& curve, const Point& p);
  void add_function(const std::string& id, PLFunction f);
  void add_divisor(const std::string& id, Divisor d);
  // Builds the system from registered parts.
  void add_system(const std::string& id, const std::string& base, std::vector<std::string> generators);
  // Registers the base as "<id>_base" and the generators as "<id>_g<k>".
  void add_system(const std::string& id, const GenSystem& s);
  void add_map(const std::string& id, const Morphism& m);
  void add_map(const std::string& id, MapRecord m);

  // Lookups throw Error naming the missing id.
  const CurvePtr& curve(const std::string& id) const;
  const PLFunction& function(const std::string& id) const;
  const Divisor& divisor(const std::string& id) const;
  const GenSystem& system(const std::string& id) const;
  const MapRecord& map(const std::string& id) const;
  // The map as a Morphism; throws Error when it is not one.
  Morphism morphism(const std::string& id) const;

  // Id of a registered curve (by identity); throws Error otherwise.
  const std::string& curve_id(const CurvePtr& c) const;

  const std::map<std::string, CurvePtr>& curves() const { return curves_; }
  const std::map<std::string, NamedPoint>& points() const { return points_; }
  const std::map<std::string, PLFunction>& functions() const { return functions_; }
  const std::map<std::string, Divisor>& divisors() const { return divisors_; }
  const std::map<std::string, NamedSystem>& systems() const { return systems_; }
  const std::map<std::string, MapRecord>& maps() const { return maps_; }

 private:
  void require_new(const std::string& kind, const std::string& id, bool taken) const;

  std::map<std::string, CurvePtr> curves_;
  std::map<std::string, NamedPoint> points_;
  std::map<std::string, PLFunction> functions_;
  std::map<std::string, Divisor> divisors_;
  std::map<std::string, NamedSystem> systems_;
  std::map<std::string, MapRecord> maps_;
};

/// Line-oriented workspace text.
///
///   curve <id>
///   vertex <id>
///   edge <id> <from> <to> <length>
///   point <id> <ref>
///   func <id>            (or "func <id> -inf")
///   on <edge> start <value> pieces <slope>:<length> ...
///   div <id> <coef>*<ref> ...
///   system <id> base <div> gens <func> ...
///   map <id> <source-curve> -> <target-curve>
///   edge <source-edge>-><target-edge>@<offset> slope <k>
///   end
///
/// A <ref> is "<edge>@<offset>", a vertex id or a point id of the current
/// curve. The last piece on an unbounded edge has length "inf". Blank lines
/// and text after '#' are ignored; the file must close with "end".
///
/// Throws ParseError for malformed text and Error for well-formed text
/// describing invalid objects; both messages start with "line N: ". Maps
/// are only checked for resolvable ids and complete edge lists.
Workspace parse_workspace(std::string_view text);

// Reads a file; an unreadable file is a ParseError.
Workspace load_workspace(const std::string& path);

/// Canonical text: curves by id, each with its vertices and edges in
/// declaration order followed by its points, functions, divisors and
/// systems by id; then maps by id.
std::string print_workspace(const Workspace& ws);

void save_workspace(const Workspace& ws, const std::string& path);

}  // namespace tropgon
