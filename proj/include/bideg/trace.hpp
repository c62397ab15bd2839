// Copyright 2026 The bideg Authors
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

#include <iosfwd>
#include <string>
#include <vector>

#include "bideg/graph.hpp"
#include "bideg/params.hpp"

namespace bideg {

// One realization of the process: the edges in the order they were added.
// `simple` marks traces produced by the simple-graph dynamics (no repeats).
struct Trace {
  Params params;
  std::vector<Edge> edges;
  bool simple = false;
};

// Text format:
//
//   bipartite-trace <L> <R> <t> <alpha> <beta> <simple_flag>
//   <u> <v>
//   ...
//
// One edge per line, decimal indices, '\n' line endings. Reals use the
// shortest representation that round-trips; simple_flag is 0 or 1. Output is
// byte-identical for equal traces.
void write_trace(std::ostream& out, const Trace& trace);
std::string format_trace(const Trace& trace);

// Throws InputError on a malformed header, a count mismatch, an out-of-range
// vertex, or a repeated pair in a simple trace.
Trace read_trace(std::istream& in);
Trace parse_trace(const std::string& text);

BipartiteMultigraph replay(const Trace& trace);

// Shortest round-trip decimal form of a double.
std::string format_real(double value);

}  // namespace bideg
