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

#include "bideg/trace.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include "bideg/errors.hpp"

namespace bideg {

namespace {

constexpr std::string_view kMagic = "bipartite-trace";

void append_uint(std::string& out, std::uint64_t value) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, res.ptr);
}

template <typename T>
T parse_number(std::string_view token, std::string_view what) {
  T value{};
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw InputError("trace: cannot parse " + std::string(what) + " from '" +
                     std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_trace(const Trace& trace) {
  std::string out;
  out.reserve(64 + trace.edges.size() * 12);
  out += kMagic;
  out += ' ';
  append_uint(out, static_cast<std::uint64_t>(trace.params.left_count()));
  out += ' ';
  append_uint(out, static_cast<std::uint64_t>(trace.params.right_count()));
  out += ' ';
  append_uint(out, trace.edges.size());
  out += ' ';
  out += format_real(trace.params.alpha());
  out += ' ';
  out += format_real(trace.params.beta());
  out += trace.simple ? " 1\n" : " 0\n";
  for (const Edge& e : trace.edges) {
    append_uint(out, e.u);
    out += ' ';
    append_uint(out, e.v);
    out += '\n';
  }
  return out;
}

void write_trace(std::ostream& out, const Trace& trace) {
  out << format_trace(trace);
}

Trace read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("trace: missing header");
  std::istringstream header(line);
  std::string magic, l, r, t, a, b, flag, extra;
  header >> magic >> l >> r >> t >> a >> b >> flag;
  if (magic != kMagic || flag.empty() || (header >> extra)) {
    throw InputError("trace: malformed header '" + line + "'");
  }
  const auto left = parse_number<std::int64_t>(l, "L");
  const auto right = parse_number<std::int64_t>(r, "R");
  const auto count = parse_number<std::int64_t>(t, "t");
  const auto alpha = parse_number<double>(a, "alpha");
  const auto beta = parse_number<double>(b, "beta");
  if (flag != "0" && flag != "1") throw InputError("trace: simple_flag must be 0 or 1");
  if (count < 0) throw InputError("trace: negative edge count");

  Trace trace{Params(alpha, beta, left, right), {}, flag == "1"};
  trace.edges.reserve(static_cast<std::size_t>(count));
  std::set<Edge> seen;
  for (std::int64_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw InputError("trace: fewer edges than header t");
    const auto space = line.find(' ');
    if (space == std::string::npos) throw InputError("trace: malformed edge line '" + line + "'");
    const auto u = parse_number<std::uint32_t>(std::string_view(line).substr(0, space), "u");
    const auto v = parse_number<std::uint32_t>(std::string_view(line).substr(space + 1), "v");
    if (u >= left || v >= right) throw InputError("trace: vertex out of range in '" + line + "'");
    if (trace.simple && !seen.insert({u, v}).second) {
      throw InputError("trace: simple trace repeats pair '" + line + "'");
    }
    trace.edges.push_back({u, v});
  }
  return trace;
}

Trace parse_trace(const std::string& text) {
  std::istringstream in(text);
  return read_trace(in);
}

BipartiteMultigraph replay(const Trace& trace) {
  BipartiteMultigraph g(trace.params);
  for (const Edge& e : trace.edges) g.add_edge(e.u, e.v);
  return g;
}

}  // namespace bideg
