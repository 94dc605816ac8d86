#pragma once

// Space files and reports.  A space file is JSON:
//
//   {"monad": {"kind": "powerset"},
//    "points": 2,
//    "labels": ["x", "y"],            // optional
//    "converges": [[[0], 0], [[1], 1], [[0, 1], 1]]}
//
// T-element encodings by kind: a point index (identity, ultrafilter), a
// member array (powerset), a [monoid, point] pair (monoid_action), the
// integer 0 (t0, t1).  Serialization is canonical: members sorted, pairs in
// relation order, object keys alphabetical.

#include <string>
#include <vector>

#include <json.hpp>

#include "tspace/space.hpp"

namespace tspace {

using json = nlohmann::json;

inline MonadSpec monad_from_json(const json& j, std::size_t budget = kDefaultBudget) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ParseError("monad: expected an object with a \"kind\" string");
  const std::string kind = j.at("kind").get<std::string>();
  MonadSpec m;
  if (kind == "identity")
    m = identity_monad();
  else if (kind == "powerset")
    m = powerset_monad();
  else if (kind == "ultrafilter")
    m = ultrafilter_monad();
  else if (kind == "t0")
    m = t0_monad();
  else if (kind == "t1")
    m = t1_monad();
  else if (kind == "monoid_action") {
    if (!j.contains("monoid")) throw ParseError("monoid_action requires a \"monoid\" table");
    const json& mj = j.at("monoid");
    if (!mj.is_object() || !mj.contains("size") || !mj.contains("unit") || !mj.contains("table"))
      throw ParseError("monoid: expected {size, unit, table}");
    int size = mj.at("size").get<int>();
    int unit = mj.at("unit").get<int>();
    const json& rows = mj.at("table");
    if (!rows.is_array() || static_cast<int>(rows.size()) != size)
      throw ParseError("monoid: table must have one row per element");
    std::vector<int> flat;
    for (const json& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != size)
        throw ParseError("monoid: ragged table row");
      for (const json& v : row) flat.push_back(v.get<int>());
    }
    try {
      m = monoid_action_monad(make_monoid(size, unit, std::move(flat)));
    } catch (const InvalidMonoid& e) {
      throw ParseError(std::string("monoid: ") + e.what());
    }
  } else {
    throw ParseError("unknown monad kind \"" + kind + "\"");
  }
  m.budget = budget;
  return m;
}

inline json monad_to_json(const MonadSpec& m) {
  json j;
  j["kind"] = kind_name(m.kind);
  if (m.kind == MonadKind::MonoidAction) {
    json rows = json::array();
    for (int a = 0; a < m.monoid->size; ++a) {
      json row = json::array();
      for (int b = 0; b < m.monoid->size; ++b) row.push_back(m.monoid->mul(a, b));
      rows.push_back(row);
    }
    j["monoid"] = {{"size", m.monoid->size}, {"unit", m.monoid->unit}, {"table", rows}};
  }
  return j;
}

inline TElem telem_from_json(const MonadSpec& m, int n, const json& enc) {
  TElem e{m.kind, n, {}};
  switch (m.kind) {
    case MonadKind::Identity:
    case MonadKind::Ultrafilter:
      if (!enc.is_number_integer()) throw EncodingError("expected a point index");
      e.data = {enc.get<int>()};
      break;
    case MonadKind::Powerset: {
      if (!enc.is_array()) throw EncodingError("expected a member array");
      for (const json& v : enc) {
        if (!v.is_number_integer()) throw EncodingError("subset member must be an integer");
        e.data.push_back(v.get<int>());
      }
      break;
    }
    case MonadKind::MonoidAction: {
      if (!enc.is_array() || enc.size() != 2) throw EncodingError("expected a [monoid, point] pair");
      e.data = {enc.at(0).get<int>(), enc.at(1).get<int>()};
      break;
    }
    case MonadKind::T0:
    case MonadKind::T1:
      if (!enc.is_number_integer() || enc.get<int>() != 0)
        throw EncodingError("expected the unit element 0");
      break;
  }
  return e;
}

inline json telem_to_json(const MonadSpec& m, int n, int index) {
  TElem e = decode_telem(m, n, index);
  switch (m.kind) {
    case MonadKind::Identity:
    case MonadKind::Ultrafilter:
      return json(e.data[0]);
    case MonadKind::Powerset:
      return json(e.data);
    case MonadKind::MonoidAction:
      return json::array({e.data[0], e.data[1]});
    case MonadKind::T0:
    case MonadKind::T1:
      return json(0);
  }
  throw EncodingError("unknown monad kind");
}

/// JSON form of an iterated T-element: level 1 lives in TX, level 2 in TTX.
inline json level_elem_to_json(const MonadSpec& m, int base_n, int level, int index) {
  if (level == 1) return telem_to_json(m, base_n, index);
  int inner = static_cast<int>(tsize(m, static_cast<std::size_t>(base_n)));
  switch (m.kind) {
    case MonadKind::Identity:
    case MonadKind::Ultrafilter:
      return level_elem_to_json(m, base_n, 1, index);
    case MonadKind::Powerset: {
      json members = json::array();
      for (int s = 0; s < inner; ++s)
        if (index >> s & 1) members.push_back(level_elem_to_json(m, base_n, 1, s));
      return members;
    }
    case MonadKind::MonoidAction:
      return json::array({index / inner, level_elem_to_json(m, base_n, 1, index % inner)});
    case MonadKind::T0:
    case MonadKind::T1:
      return json(0);
  }
  throw EncodingError("unknown monad kind");
}

inline TSpace space_from_json(const json& j, std::size_t budget = kDefaultBudget) {
  if (!j.is_object()) throw ParseError("space file must be a JSON object");
  if (!j.contains("monad")) throw ParseError("missing \"monad\"");
  if (!j.contains("points") || !j.at("points").is_number_integer())
    throw ParseError("missing integer \"points\"");
  if (!j.contains("converges") || !j.at("converges").is_array())
    throw ParseError("missing array \"converges\"");
  MonadSpec m = monad_from_json(j.at("monad"), budget);
  int n = j.at("points").get<int>();
  if (n < 0) throw ParseError("\"points\" must be nonnegative");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j.at("labels").is_array()) throw ParseError("\"labels\" must be an array");
    for (const json& l : j.at("labels")) {
      if (!l.is_string()) throw ParseError("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  FinSet points;
  try {
    points = make_set(n, std::move(labels));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("labels: ") + e.what());
  }
  std::vector<std::pair<int, int>> pairs;
  for (const json& entry : j.at("converges")) {
    if (!entry.is_array() || entry.size() != 2)
      throw ParseError("each converges entry must be [encoding, point]");
    if (!entry.at(1).is_number_integer()) throw ParseError("convergence point must be an integer");
    int y = entry.at(1).get<int>();
    if (y < 0 || y >= n) throw EncodingError("convergence point out of range");
    int t = encode_telem(m, n, telem_from_json(m, n, entry.at(0)));
    pairs.emplace_back(t, y);
  }
  return make_tspace(std::move(m), std::move(points), std::move(pairs));
}

inline TSpace parse_space_file(const std::string& text, std::size_t budget = kDefaultBudget) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return space_from_json(j, budget);
}

inline json space_to_json(const TSpace& s) {
  json j;
  j["monad"] = monad_to_json(s.monad);
  j["points"] = s.points.size;
  if (s.points.has_labels()) j["labels"] = s.points.labels;
  json conv = json::array();
  for (const auto& [t, y] : s.converges.pairs)
    conv.push_back(json::array({telem_to_json(s.monad, s.points.size, t), y}));
  j["converges"] = conv;
  return j;
}

inline std::string serialize_space(const TSpace& s) { return space_to_json(s).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// DOT output

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// Deterministic DOT rendering: point nodes in order, one edge per pair for
/// pointwise monads, box nodes per converging subset for the powerset monad,
/// a single box for the degenerate monads.  Equal inputs yield identical
/// bytes.
inline std::string emit_dot(const TSpace& s) {
  std::string out = "digraph tspace {\n";
  const int n = s.points.size;
  for (int i = 0; i < n; ++i)
    out += "  p" + std::to_string(i) + " [label=\"" + detail::dot_escape(s.points.label(i)) +
           "\"];\n";
  switch (s.monad.kind) {
    case MonadKind::Identity:
    case MonadKind::Ultrafilter:
      for (const auto& [t, y] : s.converges.pairs)
        out += "  p" + std::to_string(t) + " -> p" + std::to_string(y) + ";\n";
      break;
    case MonadKind::Powerset: {
      std::vector<int> subsets;
      for (const auto& [t, y] : s.converges.pairs)
        if (subsets.empty() || subsets.back() != t) subsets.push_back(t);
      for (int t : subsets)
        out += "  s" + std::to_string(t) + " [label=\"" +
               detail::dot_escape(telem_label(s.monad, s.points, t)) + "\", shape=box];\n";
      for (int t : subsets)
        for (int i = 0; i < n; ++i)
          if (t >> i & 1)
            out += "  p" + std::to_string(i) + " -> s" + std::to_string(t) +
                   " [style=dashed, arrowhead=none];\n";
      for (const auto& [t, y] : s.converges.pairs)
        out += "  s" + std::to_string(t) + " -> p" + std::to_string(y) + ";\n";
      break;
    }
    case MonadKind::MonoidAction: {
      for (const auto& [t, y] : s.converges.pairs)
        out += "  p" + std::to_string(t % n) + " -> p" + std::to_string(y) + " [label=\"" +
               detail::dot_escape(s.monad.monoid->label(t / n)) + "\"];\n";
      break;
    }
    case MonadKind::T0:
    case MonadKind::T1: {
      if (s.converges.dom.size > 0 && n > 0) out += "  t [label=\"*\", shape=box];\n";
      for (const auto& [t, y] : s.converges.pairs)
        out += "  t -> p" + std::to_string(y) + ";\n";
      break;
    }
  }
  out += "}\n";
  return out;
}

}  // namespace tspace
