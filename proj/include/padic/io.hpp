#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "padic/claims.hpp"
#include "padic/lifting.hpp"

namespace padic::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kArtifactVersion = "1.0.0";

// ---- scalars ----

/// "n" for integers, "n/d" otherwise.
inline std::string compact(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1 ? boost::multiprecision::numerator(r).str() : to_string(r);
}

inline std::string num(Int x) { return std::to_string(x); }

inline std::string per_parent(const LevelRow& r, Int count) {
  return r.parents == 0 ? "" : compact(r.per_parent(count));
}

inline Int parse_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: " + s);
  }
  if (used != s.size()) throw std::invalid_argument("not an integer: " + s);
  return v;
}

inline Json rational_json(const Rational& r) {
  return Json{{"numerator", boost::multiprecision::numerator(r).str()},
              {"denominator", boost::multiprecision::denominator(r).str()}};
}

inline Rational rational_from_json(const Json& j) {
  return Rational(BigInt(j.at("numerator").get<std::string>()), BigInt(j.at("denominator").get<std::string>()));
}

inline Reason reason_from_name(const std::string& s) {
  for (Reason r : kAllReasons)
    if (s == reason_name(r)) return r;
  throw std::invalid_argument("unknown reason: " + s);
}

// ---- CSV ----

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV line");
  out.push_back(cur);
  return out;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

// ---- LevelTable ----

inline std::string render_csv(const LevelTable& t, bool with_per_parent) {
  std::string out = "k,irreducible,ambiguous,hensel";
  if (with_per_parent) out += ",per_parent_irreducible,per_parent_ambiguous,per_parent_hensel";
  out += "\n";
  for (const auto& r : t.rows) {
    out += num(r.level) + "," + num(r.irreducible) + "," + num(r.undecided) + "," + num(r.hensel);
    if (with_per_parent)
      out += "," + per_parent(r, r.irreducible) + "," + per_parent(r, r.undecided) + "," + per_parent(r, r.hensel);
    out += "\n";
  }
  if (t.truncated) out += "# truncated:true\n";
  return out;
}

/// Inverse of render_csv on the columns it carries; parents are recovered from per-parent columns.
inline LevelTable parse_level_table_csv(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.empty()) throw std::invalid_argument("empty CSV");
  auto header = csv_split(lines[0]);
  const bool pp = header.size() == 7;
  if (header.size() != 4 && !pp) throw std::invalid_argument("unexpected CSV header");
  LevelTable t;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i] == "# truncated:true") {
      t.truncated = true;
      continue;
    }
    auto f = csv_split(lines[i]);
    if (f.size() != header.size()) throw std::invalid_argument("ragged CSV row");
    LevelRow r;
    r.level = static_cast<int>(parse_int(f[0]));
    r.irreducible = parse_int(f[1]);
    r.undecided = parse_int(f[2]);
    r.hensel = parse_int(f[3]);
    if (pp) {
      Int counts[3] = {r.irreducible, r.undecided, r.hensel};
      for (int c = 0; c < 3; ++c) {
        const auto& cell = f[static_cast<std::size_t>(4 + c)];
        if (cell.empty()) continue;
        Rational q = parse_rational(cell);
        if (counts[c] != 0 && q != 0) {
          Rational par = Rational(counts[c]) / q;
          r.parents = static_cast<Int>(boost::multiprecision::numerator(par));
          break;
        }
      }
    }
    t.rows.push_back(std::move(r));
  }
  if (!t.rows.empty()) t.base_level = t.rows.front().level;
  return t;
}

inline Json to_json(const LevelTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json reasons = Json::object();
    for (const auto& [reason, c] : r.by_reason) reasons[reason_name(reason)] = num(c);
    rows.push_back(Json{{"k", num(r.level)},
                        {"irreducible", num(r.irreducible)},
                        {"ambiguous", num(r.undecided)},
                        {"hensel", num(r.hensel)},
                        {"parents", num(r.parents)},
                        {"excluded", num(r.excluded)},
                        {"per_parent_irreducible", per_parent(r, r.irreducible)},
                        {"per_parent_ambiguous", per_parent(r, r.undecided)},
                        {"per_parent_hensel", per_parent(r, r.hensel)},
                        {"by_reason", reasons}});
  }
  return Json{{"base_level", num(t.base_level)},
              {"lifts_per_parent", num(t.lifts_per_parent)},
              {"truncated", t.truncated},
              {"rows", rows}};
}

inline LevelTable level_table_from_json(const Json& j) {
  LevelTable t;
  t.base_level = static_cast<int>(parse_int(j.at("base_level")));
  t.lifts_per_parent = parse_int(j.at("lifts_per_parent"));
  t.truncated = j.at("truncated").get<bool>();
  for (const auto& jr : j.at("rows")) {
    LevelRow r;
    r.level = static_cast<int>(parse_int(jr.at("k")));
    r.irreducible = parse_int(jr.at("irreducible"));
    r.undecided = parse_int(jr.at("ambiguous"));
    r.hensel = parse_int(jr.at("hensel"));
    r.parents = parse_int(jr.at("parents"));
    r.excluded = parse_int(jr.at("excluded"));
    for (const auto& [name, c] : jr.at("by_reason").items()) r.by_reason[reason_from_name(name)] = parse_int(c);
    t.rows.push_back(std::move(r));
  }
  return t;
}

// ---- DensityBracket ----

inline Json to_json(const DensityBracket& b) {
  return Json{{"lower", rational_json(b.lower)},
              {"upper", rational_json(b.upper)},
              {"width", rational_json(b.width())},
              {"lower_decimal", to_decimal(b.lower, 12)},
              {"upper_decimal", to_decimal(b.upper, 12)},
              {"level_reached", num(b.level_reached)},
              {"truncated", b.truncated}};
}

inline DensityBracket density_bracket_from_json(const Json& j) {
  DensityBracket b;
  b.lower = rational_from_json(j.at("lower"));
  b.upper = rational_from_json(j.at("upper"));
  b.level_reached = static_cast<int>(parse_int(j.at("level_reached")));
  b.truncated = j.at("truncated").get<bool>();
  return b;
}

inline std::string render_csv(const DensityBracket& b) {
  return "lower,upper,width,level_reached,truncated\n" + to_string(b.lower) + "," + to_string(b.upper) + "," +
         to_string(b.width()) + "," + num(b.level_reached) + "," + (b.truncated ? "true" : "false") + "\n";
}

inline DensityBracket parse_density_bracket_csv(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.size() != 2) throw std::invalid_argument("bracket CSV needs a header and one row");
  auto f = csv_split(lines[1]);
  if (f.size() != 5) throw std::invalid_argument("bracket CSV row needs 5 fields");
  DensityBracket b;
  b.lower = parse_rational(f[0]);
  b.upper = parse_rational(f[1]);
  b.level_reached = static_cast<int>(parse_int(f[3]));
  b.truncated = f[4] == "true";
  return b;
}

// ---- ClaimReport ----

inline Json to_json(const ClaimReport& r) {
  Json grid = Json::object();
  for (const auto& [k, v] : r.grid) grid[k] = v;
  Json cx = Json::array();
  for (const auto& c : r.counterexamples) {
    Json params = Json::object();
    for (const auto& [k, v] : c.params) params[k] = num(v);
    cx.push_back(Json{{"what", c.what}, {"params", params}});
  }
  Json counts = Json::array();
  for (const auto& c : r.counts)
    counts.push_back(Json{{"label", c.label}, {"expected", c.expected.str()}, {"enumerated", c.enumerated.str()}});
  return Json{{"claim", r.claim},
              {"p", num(r.p)},
              {"passed", r.passed()},
              {"grid", grid},
              {"counterexample_count", num(r.counterexample_count)},
              {"counterexamples", cx},
              {"counts", counts}};
}

inline ClaimReport claim_report_from_json(const Json& j) {
  ClaimReport r;
  r.claim = j.at("claim").get<std::string>();
  r.p = parse_int(j.at("p"));
  for (const auto& [k, v] : j.at("grid").items()) r.grid.emplace_back(k, v.get<std::string>());
  r.counterexample_count = parse_int(j.at("counterexample_count"));
  for (const auto& jc : j.at("counterexamples")) {
    Counterexample c;
    c.what = jc.at("what").get<std::string>();
    for (const auto& [k, v] : jc.at("params").items()) c.params.emplace_back(k, parse_int(v));
    r.counterexamples.push_back(std::move(c));
  }
  for (const auto& jc : j.at("counts"))
    r.counts.push_back({jc.at("label").get<std::string>(), BigInt(jc.at("expected").get<std::string>()),
                        BigInt(jc.at("enumerated").get<std::string>())});
  return r;
}

/// Long format: a report row, then one row per grid entry, count check and counterexample.
inline std::string render_csv(const std::vector<ClaimReport>& reports) {
  std::string out = "claim,p,record,label,expected,enumerated\n";
  auto row = [&](const ClaimReport& r, const std::string& rec, const std::string& a, const std::string& b,
                 const std::string& c) {
    out += csv_field(r.claim) + "," + num(r.p) + "," + rec + "," + csv_field(a) + "," + csv_field(b) + "," +
           csv_field(c) + "\n";
  };
  for (const auto& r : reports) {
    row(r, "report", "", "", "");
    for (const auto& [k, v] : r.grid) row(r, "grid", k, v, "");
    for (const auto& c : r.counts) row(r, "count", c.label, c.expected.str(), c.enumerated.str());
    row(r, "counterexample_count", "", num(r.counterexample_count), "");
    for (const auto& c : r.counterexamples) {
      std::string params;
      for (const auto& [k, v] : c.params) params += (params.empty() ? "" : ";") + k + "=" + num(v);
      row(r, "counterexample", c.what, params, "");
    }
  }
  return out;
}

inline std::vector<ClaimReport> parse_claim_reports_csv(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.empty()) throw std::invalid_argument("empty CSV");
  std::vector<ClaimReport> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto f = csv_split(lines[i]);
    if (f.size() != 6) throw std::invalid_argument("claim CSV row needs 6 fields");
    if (f[2] == "report") {
      out.emplace_back();
      out.back().claim = f[0];
      out.back().p = parse_int(f[1]);
      continue;
    }
    if (out.empty()) throw std::invalid_argument("claim CSV row before any report row");
    auto& r = out.back();
    if (f[2] == "grid") {
      r.grid.emplace_back(f[3], f[4]);
    } else if (f[2] == "count") {
      r.counts.push_back({f[3], BigInt(f[4]), BigInt(f[5])});
    } else if (f[2] == "counterexample_count") {
      r.counterexample_count = parse_int(f[4]);
    } else if (f[2] == "counterexample") {
      Counterexample c;
      c.what = f[3];
      std::istringstream ps(f[4]);
      for (std::string kv; std::getline(ps, kv, ';');) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad counterexample parameter: " + kv);
        c.params.emplace_back(kv.substr(0, eq), parse_int(kv.substr(eq + 1)));
      }
      r.counterexamples.push_back(std::move(c));
    } else {
      throw std::invalid_argument("unknown claim CSV record: " + f[2]);
    }
  }
  return out;
}

// ---- envelope ----

inline Json envelope(const std::string& command, Json params, Json result) {
  return Json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"params", std::move(params)},
              {"result", std::move(result)},
              {"provenance", Json{{"artifact", "padic"}, {"version", kArtifactVersion}, {"arithmetic", "exact"}}}};
}

}  // namespace padic::io
