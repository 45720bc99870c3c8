#pragma once

#include <iomanip>
#include <map>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "brace.hpp"
#include "cycle_set.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "verify.hpp"

namespace cycloid {

using json = nlohmann::ordered_json;

// Cycle sets.  JSON {"n": 4, "table": [[...], ...]} with 0-based entries, or
// the text form "n=4" followed by one space-separated row per line.  Lines
// starting with '#' are metadata and ignored on input.

inline json to_json(CycleSet const &X)
{
  return json{{"n", X.size()}, {"table", X.rows()}};
}

namespace detail {

inline std::string strip_comments(std::string_view text)
{
  std::string out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] == '#')
      continue;
    out += line;
    out += '\n';
  }
  return out;
}

inline json parse_json(std::string const &text)
{
  try {
    return json::parse(text);
  } catch (json::exception const &e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

/// Square table of naturals below n, from a JSON value.
inline table_rows rows_from_json(json const &j, std::size_t n, char const *what)
{
  if (!j.is_array() || j.size() != n)
    throw ParseError(std::string(what) + ": expected " + std::to_string(n) +
                     " rows");
  table_rows rows;
  for (auto const &r : j) {
    if (!r.is_array() || r.size() != n)
      throw ParseError(std::string(what) + ": every row needs " +
                       std::to_string(n) + " entries");
    std::vector<point> row;
    for (auto const &v : r) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw ParseError(std::string(what) + ": entries must be naturals");
      auto e = v.get<unsigned long long>();
      if (e >= n)
        throw ParseError(std::string(what) + ": entry " + std::to_string(e) +
                         " out of range");
      row.push_back(static_cast<point>(e));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::size_t size_field(json const &j)
{
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned())
    throw ParseError("expected an object with a natural field \"n\"");
  return j["n"].get<std::size_t>();
}

} // namespace detail

/// Parses a table without validating the axioms (entries are range-checked).
inline table_rows parse_table(std::string_view text)
{
  auto body = detail::strip_comments(text);
  auto first = body.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw ParseError("empty input");
  if (body[first] == '{') {
    auto j = detail::parse_json(body);
    auto n = detail::size_field(j);
    if (!j.contains("table"))
      throw ParseError("missing field \"table\"");
    return detail::rows_from_json(j["table"], n, "table");
  }
  std::istringstream in(body);
  std::string header;
  in >> header;
  if (header.rfind("n=", 0) != 0)
    throw ParseError("text form must start with n=<size>");
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(header.substr(2), &used);
    if (used != header.size() - 2)
      throw ParseError("bad size in header: " + header);
  } catch (std::logic_error const &) {
    throw ParseError("bad size in header: " + header);
  }
  table_rows rows(n, std::vector<point>(n));
  for (auto &row : rows)
    for (auto &e : row) {
      long long v;
      if (!(in >> v))
        throw ParseError("text form: expected " + std::to_string(n * n) +
                         " entries");
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw ParseError("text form: entry " + std::to_string(v) +
                         " out of range");
      e = static_cast<point>(v);
    }
  std::string extra;
  if (in >> extra)
    throw ParseError("text form: trailing data '" + extra + "'");
  return rows;
}

inline CycleSet parse_cycle_set(std::string_view text)
{
  return CycleSet::validate(parse_table(text));
}

inline std::string to_text(CycleSet const &X)
{
  std::string out = "n=" + std::to_string(X.size()) + "\n";
  for (point x = 0; x < X.size(); ++x) {
    for (point y = 0; y < X.size(); ++y)
      out += (y ? " " : "") + std::to_string(X(x, y));
    out += '\n';
  }
  return out;
}

// Braces: {"n": int, "zero": int, "add": [[...]], "circ": [[...]]}.

inline json to_json(LeftBrace const &B)
{
  return json{{"n", B.n},
              {"zero", B.zero},
              {"add", B.add_rows()},
              {"circ", B.circ_rows()}};
}

inline LeftBrace parse_brace(std::string_view text)
{
  auto j = detail::parse_json(detail::strip_comments(text));
  auto n = detail::size_field(j);
  for (auto key : {"add", "circ"})
    if (!j.contains(key))
      throw ParseError(std::string("missing field \"") + key + "\"");
  auto add = detail::rows_from_json(j["add"], n, "add");
  auto circ = detail::rows_from_json(j["circ"], n, "circ");
  auto B = validate_brace(add, circ);
  if (j.contains("zero") && j["zero"] != B.zero)
    throw InvalidBrace(BraceRejection{BraceRejection::Kind::axiom, 0, 0, 0,
                                      "declared zero is not the identity"});
  return B;
}

// Census: JSON lines, one {"n","table"} record per representative and a
// trailing {"summary": ...} record.  Timing goes to '#' metadata lines so
// that the records are identical across runs.

inline json census_summary(Census const &c)
{
  std::ostringstream h;
  h << std::hex << std::setw(16) << std::setfill('0') << c.hash();
  return json{{"summary",
               {{"n", c.n},
                {"filter", c.filter},
                {"count", c.count()},
                {"engine", c.engine},
                {"hash", h.str()}}}};
}

inline void write_census(std::ostream &out, Census const &c,
                         bool representatives = true)
{
  if (representatives)
    for (auto const &X : c.representatives)
      out << to_json(X).dump() << '\n';
  out << census_summary(c).dump() << '\n';
}

inline std::string census_to_string(Census const &c, bool representatives = true)
{
  std::ostringstream s;
  write_census(s, c, representatives);
  return s.str();
}

/// Reads a census back.  Tables are range-checked but not validated, so a
/// file may carry deliberately broken members for harness self-tests.  A
/// file may hold several censuses, each closed by its summary; the records
/// are authoritative over the summary's count.
inline std::vector<Census> read_censuses(std::istream &in)
{
  std::vector<Census> out;
  Census current;
  std::vector<CycleSet> pending;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    json j;
    try {
      j = json::parse(line);
    } catch (json::exception const &e) {
      throw ParseError("census line " + std::to_string(lineno) + ": " + e.what());
    }
    if (j.contains("summary")) {
      auto const &s = j["summary"];
      current.n = s.value("n", std::size_t{0});
      current.filter = s.value("filter", std::string("all"));
      current.engine = s.value("engine", std::string(engine_version));
      current.representatives = std::move(pending);
      pending.clear();
      out.push_back(std::move(current));
      current = Census{};
      continue;
    }
    auto n = detail::size_field(j);
    if (!j.contains("table"))
      throw ParseError("census line " + std::to_string(lineno) +
                       ": missing table");
    pending.push_back(
        CycleSet::from_rows_unchecked(detail::rows_from_json(j["table"], n, "table")));
  }
  if (!pending.empty()) {
    // records without a summary: group them by size
    std::map<std::size_t, Census> by_size;
    for (auto &X : pending) {
      auto &c = by_size[X.size()];
      c.n = X.size();
      c.filter = "unlabelled";
      c.representatives.push_back(std::move(X));
    }
    for (auto &[n, c] : by_size)
      out.push_back(std::move(c));
  }
  return out;
}

// Reports.

inline json to_json(AnalysisReport const &r)
{
  json j;
  j["size"] = r.size;
  j["squaring"] = r.squaring.images();
  j["squaring_cycle_type"] = r.squaring_cycle_type;
  j["fix"] = r.fix;
  j["decomposable"] = r.decomposable;
  j["decomposition"] = r.decomposition;
  j["latin"] = r.latin;
  j["simple"] = r.simple;
  j["retractable"] = r.retractable;
  j["retraction_size"] = r.retraction_size;
  if (r.dehornoy_class)
    j["dehornoy_class"] = *r.dehornoy_class;
  else
    j["dehornoy_class"] = nullptr;
  j["group_order"] = r.group_order;
  j["disp_order"] = r.disp_order;
  j["group_nilpotent"] = r.group_nilpotent;
  j["disp_nilpotent"] = r.disp_nilpotent;
  j["pi_type"] = r.pi_type;
  return j;
}

inline json to_json(Counterexample const &c)
{
  json w = json::array();
  for (auto const &W : c.witnesses)
    w.push_back(to_json(W));
  return json{{"reason", c.reason}, {"table", to_json(c.table)}, {"witnesses", w}};
}

inline json to_json(Verdict const &v)
{
  json ces = json::array();
  for (auto const &c : v.counterexamples)
    ces.push_back(to_json(c));
  json notes = json::array();
  for (auto const &[k, val] : v.notes)
    notes.push_back(json{{"key", k}, {"value", val}});
  json records = json::array();
  for (auto const &r : v.records) {
    json values = json::object();
    for (auto const &[k, val] : r.values)
      values[k] = val;
    records.push_back(json{{"n", r.n}, {"index", r.index}, {"values", values}});
  }
  return json{{"checker", v.checker},
              {"scope", v.scope},
              {"passed", v.passed()},
              {"vacuous", v.vacuous()},
              {"examined", v.examined},
              {"skipped", v.skipped},
              {"counterexamples", ces},
              {"elapsed_seconds", v.elapsed_seconds},
              {"notes", notes},
              {"records", records}};
}

} // namespace cycloid
