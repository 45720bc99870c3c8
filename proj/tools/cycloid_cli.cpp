// cycloid: command-line front end.  Exit status 0 on success, 1 when an
// object is invalid or a checker finds a counterexample, 2 on usage or parse
// errors.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "cycloid/catalog.hpp"
#include "cycloid/io.hpp"

using namespace cycloid;

namespace {

constexpr char const *tool_version = "cycloid 0.1.0";

enum exit_code { ok = 0, invalid = 1, usage = 2 };

/// Raised for malformed requests that CLI11 cannot see (bad inputs, missing
/// files, unknown fields).
struct UsageError : Error
{
  using Error::Error;
};

struct Global
{
  std::string format; // empty: per-command default
  std::string output;
  bool zero_based = false;
  bool quiet = false;
  std::string command_line;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  point base() const { return zero_based ? 0 : 1; }
  bool json_out(char const *fallback) const
  {
    return (format.empty() ? std::string(fallback) : format) == "json";
  }
};

std::string utc_now()
{
  auto t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

/// Writes the body framed by '#' metadata lines.
void emit(Global const &g, std::string const &body)
{
  std::ostringstream out;
  out << "# " << tool_version << '\n'
      << "# command: " << g.command_line << '\n'
      << "# started: " << utc_now() << '\n'
      << body;
  if (!body.empty() && body.back() != '\n')
    out << '\n';
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            g.start)
                  .count();
  out << "# wall-clock: " << std::fixed << std::setprecision(3) << secs << " s\n";
  if (g.output.empty() || g.output == "-") {
    std::cout << out.str() << std::flush;
    return;
  }
  std::ofstream f(g.output);
  if (!f)
    throw UsageError("cannot write " + g.output);
  f << out.str();
}

std::string slurp(std::istream &in)
{
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// A path, "-" for standard input, or an inline table ("{...}" or "n=...").
std::string read_input(std::string const &arg)
{
  if (arg == "-")
    return slurp(std::cin);
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos &&
      (arg[first] == '{' || arg.compare(first, 2, "n=") == 0))
    return arg;
  std::ifstream f(arg);
  if (!f)
    throw UsageError("cannot read " + arg);
  return slurp(f);
}

struct TableInput
{
  std::string source;
  std::vector<std::string> sigmas; // σ_x in cycle notation, one per point

  void attach(CLI::App *cmd, char const *name = "input")
  {
    cmd->add_option(name, source,
                    "cycle set: path, '-' for stdin, or inline JSON / n=... text");
    cmd->add_option("--sigma", sigmas,
                    "σ_x in cycle notation, once per point in order (1-based "
                    "unless --zero-based)");
  }

  table_rows rows(Global const &g) const
  {
    if (!sigmas.empty()) {
      if (!source.empty())
        throw UsageError("give either an input or --sigma, not both");
      table_rows rows;
      for (auto const &s : sigmas) {
        auto p = parse_cycles(s, sigmas.size(), g.base());
        rows.emplace_back(p.images().begin(), p.images().end());
      }
      return rows;
    }
    if (source.empty())
      throw UsageError("missing input");
    return parse_table(read_input(source));
  }

  CycleSet cycle_set(Global const &g) const
  {
    return CycleSet::validate(rows(g));
  }
};

std::string points(std::vector<point> const &v, point base)
{
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? " " : "") + std::to_string(v[i] + base);
  return s + "}";
}

std::string numbers(std::vector<std::size_t> const &v, char const *sep = ",")
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string cycle_set_body(Global const &g, CycleSet const &X)
{
  return g.json_out("json") ? to_json(X).dump() + "\n" : to_text(X);
}

std::string brace_body(Global const &g, LeftBrace const &B)
{
  if (g.json_out("json"))
    return to_json(B).dump() + "\n";
  std::ostringstream s;
  s << "n=" << B.n << " zero=" << B.zero << "\nadd:\n";
  for (auto const &r : B.add_rows())
    s << numbers({r.begin(), r.end()}, " ") << '\n';
  s << "circ:\n";
  for (auto const &r : B.circ_rows())
    s << numbers({r.begin(), r.end()}, " ") << '\n';
  return s.str();
}

// validate

int cmd_validate(Global const &g, TableInput const &in)
{
  auto rows = in.rows(g);
  std::optional<Rejection> rejection;
  try {
    CycleSet::validate(rows);
  } catch (InvalidCycleSet const &e) {
    rejection = e.rejection;
  }
  bool structural = rejection && (rejection->kind == Rejection::Kind::shape ||
                                  rejection->kind == Rejection::Kind::out_of_range ||
                                  rejection->kind == Rejection::Kind::row_not_bijective);
  if (g.json_out("text")) {
    json j{{"valid", !rejection}};
    if (rejection) {
      j["reason"] = rejection->message();
      if (rejection->kind == Rejection::Kind::cycloid)
        j["witness"] = {rejection->x, rejection->y, rejection->z};
    }
    emit(g, j.dump() + "\n");
  } else {
    emit(g, rejection ? "invalid: " + rejection->message() + "\n" : "valid\n");
  }
  if (!rejection)
    return ok;
  // tables whose rows are not permutations are rejected as malformed input
  return structural ? usage : invalid;
}

// analyze

std::vector<std::pair<std::string, std::string>> report_lines(AnalysisReport const &r,
                                                              point base)
{
  std::vector<std::string> parts;
  for (auto const &p : r.decomposition)
    parts.push_back(points(p, base));
  std::string decomposition;
  for (std::size_t i = 0; i < parts.size(); ++i)
    decomposition += (i ? " " : "") + parts[i];
  return {
      {"size", std::to_string(r.size)},
      {"squaring", to_cycle_string(r.squaring, base)},
      {"squaring_cycle_type", numbers(r.squaring_cycle_type)},
      {"fix", points(r.fix, base)},
      {"decomposable", yes_no(r.decomposable)},
      {"decomposition", r.decomposable ? decomposition : "-"},
      {"latin", yes_no(r.latin)},
      {"simple", yes_no(r.simple)},
      {"retractable", yes_no(r.retractable)},
      {"retraction_size", std::to_string(r.retraction_size)},
      {"dehornoy_class",
       r.dehornoy_class ? std::to_string(*r.dehornoy_class) : "cap exceeded"},
      {"group_order", std::to_string(r.group_order)},
      {"disp_order", std::to_string(r.disp_order)},
      {"group_nilpotent", yes_no(r.group_nilpotent)},
      {"disp_nilpotent", yes_no(r.disp_nilpotent)},
      {"pi_type", yes_no(r.pi_type)},
  };
}

int cmd_analyze(Global const &g, TableInput const &in, std::string const &field)
{
  auto report = analyze(in.cycle_set(g));
  if (g.json_out("text")) {
    auto j = to_json(report);
    if (field.empty()) {
      emit(g, j.dump(2) + "\n");
    } else {
      if (!j.contains(field))
        throw UsageError("unknown field " + field);
      emit(g, j[field].dump() + "\n");
    }
    return ok;
  }
  std::string body;
  bool found = field.empty();
  for (auto const &[k, v] : report_lines(report, g.base())) {
    if (field.empty())
      body += k + ": " + v + "\n";
    else if (k == field) {
      body = v + "\n";
      found = true;
    }
  }
  if (!found)
    throw UsageError("unknown field " + field);
  emit(g, body);
  return ok;
}

// enumerate

struct EnumerateArgs
{
  std::size_t n = 0;
  EnumerationFilter filter;
  std::string squaring;
  bool count_only = false;
  unsigned jobs = 1;
  std::size_t prefix_depth = 2;
};

std::vector<std::size_t> parse_type(std::string const &text)
{
  std::vector<std::size_t> type;
  std::stringstream s(text);
  std::string part;
  while (std::getline(s, part, ',')) {
    try {
      std::size_t used = 0;
      auto v = std::stoul(part, &used);
      if (used != part.size() || v == 0)
        throw UsageError("bad cycle type " + text);
      type.push_back(v);
    } catch (std::logic_error const &) {
      throw UsageError("bad cycle type " + text);
    }
  }
  if (type.empty())
    throw UsageError("empty cycle type");
  std::sort(type.rbegin(), type.rend());
  return type;
}

EnumerationOptions enumeration_options(Global const &g, unsigned jobs,
                                       std::size_t prefix_depth, char const *label)
{
  EnumerationOptions eo;
  eo.jobs = std::max(1u, jobs);
  eo.prefix_depth = prefix_depth;
  if (!g.quiet) {
    auto last = std::make_shared<std::size_t>(0);
    eo.progress = [last, label](std::size_t done, std::size_t total) {
      auto tenth = total ? done * 10 / total : 10;
      if (tenth != *last || done == total) {
        *last = tenth;
        std::cerr << label << ": " << done << "/" << total << " work items\n";
      }
    };
  }
  return eo;
}

int cmd_enumerate(Global const &g, EnumerateArgs a)
{
  if (!a.squaring.empty())
    a.filter.squaring_type = parse_type(a.squaring);
  auto census = enumerate(a.n, a.filter,
                          enumeration_options(g, a.jobs, a.prefix_depth, "enumerate"));
  if (!g.quiet)
    std::cerr << "enumerate: n=" << census.n << " [" << census.filter
              << "] count " << census.count() << "\n";
  if (g.json_out("json")) {
    emit(g, census_to_string(census, !a.count_only));
    return ok;
  }
  std::string body;
  if (!a.count_only)
    for (auto const &X : census.representatives)
      body += to_text(X) + "\n";
  body += "count " + std::to_string(census.count()) + "\n";
  emit(g, body);
  return ok;
}

// verify

struct VerifyArgs
{
  bool all = false;
  std::vector<std::string> suite;
  std::size_t max_size = 5;
  std::vector<std::string> census_paths;
  bool validate_members = false;
  bool self_test = false;
  bool extended = false;
  unsigned jobs = 1;
};

std::string verdict_table(std::vector<Verdict> const &verdicts)
{
  std::ostringstream s;
  s << std::left << std::setw(26) << "checker" << std::setw(9) << "status"
    << std::right << std::setw(10) << "examined" << std::setw(10) << "skipped"
    << std::setw(8) << "counter" << std::setw(10) << "seconds" << '\n';
  for (auto const &v : verdicts) {
    auto status = !v.passed() ? "FAIL" : v.vacuous() ? "VACUOUS" : "PASS";
    s << std::left << std::setw(26) << v.checker << std::setw(9) << status
      << std::right << std::setw(10) << v.examined << std::setw(10) << v.skipped
      << std::setw(8) << v.counterexamples.size() << std::setw(10) << std::fixed
      << std::setprecision(3) << v.elapsed_seconds << '\n';
  }
  return s.str();
}

std::string as_comments(std::string const &text)
{
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    out += "# " + line + "\n";
  return out;
}

int cmd_self_test(Global const &g, VerifyArgs const &)
{
  auto results = self_test();
  bool all_detected = true;
  std::string body;
  for (auto const &r : results) {
    all_detected &= r.detected;
    if (g.json_out("text"))
      body += json{{"checker", r.checker}, {"detected", r.detected}, {"reason", r.reason}}
                  .dump() +
              "\n";
    else
      body += (r.detected ? "detected  " : "MISSED    ") + r.checker + ": " +
              r.reason + "\n";
  }
  emit(g, body);
  return all_detected ? ok : invalid;
}

int cmd_verify(Global const &g, VerifyArgs a)
{
  if (a.self_test)
    return cmd_self_test(g, a);
  std::vector<std::string> ids;
  if (a.all)
    ids = all_checker_ids();
  for (auto const &s : a.suite) {
    std::stringstream ss(s);
    std::string id;
    while (std::getline(ss, id, ','))
      if (!id.empty()) {
        find_checker(id); // unknown ids fail before any work
        ids.push_back(id);
      }
  }
  if (ids.empty() && !a.extended)
    throw UsageError("verify needs --all, --suite, --self-test or --extended");

  VerifyOptions vo;
  vo.validate_members = a.validate_members;
  std::vector<Census> scope;
  if (!a.census_paths.empty()) {
    for (auto const &path : a.census_paths) {
      std::ifstream f(path);
      if (!f)
        throw UsageError("missing census " + path);
      for (auto &c : read_censuses(f))
        scope.push_back(std::move(c));
    }
  } else if (!ids.empty()) {
    auto eo = enumeration_options(g, a.jobs, 2, "census");
    for (std::size_t n = 1; n <= a.max_size; ++n) {
      if (!g.quiet)
        std::cerr << "census: building n=" << n << "\n";
      scope.push_back(enumerate(n, {}, eo));
    }
  }

  std::vector<Verdict> verdicts;
  if (!ids.empty()) {
    if (!g.quiet)
      std::cerr << "verify: " << ids.size() << " checker(s) over "
                << describe_scope(scope) << "\n";
    verdicts = run_suite(ids, scope, vo, std::max(1u, a.jobs));
  }
  if (a.extended) {
    if (!g.quiet)
      std::cerr << "verify: final_corollary on the T-constrained n=9 slice\n";
    verdicts.push_back(check_final_corollary_constrained(
        9, enumeration_options(g, a.jobs, 1, "n=9 slice")));
  }

  bool any_counterexample = false;
  for (auto const &v : verdicts)
    any_counterexample |= !v.passed();
  auto table = verdict_table(verdicts);
  if (g.json_out("json")) {
    std::string body;
    for (auto const &v : verdicts)
      body += to_json(v).dump() + "\n";
    emit(g, body + as_comments(table));
  } else {
    std::string body = table;
    for (auto const &v : verdicts)
      for (auto const &c : v.counterexamples)
        body += v.checker + ": n=" + std::to_string(c.table.size()) + " " +
                to_json(c.table)["table"].dump() + ": " + c.reason + "\n";
    emit(g, body);
  }
  return any_counterexample ? invalid : ok;
}

// brace

std::vector<element> parse_elements(std::string const &text, std::size_t n)
{
  std::vector<element> out;
  std::stringstream s(text);
  std::string part;
  while (std::getline(s, part, ',')) {
    auto first = part.find_first_not_of(' ');
    if (first == std::string::npos)
      continue;
    try {
      std::size_t used = 0;
      auto v = std::stoul(part.substr(first), &used);
      if (used != part.size() - first || v >= n)
        throw UsageError("bad element " + part);
      out.push_back(static_cast<element>(v));
    } catch (std::logic_error const &) {
      throw UsageError("bad element " + part);
    }
  }
  return out;
}

LeftBrace load_brace(std::string const &path) { return parse_brace(read_input(path)); }

int cmd_brace_validate(Global const &g, std::string const &path)
{
  auto text = read_input(path);
  try {
    auto B = parse_brace(text);
    emit(g, g.json_out("text") ? json{{"valid", true}, {"n", B.n}}.dump() + "\n"
                               : "valid\n");
    return ok;
  } catch (InvalidBrace const &e) {
    emit(g, g.json_out("text")
                ? json{{"valid", false}, {"reason", e.what()}}.dump() + "\n"
                : std::string("invalid: ") + e.what() + "\n");
    return invalid;
  }
}

int cmd_brace_socle(Global const &g, std::string const &path)
{
  auto B = load_brace(path);
  auto S = socle(B);
  auto index = B.n / S.size();
  if (g.json_out("text")) {
    emit(g, json{{"socle", S}, {"order", S.size()}, {"index", index}}.dump() + "\n");
    return ok;
  }
  std::vector<std::size_t> v(S.begin(), S.end());
  emit(g, "socle: {" + numbers(v, " ") + "}\norder: " + std::to_string(S.size()) +
              "\nindex: " + std::to_string(index) + "\n");
  return ok;
}

int cmd_brace_cosets(Global const &g, std::string const &path, element a,
                     std::string const &k)
{
  auto B = load_brace(path);
  if (a >= B.n)
    throw UsageError("--a out of range");
  // Y is the λ-orbit of a
  CycleBase Y;
  for (auto const &o : lambda_orbits(B))
    if (std::find(o.begin(), o.end(), a) != o.end())
      Y.elements = o;
  std::sort(Y.elements.begin(), Y.elements.end());
  Y.transitive = true;
  auto X = coset_construction(B, Y, a, parse_elements(k, B.n));
  emit(g, cycle_set_body(g, X));
  return ok;
}

int cmd_brace_of(Global const &g, TableInput const &in)
{
  auto P = brace_of_cycle_set(in.cycle_set(g));
  if (!g.json_out("json")) {
    std::string body = brace_body(g, P.brace) + "elements:\n";
    for (std::size_t i = 0; i < P.elements.size(); ++i)
      body += std::to_string(i) + " " + to_cycle_string(P.elements[i], g.base()) + "\n";
    emit(g, body);
    return ok;
  }
  auto j = to_json(P.brace);
  json elems = json::array();
  for (auto const &p : P.elements)
    elems.push_back(p.images());
  j["elements"] = elems;
  j["generators"] = P.generator;
  emit(g, j.dump() + "\n");
  return ok;
}

std::string quote_arg(std::string const &a)
{
  if (!a.empty() && a.find_first_of(" \t\"'()$;|&<>{}[]*?#") == std::string::npos)
    return a;
  std::string q = "'";
  for (char c : a)
    q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

} // namespace

int main(int argc, char **argv)
{
  Global g;
  for (int i = 0; i < argc; ++i)
    g.command_line += (i ? " " : "") + quote_arg(i ? argv[i] : "cycloid");

  CLI::App app{"Finite non-degenerate involutive cycle sets: construction, "
               "analysis, enumeration, braces and verification."};
  app.require_subcommand(1);
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--output", g.output, "output file (default stdout)");
  app.add_flag("--zero-based", g.zero_based,
               "cycle notation uses points 0..n-1 instead of 1..n");
  app.add_flag("-q,--quiet", g.quiet, "no progress on stderr");
  app.fallthrough();

  std::function<int()> run;

  TableInput validate_in;
  auto *validate = app.add_subcommand("validate", "check the cycle set axioms");
  validate_in.attach(validate);
  validate->callback([&] { run = [&] { return cmd_validate(g, validate_in); }; });

  TableInput analyze_in;
  std::string field;
  auto *an = app.add_subcommand("analyze", "report the invariants of a cycle set");
  analyze_in.attach(an);
  an->add_option("--field", field, "print a single datum");
  an->callback([&] { run = [&] { return cmd_analyze(g, analyze_in, field); }; });

  EnumerateArgs ea;
  auto *en = app.add_subcommand("enumerate", "census up to isomorphism");
  en->add_option("-n,--size", ea.n, "number of points")->required();
  en->add_flag("--indecomposable", ea.filter.indecomposable);
  en->add_flag("--latin", ea.filter.latin);
  en->add_flag("--simple", ea.filter.simple);
  en->add_flag("--irretractable", ea.filter.irretractable);
  en->add_flag("--nilpotent", ea.filter.nilpotent, "G(X) nilpotent");
  en->add_option("--squaring", ea.squaring, "cycle type of T, e.g. \"2,1,1\"");
  en->add_flag("--count-only", ea.count_only, "summary record only");
  en->add_option("-j,--jobs", ea.jobs, "worker threads")->check(CLI::PositiveNumber);
  en->add_option("--prefix-depth", ea.prefix_depth, "rows fixed per work item")
      ->check(CLI::PositiveNumber);
  en->callback([&] { run = [&] { return cmd_enumerate(g, ea); }; });

  VerifyArgs va;
  auto *ve = app.add_subcommand("verify", "run the verification harness");
  ve->add_flag("--all", va.all, "every checker");
  ve->add_option("--suite", va.suite, "checker ids, comma separated");
  ve->add_option("--max-size", va.max_size, "census sizes 1..N when no --census");
  ve->add_option("--census", va.census_paths, "census file(s) to check instead");
  ve->add_flag("--validate-members", va.validate_members,
               "skip census members that are not cycle sets");
  ve->add_flag("--self-test", va.self_test, "mutation self-test of every checker");
  ve->add_flag("--extended", va.extended,
               "final corollary on the T-constrained n=9 slice (slow)");
  ve->add_option("-j,--jobs", va.jobs, "worker threads")->check(CLI::PositiveNumber);
  ve->callback([&] { run = [&] { return cmd_verify(g, va); }; });

  TableInput cable_in;
  std::uint64_t k = 2;
  auto *ca = app.add_subcommand("cable", "k-th cabling");
  cable_in.attach(ca);
  ca->add_option("-k", k, "cabling degree")->check(CLI::PositiveNumber);
  ca->callback([&] {
    run = [&] {
      emit(g, cycle_set_body(g, cabling(cable_in.cycle_set(g), k)));
      return ok;
    };
  });

  TableInput retract_in;
  auto *re = app.add_subcommand("retract", "retraction Ret(X)");
  retract_in.attach(re);
  re->callback([&] {
    run = [&] {
      emit(g, cycle_set_body(g, retraction(retract_in.cycle_set(g)).set));
      return ok;
    };
  });

  std::string left, right;
  auto *pr = app.add_subcommand("product", "direct product X × Y");
  pr->add_option("left", left)->required();
  pr->add_option("right", right)->required();
  pr->callback([&] {
    run = [&] {
      auto X = parse_cycle_set(read_input(left));
      auto Y = parse_cycle_set(read_input(right));
      emit(g, cycle_set_body(g, direct_product(X, Y)));
      return ok;
    };
  });

  auto *br = app.add_subcommand("brace", "left brace operations");
  br->require_subcommand(1);
  std::string brace_path;
  auto *bv = br->add_subcommand("validate", "check the brace axioms");
  bv->add_option("input", brace_path)->required();
  bv->callback([&] { run = [&] { return cmd_brace_validate(g, brace_path); }; });
  auto *bs = br->add_subcommand("socle", "kernel of λ");
  bs->add_option("input", brace_path)->required();
  bs->callback([&] { run = [&] { return cmd_brace_socle(g, brace_path); }; });
  element base_a = 0;
  std::string subgroup = "0";
  auto *bc = br->add_subcommand("cosets", "cycle set on the cosets of K");
  bc->add_option("input", brace_path)->required();
  bc->add_option("--a", base_a, "base element a")->required();
  bc->add_option("--k", subgroup, "subgroup K as elements, e.g. \"0,3\"");
  bc->callback([&] {
    run = [&] { return cmd_brace_cosets(g, brace_path, base_a, subgroup); };
  });
  TableInput of_in;
  auto *bo = br->add_subcommand("of-cycleset", "brace structure on G(X)");
  of_in.attach(bo);
  bo->callback([&] { run = [&] { return cmd_brace_of(g, of_in); }; });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    return app.exit(e) == 0 ? ok : usage;
  }

  try {
    return run();
  } catch (InvalidCycleSet const &e) {
    std::cerr << "cycloid: invalid cycle set: " << e.what() << '\n';
    auto kind = e.rejection.kind;
    return kind == Rejection::Kind::cycloid || kind == Rejection::Kind::degenerate
               ? invalid
               : usage;
  } catch (InvalidBrace const &e) {
    std::cerr << "cycloid: invalid brace: " << e.what() << '\n';
    return invalid;
  } catch (ParseError const &e) {
    std::cerr << "cycloid: parse error: " << e.what() << '\n';
    return usage;
  } catch (UsageError const &e) {
    std::cerr << "cycloid: " << e.what() << '\n';
    return usage;
  } catch (CapExceeded const &e) {
    std::cerr << "cycloid: cap exceeded: " << e.what() << '\n';
    return usage;
  } catch (PreconditionFailed const &e) {
    std::cerr << "cycloid: " << e.what() << '\n';
    return usage;
  } catch (Error const &e) {
    std::cerr << "cycloid: " << e.what() << '\n';
    return invalid;
  }
}
