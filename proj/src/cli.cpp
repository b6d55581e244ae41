#include "wythoff/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "wythoff/errors.hpp"
#include "wythoff/game.hpp"
#include "wythoff/oracle.hpp"
#include "wythoff/service.hpp"
#include "wythoff/sponge.hpp"

namespace wythoff::cli {

namespace {

using nlohmann::json;

json coords_json(std::span<const Natural> c) { return std::vector<Natural>(c.begin(), c.end()); }

void write_output(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open '" + path + "' for writing");
  f << data;
  if (!f) throw InvalidArgument("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

int cmd_verdict(const std::string& pos_text, bool as_json, std::ostream& out) {
  const Position pos = parse_position(pos_text);
  const bool p = is_p_position(pos);
  if (as_json) {
    out << json{{"pos", coords_json(pos.coords())}, {"is_p", p}, {"nim_sum", nim_sum(pos.coords())}}.dump()
        << '\n';
  } else {
    out << (p ? "P" : "N") << '\n';
  }
  return kExitOk;
}

int cmd_move(const std::string& pos_text, bool as_json, std::ostream& out) {
  const Position pos = parse_position(pos_text);
  if (is_p_position(pos)) {
    if (as_json) {
      out << json{{"pos", coords_json(pos.coords())}, {"is_p", true}, {"move", nullptr}}.dump() << '\n';
    } else {
      out << "P-position\n";
    }
    return kExitOk;
  }
  const Move m = winning_move(pos);
  const Position next = apply_move(pos, m);
  if (as_json) {
    out << json{{"pos", coords_json(pos.coords())},
                {"is_p", false},
                {"move", service::move_to_json(m)},
                {"result", coords_json(next.coords())}}
               .dump()
        << '\n';
    return kExitOk;
  }
  std::size_t heap = 0;
  while (m.vector[heap] == 0) ++heap;
  out << "remove " << m.k << " from heap " << (heap + 1) << " -> " << to_string(next) << '\n';
  return kExitOk;
}

int cmd_solve(const std::string& spec_path, Natural bound, const std::string& out_path, std::ostream& out) {
  const GameSpec spec = GameSpec::from_json(read_file(spec_path));
  const VerdictTable table = solve_box(spec, bound);
  const std::string csv = table.to_csv();
  if (out_path.empty() || out_path == "-") {
    out << csv;
  } else {
    write_output(out_path, csv, out);
    out << "solved [0," << bound << ")^" << spec.n() << ": " << table.p_count() << " P, "
        << (table.cells() - table.p_count()) << " N -> " << out_path << '\n';
  }
  return kExitOk;
}

int cmd_verify(std::size_t n, Natural bound, bool as_json, std::ostream& out) {
  require_oracle_dimension(n);
  const VerdictTable table = solve_box(GameSpec::wythoff(n), bound);
  std::optional<Position> counterexample;
  std::size_t matched = 0;
  for (std::size_t idx = 0; idx < table.cells(); ++idx) {
    const Position x = table.position_at(idx);
    const bool solver_p = table.verdict_at(idx) == Verdict::P;
    if (solver_p != is_p_position(x)) {
      counterexample = x;
      break;
    }
    matched += solver_p ? 1 : 0;
  }
  if (as_json) {
    json j{{"n", n}, {"bound", bound}, {"pass", !counterexample}, {"p_positions", table.p_count()}};
    if (counterexample) {
      j["counterexample"] = coords_json(counterexample->coords());
      j["solver"] = to_string(table.verdict(*counterexample));
    }
    out << j.dump() << '\n';
  } else if (counterexample) {
    out << "FAIL: counterexample " << to_string(*counterexample) << " solver="
        << to_string(table.verdict(*counterexample))
        << " oracle=" << (is_p_position(*counterexample) ? "P" : "N") << '\n';
  } else {
    out << "PASS (" << table.cells() << " positions matched, " << matched << " P-positions)\n";
  }
  return counterexample ? kExitFail : kExitOk;
}

int cmd_verify_classic(Natural bound, bool as_json, std::ostream& out) {
  const VerdictTable table = solve_box(GameSpec::wythoff(2), bound);
  const auto solved = table.p_positions();
  const auto beatty = beatty_p_positions(bound);
  std::optional<Position> counterexample;
  auto a = solved.begin();
  auto b = beatty.begin();
  while (a != solved.end() || b != beatty.end()) {
    if (b == beatty.end() || (a != solved.end() && *a < *b)) {
      counterexample = *a;
      break;
    }
    if (a == solved.end() || *b < *a) {
      counterexample = *b;
      break;
    }
    ++a;
    ++b;
  }
  if (as_json) {
    json j{{"bound", bound}, {"pass", !counterexample}, {"p_positions", solved.size()}};
    if (counterexample) j["counterexample"] = coords_json(counterexample->coords());
    out << j.dump() << '\n';
  } else if (counterexample) {
    out << "FAIL: counterexample " << to_string(*counterexample) << " solver="
        << to_string(table.verdict(*counterexample)) << '\n';
  } else {
    out << "PASS\n";
  }
  return counterexample ? kExitFail : kExitOk;
}

int cmd_sponge(std::size_t n, unsigned m, const std::string& format, const std::string& out_path,
               std::ostream& out) {
  const ExportFormat f = parse_export_format(format);
  const SpongeLevel level = generate_level(n, m);
  std::string data = export_points(level, f);
  if (f == ExportFormat::kJson) data += '\n';
  write_output(out_path, data, out);
  return kExitOk;
}

int cmd_decompose(std::size_t n, unsigned m, bool as_json, std::ostream& out) {
  if (m == 0) throw InvalidArgument("decompose needs --m >= 1");
  const SpongeLevel level = generate_level(n, m);
  const SpongeLevel previous = generate_level(n, m - 1);
  const TSet t = t_set(n);
  const auto parts = decompose(level);

  bool pass = parts.size() == t.size();
  std::size_t total = 0;
  json rows = json::array();
  std::ostringstream text;
  for (const auto& [v, part] : parts) {
    const bool in_t = std::find(t.vectors().begin(), t.vectors().end(), v) != t.vectors().end();
    const bool equal = part == previous;
    pass = pass && in_t && equal;
    total += part.size();
    rows.push_back(json{{"v", coords_json(v.coords())}, {"points", part.size()}, {"equals_previous", equal}});
    text << "v=" << to_string(v) << " points=" << part.size() << " equals P_" << (m - 1) << ": "
         << (equal ? "yes" : "no") << '\n';
  }
  pass = pass && total == level.size();
  if (as_json) {
    out << json{{"n", n}, {"m", m}, {"points", level.size()}, {"parts", rows}, {"pass", pass}}.dump() << '\n';
  } else {
    out << text.str();
    out << (pass ? "PASS" : "FAIL") << ": |P_" << m << "| = " << level.size() << " split into " << parts.size()
        << " disjoint translates of P_" << (m - 1) << " (|T| = " << t.size() << ")\n";
  }
  return pass ? kExitOk : kExitFail;
}

std::string slope_text(const std::optional<Fraction>& s) {
  if (!s) return "-";
  if (s->denominator == 1) return std::to_string(s->numerator);
  return std::to_string(s->numerator) + "/" + std::to_string(s->denominator);
}

int cmd_dimension(std::size_t n, unsigned max_m, bool as_json, std::ostream& out) {
  std::vector<SpongeLevel> levels;
  levels.push_back(generate_level(n, 0));
  while (levels.back().m() < max_m) levels.push_back(lift(levels.back()));
  const auto rows = box_count(levels);
  if (as_json) {
    json j = json::array();
    for (const auto& r : rows) {
      j.push_back(json{{"m", r.m}, {"count", r.count}, {"slope", r.slope ? json(slope_text(r.slope)) : json(nullptr)}});
    }
    out << j.dump() << '\n';
  } else {
    out << "m count slope\n";
    for (const auto& r : rows) out << r.m << ' ' << r.count << ' ' << slope_text(r.slope) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"n-heap Wythoff's game: oracle, retrograde solver and discrete Sierpinski sponge", "wythoff"};
  app.require_subcommand(1);

  std::string pos;
  bool as_json = false;
  std::string spec_path;
  std::string out_path;
  std::string format = "csv";
  std::string host = "0.0.0.0";
  Natural bound = 16;
  std::size_t n = 3;
  unsigned m = 6;
  unsigned max_m = 6;
  int port = 8080;

  auto* verdict = app.add_subcommand("verdict", "print P or N for a position (odd n >= 3)");
  verdict->add_option("--pos", pos, "heap sizes, comma separated")->required();
  verdict->add_flag("--json", as_json, "machine-readable output");

  auto* move = app.add_subcommand("move", "print the constructed winning move");
  move->add_option("--pos", pos, "heap sizes, comma separated")->required();
  move->add_flag("--json", as_json, "machine-readable output");

  auto* solve = app.add_subcommand("solve", "retrograde analysis of a box for any move-vector game");
  solve->add_option("--spec", spec_path, "game spec JSON {\"n\":..,\"vectors\":[[..],..]}")->required();
  solve->add_option("--bound", bound, "box bound B, positions in [0,B)^n")->required();
  solve->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "compare the nim-sum oracle with the solver on a box");
  verify->add_option("--n", n, "odd number of heaps >= 3")->required();
  verify->add_option("--bound", bound, "box bound")->required();
  verify->add_flag("--json", as_json, "machine-readable output");

  auto* verify_classic = app.add_subcommand("verify-classic", "compare Beatty pairs with the two-heap solver");
  verify_classic->add_option("--bound", bound, "box bound")->required();
  verify_classic->add_flag("--json", as_json, "machine-readable output");

  auto* sponge = app.add_subcommand("sponge", "export the discrete sponge P_m");
  sponge->add_option("--n", n, "odd dimension >= 3")->required();
  sponge->add_option("--m", m, "level")->required();
  sponge->add_option("--format", format, "csv, ply or json")->check(CLI::IsMember({"csv", "ply", "json"}));
  sponge->add_option("--out", out_path, "output path (default stdout)");

  auto* decomp = app.add_subcommand("decompose", "split P_m into translates of P_{m-1}");
  decomp->add_option("--n", n, "odd dimension >= 3")->required();
  decomp->add_option("--m", m, "level >= 1")->required();
  decomp->add_flag("--json", as_json, "machine-readable output");

  auto* dimension = app.add_subcommand("dimension", "print (m, count, slope) rows for m = 0..max-m");
  dimension->add_option("--n", n, "odd dimension >= 3")->required();
  dimension->add_option("--max-m", max_m, "largest level")->required();
  dimension->add_flag("--json", as_json, "machine-readable output");

  auto* serve = app.add_subcommand("serve", "run the HTTP API");
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*verdict) return cmd_verdict(pos, as_json, out);
    if (*move) return cmd_move(pos, as_json, out);
    if (*solve) return cmd_solve(spec_path, bound, out_path, out);
    if (*verify) return cmd_verify(n, bound, as_json, out);
    if (*verify_classic) return cmd_verify_classic(bound, as_json, out);
    if (*sponge) return cmd_sponge(n, m, format, out_path, out);
    if (*decomp) return cmd_decompose(n, m, as_json, out);
    if (*dimension) return cmd_dimension(n, max_m, as_json, out);
    if (*serve) {
      out << "listening on http://" << host << ':' << port << std::endl;
      if (!service::serve(host, port)) {
        err << "error: cannot listen on " << host << ':' << port << '\n';
        return kExitUsage;
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace wythoff::cli
