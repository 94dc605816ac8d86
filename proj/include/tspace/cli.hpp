#pragma once

// Command dispatch for the tspace tool.  Everything here is a thin shell over
// the library; run_command exists so tests can drive the tool in-process.
//
//   tspace check FILE                  print the R/T/K/H/A/C/F flags
//   tspace reflect --into B FILE       unit map and reflected space
//   tspace extend FILE                 the hat-extension of the relation
//   tspace product FILE FILE           binary product space
//   tspace laws --monad SPEC           monad law report
//   tspace dot FILE                    DOT rendering
//
// Global flags: --json for machine-readable output, --budget N to change the
// enumeration cap.  Exit codes: 0 ok, 1 validation or parse error, 2 budget
// exceeded.

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tspace/fibgen.hpp"
#include "tspace/io.hpp"

namespace tspace {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string error_type(const Error& e) {
  if (dynamic_cast<const BudgetExceeded*>(&e)) return "BudgetExceeded";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const EncodingError*>(&e)) return "EncodingError";
  if (dynamic_cast<const IncompatibleMonads*>(&e)) return "IncompatibleMonads";
  if (dynamic_cast<const WrongMonad*>(&e)) return "WrongMonad";
  if (dynamic_cast<const NotAlgebraic*>(&e)) return "NotAlgebraic";
  if (dynamic_cast<const LawViolation*>(&e)) return "LawViolation";
  if (dynamic_cast<const InvalidMonoid*>(&e)) return "InvalidMonoid";
  if (dynamic_cast<const NotGenerating*>(&e)) return "NotGenerating";
  if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
  if (dynamic_cast<const InternalInvariantViolated*>(&e)) return "InternalInvariantViolated";
  return "Error";
}

inline const char* mark(bool b) { return b ? "✓" : "✗"; }

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"finite T-space toolkit"};
  app.require_subcommand(1);
  bool as_json = false;
  std::size_t budget = kDefaultBudget;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--budget", budget, "enumeration cap for T-carriers");

  std::string file_a, file_b, into = "B", monad_spec;
  int max_n = 3;

  CLI::App* cmd_check = app.add_subcommand("check", "report the space conditions");
  cmd_check->add_option("file", file_a)->required();

  CLI::App* cmd_reflect = app.add_subcommand("reflect", "reflect into a subcategory");
  cmd_reflect->add_option("--into", into, "one of B, H, C, F, CF")->required();
  cmd_reflect->add_option("file", file_a)->required();

  CLI::App* cmd_extend = app.add_subcommand("extend", "print the hat-extension");
  cmd_extend->add_option("file", file_a)->required();

  CLI::App* cmd_product = app.add_subcommand("product", "binary product of two spaces");
  cmd_product->add_option("left", file_a)->required();
  cmd_product->add_option("right", file_b)->required();

  CLI::App* cmd_laws = app.add_subcommand("laws", "check the monad laws");
  cmd_laws->add_option("--monad", monad_spec, "kind name or a JSON monad file")->required();
  cmd_laws->add_option("--max-n", max_n, "largest carrier to check");

  CLI::App* cmd_dot = app.add_subcommand("dot", "emit a DOT digraph");
  cmd_dot->add_option("file", file_a)->required();

  std::vector<std::string> argv{"tspace"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<char*> raw;
  raw.reserve(argv.size());
  for (auto& s : argv) raw.push_back(s.data());

  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (cmd_check->parsed()) {
      TSpace s = parse_space_file(detail::read_file(file_a), budget);
      AxiomReport axioms = check_axioms(s);
      if (!axioms.ok()) {
        if (as_json) {
          json j{{"R", axioms.reflexive}, {"T", axioms.transitive}, {"K", nullptr},
                 {"H", nullptr},          {"A", nullptr},           {"C", nullptr},
                 {"F", nullptr}};
          out << j.dump() << "\n";
        } else {
          out << "R " << detail::mark(axioms.reflexive) << " T "
              << detail::mark(axioms.transitive) << " (not a T-space; K/H/A/C/F skipped)\n";
        }
        return 0;
      }
      s.validated = Validity::Space;
      ConditionReport cond = check_khaus(s);
      CFFlags cf = check_CF(s);
      if (as_json) {
        json j{{"R", true},   {"T", true},   {"K", cond.K}, {"H", cond.H},
               {"A", cond.A}, {"C", cf.C},   {"F", cf.F}};
        out << j.dump() << "\n";
      } else {
        out << "R " << detail::mark(true) << " T " << detail::mark(true) << " K "
            << detail::mark(cond.K) << " H " << detail::mark(cond.H) << " A "
            << detail::mark(cond.A) << " C " << detail::mark(cf.C) << " F "
            << detail::mark(cf.F) << "\n";
      }
      return 0;
    }

    if (cmd_reflect->parsed()) {
      TSpace s = parse_space_file(detail::read_file(file_a), budget);
      ReflKind kind;
      if (into == "B")
        kind = ReflKind::B;
      else if (into == "H")
        kind = ReflKind::H;
      else if (into == "C")
        kind = ReflKind::C;
      else if (into == "F")
        kind = ReflKind::F;
      else if (into == "CF")
        kind = ReflKind::CF;
      else
        throw ParseError("--into must be one of B, H, C, F, CF");
      ReflectionResult r = reflect_into(s, kind);
      if (as_json) {
        json j{{"unit", r.unit.f.table}, {"reflected", space_to_json(r.reflected)}};
        out << j.dump() << "\n";
      } else {
        out << "unit: " << json(r.unit.f.table).dump() << "\n";
        out << "reflected:\n" << serialize_space(r.reflected);
      }
      return 0;
    }

    if (cmd_extend->parsed()) {
      TSpace s = parse_space_file(detail::read_file(file_a), budget);
      ExtRelation ext = barr_extend(s);
      if (as_json) {
        json pairs = json::array();
        for (const auto& [outer, mid] : ext.pairs.pairs)
          pairs.push_back(json::array(
              {level_elem_to_json(s.monad, s.points.size, 2, outer),
               level_elem_to_json(s.monad, s.points.size, 1, mid)}));
        out << json{{"pairs", pairs}}.dump() << "\n";
      } else {
        for (const auto& [outer, mid] : ext.pairs.pairs)
          out << level_elem_to_json(s.monad, s.points.size, 2, outer).dump() << " ~> "
              << level_elem_to_json(s.monad, s.points.size, 1, mid).dump() << "\n";
      }
      return 0;
    }

    if (cmd_product->parsed()) {
      TSpace a = parse_space_file(detail::read_file(file_a), budget);
      TSpace b = parse_space_file(detail::read_file(file_b), budget);
      TSpace p = product_space(a, b);
      if (as_json)
        out << space_to_json(p).dump() << "\n";
      else
        out << serialize_space(p);
      return 0;
    }

    if (cmd_laws->parsed()) {
      MonadSpec m;
      if (monad_spec == "identity" || monad_spec == "powerset" ||
          monad_spec == "ultrafilter" || monad_spec == "t0" || monad_spec == "t1") {
        m = monad_from_json(json{{"kind", monad_spec}}, budget);
      } else {
        json j;
        try {
          j = json::parse(detail::read_file(monad_spec));
        } catch (const json::parse_error& e) {
          throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        m = monad_from_json(j, budget);
      }
      LawReport report = check_monad_laws(m, max_n);
      if (as_json) {
        json laws = json::array();
        for (const auto& l : report.laws)
          laws.push_back(json{{"name", l.name},
                              {"pass", l.pass},
                              {"checked_up_to", l.checked_up_to},
                              {"counterexample", l.counterexample}});
        out << json{{"all_pass", report.all_pass()}, {"laws", laws}}.dump() << "\n";
      } else {
        for (const auto& l : report.laws) {
          out << l.name << ": " << (l.pass ? "pass" : "FAIL") << " (carriers <= "
              << l.checked_up_to << ")";
          if (!l.pass) out << ": " << l.counterexample;
          out << "\n";
        }
        out << (report.all_pass() ? "all monad laws hold on the checked range\n"
                                  : "monad law violation found\n");
      }
      return report.all_pass() ? 0 : 1;
    }

    if (cmd_dot->parsed()) {
      TSpace s = parse_space_file(detail::read_file(file_a), budget);
      out << emit_dot(s);
      return 0;
    }
  } catch (const BudgetExceeded& e) {
    if (as_json)
      out << json{{"error", {{"type", "BudgetExceeded"}, {"message", e.what()}}}}.dump() << "\n";
    else
      err << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (as_json)
      out << json{{"error", {{"type", detail::error_type(e)}, {"message", e.what()}}}}.dump()
          << "\n";
    else
      err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no command\n";
  return 1;
}

}  // namespace tspace
