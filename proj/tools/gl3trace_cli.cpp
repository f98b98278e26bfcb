#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gl3trace/report.hpp"

// Exit codes: 0 all requested identities hold (recorded formula
// discrepancies do not fail a run), 1 an oracle-vs-oracle identity failed,
// 2 a computation would exceed the enumeration budget, 3 configuration.

using namespace gl3trace;

int main(int argc, char** argv) {
  CLI::App app{
      "trace identities for 3x3 matrix groups over small fields: "
      "closed forms and brute-force oracles, adjudicated"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string f_table_path, out_path, format, descriptor;

  auto common = [&](CLI::App* s) {
    s->add_option("--p", cfg.p, "prime characteristic")->required();
    s->add_option("--n", cfg.n, "tower level: the base field has order p^n");
    s->add_option("--poly", cfg.poly,
                  "level-n modulus coefficients, constant term first");
    s->add_option("--delta-rule", cfg.delta_rule,
                  "cube-nonresidue choice: first or generator");
    s->add_option("--seed", cfg.seed, "seed for the random test functions");
    s->add_option("--num-f", cfg.num_f, "number of random test functions");
    s->add_option("--budget", cfg.budget, "enumeration budget");
    s->add_option("--f-table", f_table_path,
                  "orbit-indexed test function: lines of `orbit value`")
        ->option_text("PATH");
    s->add_option("--out", out_path, "write the report here, not stdout")
        ->option_text("PATH");
    s->add_option("--format", format, "json or csv");
  };

  common(app.add_subcommand(
      "verify", "evaluate both sides of the trace identity and every "
                "closed form against its oracle"));
  CLI::App* orb = app.add_subcommand(
      "orbital", "one conjugacy class: closed orbital sum vs oracle");
  common(orb);
  orb->add_option("descriptor", descriptor,
                  "class descriptor, e.g. hyp2:1,2,3 or ell_cubic:28")
      ->required();
  common(app.add_subcommand(
      "decompose", "multiplicity table and dual-side checksums"));
  common(app.add_subcommand("orbits",
                            "canonical stabilizer-orbit representatives"));
  common(app.add_subcommand("chars", "per-class induced-character values"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (!f_table_path.empty()) {
      std::ifstream in(f_table_path);
      if (!in) throw Error("cannot read f-table file " + f_table_path);
      std::ostringstream text;
      text << in.rdbuf();
      cfg.f_table = text.str();
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (format.empty())
      cfg.format = (cmd == "orbits" || cmd == "chars") ? "csv" : "json";
    else if (format == "json" || format == "csv")
      cfg.format = format;
    else
      throw Error("--format must be json or csv, got '" + format + "'");

    RunResult r;
    if (cmd == "verify")
      r = run_verify(cfg);
    else if (cmd == "orbital")
      r = run_orbital(cfg, descriptor);
    else if (cmd == "decompose")
      r = run_decompose(cfg);
    else if (cmd == "orbits")
      r = run_orbits(cfg);
    else
      r = run_chars(cfg);

    if (out_path.empty()) {
      std::cout << r.body;
    } else {
      std::ofstream out(out_path);
      if (!out) throw Error("cannot write " + out_path);
      out << r.body;
    }
    if (r.exit_code == 1)
      std::cerr << "FAIL: an oracle-vs-oracle identity did not hold; "
                   "see the report\n";
    return r.exit_code;
  } catch (const BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what()
              << "\nraise --budget, or pick a smaller field; the full "
                 "census scales like q^9\n";
    return 2;
  } catch (const NotCongruent1Mod3Error& e) {
    std::cerr << "error: the field order must satisfy q = 1 (mod 3); "
              << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
