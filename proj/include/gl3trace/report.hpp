#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gl3trace/geometric.hpp"
#include "gl3trace/spectral.hpp"

namespace gl3trace {

inline constexpr const char* kLibraryVersion = "1.0.0";
inline constexpr const char* kReportSchema = "1";

// Everything a command run depends on.  Two runs with equal configs produce
// byte-identical output.
struct RunConfig {
  uint64_t p = 0;
  unsigned n = 1;
  std::vector<uint64_t> poly;        // modulus override; empty = built-in rule
  std::string delta_rule = "first";  // cube-nonresidue selection rule
  uint64_t seed = 1;
  unsigned num_f = 0;                // extra pseudo-random test functions
  uint64_t budget = 200000000;
  std::string f_table;               // orbit-table text, "" = none supplied
  std::string format = "json";       // json | csv
};

// One ledger entry: a printed formula whose value disagrees with the oracle
// it was checked against.  Locations are stable machine-readable anchors
// naming the formula, never a bibliographic pointer.
struct Discrepancy {
  std::string location;
  std::string claimed;
  std::string computed;
  std::string context;
};

struct RunResult {
  int exit_code = 0;  // 0 ok; 1 = an oracle-vs-oracle identity failed
  std::string body;   // rendered report, trailing newline included
};

// Budget and configuration problems are thrown, not encoded in exit_code:
// BudgetExceededError and the config-shaped Error subclasses cross these
// calls so the command layer can map them to exits 2 and 3.
RunResult run_verify(const RunConfig& cfg);
RunResult run_orbital(const RunConfig& cfg, const std::string& descriptor);
RunResult run_decompose(const RunConfig& cfg);
RunResult run_orbits(const RunConfig& cfg);
RunResult run_chars(const RunConfig& cfg);

// "kind:a,b,..." with field codes in decimal, e.g. "hyp2:1,2,3",
// "ell_quad_scalar:5,1", "ell_cubic:28".  Eigenvalue codes for the elliptic
// kinds may be any Galois conjugate; they are canonicalized before lookup.
const ClassDescriptor& find_class(const Tower& t, const Field& fq2,
                                  const ConjClasses& cc,
                                  const std::string& descriptor);

}  // namespace gl3trace
