#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qgl/qfield.hpp"

namespace qgl {

// -----------------------------------------------------------------------
// Named verification checks over the algebra catalog, reported in a stable
// machine-readable form.  This is the layer the command-line tool drives.
// -----------------------------------------------------------------------

struct CheckParams {
  int n = 2;
  Rat q0{1, 2};               // numeric evaluation point, as a rational
  int degree_cap = 0;         // 0 = per-check default
  long window = 0;            // 0 = per-check default
  std::vector<Rat> thresholds;  // empty = per-check default
  std::uint64_t seed = 20260816;
  std::string profile = "quick";
};

struct CheckReport {
  std::string check;
  // insertion-ordered key/value view of the effective parameters
  std::vector<std::pair<std::string, std::string>> params;
  std::string status = "pass";  // pass | fail | error
  std::string witness;          // nonempty iff status != pass
  long long elapsed_ms = 0;
  std::vector<std::string> convention_notes;
};

// The fixed list of check ids, in report-aggregation order.
const std::vector<std::string>& check_ids();
bool is_check_id(const std::string& id);

// Runs one named check.  Unknown ids throw DomainError; internal exceptions
// are captured as status "error" with the message as witness.
CheckReport run_check(const std::string& id, const CheckParams& params);

// Runs the whole battery.  profile "quick" = every check at n = 2;
// profile "full" adds n = 3 for every check (and n = 4 for the matrix-level
// ybe and hecke checks).  jobs > 1 runs checks concurrently; the report
// order is independent of scheduling.
std::vector<CheckReport> run_all(const std::string& profile,
                                 const CheckParams& base, int jobs = 1);

// JSON with fixed key order {"check","params","status","witness",
// "elapsed_ms","convention_notes"}; witness serializes as null when absent.
std::string report_json(const CheckReport& r);
std::string reports_json(const std::vector<CheckReport>& rs);

// CSV: header + one row per report; notes joined by "; ".
std::string reports_csv(const std::vector<CheckReport>& rs);

// Rule dumps of the catalog algebras already materialized for this n (no
// extra construction), one section per algebra.
std::string catalog_dump(int n);

}  // namespace qgl
