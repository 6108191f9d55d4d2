#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kacforge/approx_props.hpp"
#include "kacforge/config.hpp"
#include "kacforge/crossed_product.hpp"
#include "kacforge/matched_pair.hpp"

namespace kacforge {

struct SizeCaps {
  int group_order = 20000;   // closure of generators
  int cayley_table = 4096;   // materialized tables
  int algebra_dim = 256;     // |Gamma| |G| for representation-theoretic commands
  int audit_unknowns = 256;  // solver size in the fusion audit
};

enum class OutputFormat { text, structured };

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  Tolerances tolerances;
  SizeCaps caps;
  OutputFormat format = OutputFormat::text;

  /// Throws ValidationError on a non-positive tolerance or cap.
  void validate() const;
};

/// Applies KACFORGE_SEED (decimal or 0x-hex) when set. Throws ParseError on garbage.
RunConfig apply_environment(RunConfig config);

// ---- loaded objects -------------------------------------------------------

struct LoadedGroup {
  std::string path;
  FiniteGroup group;
  int degree = 0; // permutation degree, 0 otherwise
};

struct LoadedPair {
  std::string path;
  std::string provenance; // how the pair was obtained, file paths included
  MatchedPair pair;
  std::optional<DeformationRecipe> recipe; // set for deformation files
};

struct LoadedRing {
  std::string path;
  FusionRing ring;
};

struct LoadedMeasure {
  std::string path;
  std::string group_path;
  FiniteGroup group;
  FiniteMeasure measure;
};

struct Inputs {
  std::vector<LoadedGroup> groups;
  std::vector<LoadedPair> pairs;
  std::vector<LoadedRing> rings;
  std::vector<LoadedMeasure> measures;
  RunConfig config;
};

/// One JSON object per file, dispatched on its "object" field (group,
/// matched_pair, ring, measure, config). Paths inside a file are relative to it.
/// ParseError messages carry "path:line:column"; ValidationError names the
/// violated invariant.
Inputs parse_inputs(const std::vector<std::string> &paths, const RunConfig &base = {});

LoadedGroup load_group(const std::string &path, const SizeCaps &caps = {});
LoadedPair load_pair(const std::string &path, const SizeCaps &caps = {});
LoadedRing load_ring(const std::string &path, const SizeCaps &caps = {});
LoadedMeasure load_measure(const std::string &path, const SizeCaps &caps = {});
RunConfig load_config(const std::string &path);

/// "group:<file>", "dual-group:<file>" or "free-orthogonal:N=<n>,cutoff=<c>[,silent]".
FusionRing builtin_ring(const std::string &spec, const std::string &base_dir = ".",
                        const SizeCaps &caps = {});

// ---- reports ------------------------------------------------------------

enum class Status { pass, fail, audit_agree, audit_disagree };
std::string to_string(Status s);

/// Why an entry failed; decides the exit code.
enum class FailureKind { none, validation, tolerance };

struct ReportEntry {
  Status status = Status::pass;
  FailureKind failure = FailureKind::none;
  std::string name;
  std::string detail;
  std::string witness; // replayable, non-empty on FAIL
  std::vector<std::pair<std::string, double>> residuals;
};

struct ReportSection {
  std::string module;
  std::vector<ReportEntry> entries;
};

struct Report {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t seed = kDefaultSeed;
  std::vector<ReportSection> sections;

  /// The section for `module`, created on first use; order of creation is kept.
  ReportSection &section(const std::string &module);
  ReportEntry &add(const std::string &module, ReportEntry entry);

  /// 0 when every entry is PASS or AUDIT-*, 1 on any validation failure,
  /// otherwise 2 on a tolerance breach.
  int exit_code() const;
  int count(Status s) const;
  std::string to_text() const;
  std::string to_json() const;
  std::string render(OutputFormat f) const { return f == OutputFormat::text ? to_text() : to_json(); }
};

/// A subcommand with its positional inputs and --key value options.
struct Command {
  std::string name; // validate, build, irreps, fusion, invariants, deform, crossed, audit, shadow
  std::string sub;  // shadow: chebyshev, tv, obstruction, pushforward
  std::vector<std::string> inputs;
  std::map<std::string, std::string> options;
};

/// Runs the module chain for `cmd`. Library errors are caught and turned into
/// FAIL entries carrying the error kind and message; never throws except for an
/// unknown command (ValidationError).
Report run_pipeline(const Command &cmd, const RunConfig &config);

} // namespace kacforge
