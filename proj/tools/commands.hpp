#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "qdet/coherence.hpp"

namespace qdet::cli {

/// Process exit statuses shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,       ///< Feasible / synthesized / UnitaryRelated
  kNegative = 1,      ///< Infeasible / not synthesizable / Decohering
  kInputError = 2,
  kInconclusive = 3,  ///< NecessaryOnly or Undetermined
};

struct CommonFlags {
  Tolerances tol{};
  double purity_tol = 1e-9;
  std::optional<std::filesystem::path> out;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

struct SweepGrid {
  std::string parameter;  ///< empty: take the name declared by the template
  double start = 0.0;
  double stop = 0.0;
  int steps = 2;
};

struct GenOptions {
  Index dimension = 0;
  Index count = 0;
  std::string mode = "generic";  ///< generic | independent | unitary
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> base;
};

int cmd_check(const std::filesystem::path& initial, const std::filesystem::path& final_states,
              const CommonFlags& flags, Streams io);
int cmd_synth(const std::filesystem::path& initial, const std::filesystem::path& final_states,
              const CommonFlags& flags, Streams io);
int cmd_apply(const std::filesystem::path& kraus, const std::filesystem::path& state,
              const CommonFlags& flags, Streams io);
/// coeffs: comma-separated entries, each "re" or "re:im".
int cmd_coherence(const std::filesystem::path& initial, const std::filesystem::path& final_states,
                  const std::string& coeffs, const CommonFlags& flags, Streams io);
int cmd_sweep(const std::filesystem::path& tmpl, const SweepGrid& grid, const CommonFlags& flags,
              Streams io);
int cmd_gen(const GenOptions& opts, const CommonFlags& flags, Streams io);

/// Parses "1,0.5:-0.25,..." into complex coefficients.
std::vector<Complex> parse_coefficients(const std::string& text);

/// Full command-line entry point.
int run(int argc, const char* const* argv, Streams io);

}  // namespace qdet::cli
