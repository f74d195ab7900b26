#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psn/classes.hpp"

namespace psn::cli {

enum class Command { Bound, Alpha, Profile, Verify, Certify, Table };
enum class Format { Json, Csv };

std::string_view to_string(Command command);
std::string_view to_string(Format format);
Command parse_command(std::string_view text);
Format parse_format(std::string_view text);

inline constexpr int kDefaultTableCount = 17;
inline constexpr int kDefaultProfilePoints = 64;
inline constexpr int kDefaultSamples = 50;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct RunConfig {
  Command command = Command::Bound;
  Family family = Family::Exp;
  /// required by every command except table
  std::optional<double> param;
  Variant variant = Variant::Starlike;
  int samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  /// "RxA" (the multiplication sign is accepted too)
  std::string grid = "256x512";
  int refine = 3;
  Format format = Format::Json;
  /// empty writes to the output stream
  std::string output;
  /// profile: number of samples; certify: grid size
  std::optional<int> points;
  /// profile: auxiliary function to sample instead of the extremal
  std::optional<std::string> aux;
  /// profile of a bivariate auxiliary: the fixed s
  double s = 0.0;
  /// table: number of parameters swept
  int count = kDefaultTableCount;
};

struct GridSize {
  int radial = 0;
  int angular = 0;
};

/// "256x512" -> {256, 512}; throws InvalidArgument.
GridSize parse_grid(std::string_view text);

/// Rounds to 12 significant digits (non-finite values pass through).
double round12(double value);
/// 12 significant digits, locale independent; "nan"/"inf" for non-finite.
std::string format_number(double value);

/// Executes one command. Returns 0 on success, 1 when a verification or
/// certificate fails, 2 on invalid arguments (one diagnostic line on err).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs. --help prints usage and returns 0.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psn::cli
