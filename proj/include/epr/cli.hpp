#pragma once

// Command-line front end. Angles are degrees at this boundary and radians
// everywhere inside the library.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epr/experiments.hpp"

namespace epr::cli {

inline constexpr std::string_view kToolName = "epr-sim";
inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kIoError = 1, kUsageError = 2 };

enum class Format { Csv, Json };

// Grid in degrees from "START:STOP:N" (N points, STOP excluded), a comma
// list, or one of the presets gisin-figure1 / kim-figure3.
std::vector<double> parse_grid_degrees(std::string_view text);

// Ordered key/value pairs written at the top of every output file.
using Metadata = std::vector<std::pair<std::string, std::string>>;

// x in degrees, y, optional standard error.
struct CurveRow {
  double x_deg = 0.0;
  double y = 0.0;
  std::optional<double> std_err;
};

struct QuantityRow {
  std::string quantity;
  double value = 0.0;
  std::optional<double> std_err;
};

// CSV: "# key=value" metadata lines, then header "x,y,stderr"; x with six
// decimals, values with 12 significant digits, '\n' line endings.
// JSON: {"meta": {...}, "points": [...]}.
std::string emit_curve(const std::vector<CurveRow>& rows, const Metadata& meta, Format format);

// Same layout with header "quantity,value,stderr". `results` adds a top-level
// JSON object of named values (ignored for CSV).
std::string emit_quantities(const std::vector<QuantityRow>& rows, const Metadata& meta,
                            Format format, const std::vector<QuantityRow>& results = {});

// Parses an emitted CSV curve back into rows (metadata lines skipped).
std::vector<CurveRow> parse_curve_csv(std::string_view text);

// Reads the "# key=value" header of an emitted CSV.
Metadata parse_csv_metadata(std::string_view text);

// Runs one command. argv excludes the program name. Output goes to --out when
// given, otherwise to `out`; diagnostics go to `err`.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace epr::cli
