#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "prppsm/harness.hpp"

namespace prppsm {

std::string_view to_string(Scheme scheme);
std::string_view to_string(DetectorKind detector);
std::string_view to_string(LsdInit init);
std::string_view to_string(Fading fading);

Scheme parse_scheme(std::string_view text);
DetectorKind parse_detector(std::string_view text);
LsdInit parse_lsd_init(std::string_view text);
Fading parse_fading(std::string_view text);

/// Parses a `key = value` scenario file. Blank lines and text after '#'
/// are ignored. Unknown keys and malformed values raise ConfigError with
/// the line number. The result is validated.
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_text(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical text form (every key, fixed order); parses back to an equal
/// scenario.
std::string scenario_to_text(const Scenario& scenario);

/// Columns: snr_db,frames,bits,bit_errors,ber,avg_iterations,avg_neighbor_evals
void write_curve_csv(const BerCurve& curve, const std::filesystem::path& path);
BerCurve read_curve_csv(const std::filesystem::path& path);

/// Provenance sidecar: scenario text and digest, seed, per-point
/// diagnostics (including antenna/symbol bit error split), wall clock.
void write_curve_sidecar(const BerCurve& curve, const std::filesystem::path& path);

}  // namespace prppsm
