#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "pwmel/melnikov.hpp"
#include "pwmel/perturbation.hpp"
#include "pwmel/simulator.hpp"
#include "pwmel/zeros.hpp"

namespace pwmel {

// Spec documents look like
//   {"n": 1, "mode": "four-zone",
//    "zones": {"1": {"a": [[1, 0, 0.5]], "b": [[0, 1, 1.0]]}, "2": {...}}}
// Entries are [i, j, value]; anything not listed is zero. Unknown keys,
// zones outside the mode, i + j > n and repeated (i, j) pairs are errors.

/// Throws ParseError naming the line (syntax) or key path (content).
PerturbationSpec parse_spec(std::string_view text);
PerturbationSpec read_spec_file(const std::string& path);

/// Nonzero coefficients only, printed with round-trip precision.
nlohmann::ordered_json spec_to_json(const PerturbationSpec& spec);
void write_spec_file(const std::string& path, const PerturbationSpec& spec);

nlohmann::ordered_json to_json(const CanonicalForm& cf);
nlohmann::ordered_json to_json(const UForm& uf);
nlohmann::ordered_json to_json(const ZeroReport& report);
nlohmann::ordered_json to_json(const ReturnMapSample& sample);
nlohmann::ordered_json to_json(const LimitCycleReport& report);
nlohmann::ordered_json to_json(const CrossValidationReport& report);

/// Writes `text` to `path`, throwing std::runtime_error when the file cannot be opened.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace pwmel
