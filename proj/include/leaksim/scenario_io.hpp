/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <stdexcept>
#include <string>

#include "leaksim/scenario.hpp"

namespace leaksim {

/// Scenario-file syntax or schema violation, carrying the 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        m_line(line) {}
  int line() const { return m_line; }

 private:
  int m_line;
};

/// Parse the sectioned key/value scenario format. Unknown sections or keys,
/// malformed values and duplicate keys are rejected with line numbers.
/// Missing keys keep their defaults. Does not run validate().
Scenario parse_scenario(const std::string& text);

/// Canonical text form; parse_scenario(serialize_scenario(s)) == s exactly
/// (floats are emitted with round-trip precision).
std::string serialize_scenario(const Scenario& s);

Scenario load_scenario_file(const std::string& path);
void save_scenario_file(const Scenario& s, const std::string& path);

}  // namespace leaksim
