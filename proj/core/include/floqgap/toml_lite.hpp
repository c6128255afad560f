// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "floqgap/serialization.hpp"

namespace floqgap {

// Minimal TOML reader covering what experiment configs need: [table] and
// [a.b] headers, key = value lines, strings, integers, floats, booleans,
// possibly nested (and multi-line) arrays, and # comments. Inline tables and
// dotted keys are not supported.
Json parse_toml_lite(const std::string& text);

// Loads a config file; *.json parses as JSON, everything else as TOML.
Json load_config_file(const std::string& path);

}  // namespace floqgap
