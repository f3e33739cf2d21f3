#pragma once

#include <string>

namespace rigidity::resources {

// Embedded copies of the JSON resources under data/ (single source; the
// build copies them in at configure time).

const char* tables_json();
const char* groups_json();
const char* builtin_model_json(const std::string& name);

}  // namespace rigidity::resources
