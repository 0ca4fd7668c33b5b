#include "malcev/caps.hpp"

#include <cstdlib>

namespace malcev {

void Caps::apply_override(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw input_error("cap override must be key=value, got '" + text + "'");
  }
  const std::string key = text.substr(0, eq);
  const std::string digits = text.substr(eq + 1);
  char* end = nullptr;
  const std::uint64_t value = std::strtoull(digits.c_str(), &end, 10);
  if (end == nullptr || *end != '\0') {
    throw input_error("cap value must be an integer, got '" + digits + "'");
  }
  if (key == "table-space") {
    table_space = value;
  } else if (key == "skolem-budget") {
    skolem_budget = value;
  } else if (key == "separate-budget") {
    separate_budget = value;
  } else if (key == "separate-rows") {
    separate_rows = value;
  } else if (key == "enum-cap") {
    enumeration_cap = value;
  } else if (key == "rel-cap") {
    relation_matrix_cap = value;
  } else if (key == "term-cap") {
    term_cap = value;
  } else if (key == "closure-cap") {
    closure_member_cap = value;
  } else {
    throw input_error("unknown cap '" + key + "'");
  }
}

}  // namespace malcev
