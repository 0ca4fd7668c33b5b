/*! \file errors.hpp
 *  \brief Error types shared by every module.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace malcev {

/*! Malformed or inconsistent input: bad tuple entries, arity mismatches,
 *  domain mismatches, invalid files.  CLI exit code 2. */
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/*! A configured resource cap would be exceeded.  CLI exit code 3. */
struct resource_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace malcev
