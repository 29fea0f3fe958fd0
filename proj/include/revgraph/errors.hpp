#pragma once

#include <stdexcept>
#include <string>

namespace revgraph {

// Parameters that are syntactically valid but outside what this build will
// attempt (n above an exhaustive limit, guard budgets exceeded, ...).
// The CLI maps this to exit code 3.
class infeasible_error : public std::runtime_error {
 public:
  explicit infeasible_error(const std::string& msg) : std::runtime_error(msg) {}
};

// File or stream failures. The CLI maps this to exit code 4.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace revgraph
