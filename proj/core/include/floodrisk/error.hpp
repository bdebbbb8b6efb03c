#pragma once

#include <stdexcept>
#include <string>

namespace floodrisk {

/// Broad failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  input,           // unreadable or malformed input files
  alignment,       // grids that do not share a lattice
  config,          // missing or contradictory run configuration
  argument,        // an out-of-range parameter passed to an operation
  domain,          // a cell value outside an operation's domain
  classification,  // unknown category code or degenerate classification input
  routing,         // flow-direction grid violates acyclicity or code set
  delineation,     // sub-watershed labeling impossible (e.g. no streams)
  numeric,         // iterative method failed to converge
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace floodrisk
