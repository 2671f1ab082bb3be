#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apportion {

enum class Errc {
  invalid_problem,
  droop_infeasible,
  positivity_infeasible,
  index_out_of_range,
  empty_queue,
  length_mismatch,
  undefined_rho,
  budget_exceeded,
  invalid_decay,
  degenerate_total,
  unsupported_method,
  invalid_order,
  invalid_config,
  parse_error,
  overflow,
};

/// Stable CamelCase name, used in CLI messages and JSON records.
std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace apportion
