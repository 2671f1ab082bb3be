#include "apportion/error.hpp"

namespace apportion {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_problem: return "InvalidProblem";
    case Errc::droop_infeasible: return "DroopInfeasible";
    case Errc::positivity_infeasible: return "PositivityInfeasible";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::empty_queue: return "EmptyQueue";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::undefined_rho: return "UndefinedRho";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::invalid_decay: return "InvalidDecay";
    case Errc::degenerate_total: return "DegenerateTotal";
    case Errc::unsupported_method: return "UnsupportedMethod";
    case Errc::invalid_order: return "InvalidOrder";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::parse_error: return "ParseError";
    case Errc::overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace apportion
