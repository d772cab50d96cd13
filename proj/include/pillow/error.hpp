#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pillow {

enum class errc {
  order_cap_exceeded,
  degree_mismatch,
  singular_matrix,
  unsupported_field,
  not_a_subgroup,
  non_integral_genus,
  index_out_of_range,
  open_path,
  no_solution,
  disconnected,
  labeling_inconsistent,
  io_failure,
  singular_modulus,
  no_convergence,
  not_in_upper_half_plane,
  too_close_to_boundary,
  degenerate_points,
  invalid_input,
  invariant_breach,
};

constexpr std::string_view to_string(errc code) {
  switch (code) {
    case errc::order_cap_exceeded: return "OrderCapExceeded";
    case errc::degree_mismatch: return "DegreeMismatch";
    case errc::singular_matrix: return "SingularMatrix";
    case errc::unsupported_field: return "UnsupportedField";
    case errc::not_a_subgroup: return "NotASubgroup";
    case errc::non_integral_genus: return "NonIntegralGenus";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::open_path: return "OpenPath";
    case errc::no_solution: return "NoSolution";
    case errc::disconnected: return "Disconnected";
    case errc::labeling_inconsistent: return "LabelingInconsistent";
    case errc::io_failure: return "IoFailure";
    case errc::singular_modulus: return "SingularModulus";
    case errc::no_convergence: return "NoConvergence";
    case errc::not_in_upper_half_plane: return "NotInUpperHalfPlane";
    case errc::too_close_to_boundary: return "TooCloseToBoundary";
    case errc::degenerate_points: return "DegeneratePoints";
    case errc::invalid_input: return "InvalidInput";
    case errc::invariant_breach: return "InvariantBreach";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace pillow
