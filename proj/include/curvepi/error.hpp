#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvepi {

// Machine-readable failure codes shared by every module. The numeric values
// are mirrored by cpi_status in curvepi.h and must stay in sync.
enum class ErrorCode : int {
  ok = 0,
  parse_error = 1,
  invalid_config = 2,
  not_connected = 3,
  not_projective = 4,
  point_not_found = 5,
  overlap_with_removed = 6,
  degree_mismatch = 7,
  not_a_member = 8,
  not_prime = 9,
  not_normal = 10,
  group_too_large = 11,
  not_simply_transitive = 12,
  not_a_transversal = 13,
  not_generating = 14,
  base_not_connected = 15,
  fiber_not_torsor = 16,
  component_overlap = 17,
  relation_not_preserved = 18,
  bad_partition = 19,
  action_not_equivariant = 20,
  not_tree_normalized = 21,
  too_large = 22,
  genus_nonzero = 23,
  etale_genus_zero = 24,
  unknown_group = 25,
  invalid_argument = 26,
  io_error = 27,
  internal = 28,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace curvepi
