#include "curvepi/error.hpp"

namespace curvepi {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ok: return "OK";
    case ErrorCode::parse_error: return "PARSE_ERROR";
    case ErrorCode::invalid_config: return "INVALID_CONFIG";
    case ErrorCode::not_connected: return "NOT_CONNECTED";
    case ErrorCode::not_projective: return "NOT_PROJECTIVE";
    case ErrorCode::point_not_found: return "POINT_NOT_FOUND";
    case ErrorCode::overlap_with_removed: return "OVERLAP_WITH_REMOVED";
    case ErrorCode::degree_mismatch: return "DEGREE_MISMATCH";
    case ErrorCode::not_a_member: return "NOT_A_MEMBER";
    case ErrorCode::not_prime: return "NOT_PRIME";
    case ErrorCode::not_normal: return "NOT_NORMAL";
    case ErrorCode::group_too_large: return "GROUP_TOO_LARGE";
    case ErrorCode::not_simply_transitive: return "NOT_SIMPLY_TRANSITIVE";
    case ErrorCode::not_a_transversal: return "NOT_A_TRANSVERSAL";
    case ErrorCode::not_generating: return "NOT_GENERATING";
    case ErrorCode::base_not_connected: return "BASE_NOT_CONNECTED";
    case ErrorCode::fiber_not_torsor: return "FIBER_NOT_TORSOR";
    case ErrorCode::component_overlap: return "COMPONENT_OVERLAP";
    case ErrorCode::relation_not_preserved: return "RELATION_NOT_PRESERVED";
    case ErrorCode::bad_partition: return "BAD_PARTITION";
    case ErrorCode::action_not_equivariant: return "ACTION_NOT_EQUIVARIANT";
    case ErrorCode::not_tree_normalized: return "NOT_TREE_NORMALIZED";
    case ErrorCode::too_large: return "TOO_LARGE";
    case ErrorCode::genus_nonzero: return "GENUS_NONZERO";
    case ErrorCode::etale_genus_zero: return "ETALE_GENUS_ZERO";
    case ErrorCode::unknown_group: return "UNKNOWN_GROUP";
    case ErrorCode::invalid_argument: return "INVALID_ARGUMENT";
    case ErrorCode::io_error: return "IO_ERROR";
    case ErrorCode::internal: return "INTERNAL";
  }
  return "INTERNAL";
}

}  // namespace curvepi
