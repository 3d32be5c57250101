#pragma once

#include <stdexcept>
#include <string>

namespace cauchylab {

enum class Errc {
  dimension_mismatch,
  duplicate_point,
  nonpositive_weight,
  invalid_argument,
  invalid_scales,
  invalid_spec,
  io_error,
  parse_error,
  validation_error,
  degenerate_triple,
  coincident_points,
  empty_measure,
  empty_cube,
  overlapping_cubes,
  invalid_level,
  length_mismatch,
  budget_exceeded,
  breakpoint_singularity,
};

const char* to_string(Errc code) noexcept;

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cauchylab
