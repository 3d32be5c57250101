#include "cauchylab/error.hpp"

namespace cauchylab {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::duplicate_point: return "DuplicatePoint";
    case Errc::nonpositive_weight: return "NonpositiveWeight";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::invalid_scales: return "InvalidScales";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::io_error: return "IoError";
    case Errc::parse_error: return "ParseError";
    case Errc::validation_error: return "ValidationError";
    case Errc::degenerate_triple: return "DegenerateTriple";
    case Errc::coincident_points: return "CoincidentPoints";
    case Errc::empty_measure: return "EmptyMeasure";
    case Errc::empty_cube: return "EmptyCube";
    case Errc::overlapping_cubes: return "OverlappingCubes";
    case Errc::invalid_level: return "InvalidLevel";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::breakpoint_singularity: return "BreakpointSingularity";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace cauchylab
