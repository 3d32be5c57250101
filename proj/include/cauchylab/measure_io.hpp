#pragma once

#include <filesystem>
#include <string>

#include "cauchylab/measure.hpp"

namespace cauchylab {

/// Decimal with 17 significant digits; parses back to the same double.
std::string format_double(double x);

/// Writes mu as CSV (`x1,...,xd,weight` rows) or JSON
/// (`{"dim": d, "points": [...], "weights": [...]}`) chosen by extension.
/// Throws IoError.
void save_measure(const DiscreteMeasure& mu, const std::filesystem::path& path);

/// Reads a measure saved by save_measure (or hand-written in either format).
/// Throws IoError, ParseError, ValidationError.
DiscreteMeasure load_measure(const std::filesystem::path& path);

std::string measure_to_csv(const DiscreteMeasure& mu);
std::string measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_csv(const std::string& text);
DiscreteMeasure measure_from_json(const std::string& text);

}  // namespace cauchylab
