#pragma once

#include <string>
#include <vector>

#include "fdlab/field.hpp"

namespace fdlab {

/// Flat binary field format, little-endian:
///   int64 dim | int64 n | f64 L | int64 m | f64 Y | f64 gamma | f64 values...
/// ScalarField writes m = 0, Y = gamma = 0 and n^dim values; ExtendedField
/// writes its y-grid descriptor and (m+1) x-slices, trace first.
void write_field(const std::string& path, const ScalarField& f);
void write_field(const std::string& path, const ExtendedField& f);
ScalarField read_scalar_field(const std::string& path);
ExtendedField read_extended_field(const std::string& path);

/// Shortest round-trippable decimal form of a double (%.17g).
std::string format_double(double v);

/// Plain CSV with one header line; columns must have equal lengths.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

/// Node listing: "x,value" (dim 1) or "x0,x1,value" (dim 2), signed coords.
void write_field_csv(const std::string& path, const ScalarField& f);

/// Atomic text write: temp file in the same directory, then rename.
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace fdlab
