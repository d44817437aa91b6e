#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "leray/grid.hpp"

namespace leray {

// "polar-field v1" text format:
//
//   polar-field v1
//   <n_r> <n_theta> <r_outer> <scalar|vector> [<r_inner>]
//   one node per line, radial-major, value or "w1 w2", %.17g
//
// The optional r_inner token is written only for grids whose inner radius is
// not 1 (rescaled fields).

void write_field(std::ostream& os, const ScalarField& f);
void write_field(std::ostream& os, const VectorField& w);
void write_field(const std::filesystem::path& path, const ScalarField& f);
void write_field(const std::filesystem::path& path, const VectorField& w);

using AnyField = std::variant<ScalarField, VectorField>;

/// Parses a field; when grid is given and matches the header, the field shares it.
AnyField read_field(std::istream& is, GridPtr grid = nullptr);
AnyField read_field(const std::filesystem::path& path, GridPtr grid = nullptr);

ScalarField read_scalar_field(const std::filesystem::path& path, GridPtr grid = nullptr);
VectorField read_vector_field(const std::filesystem::path& path, GridPtr grid = nullptr);

}  // namespace leray
