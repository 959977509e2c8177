#pragma once

#include <iosfwd>
#include <vector>

#include "fracmix/mode_solver.hpp"

namespace fracmix::io {

// RFC-4180-style CSV, header "x,y,u", 17 significant digits, rows in x-major
// order. Byte-identical across runs for the same field.
void write_field_csv(const modes::FieldSolution& f, std::ostream& os);

struct FieldData {
  std::vector<double> x_grid;
  std::vector<double> y_grid;
  std::vector<double> values;  // values[ix * y_grid.size() + iy]
};

FieldData read_field_csv(std::istream& is);

}  // namespace fracmix::io
