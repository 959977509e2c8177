#include "fracmix/field_io.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "fracmix/errors.hpp"

namespace fracmix::io {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_field_csv(const modes::FieldSolution& f, std::ostream& os) {
  os << "x,y,u\n";
  const size_t nyc = f.y_grid.size();
  for (size_t ix = 0; ix < f.x_grid.size(); ++ix) {
    for (size_t iy = 0; iy < nyc; ++iy) {
      os << fmt17(f.x_grid[ix]) << ',' << fmt17(f.y_grid[iy]) << ','
         << fmt17(f.values[ix * nyc + iy]) << '\n';
    }
  }
}

FieldData read_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "x,y,u") {
    throw DomainError("field csv: missing 'x,y,u' header");
  }
  std::vector<double> xs, ys, us;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string fx, fy, fu;
    if (!std::getline(ss, fx, ',') || !std::getline(ss, fy, ',') || !std::getline(ss, fu)) {
      throw DomainError("field csv: malformed row: " + line);
    }
    xs.push_back(std::stod(fx));
    ys.push_back(std::stod(fy));
    us.push_back(std::stod(fu));
  }
  if (us.empty()) throw DomainError("field csv: no data rows");

  FieldData out;
  // Rows are x-major: the y grid is the leading run of constant x.
  out.y_grid.push_back(ys[0]);
  size_t i = 1;
  while (i < ys.size() && xs[i] == xs[0]) {
    out.y_grid.push_back(ys[i]);
    ++i;
  }
  size_t nyc = out.y_grid.size();
  if (us.size() % nyc != 0) throw DomainError("field csv: ragged grid");
  for (size_t r = 0; r < us.size(); r += nyc) out.x_grid.push_back(xs[r]);
  out.values = std::move(us);
  return out;
}

}  // namespace fracmix::io
