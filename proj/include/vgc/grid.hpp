#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vgc/common.hpp"

namespace vgc {

// Cell-centred grid of square cells: cell (i, j) has centre
// (xmin + (i + 1/2) h, ymin + (j + 1/2) h).
struct Grid {
  int nx = 0, ny = 0;
  double xmin = 0.0, ymin = 0.0, h = 0.0;

  // Square cells of size max(width, height) / n covering [lo, hi].
  static Grid covering(const Vec2& lo, const Vec2& hi, int n);

  double xmax() const { return xmin + nx * h; }
  double ymax() const { return ymin + ny * h; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  Vec2 center(int i, int j) const { return {xmin + (i + 0.5) * h, ymin + (j + 0.5) * h}; }
  bool valid(int i, int j) const { return i >= 0 && j >= 0 && i < nx && j < ny; }
  // Cell containing p, clamped to the grid.
  void locate(const Vec2& p, int& i, int& j) const;

  bool operator==(const Grid& o) const = default;
};

// `# nx ny xmin xmax ymin ymax` header with the grid's values.
void write_grid_header(std::ostream& os, const Grid& g);
std::string format_double(double v);

}  // namespace vgc
