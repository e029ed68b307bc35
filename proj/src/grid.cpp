#include "vgc/grid.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace vgc {

Grid Grid::covering(const Vec2& lo, const Vec2& hi, int n) {
  if (n < 1) throw InvalidProblem("grid needs at least one cell");
  const Vec2 size = hi - lo;
  Grid g;
  g.h = std::max(size.x(), size.y()) / n;
  g.nx = std::max(1, static_cast<int>(std::ceil(size.x() / g.h - 1e-9)));
  g.ny = std::max(1, static_cast<int>(std::ceil(size.y() / g.h - 1e-9)));
  g.xmin = 0.5 * (lo.x() + hi.x()) - 0.5 * g.nx * g.h;
  g.ymin = 0.5 * (lo.y() + hi.y()) - 0.5 * g.ny * g.h;
  return g;
}

void Grid::locate(const Vec2& p, int& i, int& j) const {
  i = std::clamp(static_cast<int>(std::floor((p.x() - xmin) / h)), 0, nx - 1);
  j = std::clamp(static_cast<int>(std::floor((p.y() - ymin) / h)), 0, ny - 1);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_grid_header(std::ostream& os, const Grid& g) {
  os << "# " << g.nx << ' ' << g.ny << ' ' << format_double(g.xmin) << ' ' << format_double(g.xmax()) << ' '
     << format_double(g.ymin) << ' ' << format_double(g.ymax()) << '\n';
}

}  // namespace vgc
