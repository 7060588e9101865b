#include "cmax/voting.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

namespace cmax {

double write_pgm(std::ostream& out, const Grid<double>& grid, double scale) {
  if (scale <= 0.0) {
    const double peak = grid.size() > 0 ? grid.cwiseAbs().maxCoeff() : 0.0;
    scale = peak > 0.0 ? 65535.0 / peak : 1.0;
  }
  out << "P5\n# scale " << scale << '\n'
      << grid.cols() << ' ' << grid.rows() << "\n65535\n";
  for (Eigen::Index r = 0; r < grid.rows(); ++r) {
    for (Eigen::Index c = 0; c < grid.cols(); ++c) {
      const double v = std::min(std::round(std::abs(grid(r, c)) * scale), 65535.0);
      const auto u = static_cast<std::uint16_t>(v);
      // PGM stores 16-bit samples big-endian.
      out.put(static_cast<char>(u >> 8));
      out.put(static_cast<char>(u & 0xff));
    }
  }
  return scale;
}

void write_pgm(const std::string& path, const Grid<double>& grid, double scale) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_pgm(out, grid, scale);
}

}  // namespace cmax
