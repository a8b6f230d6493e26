#include "stab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "stab/bifurcation.hpp"
#include "stab/config.hpp"
#include "stab/orr_sommerfeld.hpp"

namespace stab {

namespace {

struct Cell {
  double re = 0.0;
  double alpha = 0.0;
  Complex lambda{0.0, 0.0};
  Complex c{0.0, 0.0};
  double residual = 0.0;
  bool ok = false;
};

void solve_cell(const SweepRequest& request, const SpectralGrid& grid,
                Cell& cell) {
  try {
    OSPencil pencil =
        assemble_direct(request.profile, grid, cell.alpha, 1.0 / cell.re);
    std::vector<Mode> modes = physical_modes(pencil, 1);
    if (modes.empty()) return;
    cell.c = modes.front().c;
    cell.lambda = Complex(0.0, -cell.alpha) * cell.c;
    cell.residual = modes.front().residual;
    cell.ok = true;
  } catch (const std::exception&) {
    cell.ok = false;
  }
}

}  // namespace

std::string sweep_csv(const SweepRequest& request) {
  if (request.res.empty() || request.alphas.empty()) {
    throw std::invalid_argument("sweep_csv: empty grid");
  }
  SpectralGrid grid =
      default_grid(request.profile, request.n_points, request.map_scale);

  std::vector<Cell> cells;
  cells.reserve(request.res.size() * request.alphas.size());
  for (double re : request.res) {
    for (double alpha : request.alphas) {
      Cell cell;
      cell.re = re;
      cell.alpha = alpha;
      cells.push_back(cell);
    }
  }

  const int workers = std::max(1, request.workers);
  if (workers == 1) {
    for (Cell& cell : cells) solve_cell(request, grid, cell);
  } else {
    // Static partition by index; each cell is solved cold, so the result is
    // independent of how cells are distributed across threads.
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < cells.size();
             i += static_cast<std::size_t>(workers)) {
          solve_cell(request, grid, cells[i]);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  std::ostringstream out;
  out << "re,alpha,re_lambda,im_lambda,re_c_phase,im_c_phase,residual,status\n";
  for (const Cell& cell : cells) {
    out << format_full(cell.re) << ',' << format_full(cell.alpha) << ',';
    if (cell.ok) {
      out << format_full(cell.lambda.real()) << ','
          << format_full(cell.lambda.imag()) << ','
          << format_full(cell.c.real()) << ',' << format_full(cell.c.imag())
          << ',' << format_full(cell.residual) << ",ok\n";
    } else {
      out << "nan,nan,nan,nan,nan,failed\n";
    }
  }
  return out.str();
}

}  // namespace stab
