#include "linespec/trigpoly.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace linespec {

namespace {
// FFTW plan creation is not thread-safe; execution on distinct plans is.
std::mutex fftw_planner_mutex;
}  // namespace

cplx TrigPoly::eval(double f) const {
  const int m = half_width();
  cplx acc = 0.0;
  for (int j = -m; j <= m; ++j)
    acc += std::conj(coeffs(j + m)) * std::polar(1.0, 2.0 * std::numbers::pi * j * f);
  return acc;
}

TrigPoly TrigPoly::derivative() const {
  const int m = half_width();
  CVec d(n());
  for (int j = -m; j <= m; ++j)
    d(j + m) = coeffs(j + m) * cplx(0.0, -2.0 * std::numbers::pi * j);
  return TrigPoly{std::move(d)};
}

TrigPoly TrigPoly::shifted(double shift) const {
  const int m = half_width();
  CVec s(n());
  for (int j = -m; j <= m; ++j)
    s(j + m) = coeffs(j + m) * std::polar(1.0, 2.0 * std::numbers::pi * j * shift);
  return TrigPoly{std::move(s)};
}

std::vector<cplx> eval_trig_poly(const TrigPoly& p, int grid_size) {
  const int n = p.n();
  const int m = p.half_width();
  if (grid_size < n)
    throw std::invalid_argument("eval_trig_poly: grid_size < n");

  // P(r/G) = sum_j b_j e^{+i 2 pi j r / G} with b_j = conj(q_j): an
  // unnormalized backward DFT of b placed at bins j mod G.
  std::vector<cplx> in(grid_size, cplx(0.0, 0.0)), out(grid_size);
  for (int j = 0; j <= m; ++j) in[j] = std::conj(p.coeffs(j + m));
  for (int j = 1; j <= m; ++j) in[grid_size - j] = std::conj(p.coeffs(-j + m));

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex);
    plan = fftw_plan_dft_1d(grid_size, reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()),
                            FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}

double grid_sup_abs(const TrigPoly& p, int grid_size) {
  double sup = 0.0;
  for (const cplx& v : eval_trig_poly(p, grid_size)) sup = std::max(sup, std::abs(v));
  return sup;
}

}  // namespace linespec
