#include "relaxlab/spectral/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace relaxlab::spectral {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// FFTW_ESTIMATE keeps plan selection (and therefore rounding) reproducible.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  std::pair<fftw_plan, fftw_plan> plans(int dim, int n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(dim, n);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::size_t size = 1;
    int dims[3];
    for (int a = 0; a < dim; ++a) {
      size *= static_cast<std::size_t>(n);
      dims[a] = n;
    }
    auto* in = fftw_alloc_complex(size);
    auto* out = fftw_alloc_complex(size);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan fwd = fftw_plan_dft(dim, dims, in, out, FFTW_FORWARD, flags);
    fftw_plan bwd = fftw_plan_dft(dim, dims, in, out, FFTW_BACKWARD, flags);
    fftw_free(in);
    fftw_free(out);
    if (!fwd || !bwd) throw std::runtime_error("FFTW planning failed");
    auto result = std::make_pair(fwd, bwd);
    plans_.emplace(key, result);
    return result;
  }

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, p] : plans_) {
      fftw_destroy_plan(p.first);
      fftw_destroy_plan(p.second);
    }
  }

  std::mutex mutex_;
  std::map<std::pair<int, int>, std::pair<fftw_plan, fftw_plan>> plans_;
};

fftw_complex* as_fftw(const Complex* p) {
  return reinterpret_cast<fftw_complex*>(const_cast<Complex*>(p));
}

std::vector<Complex>& scratch(std::size_t size, int slot) {
  thread_local std::vector<Complex> buffers[2];
  auto& b = buffers[slot];
  if (b.size() < size) b.resize(size);
  return b;
}

}  // namespace

void forward_transform(const Grid& grid, std::span<const Complex> physical, std::span<Complex> spectral) {
  if (physical.size() != grid.size() || spectral.size() != grid.size())
    throw std::invalid_argument("transform buffer size mismatch");
  auto [fwd, bwd] = PlanCache::instance().plans(grid.dim(), grid.points_per_axis());
  (void)bwd;
  fftw_execute_dft(fwd, as_fftw(physical.data()), as_fftw(spectral.data()));
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : spectral) c *= scale;
}

void inverse_transform(const Grid& grid, std::span<const Complex> spectral, std::span<Complex> physical) {
  if (physical.size() != grid.size() || spectral.size() != grid.size())
    throw std::invalid_argument("transform buffer size mismatch");
  auto [fwd, bwd] = PlanCache::instance().plans(grid.dim(), grid.points_per_axis());
  (void)fwd;
  fftw_execute_dft(bwd, as_fftw(spectral.data()), as_fftw(physical.data()));
}

std::vector<double> to_physical(const SpectralField& field) {
  const Grid& grid = field.grid();
  const std::size_t size = grid.size();
  const int comps = field.components();
  std::vector<double> out(static_cast<std::size_t>(comps) * size);
  auto& packed = scratch(size, 0);
  auto& phys = scratch(size, 1);
  std::span<Complex> packed_span(packed.data(), size);
  std::span<Complex> phys_span(phys.data(), size);

  for (int c = 0; c < comps; c += 2) {
    const auto a = field.component(c);
    if (c + 1 < comps) {
      const auto b = field.component(c + 1);
      const Complex i{0.0, 1.0};
      for (std::size_t k = 0; k < size; ++k) packed[k] = a[k] + i * b[k];
    } else {
      std::copy(a.begin(), a.end(), packed.begin());
    }
    inverse_transform(grid, packed_span, phys_span);
    double* dst_a = out.data() + c * size;
    for (std::size_t k = 0; k < size; ++k) dst_a[k] = phys[k].real();
    if (c + 1 < comps) {
      double* dst_b = out.data() + (c + 1) * size;
      for (std::size_t k = 0; k < size; ++k) dst_b[k] = phys[k].imag();
    }
  }
  return out;
}

SpectralField from_physical(const Grid& grid, int components, std::span<const double> values) {
  const std::size_t size = grid.size();
  if (values.size() != static_cast<std::size_t>(components) * size)
    throw std::invalid_argument("physical buffer has wrong size");
  SpectralField field(grid, components);
  auto& packed = scratch(size, 0);
  auto& spec = scratch(size, 1);
  std::span<Complex> packed_span(packed.data(), size);
  std::span<Complex> spec_span(spec.data(), size);
  const auto partner = grid.partner();

  for (int c = 0; c < components; c += 2) {
    const double* a = values.data() + c * size;
    const bool pair = c + 1 < components;
    const double* b = pair ? values.data() + (c + 1) * size : nullptr;
    for (std::size_t k = 0; k < size; ++k) packed[k] = Complex{a[k], pair ? b[k] : 0.0};
    forward_transform(grid, packed_span, spec_span);
    auto dst_a = field.component(c);
    if (!pair) {
      std::copy_n(spec.begin(), size, dst_a.begin());
      continue;
    }
    auto dst_b = field.component(c + 1);
    for (std::size_t k = 0; k < size; ++k) {
      const Complex z = spec[k];
      const Complex zc = std::conj(spec[partner[k]]);
      dst_a[k] = 0.5 * (z + zc);
      dst_b[k] = Complex{0.0, -0.5} * (z - zc);
    }
  }
  return field;
}

double coordinate(const Grid& grid, std::size_t flat, int axis) {
  std::size_t stride = 1;
  for (int a = grid.dim() - 1; a > axis; --a) stride *= static_cast<std::size_t>(grid.points_per_axis());
  const auto idx = (flat / stride) % static_cast<std::size_t>(grid.points_per_axis());
  return grid.spacing() * static_cast<double>(idx);
}

}  // namespace relaxlab::spectral
