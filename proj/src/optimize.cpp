#include "gdiscord/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace gdiscord {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17};
constexpr double kTieEps = 1e-13;

double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

double wrap_into(double x, double lo, double period) {
  double y = std::fmod(x - lo, period);
  if (y < 0.0) y += period;
  return lo + y;
}

[[noreturn]] void throw_non_finite(const Eigen::VectorXd& x) {
  std::string msg = "objective returned a non-finite value at (";
  char buf[32];
  for (int i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9g", x[i]);
    if (i) msg += ", ";
    msg += buf;
  }
  msg += ")";
  throw std::runtime_error(msg);
}

// Search coordinates: periodic dimensions are used as-is, bounded ones go
// through x = lo + (hi - lo) (1 + sin z) / 2 so the inner solver is
// unconstrained and boundary optima stay reachable.
Eigen::VectorXd to_x(const Eigen::VectorXd& z, const std::vector<Bound>& bounds) {
  Eigen::VectorXd x(z.size());
  for (int i = 0; i < z.size(); ++i) {
    const Bound& b = bounds[static_cast<std::size_t>(i)];
    x[i] = b.periodic ? z[i] : b.lo + (b.hi - b.lo) * 0.5 * (1.0 + std::sin(z[i]));
  }
  return x;
}

Eigen::VectorXd to_z(const Eigen::VectorXd& x, const std::vector<Bound>& bounds) {
  Eigen::VectorXd z(x.size());
  for (int i = 0; i < x.size(); ++i) {
    const Bound& b = bounds[static_cast<std::size_t>(i)];
    if (b.periodic) {
      z[i] = x[i];
    } else {
      const double u = std::clamp(2.0 * (x[i] - b.lo) / (b.hi - b.lo) - 1.0, -1.0, 1.0);
      z[i] = std::asin(u);
    }
  }
  return z;
}

double x_distance(const Eigen::VectorXd& xa, const Eigen::VectorXd& xb,
                  const std::vector<Bound>& bounds) {
  double s = 0.0;
  for (int i = 0; i < xa.size(); ++i) {
    const Bound& b = bounds[static_cast<std::size_t>(i)];
    double d = std::abs(xa[i] - xb[i]);
    if (b.periodic) {
      const double period = b.hi - b.lo;
      d = std::fmod(d, period);
      d = std::min(d, period - d);
    }
    s += d * d;
  }
  return std::sqrt(s);
}

struct Vertex {
  Eigen::VectorXd z;
  double f;
};

OptResult nelder_mead(const Objective& f, const std::vector<Bound>& bounds,
                      const Eigen::VectorXd& z0, const OptimOptions& opts, long& evals) {
  const int n = static_cast<int>(z0.size());
  auto eval = [&](const Eigen::VectorXd& z) {
    ++evals;
    const Eigen::VectorXd x = to_x(z, bounds);
    const double v = f(x);
    if (!std::isfinite(v)) throw_non_finite(x);
    return v;
  };

  std::vector<Vertex> simplex;
  simplex.reserve(static_cast<std::size_t>(n) + 1);
  simplex.push_back({z0, eval(z0)});
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd z = z0;
    z[i] += 0.25;
    simplex.push_back({z, eval(z)});
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  bool converged = false;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);

    double diam = 0.0, spread = 0.0;
    const Eigen::VectorXd xbest = to_x(simplex[0].z, bounds);
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      diam = std::max(diam, x_distance(xbest, to_x(simplex[i].z, bounds), bounds));
      spread = std::max(spread, std::abs(simplex[i].f - simplex[0].f));
    }
    if (diam < opts.diam_tol && spread < opts.val_tol) {
      converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += simplex[static_cast<std::size_t>(i)].z;
    centroid /= n;
    Vertex& worst = simplex.back();

    const Eigen::VectorXd zr = centroid + (centroid - worst.z);
    const double fr = eval(zr);
    if (fr < simplex[0].f) {
      const Eigen::VectorXd ze = centroid + 2.0 * (centroid - worst.z);
      const double fe = eval(ze);
      if (fe < fr)
        worst = {ze, fe};
      else
        worst = {zr, fr};
      continue;
    }
    if (fr < simplex[simplex.size() - 2].f) {
      worst = {zr, fr};
      continue;
    }
    if (fr < worst.f) {
      const Eigen::VectorXd zc = centroid + 0.5 * (zr - centroid);
      const double fc = eval(zc);
      if (fc <= fr) {
        worst = {zc, fc};
        continue;
      }
    } else {
      const Eigen::VectorXd zc = centroid + 0.5 * (worst.z - centroid);
      const double fc = eval(zc);
      if (fc < worst.f) {
        worst = {zc, fc};
        continue;
      }
    }
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      simplex[i].z = simplex[0].z + 0.5 * (simplex[i].z - simplex[0].z);
      simplex[i].f = eval(simplex[i].z);
    }
  }

  std::stable_sort(simplex.begin(), simplex.end(), by_value);
  OptResult res;
  res.argmin = to_x(simplex[0].z, bounds);
  for (int i = 0; i < n; ++i) {
    const Bound& b = bounds[static_cast<std::size_t>(i)];
    if (b.periodic) res.argmin[i] = wrap_into(res.argmin[i], b.lo, b.hi - b.lo);
  }
  res.value = simplex[0].f;
  res.converged = converged;
  return res;
}

}  // namespace

OptResult minimize(const Objective& f, const std::vector<Bound>& bounds,
                   const std::vector<Eigen::VectorXd>& extra_starts, const OptimOptions& opts) {
  const int dim = static_cast<int>(bounds.size());
  if (dim < 1 || dim > static_cast<int>(std::size(kPrimes)))
    throw std::length_error("optimizer supports 1 to 7 dimensions");
  for (const Bound& b : bounds)
    if (!(b.hi > b.lo)) throw std::invalid_argument("empty optimizer bound");

  const int n_starts = opts.starts > 0 ? opts.starts : (dim >= 5 ? 32 : 16);

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd shift(dim);
  for (int i = 0; i < dim; ++i) shift[i] = unit(rng);

  std::vector<Eigen::VectorXd> starts;
  starts.reserve(extra_starts.size() + static_cast<std::size_t>(n_starts));
  for (const Eigen::VectorXd& x : extra_starts) {
    if (x.size() != dim) throw std::invalid_argument("extra start has wrong dimension");
    starts.push_back(x);
  }
  for (int k = 0; k < n_starts; ++k) {
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) {
      double u = halton(static_cast<std::uint64_t>(k) + 1, kPrimes[i]) + shift[i];
      u -= std::floor(u);
      x[i] = bounds[static_cast<std::size_t>(i)].lo +
             u * (bounds[static_cast<std::size_t>(i)].hi - bounds[static_cast<std::size_t>(i)].lo);
    }
    starts.push_back(x);
  }

  OptResult best;
  best.value = std::numeric_limits<double>::infinity();
  bool any_converged = false;
  long evals = 0;
  for (const Eigen::VectorXd& x : starts) {
    OptResult r = nelder_mead(f, bounds, to_z(x, bounds), opts, evals);
    any_converged = any_converged || r.converged;
    if (r.value < best.value - kTieEps) best = r;
  }
  best.converged = any_converged;
  best.evaluations = evals;
  return best;
}

OptResult grid_oracle(const Objective& f, const std::vector<Bound>& bounds, int points_per_dim) {
  const int dim = static_cast<int>(bounds.size());
  if (dim < 1) throw std::invalid_argument("grid needs at least one dimension");
  if (points_per_dim < 3)
    throw std::invalid_argument("grid needs at least three points per dimension");
  double total = 1.0;
  for (int i = 0; i < dim; ++i) total *= points_per_dim;
  if (total > 1e8) throw std::invalid_argument("grid budget exceeded");

  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  Eigen::VectorXd x(dim);
  OptResult best;
  best.value = std::numeric_limits<double>::infinity();
  long evals = 0;
  while (true) {
    for (int i = 0; i < dim; ++i) {
      const Bound& b = bounds[static_cast<std::size_t>(i)];
      if (b.periodic) {
        // endpoint omitted: lo and hi are the same point of the circle
        x[i] = b.lo + (b.hi - b.lo) * idx[static_cast<std::size_t>(i)] / points_per_dim;
      } else {
        x[i] = b.lo + (b.hi - b.lo) * idx[static_cast<std::size_t>(i)] / (points_per_dim - 1);
      }
    }
    const double v = f(x);
    if (!std::isfinite(v)) throw_non_finite(x);
    ++evals;
    if (v < best.value) {
      best.value = v;
      best.argmin = x;
    }
    int carry = 0;
    while (carry < dim) {
      if (++idx[static_cast<std::size_t>(carry)] < points_per_dim) break;
      idx[static_cast<std::size_t>(carry)] = 0;
      ++carry;
    }
    if (carry == dim) break;
  }
  best.evaluations = evals;
  best.converged = true;
  return best;
}

std::pair<double, double> golden_section_min(const std::function<double(double)>& f, double lo,
                                             double hi, double xtol) {
  if (!(hi > lo)) throw std::invalid_argument("empty golden-section interval");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

}  // namespace gdiscord
