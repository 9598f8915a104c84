#include "gowers/gowers.h"

#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "gowers/error.h"

namespace gowers {
namespace {

// Translation tables x -> x + h for every h, shared by the inner loops.
class ShiftTables {
 public:
  explicit ShiftTables(const Space& space) : space_(space) {
    const std::size_t n = space.size();
    if (n <= kCacheLimit) {
      tables_.reserve(n);
      for (std::size_t h = 0; h < n; ++h) tables_.push_back(space.translation(h));
    }
  }

  // Valid until the next call on the same thread when not cached.
  const std::vector<std::uint32_t>& get(std::size_t h,
                                        std::vector<std::uint32_t>& scratch) const {
    if (!tables_.empty()) return tables_[h];
    scratch = space_.translation(h);
    return scratch;
  }

 private:
  static constexpr std::size_t kCacheLimit = 2048;
  const Space& space_;
  std::vector<std::vector<std::uint32_t>> tables_;
};

void derive(const std::vector<Complex>& g, const std::vector<std::uint32_t>& shift,
            std::vector<Complex>& out) {
  out.resize(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = std::conj(g[x]) * g[shift[x]];
}

Complex plain_sum(const std::vector<Complex>& g) {
  Complex acc = 0;
  for (const Complex& v : g) acc += v;
  return acc;
}

// Σ over h_1..h_depth and x of Δ_{h_depth}...Δ_{h_1} g(x).
Complex sum_derivatives(const std::vector<Complex>& g, int depth, const ShiftTables& shifts) {
  if (depth == 0) return plain_sum(g);
  std::vector<Complex> next;
  std::vector<std::uint32_t> scratch;
  Complex acc = 0;
  for (std::size_t h = 0; h < g.size(); ++h) {
    derive(g, shifts.get(h, scratch), next);
    acc += sum_derivatives(next, depth - 1, shifts);
  }
  return acc;
}

// Σ over h_1..h_depth of |Σ_x Δ...g(x)|^2.
double sum_squared_means(const std::vector<Complex>& g, int depth, const ShiftTables& shifts) {
  if (depth == 0) return std::norm(plain_sum(g));
  std::vector<Complex> next;
  std::vector<std::uint32_t> scratch;
  double acc = 0;
  for (std::size_t h = 0; h < g.size(); ++h) {
    derive(g, shifts.get(h, scratch), next);
    acc += sum_squared_means(next, depth - 1, shifts);
  }
  return acc;
}

double fourth_moment(const Space& space, const std::vector<Complex>& g) {
  const Spectrum s = fourier_transform(GroupFunction(space, g));
  double acc = 0;
  for (const Complex& c : s.coefficients) {
    const double a = std::norm(c);
    acc += a * a;
  }
  return acc;
}

// Σ over h_1..h_depth of Σ_ξ |(Δ...g)^(ξ)|^4.
double sum_fourth_moments(const Space& space, const std::vector<Complex>& g, int depth,
                          const ShiftTables& shifts) {
  if (depth == 0) return fourth_moment(space, g);
  std::vector<Complex> next;
  std::vector<std::uint32_t> scratch;
  double acc = 0;
  for (std::size_t h = 0; h < g.size(); ++h) {
    derive(g, shifts.get(h, scratch), next);
    acc += sum_fourth_moments(space, next, depth - 1, shifts);
  }
  return acc;
}

void require_order(int k, int least) {
  if (k < least) {
    throw DomainError("norm order must be at least " + std::to_string(least));
  }
}

std::string format_residue(double im) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", im);
  return buf;
}

}  // namespace

std::string_view method_name(NormMethod method) {
  switch (method) {
    case NormMethod::kDirect: return "direct";
    case NormMethod::kRecursive: return "recursive";
    case NormMethod::kFourier: return "fourier";
    case NormMethod::kCube: return "cube";
  }
  return "unknown";
}

NormReport finalize_norm(Complex power, int k, NormMethod method, std::uint64_t terms) {
  NormReport report;
  report.k = k;
  report.method = method;
  report.term_count = terms;
  const double im = std::abs(power.imag());
  if (im > kImaginaryError) {
    throw InternalConsistencyError("norm power has imaginary part " + format_residue(im));
  }
  if (im > kImaginaryDiscard) {
    report.warning = "discarded imaginary residue " + format_residue(im);
  }
  double re = power.real();
  if (re < -kNegativePowerError) {
    throw InternalConsistencyError("norm power is negative: " + format_residue(re));
  }
  if (re < 0) re = 0;
  report.power = re;
  report.value = std::pow(re, 1.0 / std::ldexp(1.0, k));
  return report;
}

NormReport gowers_norm_direct(const GroupFunction& f, int k, const ComputeOptions& options) {
  require_order(k, 1);
  const std::size_t n = f.size();
  const std::uint64_t terms = saturating_pow(n, k + 1);
  check_budget(terms, options, "direct U^" + std::to_string(k) + " norm");
  const ShiftTables shifts(f.space());
  std::vector<Complex> partial(n);
  parallel_for(n, options.threads, [&](std::size_t h) {
    std::vector<Complex> g;
    std::vector<std::uint32_t> scratch;
    derive(f.values(), shifts.get(h, scratch), g);
    partial[h] = sum_derivatives(g, k - 1, shifts);
  });
  const Complex power = tree_sum(partial) / static_cast<double>(terms);
  return finalize_norm(power, k, NormMethod::kDirect, terms);
}

NormReport gowers_norm_recursive(const GroupFunction& f, int k, const ComputeOptions& options) {
  require_order(k, 1);
  const std::size_t n = f.size();
  const std::uint64_t terms = saturating_pow(n, k);
  check_budget(terms, options, "recursive U^" + std::to_string(k) + " norm");
  const double scale = static_cast<double>(n) * static_cast<double>(n);
  if (k == 1) {
    return finalize_norm(std::norm(plain_sum(f.values())) / scale, k,
                         NormMethod::kRecursive, terms);
  }
  const ShiftTables shifts(f.space());
  std::vector<double> partial(n);
  parallel_for(n, options.threads, [&](std::size_t h) {
    std::vector<Complex> g;
    std::vector<std::uint32_t> scratch;
    derive(f.values(), shifts.get(h, scratch), g);
    partial[h] = sum_squared_means(g, k - 2, shifts);
  });
  const double outer = std::pow(static_cast<double>(n), k - 1);
  return finalize_norm(tree_sum(partial) / (outer * scale), k, NormMethod::kRecursive, terms);
}

NormReport gowers_norm_fast(const GroupFunction& f, int k, const ComputeOptions& options) {
  require_order(k, 2);
  const Space& space = f.space();
  const std::size_t n = f.size();
  const std::uint64_t leaves = saturating_pow(n, k - 2);
  const std::uint64_t cost =
      saturating_mul(leaves, saturating_mul(n, static_cast<std::uint64_t>(space.n() + 1) * space.p()));
  check_budget(cost, options, "fast U^" + std::to_string(k) + " norm");
  if (k == 2) {
    return finalize_norm(fourth_moment(space, f.values()), k, NormMethod::kFourier, cost);
  }
  const ShiftTables shifts(space);
  std::vector<double> partial(n);
  parallel_for(n, options.threads, [&](std::size_t h) {
    std::vector<Complex> g;
    std::vector<std::uint32_t> scratch;
    derive(f.values(), shifts.get(h, scratch), g);
    partial[h] = sum_fourth_moments(space, g, k - 3, shifts);
  });
  return finalize_norm(tree_sum(partial) / static_cast<double>(leaves), k,
                       NormMethod::kFourier, cost);
}

NormReport gowers_norm(const GroupFunction& f, int k, const ComputeOptions& options) {
  if (k >= 2) return gowers_norm_fast(f, k, options);
  return gowers_norm_recursive(f, k, options);
}

NormReport ghk_seminorm(const FiniteSystem& system, std::span<const Complex> f, int k,
                        const ComputeOptions& options) {
  require_order(k, 1);
  if (f.size() != system.size()) throw DimensionError("observable size differs from the system");
  const std::size_t gsize = system.group().size();
  const std::size_t xsize = system.size();
  const auto& mu = system.weights();

  // Iterated ergodic averages; over a finite group they are exact means.
  const std::uint64_t iterated_cost = saturating_mul(saturating_pow(gsize, k), xsize);
  check_budget(iterated_cost, options, "iterated seminorm average");
  const std::vector<Complex> values(f.begin(), f.end());
  std::vector<Complex> partial(gsize);
  const auto derive_along = [&](const std::vector<Complex>& g, std::size_t h) {
    std::vector<Complex> out(xsize);
    for (std::size_t x = 0; x < xsize; ++x) out[x] = std::conj(g[x]) * g[system.act(h, x)];
    return out;
  };
  const auto integral = [&](const std::vector<Complex>& g) {
    Complex acc = 0;
    for (std::size_t x = 0; x < xsize; ++x) acc += mu[x] * g[x];
    return acc;
  };
  std::function<Complex(const std::vector<Complex>&, int)> nested =
      [&](const std::vector<Complex>& g, int depth) -> Complex {
    if (depth == 0) return integral(g);
    Complex acc = 0;
    for (std::size_t h = 0; h < gsize; ++h) acc += nested(derive_along(g, h), depth - 1);
    return acc;
  };
  parallel_for(gsize, options.threads, [&](std::size_t h) {
    partial[h] = nested(derive_along(values, h), k - 1);
  });
  const Complex iterated = tree_sum(partial) / std::pow(static_cast<double>(gsize), k);

  // Cube integral of d^[k] f.
  const CubeVertexSet vertices(k);
  std::vector<std::vector<Complex>> tables(vertices.size());
  std::vector<Complex> conj_values(xsize);
  for (std::size_t x = 0; x < xsize; ++x) conj_values[x] = std::conj(values[x]);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    tables[v] = vertices.sign(v) < 0 ? conj_values : values;
  }
  const CubeMeasure lower = cube_space(system, k - 1, options);
  const std::uint64_t terms = saturating_mul(lower.size(), vertices.size());
  const Complex cube_power = integrate_vertex_product(system, lower, tables, options);
  if (std::abs(cube_power - iterated) > kMethodAgreement) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "seminorm paths disagree: cube %.12e%+.12ei vs iterated %.12e%+.12ei",
                  cube_power.real(), cube_power.imag(), iterated.real(), iterated.imag());
    throw InternalConsistencyError(buf);
  }
  return finalize_norm(cube_power, k, NormMethod::kCube, terms);
}

Complex d_k_eval(std::span<const Complex> f, std::span<const std::uint32_t> cube,
                 double tolerance) {
  const std::size_t count = cube.size();
  if (count == 0 || (count & (count - 1)) != 0) {
    throw DimensionError("a cube has 2^k vertices");
  }
  const CubeVertexSet vertices(std::countr_zero(count));
  Complex acc = 1;
  for (std::size_t v = 0; v < count; ++v) {
    if (cube[v] >= f.size()) throw DimensionError("cube vertex outside the point set");
    const Complex value = f[cube[v]];
    if (vertices.sign(v) > 0) {
      acc *= value;
      continue;
    }
    const double modulus = std::abs(value);
    if (std::abs(modulus - 1.0) <= tolerance) {
      acc *= std::conj(value);
    } else if (modulus < tolerance) {
      throw SingularityError("d^[k] needs the inverse of a value of modulus " +
                             format_residue(modulus));
    } else {
      acc /= value;
    }
  }
  return acc;
}

Complex d_k_eval(const GroupFunction& f, std::span<const std::uint32_t> cube) {
  return d_k_eval(f.values(), cube, f.tolerance());
}

namespace {

std::vector<Complex> dual_values(const std::vector<Complex>& f, int k,
                                 const ShiftTables& shifts) {
  const std::size_t n = f.size();
  if (k == 0) return std::vector<Complex>(n, 1.0);
  std::vector<Complex> acc(n, 0.0), g(n);
  std::vector<std::uint32_t> scratch;
  for (std::size_t h = 0; h < n; ++h) {
    const auto& shift = shifts.get(h, scratch);
    for (std::size_t x = 0; x < n; ++x) g[x] = f[x] * std::conj(f[shift[x]]);
    const std::vector<Complex> inner = dual_values(g, k - 1, shifts);
    const auto& shift_again = shifts.get(h, scratch);
    for (std::size_t x = 0; x < n; ++x) acc[x] += f[shift_again[x]] * inner[x];
  }
  for (Complex& v : acc) v /= static_cast<double>(n);
  return acc;
}

}  // namespace

GroupFunction dual_function(const GroupFunction& f, int k, const ComputeOptions& options) {
  require_order(k, 1);
  const std::size_t n = f.size();
  check_budget(saturating_pow(n, k + 1), options, "dual function");
  const ShiftTables shifts(f.space());
  // One row of partial results per outer shift, reduced per point.
  std::vector<std::vector<Complex>> rows(n);
  parallel_for(n, options.threads, [&](std::size_t h) {
    std::vector<std::uint32_t> scratch;
    const std::vector<std::uint32_t> shift = shifts.get(h, scratch);
    std::vector<Complex> g(n);
    for (std::size_t x = 0; x < n; ++x) g[x] = f[x] * std::conj(f[shift[x]]);
    std::vector<Complex> inner = dual_values(g, k - 1, shifts);
    for (std::size_t x = 0; x < n; ++x) inner[x] *= f[shift[x]];
    rows[h] = std::move(inner);
  });
  std::vector<Complex> out(n), column(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t h = 0; h < n; ++h) column[h] = rows[h][x];
    out[x] = tree_sum(column) / static_cast<double>(n);
  }
  return GroupFunction(f.space(), std::move(out), f.tolerance());
}

namespace {

std::optional<std::vector<std::int64_t>> dual_exponents(const std::vector<std::int64_t>& P,
                                                        std::int64_t q, int k,
                                                        const ShiftTables& shifts) {
  const std::size_t n = P.size();
  if (k == 0) return std::vector<std::int64_t>(n, 0);
  std::optional<std::vector<std::int64_t>> result;
  std::vector<std::int64_t> Q(n);
  std::vector<std::uint32_t> scratch;
  for (std::size_t h = 0; h < n; ++h) {
    const std::vector<std::uint32_t> shift = shifts.get(h, scratch);
    for (std::size_t x = 0; x < n; ++x) Q[x] = mod(P[x] - P[shift[x]], q);
    const auto inner = dual_exponents(Q, q, k - 1, shifts);
    if (!inner) return std::nullopt;
    std::vector<std::int64_t> candidate(n);
    for (std::size_t x = 0; x < n; ++x) candidate[x] = mod(P[shift[x]] + (*inner)[x], q);
    if (!result) {
      result = std::move(candidate);
    } else if (*result != candidate) {
      return std::nullopt;
    }
  }
  return result;
}

}  // namespace

std::optional<ExponentFunction> dual_phase(const ExponentFunction& P, int k,
                                           const ComputeOptions& options) {
  require_order(k, 1);
  check_budget(saturating_pow(P.size(), k + 1), options, "exact dual phase");
  const ShiftTables shifts(P.space());
  const auto exps = dual_exponents(P.exponents(), P.modulus(), k, shifts);
  if (!exps) return std::nullopt;
  return ExponentFunction(P.space(), P.m(), *exps);
}

namespace {

// E over x and h_1..h_j of the product of the tables at the vertices.
Complex inner_product_rec(const std::vector<std::vector<Complex>>& tables,
                          const ShiftTables& shifts) {
  if (tables.size() == 1) {
    return plain_sum(tables[0]) / static_cast<double>(tables[0].size());
  }
  const std::size_t n = tables[0].size();
  const std::size_t half = tables.size() / 2;
  std::vector<std::vector<Complex>> next(half, std::vector<Complex>(n));
  std::vector<std::uint32_t> scratch;
  Complex acc = 0;
  for (std::size_t h = 0; h < n; ++h) {
    const auto& shift = shifts.get(h, scratch);
    for (std::size_t u = 0; u < half; ++u) {
      for (std::size_t x = 0; x < n; ++x) {
        next[u][x] = tables[2 * u][x] * tables[2 * u + 1][shift[x]];
      }
    }
    acc += inner_product_rec(next, shifts);
  }
  return acc / static_cast<double>(n);
}

}  // namespace

Complex gowers_inner_product(std::span<const GroupFunction> tuple, const ComputeOptions& options) {
  const std::size_t count = tuple.size();
  if (count == 0 || (count & (count - 1)) != 0) {
    throw DimensionError("a Gowers inner product takes 2^k functions");
  }
  const Space& space = tuple[0].space();
  for (const auto& f : tuple) space.require_same(f.space(), "gowers_inner_product");
  const CubeVertexSet vertices(std::countr_zero(count));
  const std::size_t n = space.size();
  check_budget(saturating_mul(saturating_pow(n, vertices.k() + 1), count), options,
               "Gowers inner product");
  std::vector<std::vector<Complex>> tables(count);
  for (std::size_t v = 0; v < count; ++v) {
    tables[v] = vertices.sign(v) < 0 ? tuple[v].conj().values() : tuple[v].values();
  }
  if (count == 1) return inner_product_rec(tables, ShiftTables(space));
  const ShiftTables shifts(space);
  const std::size_t half = count / 2;
  std::vector<Complex> partial(n);
  parallel_for(n, options.threads, [&](std::size_t h) {
    std::vector<std::uint32_t> scratch;
    const auto& shift = shifts.get(h, scratch);
    std::vector<std::vector<Complex>> next(half, std::vector<Complex>(n));
    for (std::size_t u = 0; u < half; ++u) {
      for (std::size_t x = 0; x < n; ++x) {
        next[u][x] = tables[2 * u][x] * tables[2 * u + 1][shift[x]];
      }
    }
    partial[h] = inner_product_rec(next, shifts);
  });
  return tree_sum(partial) / static_cast<double>(n);
}

}  // namespace gowers
