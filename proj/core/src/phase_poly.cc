#include "gowers/phase_poly.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <string>

#include "gowers/error.h"

namespace gowers {
namespace {

std::vector<std::vector<std::uint32_t>> basis_shifts(const Space& space) {
  std::vector<std::vector<std::uint32_t>> out;
  for (int i = 0; i < space.n(); ++i) out.push_back(space.translation(space.basis(i)));
  return out;
}

// Depth-first walk over nondecreasing direction multisets, skipping the
// subtree below any derivative that vanishes.
template <typename Values, typename Derive, typename Vanishes>
struct DegreeWalk {
  const std::vector<std::vector<std::uint32_t>>& shifts;
  Derive derive;
  Vanishes vanishes;
  int k_max;
  std::uint64_t checked = 0;
  int best = 0;
  bool exceeded = false;

  void visit(const Values& g, std::size_t start, int depth) {
    for (std::size_t i = start; i < shifts.size() && !exceeded; ++i) {
      Values h = derive(g, shifts[i]);
      ++checked;
      if (vanishes(h)) continue;
      if (depth + 1 > k_max) {
        exceeded = true;
        return;
      }
      best = std::max(best, depth + 1);
      visit(h, i, depth + 1);
    }
  }
};

template <typename Values, typename Derive, typename Vanishes>
DegreeCertificate run_walk(const std::vector<std::vector<std::uint32_t>>& shifts,
                           const Values& root, int k_max, Derive derive, Vanishes vanishes) {
  if (k_max < 0) throw DomainError("k_max must be nonnegative");
  DegreeWalk<Values, Derive, Vanishes> walk{shifts, derive, vanishes, k_max};
  walk.visit(root, 0, 0);
  DegreeCertificate cert;
  cert.k_max = k_max;
  cert.derivatives_checked = walk.checked;
  if (!walk.exceeded) cert.degree = walk.best;
  return cert;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % q);
}

}  // namespace

DegreeCertificate degree_test(const GroupFunction& phi, int k_max) {
  if (!phi.is_unit_modulus(1e-10)) {
    throw DomainError("degree_test needs a unit-modulus function");
  }
  const double tol = phi.tolerance();
  using Values = std::vector<Complex>;
  return run_walk(
      basis_shifts(phi.space()), phi.values(), k_max,
      [](const Values& g, const std::vector<std::uint32_t>& shift) {
        Values h(g.size());
        for (std::size_t x = 0; x < g.size(); ++x) h[x] = std::conj(g[x]) * g[shift[x]];
        return h;
      },
      [tol](const Values& h) {
        return std::all_of(h.begin(), h.end(),
                           [tol](const Complex& v) { return std::abs(v - 1.0) <= tol; });
      });
}

DegreeCertificate degree_test(const ExponentFunction& P, int k_max) {
  return degree_test(basis_shifts(P.space()), P.exponents(), P.modulus(), k_max);
}

DegreeCertificate degree_test(const std::vector<std::vector<std::uint32_t>>& shifts,
                              const std::vector<std::int64_t>& exponents,
                              std::int64_t q, int k_max) {
  for (const auto& shift : shifts) {
    if (shift.size() != exponents.size()) throw DimensionError("shift table size mismatch");
  }
  using Values = std::vector<std::int64_t>;
  Values root(exponents.size());
  for (std::size_t x = 0; x < root.size(); ++x) root[x] = mod(exponents[x], q);
  return run_walk(
      shifts, root, k_max,
      [q](const Values& g, const std::vector<std::uint32_t>& shift) {
        Values h(g.size());
        for (std::size_t x = 0; x < g.size(); ++x) h[x] = mod(g[shift[x]] - g[x], q);
        return h;
      },
      [](const Values& h) {
        return std::all_of(h.begin(), h.end(), [](std::int64_t v) { return v == 0; });
      });
}

int universal_degree_bound(int p, int n, int m) {
  return std::max(0, n * (p * std::max(m, 1) - 1));
}

PhasePolynomial certify(ExponentFunction P) {
  const int bound = universal_degree_bound(P.space().p(), P.space().n(), P.m());
  const DegreeCertificate cert = degree_test(P, bound);
  if (!cert.degree) {
    throw InternalConsistencyError("degree exceeded the universal bound " +
                                   std::to_string(bound));
  }
  return PhasePolynomial{std::move(P), *cert.degree + 1, true};
}

PhasePolynomial standard_phase(int p, int n, int k) {
  if (p != 2) {
    throw UnsupportedHypothesisError("the standard phase is defined in characteristic 2");
  }
  if (k < 1) throw DomainError("standard phase needs k >= 1");
  const Space space(2, n);
  std::vector<std::int64_t> exps(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    exps[x] = static_cast<std::int64_t>(std::popcount(x));
  }
  return certify(ExponentFunction(space, k, std::move(exps)));
}

int values_torsion_bound(int p, int k) {
  const int num = k - 2;
  const int den = p - 1;
  const int fl = num >= 0 ? num / den : -((-num + den - 1) / den);
  return std::max(0, fl + 1);
}

int cocycle_torsion_bound(int p, int k) { return k / p + 1; }

std::int64_t base_digit(std::int64_t value, int p, int j) {
  for (int i = 0; i < j; ++i) value /= p;
  return value % p;
}

DigitResult digit(const ExponentFunction& P, int j, int l) {
  if (j < 0 || j >= P.m()) {
    throw DomainError("digit position " + std::to_string(j) + " outside [0, " +
                      std::to_string(P.m()) + ")");
  }
  const int p = P.space().p();
  std::vector<std::int64_t> values(P.size());
  for (std::size_t x = 0; x < values.size(); ++x) values[x] = base_digit(P[x], p, j);
  ExponentFunction out(P.space(), l, std::move(values));
  const DegreeCertificate cert =
      degree_test(out, universal_degree_bound(p, P.space().n(), l));
  return DigitResult{std::move(out), cert.degree};
}

CarryTable carry_polynomial(int p, int j, int l, const ComputeOptions& options) {
  if (j < 0) throw DomainError("carry position must be nonnegative");
  const int arity = 2 * j;
  const std::int64_t grid = checked_pow(p, arity);
  check_budget(saturating_mul(static_cast<std::uint64_t>(grid),
                              static_cast<std::uint64_t>(std::max(arity, 1)) * p),
               options, "carry interpolation grid");
  const std::int64_t limit = checked_pow(p, j);
  std::vector<std::int64_t> table(grid);
  for (std::int64_t idx = 0; idx < grid; ++idx) {
    std::int64_t rest = idx, a = 0, b = 0, weight = 1;
    for (int i = 0; i < j; ++i, weight *= p) {
      a += (rest % p) * weight;
      rest /= p;
    }
    weight = 1;
    for (int i = 0; i < j; ++i, weight *= p) {
      b += (rest % p) * weight;
      rest /= p;
    }
    table[idx] = (a + b >= limit) ? 1 : 0;
  }
  RingPolynomial poly = RingPolynomial::interpolate(p, l, arity, table);
  std::vector<std::int64_t> args(arity);
  for (std::int64_t idx = 0; idx < grid; ++idx) {
    std::int64_t rest = idx;
    for (int i = 0; i < arity; ++i) {
      args[i] = rest % p;
      rest /= p;
    }
    if (poly.evaluate(args) != table[idx]) {
      throw InternalConsistencyError("carry interpolant misses grid point " +
                                     std::to_string(idx));
    }
  }
  return CarryTable{p, j, l, std::move(table), std::move(poly)};
}

PhasePolynomial root(const PhasePolynomial& phi, std::int64_t r) {
  if (r < 1) throw DomainError("root order must be positive");
  const ExponentFunction& P = phi.exponent;
  const int p = P.space().p();
  const int a = valuation(r, p);
  const std::int64_t s = r / checked_pow(p, a);
  const ExponentFunction unit_root = P.times(inverse_mod(s, P.modulus()));
  // Lift by base-p digits: Q = Σ_i b_i p^i read in Z/p^{m+a}.
  std::vector<std::int64_t> lifted(P.size(), 0);
  for (int i = 0; i < P.m(); ++i) {
    const std::int64_t weight = checked_pow(p, i);
    for (std::size_t x = 0; x < lifted.size(); ++x) {
      lifted[x] += base_digit(unit_root[x], p, i) * weight;
    }
  }
  return certify(ExponentFunction(P.space(), P.m() + a, std::move(lifted)));
}

bool is_root(const PhasePolynomial& psi, const PhasePolynomial& phi, std::int64_t r) {
  const int m = std::max(psi.exponent.m(), phi.exponent.m());
  const ExponentFunction lhs = psi.exponent.lift(m - psi.exponent.m()).times(r);
  const ExponentFunction rhs = phi.exponent.lift(m - phi.exponent.m());
  return lhs == rhs;
}

PhasePolynomial compose(const ExponentMap& F, std::span<const PhasePolynomial> phis,
                        int target_m) {
  if (phis.empty()) throw DomainError("compose needs at least one phase");
  const Space& space = phis[0].exponent.space();
  for (const auto& phi : phis) space.require_same(phi.exponent.space(), "compose");
  const std::int64_t q = checked_pow(space.p(), target_m);
  std::vector<std::int64_t> args(phis.size());
  std::vector<std::int64_t> out(space.size());
  for (std::size_t x = 0; x < out.size(); ++x) {
    for (std::size_t i = 0; i < phis.size(); ++i) args[i] = phis[i].exponent[x];
    const std::int64_t v = F(args);
    if (v < 0 || v >= q) {
      throw DomainError("composed value " + std::to_string(v) + " outside Z/" +
                        std::to_string(q));
    }
    out[x] = v;
  }
  return certify(ExponentFunction(space, target_m, std::move(out)));
}

ExponentFunction compose_by_interpolation(const RingPolynomial& F,
                                          std::span<const ExponentFunction> digits) {
  if (static_cast<int>(digits.size()) != F.arity()) {
    throw DimensionError("need one digit phase per polynomial variable");
  }
  if (digits.empty()) throw DomainError("compose needs at least one input");
  const Space& space = digits[0].space();
  if (space.p() != F.p()) throw DimensionError("polynomial over a different prime");
  for (const auto& d : digits) {
    space.require_same(d.space(), "compose_by_interpolation");
    if (d.m() != 1) throw DomainError("interpolated composition takes C_p-valued inputs");
  }
  std::vector<std::int64_t> args(digits.size());
  std::vector<std::int64_t> out(space.size());
  for (std::size_t x = 0; x < out.size(); ++x) {
    for (std::size_t i = 0; i < digits.size(); ++i) args[i] = digits[i][x];
    out[x] = F.evaluate(args);
  }
  return ExponentFunction(space, F.l(), std::move(out));
}

std::vector<ExponentFunction> digit_phases(const ExponentFunction& P) {
  const int p = P.space().p();
  std::vector<ExponentFunction> out;
  for (int i = 0; i < P.m(); ++i) {
    std::vector<std::int64_t> values(P.size());
    for (std::size_t x = 0; x < values.size(); ++x) values[x] = base_digit(P[x], p, i);
    out.emplace_back(P.space(), 1, std::move(values));
  }
  return out;
}

ExponentFunction phaserep(const ExponentFunction& P) {
  const int p = P.space().p();
  const int m = P.m();
  if (m == 0) return P;
  const std::int64_t grid = checked_pow(p, m);
  std::vector<std::int64_t> table(grid);
  // On the grid the value Σ d_i p^i is the grid index itself.
  for (std::int64_t idx = 0; idx < grid; ++idx) table[idx] = idx;
  const RingPolynomial F = RingPolynomial::interpolate(p, m, m, table);
  const auto digits = digit_phases(P);
  return compose_by_interpolation(F, digits);
}

TorsionAudit torsion_audit(const PhasePolynomial& phi, int k) {
  const ExponentFunction& P = phi.exponent;
  const Space& space = P.space();
  const int p = space.p();
  const int m = P.m();
  const std::int64_t q = P.modulus();
  if (k < 1) throw DomainError("torsion audit needs k >= 1");
  if (!degree_test(P, k).below(k)) {
    throw ContractError("torsion audit: phase is not of degree < " + std::to_string(k));
  }
  TorsionAudit audit;
  audit.k = k;
  audit.rotation = P[0];
  audit.asserted_torsion = values_torsion_bound(p, k);
  const ExponentFunction rotated = P.plus_constant(-P[0]);
  audit.minimal_torsion = rotated.torsion();
  audit.values_ok = audit.minimal_torsion <= audit.asserted_torsion;

  audit.line_torsion = k / p;
  if (audit.values_ok) {
    // Σ_{i<p} Q(x + i g) must be divisible by p^{m - floor(k/p)}.
    const std::int64_t divisor = checked_pow(p, std::max(0, m - audit.line_torsion));
    audit.line_ok = true;
    audit.line_up_to_constant_ok = true;
    std::vector<std::int64_t> line_sum(space.size());
    for (std::size_t g = 0; g < space.size(); ++g) {
      std::fill(line_sum.begin(), line_sum.end(), 0);
      std::size_t step = 0;
      for (int i = 0; i < p; ++i) {
        const auto shift = space.translation(step);
        for (std::size_t x = 0; x < space.size(); ++x) line_sum[x] += rotated[shift[x]];
        step = space.add(step, g);
      }
      for (std::size_t x = 0; x < space.size(); ++x) {
        const std::int64_t v = mod(line_sum[x], q);
        if (v % divisor != 0 && audit.line_ok) {
          audit.line_ok = false;
          audit.line_failure = LineFailure{g, x, m - valuation(v, p)};
        }
        if (mod(line_sum[x] - line_sum[0], q) % divisor != 0) {
          audit.line_up_to_constant_ok = false;
        }
      }
      ++audit.lines_checked;
    }
  }

  if (k >= p) {
    const DegreeCertificate cert = degree_test(P.times(p), k - p);
    audit.power_degree = cert.degree;
    audit.power_ok = cert.degree.has_value();
  } else {
    audit.power_ok = true;
  }
  return audit;
}

PhasePolynomialFamily::PhasePolynomialFamily(int p, int n, int k, int m,
                                             bool quotient_constants)
    : space_(p, n), k_(k), m_(m), quotient_constants_(quotient_constants) {
  if (k < 0 || m < 1) throw DomainError("family needs k >= 0 and m >= 1");
  const std::size_t size = space_.size();
  const auto shifts = basis_shifts(space_);

  // One row per (nondecreasing direction multiset, base point).
  std::vector<std::vector<int>> multisets;
  std::vector<int> current;
  std::function<void(int)> build = [&](int start) {
    if (static_cast<int>(current.size()) == k) {
      multisets.push_back(current);
      return;
    }
    for (int i = start; i < n; ++i) {
      current.push_back(i);
      build(i);
      current.pop_back();
    }
  };
  build(0);

  const std::size_t row_count = multisets.size() * size + (quotient_constants ? 1 : 0);
  ModMatrix a(row_count, size);
  const std::int64_t q = checked_pow(p, m);
  std::size_t row = 0;
  std::vector<std::int64_t> coeff(size), next(size);
  for (const auto& dirs : multisets) {
    for (std::size_t x = 0; x < size; ++x) {
      std::fill(coeff.begin(), coeff.end(), 0);
      coeff[x] = 1;
      // Functional P -> ∂_{dirs} P (x): compose with y -> P(y + e) - P(y).
      for (int dir : dirs) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t y = 0; y < size; ++y) {
          if (coeff[y] == 0) continue;
          next[shifts[dir][y]] = mod(next[shifts[dir][y]] + coeff[y], q);
          next[y] = mod(next[y] - coeff[y], q);
        }
        coeff.swap(next);
      }
      for (std::size_t c = 0; c < size; ++c) a.at(row, c) = coeff[c];
      ++row;
    }
  }
  if (quotient_constants) a.at(row, 0) = 1;
  generators_ = kernel_mod_prime_power(std::move(a), p, m);
  for (const auto& g : generators_) log_count_ += g.log_order;
}

std::uint64_t PhasePolynomialFamily::count() const {
  const double bits = log_count_ * std::log2(static_cast<double>(space_.p()));
  if (bits >= 63) {
    throw CapacityError("family of p^" + std::to_string(log_count_) + " members");
  }
  return static_cast<std::uint64_t>(checked_pow(space_.p(), log_count_));
}

ExponentFunction PhasePolynomialFamily::member(std::uint64_t idx) const {
  const std::int64_t q = checked_pow(space_.p(), m_);
  std::vector<std::int64_t> out(space_.size(), 0);
  for (const auto& g : generators_) {
    const std::uint64_t order = static_cast<std::uint64_t>(checked_pow(space_.p(), g.log_order));
    const std::int64_t c = static_cast<std::int64_t>(idx % order);
    idx /= order;
    if (c == 0) continue;
    for (std::size_t x = 0; x < out.size(); ++x) {
      out[x] = mod(out[x] + mul_mod(c, g.generator[x], q), q);
    }
  }
  if (idx != 0) throw DomainError("family member index out of range");
  return ExponentFunction(space_, m_, std::move(out));
}

PhasePolynomial PhasePolynomialFamily::phase(std::uint64_t idx) const {
  return PhasePolynomial{member(idx), k_, true};
}

ExponentFunction PhasePolynomialFamily::generator(std::size_t i) const {
  return ExponentFunction(space_, m_, generators_.at(i).generator);
}

std::vector<PhasePolynomial> enumerate_phase_polys(int p, int n, int k, int m,
                                                   const ComputeOptions& options) {
  const PhasePolynomialFamily family(p, n, k, m, false);
  const std::uint64_t count = family.count();
  check_budget(saturating_mul(count, family.space().size()), options,
               "phase polynomial enumeration");
  std::vector<PhasePolynomial> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(family.phase(i));
  return out;
}

int inverse_search_torsion(int p, int k) { return std::max(1, values_torsion_bound(p, k)); }

CorrelationResult inverse_search(const GroupFunction& f, int k, const ComputeOptions& options,
                                 const InverseSearchOptions& search) {
  const Space& space = f.space();
  const int p = space.p();
  if (k < 1) throw DomainError("inverse search needs k >= 1");
  if (k > p && !search.allow_low_characteristic) {
    throw UnsupportedHypothesisError(
        "inverse search covers 1 <= k <= p only (k = " + std::to_string(k) +
        ", p = " + std::to_string(p) + "); low characteristic needs an explicit override");
  }
  const int m = inverse_search_torsion(p, k);
  const PhasePolynomialFamily family(p, space.n(), k, m, true);
  const std::uint64_t count = family.count();
  check_budget(saturating_mul(count, space.size()), options, "inverse search");

  const std::int64_t q = checked_pow(p, m);
  std::vector<Complex> roots(q);
  for (std::int64_t a = 0; a < q; ++a) roots[a] = std::conj(root_of_unity(a, q));
  const double inv_size = 1.0 / static_cast<double>(space.size());

  constexpr std::uint64_t kChunk = 512;
  const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
  struct Best {
    double corr = -1;
    std::uint64_t idx = 0;
    Complex raw = 0;
  };
  std::vector<Best> best(chunks);
  parallel_for(chunks, options.threads, [&](std::size_t c) {
    Best local;
    const std::uint64_t end = std::min(count, (c + 1) * kChunk);
    for (std::uint64_t idx = c * kChunk; idx < end; ++idx) {
      const ExponentFunction P = family.member(idx);
      Complex acc = 0;
      for (std::size_t x = 0; x < space.size(); ++x) acc += f[x] * roots[P[x]];
      acc *= inv_size;
      const double corr = std::abs(acc);
      if (corr > local.corr) local = Best{corr, idx, acc};
    }
    best[c] = local;
  });
  Best overall;
  for (const Best& b : best) {
    if (b.corr > overall.corr) overall = b;
  }
  CorrelationResult result{family.phase(overall.idx), overall.idx, overall.corr, overall.raw,
                           count, m};
  return result;
}

}  // namespace gowers
