#include "gowers/heisenberg.h"

#include <algorithm>
#include <bit>

#include "gowers/error.h"
#include "gowers/function_space.h"
#include "gowers/gowers.h"
#include "gowers/group.h"
#include "gowers/phase_poly.h"

namespace gowers {
namespace {

void require_same_p(const LaurentWindow& a, const LaurentWindow& b) {
  if (a.p() != b.p()) {
    throw DomainError("Laurent operands over F_" + std::to_string(a.p()) + " and F_" +
                      std::to_string(b.p()));
  }
}

}  // namespace

LaurentWindow::LaurentWindow(int p, int lo, int hi) : p_(p), lo_(lo), hi_(hi) {
  if (p < 2) throw DomainError("Laurent coefficients need a prime p");
  if (lo > hi) throw DomainError("empty Laurent window");
  coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), 0);
}

LaurentWindow LaurentWindow::monomial(int p, int lo, int hi, int e, std::int64_t c) {
  LaurentWindow out(p, lo, hi);
  out.set(e, c);
  return out;
}

std::int64_t LaurentWindow::coeff(int e) const {
  if (e < lo_ || e > hi_) return 0;
  return coeffs_[static_cast<std::size_t>(e - lo_)];
}

void LaurentWindow::set(int e, std::int64_t c) {
  if (e < lo_ || e > hi_) {
    throw DomainError("exponent " + std::to_string(e) + " outside window [" +
                      std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
  }
  coeffs_[static_cast<std::size_t>(e - lo_)] = mod(c, p_);
}

LaurentWindow LaurentWindow::floor() const {
  LaurentWindow out = *this;
  for (int e = lo_; e < std::min(0, hi_ + 1); ++e) out.set(e, 0);
  return out;
}

LaurentWindow LaurentWindow::frac() const {
  LaurentWindow out = *this;
  for (int e = std::max(0, lo_); e <= hi_; ++e) out.set(e, 0);
  return out;
}

bool LaurentWindow::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

LaurentWindow LaurentWindow::scaled(std::int64_t c) const {
  LaurentWindow out = *this;
  for (int e = lo_; e <= hi_; ++e) out.set(e, coeff(e) * mod(c, p_));
  return out;
}

LaurentWindow LaurentWindow::combine(const LaurentWindow& a, const LaurentWindow& b,
                                     std::int64_t sign) {
  require_same_p(a, b);
  LaurentWindow out(a.p_, std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
  for (int e = out.lo_; e <= out.hi_; ++e) out.set(e, a.coeff(e) + sign * b.coeff(e));
  out.truncated_ = a.truncated_ || b.truncated_;
  return out;
}

LaurentWindow operator+(const LaurentWindow& a, const LaurentWindow& b) {
  return LaurentWindow::combine(a, b, 1);
}

LaurentWindow operator-(const LaurentWindow& a, const LaurentWindow& b) {
  return LaurentWindow::combine(a, b, -1);
}

LaurentWindow operator*(const LaurentWindow& a, const LaurentWindow& b) {
  require_same_p(a, b);
  LaurentWindow out(a.p_, std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
  out.truncated_ = a.truncated_ || b.truncated_;
  std::vector<std::int64_t> acc(out.coeffs_.size(), 0);
  for (int i = a.lo_; i <= a.hi_; ++i) {
    const std::int64_t ca = a.coeff(i);
    if (ca == 0) continue;
    for (int j = b.lo_; j <= b.hi_; ++j) {
      const std::int64_t cb = b.coeff(j);
      if (cb == 0) continue;
      const int e = i + j;
      if (e < out.lo_ || e > out.hi_) {
        out.truncated_ = true;
        continue;
      }
      auto& slot = acc[static_cast<std::size_t>(e - out.lo_)];
      slot = (slot + ca * cb) % a.p_;
    }
  }
  out.coeffs_ = std::move(acc);
  return out;
}

bool operator==(const LaurentWindow& a, const LaurentWindow& b) {
  if (a.p_ != b.p_) return false;
  for (int e = std::min(a.lo_, b.lo_); e <= std::max(a.hi_, b.hi_); ++e) {
    if (a.coeff(e) != b.coeff(e)) return false;
  }
  return true;
}

std::string LaurentWindow::to_string() const {
  std::string out;
  for (int e = hi_; e >= lo_; --e) {
    const std::int64_t c = coeff(e);
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    out += std::to_string(c);
    if (e != 0) out += "t^" + std::to_string(e);
  }
  return out.empty() ? "0" : out;
}

std::size_t HeisenbergWindow::group_size() const {
  return static_cast<std::size_t>(checked_pow(p, d_g));
}

std::size_t HeisenbergWindow::torus_size() const {
  return static_cast<std::size_t>(checked_pow(p, m));
}

LaurentWindow HeisenbergWindow::polynomial(std::size_t idx) const {
  LaurentWindow out = zero();
  for (int i = 0; i < d_g; ++i) {
    out.set(i, static_cast<std::int64_t>(idx % p));
    idx /= p;
  }
  return out;
}

LaurentWindow HeisenbergWindow::torus(std::size_t idx) const {
  LaurentWindow out = zero();
  for (int i = 0; i < m; ++i) {
    out.set(-1 - i, static_cast<std::int64_t>(idx % p));
    idx /= p;
  }
  return out;
}

void validate(const HeisenbergWindow& window) {
  if (window.p < 3 || !is_prime(window.p)) {
    throw DomainError("the Heisenberg example needs a prime p >= 3");
  }
  if (window.m < 1 || window.d_g < 1) throw DomainError("window sizes must be positive");
}

HeisenbergParams random_params(const HeisenbergWindow& window, Rng& rng) {
  validate(window);
  const std::size_t T = window.torus_size();
  return HeisenbergParams{window.torus(rng.uniform(T)), window.torus(rng.uniform(T)),
                          window.torus(rng.uniform(T))};
}

HeisenbergPoint random_point(const HeisenbergWindow& window, Rng& rng) {
  validate(window);
  const std::size_t T = window.torus_size();
  return HeisenbergPoint{window.torus(rng.uniform(T)), window.torus(rng.uniform(T)),
                         window.torus(rng.uniform(T))};
}

LaurentWindow heisenberg_phase(const HeisenbergParams& params, const LaurentWindow& g) {
  const int p = g.p();
  if (p < 3) throw DomainError("C(g, 2) needs 2 to be invertible");
  const LaurentWindow one = LaurentWindow::monomial(p, g.lo(), g.hi(), 0, 1);
  const LaurentWindow binom = (g * (g - one)).scaled(inverse_mod(2, p));
  const LaurentWindow ga = g * params.alpha;
  const LaurentWindow gb = g * params.beta;
  return g * params.gamma + binom * (params.alpha * params.beta) - ga.frac() * gb;
}

HeisenbergPoint heisenberg_act(const HeisenbergParams& params, const LaurentWindow& g,
                               const HeisenbergPoint& pt) {
  const LaurentWindow ga = g * params.alpha;
  const LaurentWindow gb = g * params.beta;
  const LaurentWindow z = pt.z + heisenberg_phase(params, g) + ga.floor() * pt.y -
                          gb * pt.x.frac();
  HeisenbergPoint out{(pt.x + ga).frac(), (pt.y + gb).frac(), z.frac()};
  if (z.truncated() || out.x.truncated() || out.y.truncated()) {
    throw DomainError("Laurent window too small for the action");
  }
  return out;
}

Complex heisenberg_f(const HeisenbergPoint& pt) {
  const LaurentWindow w = pt.z - pt.x.frac() * pt.y;
  if (w.truncated()) throw DomainError("Laurent window too small for f");
  return root_of_unity(w.residue(), w.p());
}

HeisenbergCertificate certify_phase_polynomial(const HeisenbergParams& params,
                                               const HeisenbergWindow& window,
                                               const ComputeOptions& options) {
  validate(window);
  const Space space(window.p, window.d_g);
  const std::size_t N = space.size();
  check_budget(saturating_pow(N, 4), options, "Heisenberg certificate");

  std::vector<LaurentWindow> P;
  P.reserve(N);
  std::vector<std::int64_t> residues(N);
  for (std::size_t g = 0; g < N; ++g) {
    P.push_back(heisenberg_phase(params, window.polynomial(g)));
    if (P.back().truncated()) throw DomainError("Laurent window too small for the phase");
    residues[g] = P.back().residue();
  }

  HeisenbergCertificate cert;
  cert.group_size = N;
  if (std::any_of(P.begin(), P.end(), [](const LaurentWindow& v) { return !v.is_zero(); })) {
    cert.nonvanishing_order = 0;
  } else {
    cert.nonvanishing_order = -1;
  }
  // Order j difference at x over (h_1..h_j): Σ_S (-1)^{j-|S|} P(x + Σ_S h).
  auto difference = [&](std::size_t x, const std::vector<std::size_t>& hs) {
    const std::size_t j = hs.size();
    LaurentWindow acc = window.zero();
    for (std::size_t S = 0; S < (std::size_t{1} << j); ++S) {
      std::size_t pt = x;
      for (std::size_t i = 0; i < j; ++i) {
        if (S >> i & 1) pt = space.add(pt, hs[i]);
      }
      const bool minus = ((j - static_cast<std::size_t>(std::popcount(S))) & 1) != 0;
      acc = minus ? acc - P[pt] : acc + P[pt];
    }
    return acc;
  };

  bool vanished = true;
  for (std::size_t x = 0; x < N; ++x) {
    for (std::size_t h1 = 0; h1 < N; ++h1) {
      if (!difference(x, {h1}).is_zero()) {
        cert.nonvanishing_order = std::max(cert.nonvanishing_order, 1);
      }
      for (std::size_t h2 = 0; h2 < N; ++h2) {
        if (!difference(x, {h1, h2}).is_zero()) {
          cert.nonvanishing_order = std::max(cert.nonvanishing_order, 2);
        }
        for (std::size_t h3 = 0; h3 < N; ++h3) {
          ++cert.cases_checked;
          if (!difference(x, {h1, h2, h3}).is_zero()) {
            vanished = false;
            cert.nonvanishing_order = 3;
          }
        }
      }
    }
  }
  cert.identity_verified = vanished;

  const ExponentFunction induced(space, 1, residues);
  cert.degree = degree_test(induced, universal_degree_bound(window.p, window.d_g, 1)).degree;
  cert.u3_norm = gowers_norm_direct(induced.to_function(), 3, options).value;
  return cert;
}

}  // namespace gowers
