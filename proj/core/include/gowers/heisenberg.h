#ifndef GOWERS_HEISENBERG_H_
#define GOWERS_HEISENBERG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gowers/compute.h"

namespace gowers {

// A truncated Laurent series Σ_{e=lo}^{hi} c_e t^e over F_p. Products drop
// terms outside [lo, hi]; dropping a nonzero term sets the truncation flag,
// which propagates through later arithmetic.
class LaurentWindow {
 public:
  LaurentWindow(int p, int lo, int hi);

  static LaurentWindow monomial(int p, int lo, int hi, int e, std::int64_t c);

  int p() const { return p_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool truncated() const { return truncated_; }

  // Coefficient of t^e (0 outside the window).
  std::int64_t coeff(int e) const;
  // Throws DomainError if e is outside the window.
  void set(int e, std::int64_t c);

  // Exponents >= 0.
  LaurentWindow floor() const;
  // Exponents < 0.
  LaurentWindow frac() const;
  // Coefficient of t^{-1}.
  std::int64_t residue() const { return coeff(-1); }
  bool is_zero() const;

  LaurentWindow scaled(std::int64_t c) const;

  // Binary operations throw DomainError for different p; the result window
  // is the union of the operand windows.
  friend LaurentWindow operator+(const LaurentWindow& a, const LaurentWindow& b);
  friend LaurentWindow operator-(const LaurentWindow& a, const LaurentWindow& b);
  friend LaurentWindow operator*(const LaurentWindow& a, const LaurentWindow& b);
  // Same coefficients; windows and flags are ignored.
  friend bool operator==(const LaurentWindow& a, const LaurentWindow& b);

  std::string to_string() const;

 private:
  static LaurentWindow combine(const LaurentWindow& a, const LaurentWindow& b,
                               std::int64_t sign);

  int p_;
  int lo_;
  int hi_;
  bool truncated_ = false;
  std::vector<std::int64_t> coeffs_;
};

// ((x, y), z) with every coordinate reduced (only negative exponents).
struct HeisenbergPoint {
  LaurentWindow x;
  LaurentWindow y;
  LaurentWindow z;
};

struct HeisenbergParams {
  LaurentWindow alpha;
  LaurentWindow beta;
  LaurentWindow gamma;
};

// Window [-2m, 2 d_g] used for torus elements with exponents in [-m, -1]
// acted on by polynomials of degree < d_g.
struct HeisenbergWindow {
  int p = 3;
  int m = 1;
  int d_g = 1;

  int lo() const { return -2 * m; }
  int hi() const { return 2 * d_g; }
  LaurentWindow zero() const { return LaurentWindow(p, lo(), hi()); }
  // Number of polynomials of degree < d_g.
  std::size_t group_size() const;
  // Polynomial whose t^i coefficient is the i-th base-p digit of idx.
  LaurentWindow polynomial(std::size_t idx) const;
  // Torus element whose t^{-1-i} coefficient is the i-th base-p digit of idx.
  LaurentWindow torus(std::size_t idx) const;
  std::size_t torus_size() const;
};

// Throws DomainError unless p >= 3 is prime and m, d_g >= 1.
void validate(const HeisenbergWindow& window);

HeisenbergParams random_params(const HeisenbergWindow& window, Rng& rng);
HeisenbergPoint random_point(const HeisenbergWindow& window, Rng& rng);

// T_g((x, y), z) = ((x + gα, y + gβ),
//   z + gγ + C(g,2)αβ + ⌊gα⌋y - gβ{x} - {gα}gβ), reduced to the torus.
// Throws DomainError if any intermediate was truncated.
HeisenbergPoint heisenberg_act(const HeisenbergParams& params, const LaurentWindow& g,
                               const HeisenbergPoint& pt);

// e(c / p) where c is the t^{-1} coefficient of z - {x}y.
Complex heisenberg_f(const HeisenbergPoint& pt);

// gγ + C(g,2)αβ - {gα}gβ, unreduced.
LaurentWindow heisenberg_phase(const HeisenbergParams& params, const LaurentWindow& g);

struct HeisenbergCertificate {
  std::size_t group_size = 0;
  std::uint64_t cases_checked = 0;
  // Every threefold difference of the phase vanished.
  bool identity_verified = false;
  // Largest number of differences that did not vanish identically (0..3).
  int nonvanishing_order = 0;
  // Degree of g -> e(res P(g) / p) on F_p^{d_g}.
  std::optional<int> degree;
  double u3_norm = 0;
};

// Evaluates the phase on every g of degree < d_g, checks that all threefold
// additive differences vanish, and cross-checks the induced function on
// F_p^{d_g} with degree_test and its U^3 norm.
HeisenbergCertificate certify_phase_polynomial(const HeisenbergParams& params,
                                               const HeisenbergWindow& window,
                                               const ComputeOptions& options = {});

}  // namespace gowers

#endif  // GOWERS_HEISENBERG_H_
