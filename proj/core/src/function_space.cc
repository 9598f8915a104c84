#include "gowers/function_space.h"

#include <algorithm>
#include <cmath>

#include "gowers/error.h"

namespace gowers {

GroupFunction::GroupFunction(Space space, std::vector<Complex> values,
                             double tolerance)
    : space_(std::move(space)), values_(std::move(values)), tolerance_(tolerance) {
  if (values_.size() != space_.size()) {
    throw DimensionError("function on " + space_.describe() + " needs " +
                         std::to_string(space_.size()) + " values, got " +
                         std::to_string(values_.size()));
  }
  if (!(tolerance_ > 0)) throw DomainError("tolerance must be positive");
  for (const Complex& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("function values must be finite");
    }
  }
}

GroupFunction GroupFunction::constant(const Space& space, Complex c) {
  return GroupFunction(space, std::vector<Complex>(space.size(), c));
}

GroupFunction GroupFunction::character(const Space& space, std::size_t xi) {
  std::vector<Complex> values(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    values[x] = root_of_unity(space.dot(xi, x), space.p());
  }
  return GroupFunction(space, std::move(values));
}

double GroupFunction::unit_deviation() const {
  double worst = 0;
  for (const Complex& v : values_) worst = std::max(worst, std::abs(std::abs(v) - 1.0));
  return worst;
}

double GroupFunction::sup_norm() const {
  double worst = 0;
  for (const Complex& v : values_) worst = std::max(worst, std::abs(v));
  return worst;
}

GroupFunction GroupFunction::conj() const {
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::conj(values_[i]);
  return GroupFunction(space_, std::move(out), tolerance_);
}

GroupFunction GroupFunction::translate(std::size_t h) const {
  const auto shift = space_.translation(h);
  std::vector<Complex> out(values_.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = values_[shift[x]];
  return GroupFunction(space_, std::move(out), tolerance_);
}

GroupFunction GroupFunction::scaled(Complex c) const {
  std::vector<Complex> out(values_);
  for (Complex& v : out) v *= c;
  return GroupFunction(space_, std::move(out), tolerance_);
}

GroupFunction GroupFunction::operator*(const GroupFunction& other) const {
  space_.require_same(other.space_, "pointwise product");
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] * other.values_[i];
  return GroupFunction(space_, std::move(out), std::max(tolerance_, other.tolerance_));
}

GroupFunction GroupFunction::operator+(const GroupFunction& other) const {
  space_.require_same(other.space_, "pointwise sum");
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] + other.values_[i];
  return GroupFunction(space_, std::move(out), std::max(tolerance_, other.tolerance_));
}

ExponentFunction::ExponentFunction(Space space, int m,
                                   std::vector<std::int64_t> exponents)
    : space_(std::move(space)),
      m_(m),
      modulus_(checked_pow(space_.p(), m)),
      exponents_(std::move(exponents)) {
  if (m < 0) throw DomainError("negative torsion exponent");
  if (exponents_.size() != space_.size()) {
    throw DimensionError("exponent table on " + space_.describe() + " needs " +
                         std::to_string(space_.size()) + " entries");
  }
  for (auto& e : exponents_) e = mod(e, modulus_);
}

ExponentFunction ExponentFunction::zero(const Space& space, int m) {
  return ExponentFunction(space, m, std::vector<std::int64_t>(space.size(), 0));
}

GroupFunction ExponentFunction::to_function() const {
  // One root-of-unity table per modulus keeps equal exponents bit-identical.
  std::vector<Complex> roots;
  const bool tabulate = modulus_ <= static_cast<std::int64_t>(1) << 20;
  if (tabulate) {
    roots.resize(static_cast<std::size_t>(modulus_));
    for (std::int64_t a = 0; a < modulus_; ++a) roots[a] = root_of_unity(a, modulus_);
  }
  std::vector<Complex> out(exponents_.size());
  for (std::size_t x = 0; x < out.size(); ++x) {
    out[x] = tabulate ? roots[exponents_[x]] : root_of_unity(exponents_[x], modulus_);
  }
  return GroupFunction(space_, std::move(out));
}

ExponentFunction ExponentFunction::operator+(const ExponentFunction& other) const {
  space_.require_same(other.space_, "exponent sum");
  if (m_ != other.m_) throw DimensionError("exponent tables with different torsion");
  std::vector<std::int64_t> out(exponents_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = exponents_[i] + other.exponents_[i];
  return ExponentFunction(space_, m_, std::move(out));
}

ExponentFunction ExponentFunction::operator-(const ExponentFunction& other) const {
  return *this + other.negated();
}

ExponentFunction ExponentFunction::negated() const { return times(-1); }

ExponentFunction ExponentFunction::times(std::int64_t c) const {
  const std::int64_t cc = mod(c, modulus_);
  std::vector<std::int64_t> out(exponents_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::int64_t>(
        (static_cast<__int128>(exponents_[i]) * cc) % modulus_);
  }
  return ExponentFunction(space_, m_, std::move(out));
}

ExponentFunction ExponentFunction::plus_constant(std::int64_t c) const {
  std::vector<std::int64_t> out(exponents_);
  for (auto& e : out) e += c;
  return ExponentFunction(space_, m_, std::move(out));
}

ExponentFunction ExponentFunction::translate(std::size_t h) const {
  const auto shift = space_.translation(h);
  std::vector<std::int64_t> out(exponents_.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = exponents_[shift[x]];
  return ExponentFunction(space_, m_, std::move(out));
}

ExponentFunction ExponentFunction::lift(int a) const {
  const std::int64_t factor = checked_pow(space_.p(), a);
  std::vector<std::int64_t> out(exponents_);
  for (auto& e : out) e *= factor;
  return ExponentFunction(space_, m_ + a, std::move(out));
}

bool ExponentFunction::is_zero() const {
  return std::all_of(exponents_.begin(), exponents_.end(),
                     [](std::int64_t e) { return e == 0; });
}

int ExponentFunction::torsion() const {
  int t = 0;
  for (std::int64_t e : exponents_) {
    if (e == 0) continue;
    t = std::max(t, m_ - valuation(e, space_.p()));
  }
  return t;
}

GroupFunction mult_derivative(const GroupFunction& f, std::size_t h) {
  if (h >= f.size()) throw DimensionError("shift outside the ambient group");
  const auto shift = f.space().translation(h);
  std::vector<Complex> out(f.size());
  for (std::size_t x = 0; x < out.size(); ++x) {
    out[x] = std::conj(f[x]) * f[shift[x]];
  }
  return GroupFunction(f.space(), std::move(out), f.tolerance());
}

ExponentFunction add_derivative(const ExponentFunction& P, std::size_t h) {
  if (h >= P.size()) throw DimensionError("shift outside the ambient group");
  const auto shift = P.space().translation(h);
  std::vector<std::int64_t> out(P.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = P[shift[x]] - P[x];
  return ExponentFunction(P.space(), P.m(), std::move(out));
}

namespace {

// In-place unnormalized DFT along every axis with kernel e(sign·jk/p).
void axis_dft(std::vector<Complex>& data, const Space& space, int sign) {
  const int p = space.p();
  const std::size_t size = data.size();
  if (p == 2) {
    for (std::size_t len = 1; len < size; len <<= 1) {
      for (std::size_t base = 0; base < size; base += 2 * len) {
        for (std::size_t i = base; i < base + len; ++i) {
          const Complex a = data[i];
          const Complex b = data[i + len];
          data[i] = a + b;
          data[i + len] = a - b;
        }
      }
    }
    return;
  }
  std::vector<Complex> roots(p);
  for (int j = 0; j < p; ++j) roots[j] = root_of_unity(sign * j, p);
  std::vector<Complex> line(p), out(p);
  for (int axis = 0; axis < space.n(); ++axis) {
    const std::size_t stride = space.basis(axis);
    const std::size_t block = stride * p;
    for (std::size_t base = 0; base < size; base += block) {
      for (std::size_t offset = 0; offset < stride; ++offset) {
        for (int j = 0; j < p; ++j) line[j] = data[base + offset + j * stride];
        for (int k = 0; k < p; ++k) {
          Complex acc = 0;
          for (int j = 0; j < p; ++j) acc += line[j] * roots[(j * k) % p];
          out[k] = acc;
        }
        for (int k = 0; k < p; ++k) data[base + offset + k * stride] = out[k];
      }
    }
  }
}

}  // namespace

Spectrum fourier_transform(const GroupFunction& f) {
  std::vector<Complex> data(f.values());
  axis_dft(data, f.space(), -1);
  const double scale = 1.0 / static_cast<double>(f.size());
  for (Complex& v : data) v *= scale;
  return Spectrum{f.space(), std::move(data)};
}

GroupFunction inverse_fourier_transform(const Spectrum& spectrum) {
  if (spectrum.coefficients.size() != spectrum.space.size()) {
    throw DimensionError("spectrum length does not match its ambient space");
  }
  std::vector<Complex> data(spectrum.coefficients);
  axis_dft(data, spectrum.space, +1);
  return GroupFunction(spectrum.space, std::move(data));
}

Complex inner_product(const GroupFunction& f, const GroupFunction& g) {
  f.space().require_same(g.space(), "inner_product");
  std::vector<Complex> terms(f.size());
  for (std::size_t x = 0; x < terms.size(); ++x) terms[x] = f[x] * std::conj(g[x]);
  return tree_sum(terms) / static_cast<double>(f.size());
}

Complex mean(const GroupFunction& f) {
  return tree_sum(f.values()) / static_cast<double>(f.size());
}

}  // namespace gowers
