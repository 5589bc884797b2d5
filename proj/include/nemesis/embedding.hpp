// Copyright 2026 The nemesis-fhe Authors
// SPDX-License-Identifier: Apache-2.0

// Canonical embedding of real slot vectors into integer polynomials.
//
// With d slots the ring degree is N = 2d and zeta = exp(i*pi/N). A real
// polynomial P = A + X^d B (deg A, deg B < d) is identified with the complex
// polynomial W = A + iB; at every point zeta^(4k+1) we have X^d = i, so the
// slot values are
//
//   z_k = P(zeta * omega^k) = sum_l (w_l zeta^l) omega^(kl),  omega = exp(2*pi*i/d),
//
// i.e. z = V y with the d x d Vandermonde matrix V_kl = omega^(kl) and
// y_l = w_l zeta^l. Encoding solves that system for y; decoding applies V.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "nemesis/errors.hpp"
#include "nemesis/params.hpp"

namespace nemesis {

template <typename Scalar>
using ComplexVectorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using ComplexMatrixT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RealVectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// exp(2*pi*i * num / den) evaluated without accumulated drift.
template <typename Scalar>
std::complex<Scalar> unit_root(std::size_t num, std::size_t den) {
  const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * static_cast<Scalar>(num % den) /
                       static_cast<Scalar>(den);
  return std::polar(Scalar(1), angle);
}

/// Complex product without the library's inf/nan recovery path.
template <typename Scalar>
inline std::complex<Scalar> cmul(const std::complex<Scalar>& a, const std::complex<Scalar>& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

/// Iterative radix-2 transform X_k = sum_l x_l exp(sign * 2*pi*i*kl/n).
template <typename Scalar>
class FourierPlan {
 public:
  using Complex = std::complex<Scalar>;

  explicit FourierPlan(std::size_t n) : n_(n), twiddles_(n / 2), bitrev_(n) {
    if (!is_power_of_two(n)) throw ParameterError("FourierPlan: size must be a power of two");
    for (std::size_t k = 0; k < n / 2; ++k) twiddles_[k] = unit_root<Scalar>(k, n);
    int bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
      bitrev_[i] = r;
    }
  }

  std::size_t size() const { return n_; }

  void transform(ComplexVectorT<Scalar>& x, int sign) const {
    if (static_cast<std::size_t>(x.size()) != n_) throw ParameterError("FourierPlan: size mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
      if (i < bitrev_[i]) std::swap(x[i], x[bitrev_[i]]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t j = 0; j < half; ++j) {
          const Complex w = sign > 0 ? twiddles_[j * stride] : std::conj(twiddles_[j * stride]);
          const Complex u = x[start + j];
          const Complex v = cmul(x[start + j + half], w);
          x[start + j] = u + v;
          x[start + j + half] = u - v;
        }
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<Complex> twiddles_;  // exp(+2*pi*i*k/n)
  std::vector<std::size_t> bitrev_;
};

/// d x d Vandermonde system V_ij = (omega^j)^i over a primitive d-th root of
/// unity omega = exp(2*pi*i/d). Entries are served from a table of powers.
template <typename Scalar>
class VandermondeSystem {
 public:
  using Complex = std::complex<Scalar>;

  explicit VandermondeSystem(std::size_t d) : d_(d), mask_(d - 1), powers_(d) {
    if (!is_power_of_two(d)) throw ParameterError("Vandermonde dimension must be a power of two");
    for (std::size_t k = 0; k < d; ++k) powers_[k] = unit_root<Scalar>(k, d);
  }

  std::size_t dimension() const { return d_; }
  Complex omega() const { return powers_[1 & mask_]; }
  Complex entry(std::size_t i, std::size_t j) const { return powers_[(i * j) & mask_]; }

  ComplexMatrixT<Scalar> matrix() const {
    ComplexMatrixT<Scalar> v(d_, d_);
    for (std::size_t i = 0; i < d_; ++i) {
      for (std::size_t j = 0; j < d_; ++j) v(i, j) = entry(i, j);
    }
    return v;
  }

  /// V * y by direct summation, O(d^2).
  ComplexVectorT<Scalar> apply(const ComplexVectorT<Scalar>& y) const {
    check(y);
    ComplexVectorT<Scalar> out(d_);
    for (std::size_t i = 0; i < d_; ++i) {
      Complex acc(0);
      std::size_t idx = 0;
      for (std::size_t j = 0; j < d_; ++j, idx = (idx + i) & mask_) acc += cmul(powers_[idx], y[j]);
      out[i] = acc;
    }
    return out;
  }

  /// Solution of V * y = rhs by the explicit inverse V^-1 = V^H / d, O(d^2).
  ComplexVectorT<Scalar> solve(const ComplexVectorT<Scalar>& rhs) const {
    check(rhs);
    ComplexVectorT<Scalar> out(d_);
    const Scalar inv_d = Scalar(1) / static_cast<Scalar>(d_);
    for (std::size_t j = 0; j < d_; ++j) {
      Scalar re = 0;
      Scalar im = 0;
      std::size_t idx = 0;
      for (std::size_t i = 0; i < d_; ++i, idx = (idx + j) & mask_) {
        // rhs_i * conj(omega^(ij))
        const Complex p = powers_[idx];
        const Complex r = rhs[i];
        re += r.real() * p.real() + r.imag() * p.imag();
        im += r.imag() * p.real() - r.real() * p.imag();
      }
      out[j] = Complex(re * inv_d, im * inv_d);
    }
    return out;
  }

 private:
  void check(const ComplexVectorT<Scalar>& v) const {
    if (static_cast<std::size_t>(v.size()) != d_) throw ParameterError("Vandermonde: dimension mismatch");
  }

  std::size_t d_;
  std::size_t mask_;
  std::vector<Complex> powers_;
};

/// Per-dimension tables shared by both encoding paths and the decoder.
template <typename Scalar>
class EmbeddingTables {
 public:
  using Complex = std::complex<Scalar>;

  explicit EmbeddingTables(std::size_t slots) : d_(slots), plan_(slots), twist_(slots), untwist_(slots) {
    // zeta^l with zeta a primitive 4d-th root of unity
    for (std::size_t l = 0; l < d_; ++l) {
      twist_[l] = unit_root<Scalar>(l, 4 * d_);
      untwist_[l] = std::conj(twist_[l]);
    }
  }

  std::size_t slots() const { return d_; }
  std::size_t ring_degree() const { return 2 * d_; }
  const FourierPlan<Scalar>& plan() const { return plan_; }
  const std::vector<Complex>& twist() const { return twist_; }
  const std::vector<Complex>& untwist() const { return untwist_; }

 private:
  std::size_t d_;
  FourierPlan<Scalar> plan_;
  std::vector<Complex> twist_;
  std::vector<Complex> untwist_;
};

namespace detail {

template <typename Scalar>
ComplexVectorT<Scalar> scaled_slots(const RealVectorT<Scalar>& slots, std::size_t d, Scalar scale) {
  if (static_cast<std::size_t>(slots.size()) > d) throw ParameterError("more values than slots");
  ComplexVectorT<Scalar> z = ComplexVectorT<Scalar>::Zero(d);
  for (Eigen::Index k = 0; k < slots.size(); ++k) {
    if (!std::isfinite(slots[k])) throw RangeError("slot value is not finite");
    z[k] = std::complex<Scalar>(slots[k] * scale, 0);
  }
  return z;
}

// y -> integer coefficients (c_l, c_{l+d}) = round(Re, Im of y_l * zeta^-l)
template <typename Scalar>
IntVector round_untwisted(const EmbeddingTables<Scalar>& tables, const ComplexVectorT<Scalar>& y) {
  const std::size_t d = tables.slots();
  IntVector coeffs(2 * d);
  for (std::size_t l = 0; l < d; ++l) {
    const std::complex<Scalar> w = cmul(y[l], tables.untwist()[l]);
    coeffs[l] = std::llround(w.real());
    coeffs[l + d] = std::llround(w.imag());
  }
  return coeffs;
}

}  // namespace detail

/// Encodes up to d real slots (zero-padded) into 2d integer coefficients by
/// solving the Vandermonde system explicitly.
template <typename Scalar>
IntVector embed_vandermonde(const EmbeddingTables<Scalar>& tables, const VandermondeSystem<Scalar>& system,
                            const RealVectorT<Scalar>& slots, Scalar scale) {
  if (system.dimension() != tables.slots()) throw ParameterError("Vandermonde system dimension mismatch");
  const auto z = detail::scaled_slots(slots, tables.slots(), scale);
  return detail::round_untwisted(tables, system.solve(z));
}

/// Same contract as embed_vandermonde, via an O(d log d) transform.
template <typename Scalar>
IntVector embed_fast(const EmbeddingTables<Scalar>& tables, const RealVectorT<Scalar>& slots, Scalar scale) {
  const std::size_t d = tables.slots();
  ComplexVectorT<Scalar> y = detail::scaled_slots(slots, d, scale);
  tables.plan().transform(y, -1);
  y /= static_cast<Scalar>(d);
  return detail::round_untwisted(tables, y);
}

/// Complex slot values of a real polynomial given by 2d (centered) coefficients, divided by scale.
template <typename Scalar>
ComplexVectorT<Scalar> unembed_complex(const EmbeddingTables<Scalar>& tables, const RealVectorT<Scalar>& coeffs,
                                       Scalar scale) {
  const std::size_t d = tables.slots();
  if (static_cast<std::size_t>(coeffs.size()) != 2 * d) throw ParameterError("unembed: expected 2d coefficients");
  if (!(scale > 0)) throw ParameterError("decode scale must be positive");
  ComplexVectorT<Scalar> y(d);
  for (std::size_t l = 0; l < d; ++l) {
    y[l] = cmul(std::complex<Scalar>(coeffs[l], coeffs[l + d]), tables.twist()[l]);
  }
  tables.plan().transform(y, +1);
  return y / scale;
}

/// Real parts of unembed_complex.
template <typename Scalar>
RealVectorT<Scalar> unembed(const EmbeddingTables<Scalar>& tables, const RealVectorT<Scalar>& coeffs, Scalar scale) {
  return unembed_complex(tables, coeffs, scale).real();
}

}  // namespace nemesis
