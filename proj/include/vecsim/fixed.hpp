/*
 * Copyright 2026 The vecsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Signed fixed-point scalar with saturating arithmetic.
//
// The word is a 64-bit two's-complement integer holding value * 2^FracBits.
// Every operation clamps into the representable range instead of wrapping,
// and reports the event through a sticky ArithFlags record, the way a
// hardware datapath would raise a status bit rather than trap.
//
//   mul : 128-bit product, arithmetic shift right (floor), saturate
//   div : 128-bit (a << F) / b, truncation toward zero, saturate
//   x/0 : bound with the sign of the dividend, div_by_zero set

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace vecsim {

struct ArithFlags {
  bool overflow = false;
  bool div_by_zero = false;

  void merge(const ArithFlags& other) {
    overflow = overflow || other.overflow;
    div_by_zero = div_by_zero || other.div_by_zero;
  }
  bool any() const { return overflow || div_by_zero; }
  bool operator==(const ArithFlags&) const = default;
};

template <int FracBits>
class Fixed {
  static_assert(FracBits > 0 && FracBits < 63, "fraction bits must leave room for a sign and integer part");

 public:
  using raw_type = std::int64_t;
  static constexpr int kFracBits = FracBits;
  static constexpr raw_type kMaxRaw = std::numeric_limits<raw_type>::max();
  static constexpr raw_type kMinRaw = std::numeric_limits<raw_type>::min();

  constexpr Fixed() = default;

  static constexpr Fixed from_raw(raw_type raw) {
    Fixed f;
    f.raw_ = raw;
    return f;
  }
  static constexpr Fixed max() { return from_raw(kMaxRaw); }
  static constexpr Fixed min() { return from_raw(kMinRaw); }
  static constexpr Fixed zero() { return from_raw(0); }
  static constexpr Fixed one() { return from_raw(raw_type{1} << FracBits); }
  static constexpr Fixed epsilon() { return from_raw(1); }

  // Nearest representable value, ties to even, clamped to the range.
  // Throws std::domain_error on NaN or infinity.
  static Fixed from_real(double x) {
    ArithFlags ignored;
    return from_real(x, ignored);
  }
  static Fixed from_real(double x, ArithFlags& flags) {
    if (!std::isfinite(x)) {
      throw std::domain_error("cannot convert a non-finite value to fixed point");
    }
    return from_finite(x, flags);
  }

  // Converter-unit semantics: never throws. NaN becomes zero and infinities
  // saturate; both raise the overflow flag.
  static Fixed from_real_saturating(double x, ArithFlags& flags) {
    if (std::isnan(x)) {
      flags.overflow = true;
      return zero();
    }
    if (std::isinf(x)) {
      flags.overflow = true;
      return x > 0 ? max() : min();
    }
    return from_finite(x, flags);
  }

  constexpr raw_type raw() const { return raw_; }

  // int64 -> double rounds to nearest; the power-of-two scale is exact.
  double to_real() const { return std::ldexp(static_cast<double>(raw_), -FracBits); }

  constexpr auto operator<=>(const Fixed&) const = default;

 private:
  static Fixed from_finite(double x, ArithFlags& flags) {
    const double scaled = std::ldexp(x, FracBits);
    constexpr double kLimit = 9223372036854775808.0;  // 2^63
    if (scaled >= kLimit) {
      flags.overflow = true;
      return max();
    }
    if (scaled < -kLimit) {
      flags.overflow = true;
      return min();
    }
    // Default rounding mode is round-to-nearest-even.
    return from_raw(static_cast<raw_type>(std::nearbyint(scaled)));
  }

  raw_type raw_ = 0;
};

using Fixed64 = Fixed<32>;

namespace fx {

namespace detail {

template <int F>
constexpr Fixed<F> clamp_wide(__int128 wide, ArithFlags& flags) {
  if (wide > static_cast<__int128>(Fixed<F>::kMaxRaw)) {
    flags.overflow = true;
    return Fixed<F>::max();
  }
  if (wide < static_cast<__int128>(Fixed<F>::kMinRaw)) {
    flags.overflow = true;
    return Fixed<F>::min();
  }
  return Fixed<F>::from_raw(static_cast<std::int64_t>(wide));
}

}  // namespace detail

template <int F>
constexpr Fixed<F> add(Fixed<F> a, Fixed<F> b, ArithFlags& flags) {
  return detail::clamp_wide<F>(static_cast<__int128>(a.raw()) + b.raw(), flags);
}

template <int F>
constexpr Fixed<F> sub(Fixed<F> a, Fixed<F> b, ArithFlags& flags) {
  return detail::clamp_wide<F>(static_cast<__int128>(a.raw()) - b.raw(), flags);
}

template <int F>
constexpr Fixed<F> mul(Fixed<F> a, Fixed<F> b, ArithFlags& flags) {
  const __int128 product = static_cast<__int128>(a.raw()) * b.raw();
  // >> on a signed __int128 is arithmetic with GCC/Clang, i.e. floor.
  return detail::clamp_wide<F>(product >> F, flags);
}

template <int F>
constexpr Fixed<F> div(Fixed<F> a, Fixed<F> b, ArithFlags& flags) {
  if (b.raw() == 0) {
    flags.div_by_zero = true;
    return a.raw() >= 0 ? Fixed<F>::max() : Fixed<F>::min();
  }
  const __int128 numerator = static_cast<__int128>(a.raw()) * (static_cast<__int128>(1) << F);
  return detail::clamp_wide<F>(numerator / b.raw(), flags);
}

template <int F>
constexpr Fixed<F> inv(Fixed<F> a, ArithFlags& flags) {
  return div(Fixed<F>::one(), a, flags);
}

}  // namespace fx
}  // namespace vecsim
