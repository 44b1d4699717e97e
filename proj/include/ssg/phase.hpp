#ifndef SSG_PHASE_HPP
#define SSG_PHASE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>

namespace ssg {

// A unit-modulus scalar. Stored as an exact rational rotation e^{2*pi*i*num/den}
// whenever it arises from roots of unity; falls back to a floating complex
// value otherwise. Products of exact phases stay exact, so phase algebra in
// the symbolic engine is free of roundoff.
class Phase {
 public:
  Phase() : exact_(true), num_(0), den_(1) {}

  static Phase one() { return Phase(); }

  static Phase rotation(std::int64_t num, std::int64_t den) {
    Phase p;
    p.exact_ = true;
    if (den < 0) {
      den = -den;
      num = -num;
    }
    num %= den;
    if (num < 0) num += den;
    std::int64_t g = std::gcd(num, den);
    if (g == 0) g = 1;
    p.num_ = num / g;
    p.den_ = den / g;
    return p;
  }

  static Phase from_complex(std::complex<double> z) {
    Phase p;
    p.exact_ = false;
    double m = std::abs(z);
    p.val_ = (m > 0) ? z / m : std::complex<double>(1.0, 0.0);
    return p;
  }

  bool is_exact() const { return exact_; }
  bool is_one() const {
    if (exact_) return num_ == 0;
    return std::abs(val_ - std::complex<double>(1.0, 0.0)) < 1e-12;
  }

  std::complex<double> value() const {
    if (!exact_) return val_;
    double theta = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
    return std::polar(1.0, theta);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Phase operator*(const Phase& o) const {
    if (exact_ && o.exact_) {
      // num/den + o.num/o.den mod 1
      std::int64_t g = std::gcd(den_, o.den_);
      std::int64_t den = den_ / g * o.den_;
      std::int64_t num = num_ * (o.den_ / g) + o.num_ * (den_ / g);
      return rotation(num, den);
    }
    return from_complex(value() * o.value());
  }

  Phase conj() const {
    if (exact_) return rotation(-num_, den_);
    return from_complex(std::conj(val_));
  }

  Phase pow(std::int64_t k) const {
    if (exact_) {
      std::int64_t kk = k % den_;
      return rotation(num_ * kk, den_);
    }
    double theta = std::arg(val_) * static_cast<double>(k);
    return from_complex(std::polar(1.0, theta));
  }

  // principal n-th root: e^{2 pi i num/(den*n)} in the exact case
  Phase principal_root(std::int64_t n) const {
    if (exact_) return rotation(num_, den_ * n);
    double theta = std::arg(val_);
    if (theta < 0) theta += 2.0 * std::numbers::pi;
    return from_complex(std::polar(1.0, theta / static_cast<double>(n)));
  }

  bool operator==(const Phase& o) const {
    if (exact_ && o.exact_) return num_ == o.num_ && den_ == o.den_;
    return std::abs(value() - o.value()) < 1e-12;
  }
  bool operator!=(const Phase& o) const { return !(*this == o); }

  std::string str() const {
    if (exact_) {
      if (num_ == 0) return "1";
      return "e^(2pi*i*" + std::to_string(num_) + "/" + std::to_string(den_) + ")";
    }
    return "(" + std::to_string(val_.real()) + "+" + std::to_string(val_.imag()) + "i)";
  }

 private:
  bool exact_;
  std::int64_t num_ = 0, den_ = 1;
  std::complex<double> val_{1.0, 0.0};
};

}  // namespace ssg

#endif
