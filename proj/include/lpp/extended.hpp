#pragma once

#include <algorithm>
#include <limits>
#include <ostream>

namespace lpp {

// Real or integer value extended by a -inf sentinel. Addition absorbs into the
// sentinel, so integer path lengths never touch floating infinities.
template <class T>
class Extended {
 public:
  constexpr Extended() : v_(T{}), ninf_(true) {}
  constexpr Extended(T v) : v_(v), ninf_(false) {}  // NOLINT(implicit)

  static constexpr Extended neg_inf() { return Extended(); }

  constexpr bool is_neg_inf() const { return ninf_; }
  constexpr bool finite() const { return !ninf_; }
  constexpr T value() const { return v_; }

  // for output only
  double as_double() const {
    return ninf_ ? -std::numeric_limits<double>::infinity() : static_cast<double>(v_);
  }

  friend constexpr Extended operator+(Extended a, Extended b) {
    if (a.ninf_ || b.ninf_) return neg_inf();
    return Extended(a.v_ + b.v_);
  }
  Extended& operator+=(Extended b) { return *this = *this + b; }

  friend constexpr bool operator==(Extended a, Extended b) {
    if (a.ninf_ || b.ninf_) return a.ninf_ == b.ninf_;
    return a.v_ == b.v_;
  }
  friend constexpr bool operator<(Extended a, Extended b) {
    if (b.ninf_) return false;
    if (a.ninf_) return true;
    return a.v_ < b.v_;
  }
  friend constexpr bool operator>(Extended a, Extended b) { return b < a; }
  friend constexpr bool operator<=(Extended a, Extended b) { return !(b < a); }
  friend constexpr bool operator>=(Extended a, Extended b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, Extended e) {
    if (e.ninf_) return os << "-inf";
    return os << e.v_;
  }

 private:
  T v_;
  bool ninf_;
};

template <class T>
constexpr Extended<T> max(Extended<T> a, Extended<T> b) {
  return a < b ? b : a;
}

using ExtReal = Extended<double>;
using ExtInt = Extended<long long>;

}  // namespace lpp
