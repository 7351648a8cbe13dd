#pragma once

#include <string>

#include "lpp/extended.hpp"

namespace lpp {

// Charge law on (-inf, 1] with essential supremum 1.
class ChargeLaw {
 public:
  enum class Kind { Bernoulli, TwoAtom, ShiftedExp, Uniform, One };

  static ChargeLaw bernoulli(double p);           // 1 w.p. p, else -inf
  static ChargeLaw two_atom(double p, double x);  // 1 w.p. p, else x
  static ChargeLaw shifted_exp();                 // density e^{x-1} on (-inf, 1]
  static ChargeLaw uniform(double a);             // uniform on [a, 1]
  static ChargeLaw one();
  // "bernoulli:<p>", "two-atom:<p>,<x>", "shifted-exp", "uniform:<a>", "one"
  static ChargeLaw parse(const std::string& spec);

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  double x() const { return x_; }

  // inversion from a uniform on (0,1)
  ExtReal from_uniform(double u) const;
  // F([a, 1])
  double mass_at_least(double a) const;
  bool atom_at_one() const { return kind_ == Kind::Bernoulli || kind_ == Kind::TwoAtom || kind_ == Kind::One; }
  std::string name() const;

 private:
  Kind kind_ = Kind::One;
  double p_ = 1.0;
  double x_ = 0.0;
};

}  // namespace lpp
