#include "lpp/charges.hpp"

#include <cmath>
#include <sstream>

#include "lpp/errors.hpp"

namespace lpp {

namespace {

double parse_real(const std::string& s) {
  if (s == "-inf") return -INFINITY;
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw InvalidParameter("bad number: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw InvalidParameter("bad number: " + s);
  }
}

}  // namespace

ChargeLaw ChargeLaw::bernoulli(double p) {
  if (!(p >= 0.0) || p > 1.0) throw InvalidParameter("bernoulli charges: p must lie in [0,1]");
  ChargeLaw c;
  c.kind_ = Kind::Bernoulli;
  c.p_ = p;
  c.x_ = -INFINITY;
  return c;
}

ChargeLaw ChargeLaw::two_atom(double p, double x) {
  if (std::isinf(x) && x < 0) return bernoulli(p);
  if (!(p >= 0.0) || p > 1.0) throw InvalidParameter("two-atom charges: p must lie in [0,1]");
  if (std::isnan(x) || x > 1.0) throw InvalidParameter("two-atom charges: x must be at most 1");
  ChargeLaw c;
  c.kind_ = Kind::TwoAtom;
  c.p_ = p;
  c.x_ = x;
  return c;
}

ChargeLaw ChargeLaw::shifted_exp() {
  ChargeLaw c;
  c.kind_ = Kind::ShiftedExp;
  c.p_ = 0.0;
  return c;
}

ChargeLaw ChargeLaw::uniform(double a) {
  if (!(a < 1.0)) throw InvalidParameter("uniform charges: need a < 1");
  ChargeLaw c;
  c.kind_ = Kind::Uniform;
  c.p_ = 0.0;
  c.x_ = a;
  return c;
}

ChargeLaw ChargeLaw::one() { return ChargeLaw(); }

ChargeLaw ChargeLaw::parse(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "one") return one();
  if (head == "shifted-exp") return shifted_exp();
  if (head == "bernoulli") return bernoulli(parse_real(rest));
  if (head == "uniform") return uniform(parse_real(rest));
  if (head == "two-atom") {
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw InvalidParameter("two-atom needs <p>,<x>");
    return two_atom(parse_real(rest.substr(0, comma)), parse_real(rest.substr(comma + 1)));
  }
  throw InvalidParameter("unknown charge law: " + spec);
}

ExtReal ChargeLaw::from_uniform(double u) const {
  switch (kind_) {
    case Kind::Bernoulli: return u < p_ ? ExtReal(1.0) : ExtReal::neg_inf();
    case Kind::TwoAtom: return ExtReal(u < p_ ? 1.0 : x_);
    case Kind::ShiftedExp: return ExtReal(1.0 + std::log(u));
    case Kind::Uniform: return ExtReal(x_ + (1.0 - x_) * u);
    default: return ExtReal(1.0);
  }
}

double ChargeLaw::mass_at_least(double a) const {
  if (a > 1.0) return 0.0;
  switch (kind_) {
    case Kind::Bernoulli: return p_;
    case Kind::TwoAtom: return a <= x_ ? 1.0 : p_;
    case Kind::ShiftedExp: return std::exp(a - 1.0);
    case Kind::Uniform: return a <= x_ ? 1.0 : (1.0 - a) / (1.0 - x_);
    default: return 1.0;
  }
}

std::string ChargeLaw::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Bernoulli: os << "bernoulli:" << p_; break;
    case Kind::TwoAtom: os << "two-atom:" << p_ << "," << x_; break;
    case Kind::ShiftedExp: os << "shifted-exp"; break;
    case Kind::Uniform: os << "uniform:" << x_; break;
    default: os << "one";
  }
  return os.str();
}

}  // namespace lpp
