// Copyright 2026 The sl2sum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sl2sum/contfrac.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <utility>

#include "sl2sum/errors.hpp"

namespace sl2sum::contfrac {

namespace {

constexpr std::string_view kPi =
    "3.14159265358979323846264338327950288419716939937510582097494459230781"
    "6406286208998628034825342117067982148086513282306647093844609550582231"
    "7253594081284811174502841027019385211055596446229489549303819644288109"
    "7566593344612847564823378678316527120190914564856692346034861045432664"
    "8213393607260249141273";
constexpr std::string_view kE =
    "2.71828182845904523536028747135266249775724709369995957496696762772407"
    "6630353547594571382178525166427427466391932003059921817413596629043572"
    "9003342952605956307381323286279434907632338298807531952510190115738341"
    "8793070215408914993488416750924476146066808226480016847741185374234544"
    "2437107539077744992069";

BigInt pow10(int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

// floor(x / y) for y > 0.
BigInt floor_div(const BigInt& x, const BigInt& y) {
  BigInt q = x / y;
  if (x % y != 0 && x < 0) q -= 1;
  return q;
}

long double to_ld(const BigInt& x) { return x.convert_to<long double>(); }

}  // namespace

// Stateful expansion of one Alpha; the remaining value stays exact.
class Expander {
 public:
  explicit Expander(const Alpha& a) : a_(a) {
    if (a.surd_) {
      p_ = a.p_;
      d_ = a.d_;
      q_ = a.q_;
      root_ = boost::multiprecision::sqrt(d_);
    } else {
      n_ = a.num_;
      m_ = a.den_;
    }
  }

  // Next quotient, or nullopt when a rational remainder reached zero.
  std::optional<BigInt> next() {
    if (a_.surd_) {
      const BigInt r = q_ > 0 ? floor_div(p_ + root_, q_)
                              : floor_div(-p_ - root_ - 1, -q_);
      p_ = r * q_ - p_;
      q_ = (d_ - p_ * p_) / q_;
      return r;
    }
    if (m_ == 0) return std::nullopt;
    const BigInt r = floor_div(n_, m_);
    const BigInt rem = n_ - r * m_;
    n_ = m_;
    m_ = rem;
    return r;
  }

 private:
  const Alpha& a_;
  BigInt p_, d_, q_, root_;
  BigInt n_, m_;
};

int working_digits() {
  const char* env = std::getenv("SL2SUM_PRECISION");
  if (env == nullptr || *env == '\0') return 50;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 10 || v > 10000) {
    throw InvalidInput("SL2SUM_PRECISION must be an integer in [10, 10000]");
  }
  return static_cast<int>(v);
}

Alpha Alpha::decimal(std::string_view text, int digits) {
  if (digits < 1) throw InvalidInput("digits must be positive");
  std::string int_part;
  std::string frac_part;
  bool seen_point = false;
  for (char ch : text) {
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch)) != 0) {
      (seen_point ? frac_part : int_part) += ch;
    } else {
      throw InvalidInput("not a nonnegative decimal: " + std::string(text));
    }
  }
  if (int_part.empty() && frac_part.empty()) {
    throw InvalidInput("empty decimal");
  }
  const std::size_t lead = int_part.find_first_not_of('0');
  const std::size_t int_digits =
      lead == std::string::npos ? 0 : int_part.size() - lead;
  const std::size_t keep_frac =
      int_digits >= static_cast<std::size_t>(digits)
          ? 0
          : static_cast<std::size_t>(digits) - int_digits;
  Alpha a;
  a.exact_ = frac_part.size() <= keep_frac;
  if (!a.exact_) frac_part.resize(keep_frac);
  a.fraction_digits_ = a.exact_ ? 0 : static_cast<int>(frac_part.size());
  const std::string all = int_part + frac_part;
  a.num_ = all.empty() ? BigInt(0) : BigInt(all);
  a.den_ = pow10(static_cast<int>(frac_part.size()));
  a.label_ = std::string(text.substr(0, std::min<std::size_t>(text.size(), 24)));
  return a;
}

Alpha Alpha::rational(BigInt num, BigInt den) {
  if (den == 0) throw InvalidInput("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Alpha a;
  const BigInt g = boost::multiprecision::gcd(num, den);
  a.num_ = num / g;
  a.den_ = den / g;
  a.label_ = a.num_.str() + "/" + a.den_.str();
  return a;
}

Alpha Alpha::surd(BigInt p, BigInt d, BigInt q) {
  if (d < 0) throw InvalidInput("surd radicand must be nonnegative");
  if (q == 0) throw InvalidInput("surd denominator must be nonzero");
  const std::string label = "(" + p.str() + "+sqrt(" + d.str() + "))/" + q.str();
  const BigInt root = boost::multiprecision::sqrt(d);
  if (root * root == d) {
    Alpha a = rational(p + root, q);
    a.label_ = label;
    return a;
  }
  // Scale so that Q divides D - P^2, which keeps every later Q integral.
  const BigInt diff = d - p * p;
  if (diff % q != 0) {
    const BigInt aq = q < 0 ? BigInt(-q) : q;
    p *= aq;
    d *= q * q;
    q *= aq;
  }
  Alpha a;
  a.surd_ = true;
  a.p_ = p;
  a.d_ = d;
  a.q_ = q;
  a.label_ = label;
  return a;
}

Alpha Alpha::named(std::string_view name, int digits) {
  Alpha a;
  if (name == "phi") {
    a = surd(1, 5, 2);
  } else if (name == "sqrt2") {
    a = surd(0, 2, 1);
  } else if (name == "pi") {
    a = decimal(kPi, digits);
  } else if (name == "e") {
    a = decimal(kE, digits);
  } else {
    throw InvalidInput("unknown constant: " + std::string(name));
  }
  a.label_ = std::string(name);
  return a;
}

Alpha Alpha::parse(std::string_view spec, int digits) {
  if (spec == "phi" || spec == "sqrt2" || spec == "pi" || spec == "e") {
    return named(spec, digits);
  }
  if (spec.find(',') != std::string_view::npos) {
    std::string body(spec);
    if (!body.empty() && body.front() == '(' && body.back() == ')') {
      body = body.substr(1, body.size() - 2);
    }
    std::vector<BigInt> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      std::string field = body.substr(start, comma - start);
      while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.erase(0, 1);
      while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.pop_back();
      try {
        parts.emplace_back(field);
      } catch (const std::exception&) {
        throw InvalidInput("bad surd field: " + field);
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (parts.size() != 3) throw InvalidInput("surd needs P,D,Q");
    return surd(parts[0], parts[1], parts[2]);
  }
  return decimal(spec, digits);
}

long double Alpha::value() const {
  if (surd_) {
    return (to_ld(p_) + std::sqrt(to_ld(d_))) / to_ld(q_);
  }
  return to_ld(num_) / to_ld(den_);
}

long double Alpha::deviation(const BigInt& p, const BigInt& q) const {
  if (!surd_) return to_ld(p * den_ - num_ * q) / to_ld(den_);
  // (x - q sqrt(D)) / Q with x = pQ - qP; when both parts are positive the
  // conjugate form (x^2 - q^2 D) / (x + q sqrt(D)) avoids cancellation.
  const BigInt x = p * q_ - q * p_;
  const long double root = std::sqrt(to_ld(d_));
  long double num = 0;
  if (x > 0 && q > 0) {
    num = to_ld(x * x - q * q * d_) / (to_ld(x) + to_ld(q) * root);
  } else {
    num = to_ld(x) - to_ld(q) * root;
  }
  return num / to_ld(q_);
}

CFExpansion expand(const Alpha& alpha, std::size_t n) {
  if (n == 0) throw InvalidInput("term count must be at least 1");
  if (!(alpha.value() > 1)) throw DomainError("expansion needs alpha > 1");
  CFExpansion e{alpha, {}, {{1, 0}}, false, false};
  std::optional<BigInt> guard;
  if (!alpha.exact()) {
    const int room = alpha.fraction_digits() - 5;
    guard = room > 0 ? pow10(room) : BigInt(1);
  }
  BigInt p_prev = 0, q_prev = 1;  // k = -1
  Expander ex(alpha);
  while (e.quotients.size() < n) {
    const std::optional<BigInt> r = ex.next();
    if (!r) {
      e.terminated = true;
      break;
    }
    const Convergent& last = e.convergents.back();
    Convergent next{*r * last.p + p_prev, *r * last.q + q_prev};
    if (guard && next.q * next.q > *guard) {
      e.precision_exhausted = true;
      break;
    }
    p_prev = last.p;
    q_prev = last.q;
    e.quotients.push_back(*r);
    e.convergents.push_back(std::move(next));
  }
  // A rational whose last quotient exhausted it is also complete.
  if (!e.terminated && !alpha.is_surd() && e.quotients.size() == n) {
    Expander probe(alpha);
    for (std::size_t i = 0; i < n; ++i) probe.next();
    e.terminated = !probe.next().has_value();
  }
  return e;
}

std::vector<long double> deviations(const CFExpansion& e) {
  std::vector<long double> out;
  for (std::size_t k = 0; k + 1 < e.convergents.size(); ++k) {
    out.push_back(std::abs(
        e.alpha.deviation(e.convergents[k].p, e.convergents[k].q)));
  }
  return out;
}

namespace {

double weighted(const CFExpansion& e, int power) {
  if (e.convergents.size() < 2) {
    throw InvalidInput("series needs at least two convergents");
  }
  const std::vector<long double> dev = deviations(e);
  long double sum = 0;
  for (std::size_t k = 0; k < dev.size(); ++k) {
    const long double t = power == 1 ? dev[k] : dev[k] * dev[k];
    sum += t * to_ld(e.quotients[k]);
  }
  return static_cast<double>(sum);
}

}  // namespace

double series_abs(const CFExpansion& e) { return weighted(e, 1); }
double series_sq(const CFExpansion& e) { return weighted(e, 2); }

namespace {

std::pair<long double, long double> last_two(const CFExpansion& e) {
  if (e.convergents.size() < 2) {
    throw InvalidInput("series needs at least two convergents");
  }
  const std::size_t n = e.convergents.size() - 1;
  return {std::abs(e.alpha.deviation(e.convergents[n - 1].p,
                                     e.convergents[n - 1].q)),
          std::abs(e.alpha.deviation(e.convergents[n].p, e.convergents[n].q))};
}

}  // namespace

double series_abs_tail(const CFExpansion& e) {
  const auto [prev, last] = last_two(e);
  return e.terminated ? 0.0 : static_cast<double>(prev + last);
}

double series_sq_tail(const CFExpansion& e) {
  const auto [prev, last] = last_two(e);
  return e.terminated ? 0.0 : static_cast<double>(prev * last);
}

BigRational evaluate(const std::vector<BigInt>& quotients) {
  if (quotients.empty()) throw InvalidInput("no quotients");
  BigRational v(quotients.back());
  for (std::size_t i = quotients.size() - 1; i-- > 0;) {
    v = BigRational(quotients[i]) + BigRational(1) / v;
  }
  return v;
}

}  // namespace sl2sum::contfrac
