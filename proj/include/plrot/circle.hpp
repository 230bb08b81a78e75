// Degree-one PL lifts of circle homeomorphisms and exact rotation numbers.
//
// For a PL lift F, G = F^q is PL and G(t) - t - p is PL and 1-periodic, so
// its sign on the line is decided by finitely many exact evaluations at the
// breakpoints of one fundamental domain. That turns the comparison of the
// rotation number with p/q into an exact test; Stern-Brocot bisection on
// top of it yields continued-fraction digits.

#pragma once

#include <optional>
#include <vector>

#include "plrot/plmap.hpp"

namespace plrot {

class CircleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lift F : R -> R with F(t + 1) = F(t) + 1, stored as its restriction to [0, 1].
class CircleLift {
 public:
  explicit CircleLift(PLMap base);
  static CircleLift rotation(const FieldElem& shift);

  const PLMap& base() const { return base_; }
  const SlopeSpec& spec() const { return base_.spec(); }
  std::size_t size() const { return base_.size(); }

  FieldElem operator()(const FieldElem& t) const;
  // F restricted to [s, s + 1].
  PLMap window(const FieldElem& s) const;
  // F + n for an integer n.
  CircleLift translated(long n) const;

  friend bool operator==(const CircleLift&, const CircleLift&) = default;

 private:
  PLMap base_;
};

struct IterateOptions {
  std::size_t piece_cap = 1'000'000;
};

CircleLift compose(const CircleLift& f, const CircleLift& g);
CircleLift iterate(const CircleLift& f, long n, const IterateOptions& opts = {});

enum class Order { less, equal, greater };

struct Comparison {
  Order order = Order::equal;
  // Set on Order::equal: F^q(w) = w + p exactly.
  std::optional<FieldElem> witness;
  std::size_t pieces = 0;  // size of F^q
};

// Compares the translation number of F with p/q.
Comparison compare_rotation(const CircleLift& f, long p, long q, const IterateOptions& opts = {});

struct Fraction {
  long num = 0;
  long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct RotationNumberResult {
  enum class Kind { rational, irrational_enclosure };
  Kind kind = Kind::irrational_enclosure;
  long integer_part = 0;  // floor of the translation number
  // Rotation number mod 1: the value when rational, else the bracket.
  Fraction value;
  std::optional<FieldElem> witness;
  std::vector<long> digits;  // CF digits of rot mod 1, digits[0] == 0
  Fraction lower;
  Fraction upper;
  long comparisons = 0;
};

RotationNumberResult rotation_number_cf(const CircleLift& f, int depth, const IterateOptions& opts = {});

struct OrbitEstimate {
  double translation = 0;  // (F^n(x0) - x0) / n
  double rotation = 0;     // translation mod 1
  double error_bound = 0;  // 1 / n
  long n = 0;
};

OrbitEstimate rotation_number_orbit(const CircleLift& f, long n, const FieldElem& x0,
                                    std::vector<std::pair<long, double>>* samples = nullptr);

struct ClassPCertificate {
  bool in_class_p = true;
  long variation = 0;  // total variation of log D_-F over the circle, in units of log alpha
};

ClassPCertificate class_P_certificate(const CircleLift& f);

}  // namespace plrot
