#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "torelli_euler/bernoulli.hpp"
#include "torelli_euler/rational.hpp"

namespace torelli_euler {

enum class SpaceKind { siegel_quotient, moduli, torelli };

std::string_view to_string(SpaceKind kind);
SpaceKind parse_space_kind(std::string_view tag);  // "siegel" | "moduli" | "torelli"

// Which space an Euler characteristic measures. g >= 2, n >= 0, and n == 0
// for the Siegel quotient.
class SpaceDescriptor {
 public:
  // Throws usage_error on invalid combinations.
  SpaceDescriptor(SpaceKind kind, unsigned g, unsigned n = 0);

  [[nodiscard]] SpaceKind kind() const { return kind_; }
  [[nodiscard]] unsigned genus() const { return g_; }
  [[nodiscard]] unsigned marked_points() const { return n_; }

  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;

 private:
  SpaceKind kind_;
  unsigned g_;
  unsigned n_;
};

struct EulerChar {
  SpaceDescriptor space;
  Rational value;
};

// Positive integers m, n. Throws usage_error otherwise.
class EmnQuery {
 public:
  EmnQuery(unsigned m, unsigned n);
  [[nodiscard]] unsigned m() const { return m_; }
  [[nodiscard]] unsigned n() const { return n_; }

 private:
  unsigned m_;
  unsigned n_;
};

// Orbifold Euler characteristic of Sp(2g,Z)\S_g: prod_{k=1}^{g} zeta(1-2k).
// Accepts g >= 1 (the g = 1 value feeds products over k < g).
Rational siegel_quotient_value(unsigned g, const BernoulliTable& table);
// g >= 2 wrapper carrying the descriptor.
EulerChar euler_siegel_quotient(unsigned g, const BernoulliTable& table);

// e(M_g^n): zeta(1-2g)/(2-2g) for n = 0, otherwise
// (-1)^(n-1) (2g+n-3)!/(2g-2)! zeta(1-2g).
EulerChar euler_moduli(unsigned g, unsigned n, const BernoulliTable& table);

// chi_Q(T_g^n) from the product formula. Evaluated unconditionally: the
// result is the formula value under the finite-dimensionality hypothesis,
// whatever the actual homology does (for g = 2 it is infinitely generated).
EulerChar chi_torelli(unsigned g, unsigned n, const BernoulliTable& table);

// prod_{k=1}^{m} 1/|zeta(1-2k)| = prod (2k)/|B_2k|.
Rational zeta_reciprocal_product(unsigned m, const BernoulliTable& table);

// e(m,n) = (2m+n-1)!/(2m)! * prod_{k=1}^{m} 1/|zeta(1-2k)|. Exact, positive.
Rational e_mn(const EmnQuery& q, const BernoulliTable& table);

struct ProductFormulaCheck {
  unsigned g = 0;
  unsigned n = 0;
  Rational moduli;    // e(M_g^n) via the moduli formula
  Rational torelli;   // chi_Q(T_g^n)
  Rational siegel;    // e(Sp(2g,Z)\S_g)
  bool holds = false; // moduli == torelli * siegel
};

// Evaluates e(M_g^n) and chi_Q(T_g^n) * e(Sp(2g,Z)\S_g) through separate code
// paths and compares them exactly.
ProductFormulaCheck check_product_formula(unsigned g, unsigned n, const BernoulliTable& table);

}  // namespace torelli_euler
