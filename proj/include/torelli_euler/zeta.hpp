#pragma once

#include <cstddef>

#include "torelli_euler/bernoulli.hpp"
#include "torelli_euler/interval.hpp"

namespace torelli_euler {

// zeta(1 - 2k) = -B_2k / (2k), exact.
struct ZetaValue {
  std::size_t k = 0;
  Rational value;
};

// Throws usage_error for k == 0, capacity_error when the table lacks B_2k.
ZetaValue zeta_one_minus_2k(std::size_t k, const BernoulliTable& table);

// Enclosure of 2 (2k-1)! / (2 pi)^(2k). The functional equation gives
// |zeta(1-2k)| = that quantity times zeta(2k) > 1, so the hi endpoint is a
// certified strict lower bound once the enclosure is tight. pi is evaluated
// with precision + 2k + 8 bits so that hi stays below |zeta(1-2k)|.
RationalInterval zeta_abs_lower_bound(std::size_t k, unsigned precision);

// Enclosure of (2 pi)^(2k) / (2 (2k-1)!), the reciprocal of the above.
// Shared with the e(m,n) upper-bound machinery.
RationalInterval single_term_bound(std::size_t k, unsigned precision);

// Same quantity from a caller-supplied enclosure of pi.
RationalInterval single_term_bound(std::size_t k, const RationalInterval& pi);

}  // namespace torelli_euler
