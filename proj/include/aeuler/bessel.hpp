#pragma once

namespace aeuler {

/// Modified Bessel functions of the second kind, orders 0 and 1, for x > 0.
/// Power series below x = 2, Steed's continued fraction above.
double bessel_k0(double x);
double bessel_k1(double x);

/// x K1(x), continuous at x = 0 where it equals 1.
double x_bessel_k1(double x);

/// 1 - x K1(x) without the cancellation near x = 0.
double one_minus_x_bessel_k1(double x);

}  // namespace aeuler
