#pragma once

#include <complex>

namespace rtf::sf {

// Confluent hypergeometric 1F1(k/2; k; ix) on the imaginary axis, k even >= 4.
// The two routes below must agree; kummer_imag dispatches between them.
std::complex<double> kummer_imag(int k, double x);
std::complex<double> kummer_imag_integral(int k, double x); // Euler-type integral
std::complex<double> kummer_imag_bessel(int k, double x);   // Bessel reduction

} // namespace rtf::sf
