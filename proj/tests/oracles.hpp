#pragma once

// Test-only reference computations, deliberately independent of the library
// code paths they are compared against.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace qnlse::oracle {

using LComplex = std::complex<long double>;

/// Plain partial sum of the 2F1 series in long double with a fixed term count.
inline std::complex<double> hyp2f1_partial_sum(double a, double b, double c,
                                               std::complex<double> z,
                                               int terms = 100000) {
  LComplex sum = 1.0L;
  LComplex term = 1.0L;
  const LComplex zl(z.real(), z.imag());
  for (int n = 0; n < terms; ++n) {
    const long double k = n;
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0L)) * zl;
    sum += term;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

/// Richardson-extrapolated central difference of a complex function of one
/// real variable (three step halvings, error O(h^8)).
inline std::complex<double> derivative(
    const std::function<std::complex<double>(double)>& f, double s, int order,
    double h = 1e-2) {
  std::vector<std::vector<std::complex<double>>> table;
  for (int i = 0; i < 4; ++i) {
    const double step = h / (1 << i);
    std::complex<double> d;
    if (order == 1) {
      d = (f(s + step) - f(s - step)) / (2.0 * step);
    } else {
      d = (f(s + step) - 2.0 * f(s) + f(s - step)) / (step * step);
    }
    std::vector<std::complex<double>> row{d};
    for (int j = 1; j <= i; ++j) {
      const double factor = std::pow(4.0, j);
      row.push_back(row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (factor - 1.0));
    }
    table.push_back(row);
  }
  return table.back().back();
}

/// Complex division in rectangular form: a / b = a conj(b) / |b|^2.
inline std::complex<double> divide(std::complex<double> a, std::complex<double> b) {
  const double denom = b.real() * b.real() + b.imag() * b.imag();
  return {(a.real() * b.real() + a.imag() * b.imag()) / denom,
          (a.imag() * b.real() - a.real() * b.imag()) / denom};
}

/// Integer power by repeated multiplication (and rectangular division).
inline std::complex<double> integer_power(std::complex<double> base, int n) {
  std::complex<double> out = 1.0;
  for (int i = 0; i < std::abs(n); ++i) {
    out *= base;
  }
  return n < 0 ? divide(1.0, out) : out;
}

/// Least-squares slope of log(y) against log(x).
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
  }
  return sxy / sxx;
}

}  // namespace qnlse::oracle
