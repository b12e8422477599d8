// Floating-point spectral abscissa: radix-2 balancing followed by Eigen's
// real Schur iteration; real parts are read off the quasi-triangular form.
// A quadruple-precision instantiation adjudicates near-threshold calls.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "dstab/errors.hpp"
#include "dstab/stability.hpp"

namespace dstab {

namespace {

constexpr int kMaxSchurIterations = 500;

// Parlett-Reinsch balancing restricted to powers of two, so the similarity
// transform is exact in binary floating point.
template <typename Mat>
void balance_in_place(Mat& a) {
  using Scalar = typename Mat::Scalar;
  const int n = static_cast<int>(a.rows());
  const Scalar two(2);
  const Scalar threshold = Scalar(95) / Scalar(100);
  bool converged = false;
  int sweeps = 0;
  while (!converged && sweeps++ < 100) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      Scalar col(0), row(0);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        using std::abs;
        col += abs(a(j, i));
        row += abs(a(i, j));
      }
      if (col == Scalar(0) || row == Scalar(0)) continue;
      const Scalar before = col + row;
      Scalar factor(1);
      while (col < row / two) {
        col *= two;
        row /= two;
        factor *= two;
      }
      while (col >= row * two) {
        col /= two;
        row *= two;
        factor /= two;
      }
      if (col + row < threshold * before) {
        converged = false;
        a.col(i) *= factor;
        a.row(i) /= factor;
      }
    }
  }
}

template <typename Scalar>
Scalar abscissa_impl(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a) {
  const int n = static_cast<int>(a.rows());
  if (n == 1) return a(0, 0);

  balance_in_place(a);
  Eigen::RealSchur<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> schur;
  schur.setMaxIterations(kMaxSchurIterations);
  schur.compute(a, /*computeU=*/false);
  if (schur.info() != Eigen::Success) {
    throw EigenvalueError("real Schur iteration did not converge within " +
                          std::to_string(kMaxSchurIterations) + " iterations");
  }
  const auto& t = schur.matrixT();
  Scalar best(0);
  bool have = false;
  int i = 0;
  while (i < n) {
    Scalar re;
    if (i + 1 < n && t(i + 1, i) != Scalar(0)) {
      re = (t(i, i) + t(i + 1, i + 1)) / Scalar(2);  // complex pair
      i += 2;
    } else {
      re = t(i, i);
      i += 1;
    }
    if (!have || re > best) {
      best = re;
      have = true;
    }
  }
  return best;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_float_matrix(
    const Matrix& m, const std::vector<double>* d) {
  const int n = m.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a(n, n);
  for (int i = 0; i < n; ++i) {
    const Scalar scale = d ? Scalar((*d)[static_cast<std::size_t>(i)]) : Scalar(1);
    for (int j = 0; j < n; ++j) {
      a(i, j) = scale * Scalar(m.at(i, j).to_double());
    }
  }
  return a;
}

}  // namespace

double spectral_abscissa(const Matrix& m) {
  return abscissa_impl<double>(to_float_matrix<double>(m, nullptr));
}

double spectral_abscissa_scaled(const Matrix& m, const std::vector<double>& d) {
  if (static_cast<int>(d.size()) != m.size()) {
    throw DimensionError("diagonal length does not match matrix dimension");
  }
  return abscissa_impl<double>(to_float_matrix<double>(m, &d));
}

double spectral_abscissa_scaled_quad(const Matrix& m, const std::vector<double>& d) {
  using quad = boost::multiprecision::cpp_bin_float_quad;
  if (static_cast<int>(d.size()) != m.size()) {
    throw DimensionError("diagonal length does not match matrix dimension");
  }
  // Rebuild the scaled matrix at quad precision from the exact entries so
  // the re-check is not limited by the double conversion.
  const int n = m.size();
  Eigen::Matrix<quad, Eigen::Dynamic, Eigen::Dynamic> a(n, n);
  for (int i = 0; i < n; ++i) {
    const quad scale(d[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n; ++j) {
      const Rational& e = m.at(i, j);
      a(i, j) = scale * quad(e.num().get_str()) / quad(e.den().get_str());
    }
  }
  return abscissa_impl<quad>(std::move(a)).convert_to<double>();
}

}  // namespace dstab
