#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace cpdc {

using Complex = std::complex<double>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = VectorX<double>;
using VectorXc = VectorX<Complex>;
using MatrixXd = MatrixX<double>;
using MatrixXc = MatrixX<Complex>;
using SparseXc = Eigen::SparseMatrix<Complex>;

/// Bad or inconsistent user-supplied configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Request exceeds a hard resource guard (CLI exit code 3).
class ResourceGuardError : public std::runtime_error {
 public:
  explicit ResourceGuardError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure failed to converge to the requested tolerance
/// (CLI exit code 4).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

enum class Polarization { O, E };

inline const char* to_string(Polarization p) { return p == Polarization::O ? "o" : "e"; }

inline Polarization polarization_from_string(const std::string& s) {
  if (s == "o" || s == "O") return Polarization::O;
  if (s == "e" || s == "E") return Polarization::E;
  throw ConfigError("unknown polarization '" + s + "' (expected 'o' or 'e')");
}

}  // namespace cpdc
