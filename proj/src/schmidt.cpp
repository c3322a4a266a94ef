#include "cpdc/schmidt.hpp"

#include <Eigen/SVD>

namespace cpdc {

const char* to_string(Bipartition b) {
  switch (b) {
    case Bipartition::One_23: return "1|23";
    case Bipartition::Two_13: return "2|13";
    default: return "3|12";
  }
}

Bipartition bipartition_from_string(const std::string& s) {
  if (s == "1|23") return Bipartition::One_23;
  if (s == "2|13") return Bipartition::Two_13;
  if (s == "3|12") return Bipartition::Three_12;
  throw ConfigError("unknown bipartition '" + s + "' (expected 1|23, 2|13 or 3|12)");
}

SchmidtReport schmidt_analysis(const JointAmplitudeGrid& grid, Bipartition bipartition) {
  const std::size_t n1 = grid.nu1.size(), n2 = grid.nu2.size(), n3 = grid.nu3.size();
  if (n1 == 0 || n2 == 0 || n3 == 0) throw ConfigError("schmidt_analysis: empty grid");

  MatrixXc unfolded;
  switch (bipartition) {
    case Bipartition::One_23:
      unfolded.resize(n1, n2 * n3);
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
          for (std::size_t k = 0; k < n3; ++k) unfolded(i, j * n3 + k) = grid.at(i, j, k);
      break;
    case Bipartition::Two_13:
      unfolded.resize(n2, n1 * n3);
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
          for (std::size_t k = 0; k < n3; ++k) unfolded(j, i * n3 + k) = grid.at(i, j, k);
      break;
    case Bipartition::Three_12:
      unfolded.resize(n3, n1 * n2);
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
          for (std::size_t k = 0; k < n3; ++k) unfolded(k, i * n2 + j) = grid.at(i, j, k);
      break;
  }

  const double norm = unfolded.norm();
  if (!(norm > 0.0)) throw NumericalError("schmidt_analysis: all-zero amplitude grid");
  unfolded /= norm;

  Eigen::BDCSVD<MatrixXc> svd(unfolded);
  SchmidtReport report;
  report.singular_values.assign(svd.singularValues().data(),
                                svd.singularValues().data() + svd.singularValues().size());
  double purity = 0.0;
  for (double s : report.singular_values) purity += s * s * s * s;
  report.purity = purity;
  report.schmidt_number = 1.0 / purity;
  return report;
}

}  // namespace cpdc
