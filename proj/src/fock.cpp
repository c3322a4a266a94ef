#include "cpdc/fock.hpp"

#include <cmath>
#include <sstream>

namespace cpdc {

long basis_index(const ModeRegister& reg, const std::vector<int>& occupation) {
  if (occupation.size() != reg.modes.size())
    throw ConfigError("occupation length does not match register");
  long idx = 0;
  for (std::size_t i = 0; i < reg.modes.size(); ++i) {
    if (occupation[i] < 0 || occupation[i] >= reg.modes[i].levels)
      throw ConfigError("occupation outside truncation for mode '" + reg.modes[i].label + "'");
    idx = idx * reg.modes[i].levels + occupation[i];
  }
  return idx;
}

std::vector<int> occupation_of(const ModeRegister& reg, long index) {
  std::vector<int> occ(reg.modes.size(), 0);
  for (std::size_t i = reg.modes.size(); i-- > 0;) {
    occ[i] = static_cast<int>(index % reg.modes[i].levels);
    index /= reg.modes[i].levels;
  }
  return occ;
}

std::string basis_label(const ModeRegister& reg, long index) {
  std::vector<int> occ = occupation_of(reg, index);
  std::ostringstream os;
  os << "|";
  for (std::size_t i = 0; i < occ.size(); ++i) os << (i ? "," : "") << occ[i];
  os << ">";
  return os.str();
}

SparseXc annihilation_single(int levels) {
  SparseXc a(levels, levels);
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(levels - 1);
  for (int n = 1; n < levels; ++n) trips.emplace_back(n - 1, n, std::sqrt(double(n)));
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

SparseXc embed(const ModeRegister& reg, std::size_t mode, const SparseXc& op) {
  reg.validate();
  const long dim = reg.dim();
  const long stride = reg.stride(mode);
  const int d = reg.modes[mode].levels;
  if (op.rows() != d || op.cols() != d)
    throw ConfigError("embed: operator dimension does not match mode levels");

  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(op.nonZeros() * (dim / d)));
  // Every joint index splits as rest + n*stride with n the mode occupation.
  for (long col = 0; col < dim; ++col) {
    const int n = static_cast<int>((col / stride) % d);
    const long rest = col - n * stride;
    for (SparseXc::InnerIterator it(op, n); it; ++it)
      trips.emplace_back(rest + it.row() * stride, col, it.value());
  }
  SparseXc out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseXc annihilation(const ModeRegister& reg, std::size_t mode) {
  return embed(reg, mode, annihilation_single(reg.modes[mode].levels));
}

SparseXc creation(const ModeRegister& reg, std::size_t mode) {
  return SparseXc(annihilation(reg, mode).adjoint());
}

SparseXc number_operator(const ModeRegister& reg, std::size_t mode) {
  const int d = reg.modes[mode].levels;
  SparseXc n(d, d);
  std::vector<Eigen::Triplet<Complex>> trips;
  for (int k = 1; k < d; ++k) trips.emplace_back(k, k, double(k));
  n.setFromTriplets(trips.begin(), trips.end());
  return embed(reg, mode, n);
}

VectorXc vacuum_state(const ModeRegister& reg) {
  VectorXc psi = VectorXc::Zero(reg.dim());
  psi(0) = 1.0;
  return psi;
}

VectorXc basis_state(const ModeRegister& reg, const std::vector<int>& occupation) {
  VectorXc psi = VectorXc::Zero(reg.dim());
  psi(basis_index(reg, occupation)) = 1.0;
  return psi;
}

MatrixXc partial_trace_keep(const ModeRegister& reg, const MatrixXc& rho, std::size_t keep) {
  if (keep >= reg.modes.size()) throw ConfigError("partial_trace_keep: bad mode index");
  const long dim = reg.dim();
  if (rho.rows() != dim || rho.cols() != dim)
    throw ConfigError("partial_trace_keep: density matrix does not match register");
  const int d = reg.modes[keep].levels;
  const long stride = reg.stride(keep);
  MatrixXc out = MatrixXc::Zero(d, d);
  for (long col = 0; col < dim; ++col) {
    const int n = static_cast<int>((col / stride) % d);
    const long rest = col - n * stride;
    for (int m = 0; m < d; ++m) out(m, n) += rho(rest + m * stride, col);
  }
  return out;
}

MatrixXc reduced_density(const ModeRegister& reg, const VectorXc& psi, std::size_t keep) {
  if (keep >= reg.modes.size()) throw ConfigError("reduced_density: bad mode index");
  const long dim = reg.dim();
  if (psi.size() != dim) throw ConfigError("reduced_density: state does not match register");
  const int d = reg.modes[keep].levels;
  const long stride = reg.stride(keep);
  MatrixXc out = MatrixXc::Zero(d, d);
  for (long col = 0; col < dim; ++col) {
    const int n = static_cast<int>((col / stride) % d);
    const long rest = col - n * stride;
    const Complex cj = std::conj(psi(col));
    if (cj == Complex{0, 0}) continue;
    for (int m = 0; m < d; ++m) out(m, n) += psi(rest + m * stride) * cj;
  }
  return out;
}

namespace {
template <typename Accessor>
double leakage_impl(const ModeRegister& reg, long dim, const Accessor& weight) {
  double leak = 0.0;
  for (long i = 0; i < dim; ++i) {
    const double w = weight(i);
    if (w == 0.0) continue;
    std::vector<int> occ = occupation_of(reg, i);
    for (std::size_t m = 0; m < reg.modes.size(); ++m) {
      if (occ[m] >= reg.modes[m].levels - 2) {
        leak += w;
        break;
      }
    }
  }
  return leak;
}
}  // namespace

double truncation_leakage(const ModeRegister& reg, const VectorXc& psi) {
  return leakage_impl(reg, reg.dim(), [&](long i) { return std::norm(psi(i)); });
}

double truncation_leakage(const ModeRegister& reg, const MatrixXc& rho) {
  return leakage_impl(reg, reg.dim(), [&](long i) { return std::real(rho(i, i)); });
}

}  // namespace cpdc
