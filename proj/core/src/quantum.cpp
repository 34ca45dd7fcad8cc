#include "twostep/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace twostep {

bool PureState::is_normalized(double tol) const {
  return std::abs(amp.squaredNorm() - 1.0) <= tol;
}

bool PureState::one_photon_sector(double tol) const {
  return std::abs(amp[basis_index(0, 0)]) <= tol &&
         std::abs(amp[basis_index(1, 1)]) <= tol;
}

PureState PureState::vacuum() {
  PureState s;
  s.amp[basis_index(0, 0)] = 1.0;
  return s;
}

PureState PureState::photon_in(Mode mode) {
  PureState s;
  s.amp[mode == Mode::A ? basis_index(1, 0) : basis_index(0, 1)] = 1.0;
  return s;
}

Complex inner_product(const PureState& lhs, const PureState& rhs) {
  return lhs.amp.dot(rhs.amp);  // Eigen conjugates the left argument
}

bool Qubit::is_normalized(double tol) const {
  return std::abs(amp.squaredNorm() - 1.0) <= tol;
}

Complex inner_product(const Qubit& lhs, const Qubit& rhs) {
  return lhs.amp.dot(rhs.amp);
}

bool DensityMatrix::is_valid(double tol, double eig_slack) const {
  if (mat.rows() != mat.cols()) return false;
  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(mat.trace() - Complex(1.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -eig_slack;
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  DensityMatrix rho;
  rho.mat = psi.amp * psi.amp.adjoint();
  return rho;
}

DensityMatrix DensityMatrix::from_qubit(const Qubit& q) {
  DensityMatrix rho;
  rho.mat = q.amp * q.amp.adjoint();
  return rho;
}

PureState encode_gv_bit(int bit) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("encode_gv_bit: bit must be 0 or 1");
  }
  PureState s;
  s.amp[basis_index(0, 1)] = kInvSqrt2;
  s.amp[basis_index(1, 0)] = bit == 0 ? kInvSqrt2 : -kInvSqrt2;
  return s;
}

PureState beamsplitter(const PureState& state) {
  if (std::abs(state.amp[basis_index(1, 1)]) > kAlgebraTol) {
    throw std::invalid_argument(
        "beamsplitter: amplitude on |11> is outside the one-photon sector");
  }
  PureState out;
  const Complex a01 = state.amp[basis_index(0, 1)];
  const Complex a10 = state.amp[basis_index(1, 0)];
  out.amp[basis_index(0, 0)] = state.amp[basis_index(0, 0)];
  out.amp[basis_index(0, 1)] = kInvSqrt2 * (a10 - a01);
  out.amp[basis_index(1, 0)] = kInvSqrt2 * (a10 + a01);
  return out;
}

PureState phase_shift(const PureState& state, Mode mode, double phi) {
  const Complex factor = std::polar(1.0, phi);
  PureState out = state;
  for (int i = 0; i < 4; ++i) {
    if (photon_count(i, mode) == 1) out.amp[i] *= factor;
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Mode keep) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("partial_trace: expected a 4x4 density matrix");
  }
  DensityMatrix out;
  out.mat = Eigen::MatrixXcd::Zero(2, 2);
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      for (int k = 0; k < 2; ++k) {
        const int row = keep == Mode::A ? basis_index(m, k) : basis_index(k, m);
        const int col = keep == Mode::A ? basis_index(n, k) : basis_index(k, n);
        out.mat(m, n) += rho.mat(row, col);
      }
    }
  }
  return out;
}

double trace_distance(const DensityMatrix& lhs, const DensityMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(lhs.mat - rhs.mat,
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

NumberMeasurement measure_number(const PureState& state, Mode mode,
                                 double draw) {
  double p_one = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (photon_count(i, mode) == 1) p_one += std::norm(state.amp[i]);
  }
  const int outcome = draw < p_one ? 1 : 0;
  PureState post;
  for (int i = 0; i < 4; ++i) {
    if (photon_count(i, mode) == outcome) post.amp[i] = state.amp[i];
  }
  const double weight = post.norm();
  if (weight == 0.0) {
    throw std::logic_error("measure_number: zero-probability branch realized");
  }
  post.amp /= weight;
  return {outcome, post};
}

DetectorDistribution gv_decode_distribution(const PureState& state) {
  const PureState out = beamsplitter(state);
  return {std::norm(out.amp[basis_index(1, 0)]),
          std::norm(out.amp[basis_index(0, 1)]),
          std::norm(out.amp[basis_index(0, 0)])};
}

Detector gv_decode(const PureState& state, double draw) {
  const DetectorDistribution dist = gv_decode_distribution(state);
  if (draw < dist.d0) return Detector::D0;
  if (draw < dist.d0 + dist.d1) return Detector::D1;
  return Detector::NoClick;
}

Qubit bb84_encode(int bit, Basis basis) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("bb84_encode: bit must be 0 or 1");
  }
  Qubit q;
  if (basis == Basis::Z) {
    q.amp[bit] = 1.0;
  } else {
    q.amp[0] = kInvSqrt2;
    q.amp[1] = bit == 0 ? kInvSqrt2 : -kInvSqrt2;
  }
  return q;
}

BasisMeasurement measure_basis(const Qubit& q, Basis basis, double draw) {
  const Qubit zero = bb84_encode(0, basis);
  const double p_zero = std::norm(inner_product(zero, q));
  const int bit = draw < p_zero ? 0 : 1;
  return {bit, bb84_encode(bit, basis)};
}

const char* to_string(Mode mode) { return mode == Mode::A ? "a" : "b"; }

const char* to_string(Basis basis) { return basis == Basis::Z ? "Z" : "X"; }

const char* to_string(Detector det) {
  switch (det) {
    case Detector::D0: return "D0";
    case Detector::D1: return "D1";
    default: return "no_click";
  }
}

}  // namespace twostep
