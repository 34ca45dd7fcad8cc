#pragma once

// Exact finite-dimensional quantum states for dual-rail single-photon
// carriers, plus the few transformations the protocols need.
//
// Conventions fixed here once and used everywhere:
//   * two-mode basis order is |00>, |01>, |10>, |11>, where |n_a n_b> gives
//     the photon count in branch a (first) and branch b (second);
//   * the 50/50 beamsplitter is the real signed map
//       |10> -> (|10> + |01>)/sqrt2,   |01> -> (|10> - |01>)/sqrt2,
//     which keeps every amplitude real and is its own inverse on the
//     one-photon sector;
//   * detector D0 fires when the photon leaves the decoder in mode a and
//     means bit 0, D1 likewise for mode b and bit 1.

#include <complex>
#include <Eigen/Dense>

namespace twostep {

using Complex = std::complex<double>;

// Tolerance for algebraic identities (norms, hermiticity, unit trace).
inline constexpr double kAlgebraTol = 1e-12;
// Slack allowed below zero in density-matrix spectra.
inline constexpr double kEigenvalueSlack = 1e-10;
// Nearest double to 1/sqrt(2), rounded up; squaring it never undershoots 1/2.
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// The two spatial modes (interferometer branches) of the dual-rail carrier.
enum class Mode { A, B };

/// BB84 bases. Z eigenstates are |0>,|1>; X eigenstates are (|0> +- |1>)/sqrt2.
enum class Basis { Z, X };

/// Index into the two-mode photon-number basis.
constexpr int basis_index(int n_a, int n_b) { return 2 * n_a + n_b; }

/// Photon count in `mode` for the given basis index.
constexpr int photon_count(int index, Mode mode) {
  return mode == Mode::A ? index / 2 : index % 2;
}

/// A pure two-mode state with at most one photon per mode.
struct PureState {
  Eigen::Vector4cd amp = Eigen::Vector4cd::Zero();

  double norm() const { return std::sqrt(amp.squaredNorm()); }
  bool is_normalized(double tol = kAlgebraTol) const;
  /// True when the |00> and |11> amplitudes vanish (the carrier sector).
  bool one_photon_sector(double tol = kAlgebraTol) const;

  static PureState vacuum();
  static PureState photon_in(Mode mode);
};

Complex inner_product(const PureState& lhs, const PureState& rhs);

/// BB84 carrier: a plain qubit over {|0>, |1>}.
struct Qubit {
  Eigen::Vector2cd amp = Eigen::Vector2cd::Zero();
  bool is_normalized(double tol = kAlgebraTol) const;
};

Complex inner_product(const Qubit& lhs, const Qubit& rhs);

/// Hermitian, positive semidefinite, unit-trace matrix; 4x4 for the two-mode
/// carrier or 2x2 for a single mode after the partial trace.
struct DensityMatrix {
  Eigen::MatrixXcd mat;

  int dim() const { return static_cast<int>(mat.rows()); }
  double trace_real() const { return mat.trace().real(); }
  bool is_valid(double tol = kAlgebraTol,
                double eig_slack = kEigenvalueSlack) const;

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix from_qubit(const Qubit& q);
};

/// Dual-rail encoding of one key bit: (|01> + |10>)/sqrt2 for bit 0 and
/// (|01> - |10>)/sqrt2 for bit 1. The two outputs are orthogonal.
PureState encode_gv_bit(int bit);

/// 50/50 beamsplitter in the convention above. The vacuum is fixed; states
/// with amplitude on |11> are outside the modeled sector and are rejected
/// with std::invalid_argument.
PureState beamsplitter(const PureState& state);

/// Multiplies each basis amplitude by exp(i * phi * n_mode).
PureState phase_shift(const PureState& state, Mode mode, double phi);

/// Traces out the other branch of a 4x4 density matrix, leaving the 2x2
/// photon-number state of `keep`.
DensityMatrix partial_trace(const DensityMatrix& rho, Mode keep);

/// (1/2) * sum |eigenvalues of lhs - rhs|. 0 iff the states are identical,
/// 1 iff they have orthogonal supports. Throws on dimension mismatch.
double trace_distance(const DensityMatrix& lhs, const DensityMatrix& rhs);

struct NumberMeasurement {
  int outcome;      // photons found in the measured mode
  PureState post;   // renormalized projection
};

/// Photon-number measurement of one mode. Outcome is 1 iff draw < P(n = 1),
/// so the result is deterministic given the draw.
NumberMeasurement measure_number(const PureState& state, Mode mode,
                                 double draw);

enum class Detector { D0, D1, NoClick };

struct DetectorDistribution {
  double d0;
  double d1;
  double no_click;
};

/// Exact detector statistics of the decoder: beamsplitter, then
/// photon-number readout (mode a -> D0, mode b -> D1, vacuum -> NoClick).
DetectorDistribution gv_decode_distribution(const PureState& state);

/// Samples the decoder. D0 iff draw < p(D0), D1 iff draw < p(D0) + p(D1).
Detector gv_decode(const PureState& state, double draw);

/// (0,Z) -> |0>, (1,Z) -> |1>, (0,X) -> |+>, (1,X) -> |->.
Qubit bb84_encode(int bit, Basis basis);

struct BasisMeasurement {
  int bit;
  Qubit post;  // the eigenstate the qubit collapsed to
};

/// Born-rule measurement in the given basis; bit 0 iff draw < P(bit = 0).
BasisMeasurement measure_basis(const Qubit& q, Basis basis, double draw);

const char* to_string(Mode mode);
const char* to_string(Basis basis);
const char* to_string(Detector det);

}  // namespace twostep
