#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "twostep/quantum.hpp"
#include "twostep/rng.hpp"

using namespace twostep;

namespace {

constexpr double kInv2 = 0.7071067811865476;  // 1/sqrt2 as a double

oracle::Vec4 to_oracle(const PureState& s) {
  return {s.amp[0], s.amp[1], s.amp[2], s.amp[3]};
}

void check_state(const PureState& actual, const oracle::Vec4& expected,
                 double tol = kAlgebraTol) {
  for (int i = 0; i < 4; ++i) {
    CAPTURE(i);
    CHECK(std::abs(actual.amp[i] - expected[i]) <= tol);
  }
}

// Uniform random state in the modeled sector; vacuum amplitude optional.
PureState random_carrier(std::mt19937_64& eng, bool allow_vacuum) {
  auto unit = [&] { return (eng() >> 11) * 0x1.0p-53; };
  PureState s;
  s.amp[basis_index(0, 1)] = Complex(unit() - 0.5, unit() - 0.5);
  s.amp[basis_index(1, 0)] = Complex(unit() - 0.5, unit() - 0.5);
  if (allow_vacuum) {
    s.amp[basis_index(0, 0)] = Complex(unit() - 0.5, unit() - 0.5);
  }
  s.amp /= s.norm();
  return s;
}

}  // namespace

TEST_CASE("gv encoding matches the two orthogonal superpositions") {
  const PureState zero = encode_gv_bit(0);
  const PureState one = encode_gv_bit(1);
  check_state(zero, {0.0, kInv2, kInv2, 0.0});
  check_state(one, {0.0, kInv2, -kInv2, 0.0});
  CHECK(std::abs(inner_product(zero, one)) <= kAlgebraTol);
  CHECK(zero.is_normalized());
  CHECK(one.is_normalized());
  CHECK(zero.one_photon_sector());
  CHECK_THROWS_AS(encode_gv_bit(2), std::invalid_argument);
}

TEST_CASE("beamsplitter convention") {
  check_state(beamsplitter(PureState::photon_in(Mode::A)),
              {0.0, kInv2, kInv2, 0.0});

  // plus state collapses onto the a output port (matrix arithmetic oracle)
  const auto expect = oracle::apply_beamsplitter(to_oracle(encode_gv_bit(0)));
  const PureState got = beamsplitter(encode_gv_bit(0));
  check_state(got, expect);
  CHECK(std::abs(got.amp[basis_index(1, 0)] - 1.0) <= kAlgebraTol);
  CHECK(std::abs(got.amp[basis_index(0, 1)]) <= kAlgebraTol);

  check_state(beamsplitter(PureState::vacuum()), {1.0, 0.0, 0.0, 0.0});

  PureState two_photon;
  two_photon.amp[basis_index(1, 1)] = 1.0;
  CHECK_THROWS_AS(beamsplitter(two_photon), std::invalid_argument);
}

TEST_CASE("beamsplitter is involutory and unitary on the sector") {
  std::mt19937_64 eng(0xC0FFEE01);
  for (int trial = 0; trial < 1000; ++trial) {
    const PureState u = random_carrier(eng, true);
    const PureState v = random_carrier(eng, true);
    // applying it twice restores the state (here exactly, sign included)
    check_state(beamsplitter(beamsplitter(u)), to_oracle(u), 1e-12);
    // inner products survive
    const Complex before = inner_product(u, v);
    const Complex after = inner_product(beamsplitter(u), beamsplitter(v));
    CHECK(std::abs(before - after) <= kAlgebraTol);
    CHECK(beamsplitter(u).is_normalized());
  }
}

TEST_CASE("phase shift") {
  const PureState one_b = PureState::photon_in(Mode::B);
  const PureState flipped = phase_shift(one_b, Mode::B, std::numbers::pi);
  CHECK(std::abs(flipped.amp[basis_index(0, 1)] + 1.0) <= kAlgebraTol);

  // pi on branch b turns the plus state into the minus state
  const PureState minus = phase_shift(encode_gv_bit(0), Mode::B,
                                      std::numbers::pi);
  const PureState expected = encode_gv_bit(1);
  // equal up to the global sign flip of the shifted component
  CHECK(std::abs(std::abs(inner_product(minus, expected)) - 1.0) <=
        kAlgebraTol);
  check_state(phase_shift(minus, Mode::B, std::numbers::pi),
              to_oracle(encode_gv_bit(0)), kAlgebraTol);

  std::mt19937_64 eng(0xC0FFEE02);
  for (int trial = 0; trial < 200; ++trial) {
    const PureState u = random_carrier(eng, true);
    check_state(phase_shift(u, Mode::A, 0.0), to_oracle(u));
    const double phi = (eng() >> 11) * 0x1.0p-53 * 6.0;
    const PureState v = random_carrier(eng, true);
    const Complex before = inner_product(u, v);
    const Complex after =
        inner_product(phase_shift(u, Mode::B, phi), phase_shift(v, Mode::B, phi));
    CHECK(std::abs(before - after) <= kAlgebraTol);
    CHECK(phase_shift(u, Mode::A, phi).is_normalized());
  }
}

TEST_CASE("partial trace of the carrier states is maximally mixed") {
  for (int bit : {0, 1}) {
    const DensityMatrix rho = DensityMatrix::from_pure(encode_gv_bit(bit));
    CHECK(rho.is_valid());
    for (Mode keep : {Mode::A, Mode::B}) {
      const DensityMatrix reduced = partial_trace(rho, keep);
      CHECK(reduced.dim() == 2);
      CHECK(reduced.is_valid());
      CHECK(std::abs(reduced.mat(0, 0) - Complex(0.5)) <= kAlgebraTol);
      CHECK(std::abs(reduced.mat(1, 1) - Complex(0.5)) <= kAlgebraTol);
      CHECK(std::abs(reduced.mat(0, 1)) <= kAlgebraTol);
      CHECK(std::abs(reduced.mat(1, 0)) <= kAlgebraTol);
    }
  }

  // product state keeps its photon
  const DensityMatrix rho =
      DensityMatrix::from_pure(PureState::photon_in(Mode::A));
  const DensityMatrix kept = partial_trace(rho, Mode::A);
  CHECK(std::abs(kept.mat(1, 1) - Complex(1.0)) <= kAlgebraTol);
  CHECK(std::abs(kept.mat(0, 0)) <= kAlgebraTol);

  DensityMatrix wrong;
  wrong.mat = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(partial_trace(wrong, Mode::A), std::invalid_argument);
}

TEST_CASE("partial trace preserves the trace on random mixtures") {
  std::mt19937_64 eng(0xC0FFEE03);
  for (int trial = 0; trial < 200; ++trial) {
    auto unit = [&] { return (eng() >> 11) * 0x1.0p-53; };
    const double p = unit();
    const PureState u = random_carrier(eng, true);
    const PureState v = random_carrier(eng, true);
    DensityMatrix rho;
    rho.mat = p * DensityMatrix::from_pure(u).mat +
              (1.0 - p) * DensityMatrix::from_pure(v).mat;
    CHECK(rho.is_valid());
    for (Mode keep : {Mode::A, Mode::B}) {
      const DensityMatrix reduced = partial_trace(rho, keep);
      CHECK(std::abs(reduced.trace_real() - rho.trace_real()) <= kAlgebraTol);
      CHECK(reduced.is_valid());
    }
  }
}

TEST_CASE("trace distance") {
  const DensityMatrix rho_plus =
      partial_trace(DensityMatrix::from_pure(encode_gv_bit(0)), Mode::A);
  const DensityMatrix rho_minus =
      partial_trace(DensityMatrix::from_pure(encode_gv_bit(1)), Mode::B);
  CHECK(trace_distance(rho_plus, rho_minus) <= kAlgebraTol);

  const DensityMatrix zero = DensityMatrix::from_qubit(bb84_encode(0, Basis::Z));
  const DensityMatrix one = DensityMatrix::from_qubit(bb84_encode(1, Basis::Z));
  CHECK(std::abs(trace_distance(zero, one) - 1.0) <= kAlgebraTol);

  const DensityMatrix plus = DensityMatrix::from_qubit(bb84_encode(0, Basis::X));
  const double expected = oracle::trace_distance2(
      {{{Complex(1.0), Complex(0.0)}, {Complex(0.0), Complex(0.0)}}},
      {{{Complex(0.5), Complex(0.5)}, {Complex(0.5), Complex(0.5)}}});
  CHECK(std::abs(expected - 1.0 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(trace_distance(zero, plus) - expected) <= kAlgebraTol);
  CHECK(std::abs(trace_distance(zero, plus) - 0.7071067811865476) <= 1e-12);

  CHECK(std::abs(trace_distance(plus, zero) - trace_distance(zero, plus)) <=
        kAlgebraTol);
  DensityMatrix big;
  big.mat = Eigen::MatrixXcd::Identity(4, 4) * 0.25;
  CHECK_THROWS_AS(trace_distance(big, zero), std::invalid_argument);
}

TEST_CASE("photon-number measurement is deterministic given the draw") {
  const PureState plus = encode_gv_bit(0);

  const auto found = measure_number(plus, Mode::A, 0.3);
  CHECK(found.outcome == 1);
  check_state(found.post, {0.0, 0.0, 1.0, 0.0});

  const auto missed = measure_number(plus, Mode::A, 0.7);
  CHECK(missed.outcome == 0);
  check_state(missed.post, {0.0, 1.0, 0.0, 0.0});

  const auto certain = measure_number(PureState::photon_in(Mode::A), Mode::A, 0.999);
  CHECK(certain.outcome == 1);
  check_state(certain.post, {0.0, 0.0, 1.0, 0.0});

  const auto vacuum = measure_number(PureState::vacuum(), Mode::B, 0.0);
  CHECK(vacuum.outcome == 0);
  check_state(vacuum.post, {1.0, 0.0, 0.0, 0.0});
}

TEST_CASE("measurement statistics over seeded draws") {
  RoundRng rng(2026);
  for (int bit : {0, 1}) {
    const PureState carrier = encode_gv_bit(bit);
    int ones = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      ones += measure_number(carrier, Mode::A, rng.next_unit()).outcome;
    }
    const double freq = static_cast<double>(ones) / n;
    CHECK(freq == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(freq - 0.5) <= 0.01);
  }
}

TEST_CASE("decoder maps the carrier states to their detectors") {
  const auto plus = gv_decode_distribution(encode_gv_bit(0));
  CHECK(std::abs(plus.d0 - 1.0) <= kAlgebraTol);
  CHECK(plus.d1 <= kAlgebraTol);
  CHECK(plus.no_click <= kAlgebraTol);
  const auto minus = gv_decode_distribution(encode_gv_bit(1));
  CHECK(std::abs(minus.d1 - 1.0) <= kAlgebraTol);
  CHECK(minus.d0 <= kAlgebraTol);

  for (double draw : {0.0, 0.3, 0.9999}) {
    CHECK(gv_decode(encode_gv_bit(0), draw) == Detector::D0);
    CHECK(gv_decode(encode_gv_bit(1), draw) == Detector::D1);
  }

  // a collapsed single-branch packet leaves both detectors equally likely
  const auto half = gv_decode_distribution(PureState::photon_in(Mode::A));
  const auto expect = oracle::decode_distribution({0.0, 0.0, 1.0, 0.0});
  CHECK(std::abs(half.d0 - expect.d0) <= kAlgebraTol);
  CHECK(std::abs(half.d1 - expect.d1) <= kAlgebraTol);
  CHECK(half.d0 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half.d1 == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(gv_decode(PureState::vacuum(), 0.5) == Detector::NoClick);
}

TEST_CASE("decoder distribution equals brute-force enumeration") {
  // all four basis states plus both carrier states
  std::vector<PureState> states = {PureState::vacuum(),
                                   PureState::photon_in(Mode::B),
                                   PureState::photon_in(Mode::A),
                                   encode_gv_bit(0), encode_gv_bit(1)};
  std::mt19937_64 eng(0xC0FFEE04);
  for (int trial = 0; trial < 1000; ++trial) {
    states.push_back(random_carrier(eng, true));
  }
  for (const PureState& s : states) {
    const auto got = gv_decode_distribution(s);
    const auto expect = oracle::decode_distribution(to_oracle(s));
    CHECK(std::abs(got.d0 - expect.d0) <= kAlgebraTol);
    CHECK(std::abs(got.d1 - expect.d1) <= kAlgebraTol);
    CHECK(std::abs(got.no_click - expect.no_click) <= kAlgebraTol);
  }
}

TEST_CASE("bb84 encoding") {
  const Qubit z0 = bb84_encode(0, Basis::Z);
  CHECK(std::abs(z0.amp[0] - 1.0) <= kAlgebraTol);
  CHECK(std::abs(z0.amp[1]) <= kAlgebraTol);
  const Qubit x1 = bb84_encode(1, Basis::X);
  CHECK(std::abs(x1.amp[0] - kInv2) <= kAlgebraTol);
  CHECK(std::abs(x1.amp[1] + kInv2) <= kAlgebraTol);

  for (Basis basis : {Basis::Z, Basis::X}) {
    CHECK(std::abs(inner_product(bb84_encode(0, basis),
                                 bb84_encode(1, basis))) <= kAlgebraTol);
  }
  // cross-basis overlap is exactly one half
  for (int b1 : {0, 1}) {
    for (int b2 : {0, 1}) {
      const double overlap = std::norm(inner_product(
          bb84_encode(b1, Basis::Z), bb84_encode(b2, Basis::X)));
      CHECK(overlap == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("basis measurement follows the Born rule") {
  const auto certain = measure_basis(bb84_encode(0, Basis::Z), Basis::Z, 0.99);
  CHECK(certain.bit == 0);

  const Qubit plus = bb84_encode(0, Basis::X);
  CHECK(measure_basis(plus, Basis::Z, 0.49).bit == 0);
  CHECK(measure_basis(plus, Basis::Z, 0.51).bit == 1);
  const auto zero = measure_basis(plus, Basis::Z, 0.2);
  CHECK(std::abs(zero.post.amp[0] - 1.0) <= kAlgebraTol);

  const auto minus = measure_basis(bb84_encode(1, Basis::X), Basis::X, 0.0);
  CHECK(minus.bit == 1);
  CHECK(std::abs(inner_product(minus.post, bb84_encode(1, Basis::X)) -
                 Complex(1.0)) <= kAlgebraTol);
}

TEST_CASE("single-branch views of the two carriers are identical") {
  // what Eve can reach never depends on the bit, in either window
  const DensityMatrix rho0 = DensityMatrix::from_pure(encode_gv_bit(0));
  const DensityMatrix rho1 = DensityMatrix::from_pure(encode_gv_bit(1));
  for (Mode mode : {Mode::A, Mode::B}) {
    const DensityMatrix view0 = partial_trace(rho0, mode);
    const DensityMatrix view1 = partial_trace(rho1, mode);
    CHECK((view0.mat - view1.mat).cwiseAbs().maxCoeff() <= kAlgebraTol);
    CHECK(trace_distance(view0, view1) <= kAlgebraTol);
  }
}
