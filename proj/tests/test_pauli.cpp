#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracle.hpp"
#include "qevo/pauli.hpp"
#include "qevo/simulator.hpp"

using namespace qevo;

namespace {

std::string random_string(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> op(0, 3);
  std::string s;
  for (int q = 0; q < n; ++q) s += "IXYZ"[op(rng)];
  return s;
}

oracle::Mat phased_matrix(const PhasedPauli& p) { return p.phase() * oracle::pauli_matrix(p.string.str()); }

}  // namespace

TEST(PauliString, ParseAndPrint) {
  const PauliString p = PauliString::parse("XIZY");
  EXPECT_EQ(p.n_qubits(), 4);
  EXPECT_EQ(p.op(0), 'X');
  EXPECT_EQ(p.op(3), 'Y');
  EXPECT_EQ(p.weight(), 3);
  EXPECT_EQ(p.str(), "XIZY");
  EXPECT_EQ(PauliString::single(3, 1, 'Z').str(), "IZI");
  EXPECT_THROW(PauliString::parse("XQ"), std::invalid_argument);
  EXPECT_THROW(PauliString::parse(""), std::invalid_argument);
}

TEST(ApplyPauli, BasicActions) {
  const StateVector x = apply_pauli(PauliString::parse("XI"), StateVector(2));
  EXPECT_EQ(x[1], Complex(1.0, 0.0));
  const StateVector y = apply_pauli(PauliString::parse("Y"), StateVector(1));
  EXPECT_EQ(y[1], Complex(0.0, 1.0));
  EXPECT_THROW(apply_pauli(PauliString::parse("X"), StateVector(2)), std::invalid_argument);
}

TEST(ApplyPauli, MatchesKroneckerOracleAndIsInvolutory) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::string s = random_string(4, rng);
    const StateVector psi = oracle::random_state(4, rng);
    const StateVector out = apply_pauli(PauliString::parse(s), psi);
    const oracle::Vec expect = oracle::pauli_matrix(s) * oracle::to_vec(psi);
    EXPECT_LT((oracle::to_vec(out) - expect).cwiseAbs().maxCoeff(), 1e-12) << s;
    const StateVector twice = apply_pauli(PauliString::parse(s), out);
    EXPECT_LT((oracle::to_vec(twice) - oracle::to_vec(psi)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Multiply, SingleQubitRules) {
  const PhasedPauli x{0, PauliString::parse("X")};
  const PhasedPauli y{0, PauliString::parse("Y")};
  const PhasedPauli z{0, PauliString::parse("Z")};
  const PhasedPauli xy = multiply(x, y);
  EXPECT_EQ(xy.string.str(), "Z");
  EXPECT_EQ(xy.phase(), Complex(0.0, 1.0));
  const PhasedPauli zz = multiply(z, z);
  EXPECT_TRUE(zz.string.is_identity());
  EXPECT_EQ(zz.phase(), Complex(1.0, 0.0));
  EXPECT_EQ(multiply(y, x).phase(), Complex(0.0, -1.0));
}

TEST(Multiply, MatchesDenseProductsOnFiveQubits) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> ph(0, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const PhasedPauli a{ph(rng), PauliString::parse(random_string(5, rng))};
    const PhasedPauli b{ph(rng), PauliString::parse(random_string(5, rng))};
    const PhasedPauli c = multiply(a, b);
    EXPECT_LT((phased_matrix(c) - phased_matrix(a) * phased_matrix(b)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Multiply, AssociativeSelfInverseAndPhaseSymmetric) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const PhasedPauli a{0, PauliString::parse(random_string(6, rng))};
    const PhasedPauli b{2, PauliString::parse(random_string(6, rng))};
    const PhasedPauli c{1, PauliString::parse(random_string(6, rng))};
    EXPECT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
    const PhasedPauli aa = multiply(a, a);
    EXPECT_TRUE(aa.string.is_identity());
    EXPECT_EQ(aa.phase_exponent, 0);
    const PhasedPauli ab = multiply(a, b);
    const PhasedPauli ba = multiply(b, a);
    EXPECT_EQ(ab.string, ba.string);
    EXPECT_EQ((ab.phase_exponent - ba.phase_exponent + 4) % 4, a.string.commutes_with(b.string) ? 0 : 2);
  }
  EXPECT_THROW(multiply(PhasedPauli{0, PauliString(2)}, PhasedPauli{0, PauliString(3)}), std::invalid_argument);
}

TEST(Hamiltonian, MergesDuplicatesAndDropsZeros) {
  const Hamiltonian h(2, {{1.0, PauliString::parse("XX")},
                          {0.5, PauliString::parse("ZI")},
                          {-1.0, PauliString::parse("XX")},
                          {1e-16, PauliString::parse("YY")},
                          {0.25, PauliString::parse("ZI")}});
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.terms()[0].string.str(), "ZI");
  EXPECT_DOUBLE_EQ(h.terms()[0].weight, 0.75);
}

TEST(Hamiltonian, DenseFormIsHermitian) {
  std::mt19937_64 rng(14);
  for (int n = 1; n <= 4; ++n) {
    const oracle::Mat m = oracle::hamiltonian_matrix(oracle::random_hamiltonian(n, 10, rng));
    EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Hamiltonian, TextRoundTripIsExact) {
  std::mt19937_64 rng(15);
  const Hamiltonian h = oracle::random_hamiltonian(5, 20, rng);
  const Hamiltonian back = Hamiltonian::from_text("# comment\n\n" + h.to_text());
  ASSERT_EQ(back.size(), h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    EXPECT_EQ(back.terms()[k].weight, h.terms()[k].weight);
    EXPECT_EQ(back.terms()[k].string, h.terms()[k].string);
  }
  EXPECT_THROW(Hamiltonian::from_text("1.0 XX\n2.0 XYZ\n"), std::invalid_argument);
  EXPECT_THROW(Hamiltonian::from_text("abc XX\n"), std::invalid_argument);
  EXPECT_THROW(Hamiltonian::from_text("1.0 XX junk\n"), std::invalid_argument);
}

TEST(Hamiltonian, ExpectationIsReal) {
  std::mt19937_64 rng(16);
  const Hamiltonian h = oracle::random_hamiltonian(3, 15, rng);
  const StateVector psi = oracle::random_state(3, rng);
  const oracle::Vec v = oracle::to_vec(psi);
  EXPECT_LT(std::abs(v.dot(oracle::hamiltonian_matrix(h) * v).imag()), 1e-12);
  std::vector<Complex> out;
  apply_hamiltonian(h, psi.amplitudes(), out);
  const oracle::Vec hv = Eigen::Map<oracle::Vec>(out.data(), static_cast<Eigen::Index>(out.size()));
  EXPECT_LT((hv - oracle::hamiltonian_matrix(h) * v).cwiseAbs().maxCoeff(), 1e-12);
}
