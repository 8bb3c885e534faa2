#include "bhvqe/hamiltonian.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <numbers>
#include <random>
#include <sstream>

using namespace bhvqe;

namespace {
constexpr double pi = std::numbers::pi;

/// The twelve summands of the chain Hamiltonian bracket, in order.
std::vector<std::pair<std::string, double>> chain_summands() {
  return {
      {"XXII", pi / 8}, {"XIII", pi / 16}, {"IXII", pi / 8}, {"IIII", 3 * pi / 16},
      {"IXXI", pi / 8}, {"IXII", pi / 16}, {"IIXI", pi / 8}, {"IIII", 3 * pi / 16},
      {"IIXX", pi / 8}, {"IIXI", pi / 16}, {"IIIX", pi / 8}, {"IIII", 3 * pi / 16},
  };
}

PauliHamiltonian chain(double mass = 1.0, double radius = 1.0) {
  return assemble({mass, radius}, HamiltonianLayout::paper_chain(), LatticeSpec(4));
}

PauliHamiltonian chain_bracket() {
  return assemble_normalized(HamiltonianLayout::paper_chain(), LatticeSpec(4));
}

ErrorKind kind_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no bhvqe::Error thrown";
  return ErrorKind::InvalidArgument;
}
} // namespace

TEST(MetricPrefactor, Limits) {
  EXPECT_NEAR(metric_prefactor({1e-300, 1.0}), 0.5, 1e-15);
  EXPECT_NEAR(metric_prefactor({1.0, 1e300}), 0.5, 1e-15);
}

TEST(MetricPrefactor, AtHorizon) {
  // r = 2GM gives ρ = 1/4.
  EXPECT_NEAR(metric_prefactor({3.0, 6.0}), 0.5 * std::pow(1.25, 0.25), 1e-15);
  EXPECT_NEAR(metric_prefactor({3.0, 6.0}), 0.528686, 1e-6);
}

TEST(MetricPrefactor, Monotone) {
  EXPECT_LT(metric_prefactor({1.0, 2.0}), metric_prefactor({2.0, 2.0}));
  EXPECT_GT(metric_prefactor({1.0, 2.0}), metric_prefactor({1.0, 3.0}));
}

TEST(MetricPrefactor, RejectsNonPositive) {
  EXPECT_EQ(kind_of([] { metric_prefactor({0.0, 1.0}); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { metric_prefactor({1.0, -1.0}); }), ErrorKind::DomainError);
}

TEST(Assemble, ChainMatchesSummands) {
  std::map<std::string, double> expected;
  for (const auto &[s, c] : chain_summands())
    expected[s] += c;
  const PauliHamiltonian h = chain_bracket();
  ASSERT_EQ(h.terms().size(), expected.size());
  for (const auto &t : h.terms())
    EXPECT_NEAR(t.coefficient, expected.at(t.string.str()), 1e-15) << t.string.str();

  EXPECT_NEAR(h.coefficient("XXII"), pi / 8, 1e-15);
  EXPECT_NEAR(h.coefficient("XIII"), pi / 16, 1e-15);
  EXPECT_NEAR(h.coefficient("IIII"), 9 * pi / 16, 1e-15);
  EXPECT_NEAR(h.coefficient("IXII"), 3 * pi / 16, 1e-15);
}

TEST(Assemble, ChainScalesByPrefactor) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  const PauliHamiltonian bare = chain_bracket();
  for (int i = 0; i < 10; ++i) {
    const BlackHoleParams p{u(rng), u(rng)};
    const PauliHamiltonian h = assemble(p, HamiltonianLayout::paper_chain(), LatticeSpec(4));
    for (const auto &t : h.terms())
      EXPECT_NEAR(t.coefficient / metric_prefactor(p), bare.coefficient(t.string.str()), 1e-14);
  }
  // In the flat limit every coefficient is half the bracket value.
  const PauliHamiltonian flat = chain(1e-300);
  for (const auto &t : flat.terms())
    EXPECT_NEAR(t.coefficient, 0.5 * bare.coefficient(t.string.str()), 1e-15);
}

TEST(Assemble, DisjointOneDimension) {
  const PauliHamiltonian h =
      assemble_normalized(HamiltonianLayout::disjoint(1), LatticeSpec(4));
  ASSERT_EQ(h.n_qubits(), 2u);
  ASSERT_EQ(h.terms().size(), 4u);
  EXPECT_NEAR(h.coefficient("II"), 3 * pi / 16, 1e-12);
  EXPECT_NEAR(h.coefficient("IX"), pi / 8, 1e-12);
  EXPECT_NEAR(h.coefficient("XI"), pi / 16, 1e-12);
  EXPECT_NEAR(h.coefficient("XX"), pi / 8, 1e-12);
}

TEST(Assemble, DisjointMatchesKroneckerSum) {
  // H = p²⊗I⊗I + I⊗p²⊗I + I⊗I⊗p² built directly from matrices.
  const LatticeSpec spec(4);
  const ComplexMatrix p2 = momentum_squared(spec);
  const ComplexMatrix id = ComplexMatrix::identity(4);
  const ComplexMatrix direct =
      add(add(kron(kron(p2, id), id), kron(kron(id, p2), id)), kron(kron(id, id), p2));
  const PauliHamiltonian h = assemble_normalized(HamiltonianLayout::disjoint(3), spec);
  ASSERT_EQ(h.n_qubits(), 6u);
  EXPECT_LT(max_abs_diff(to_matrix(h), direct), 1e-12);
}

TEST(Assemble, InnerHalfHalvesBracket) {
  const PauliHamiltonian full = chain_bracket();
  const PauliHamiltonian half =
      assemble_normalized(HamiltonianLayout::paper_chain(), LatticeSpec(4), true);
  for (const auto &t : full.terms())
    EXPECT_NEAR(half.coefficient(t.string.str()), 0.5 * t.coefficient, 1e-15);
}

TEST(Assemble, ChainRequiresN4) {
  EXPECT_EQ(kind_of([] {
              assemble({1.0, 1.0}, HamiltonianLayout::paper_chain(), LatticeSpec(8));
            }),
            ErrorKind::UnsupportedLattice);
  EXPECT_NO_THROW(assemble({1.0, 1.0}, HamiltonianLayout::disjoint(1), LatticeSpec(8)));
  EXPECT_THROW(HamiltonianLayout::disjoint(4), Error);
}

TEST(ToMatrix, SingleZ) {
  const PauliHamiltonian h(1, {{1.0, PauliString("Z")}});
  EXPECT_EQ(to_matrix(h), single_qubit_pauli('Z'));
}

TEST(ToMatrix, ChainIsRealSymmetric) {
  const ComplexMatrix m = to_matrix(chain_bracket());
  ASSERT_EQ(m.dim(), 16u);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) {
      EXPECT_EQ(m(i, j).imag(), 0.0);
      EXPECT_EQ(m(i, j), m(j, i));
    }
}

TEST(PauliDecompose, Examples) {
  const PauliHamiltonian x = pauli_decompose(single_qubit_pauli('X'));
  ASSERT_EQ(x.terms().size(), 1u);
  EXPECT_EQ(x.terms()[0].string.str(), "X");
  EXPECT_NEAR(x.terms()[0].coefficient, 1.0, 1e-15);

  const PauliHamiltonian p2 = pauli_decompose(momentum_squared(LatticeSpec(4)));
  ASSERT_EQ(p2.terms().size(), 4u);
  EXPECT_NEAR(p2.coefficient("II"), 3 * pi / 16, 1e-12);
  EXPECT_NEAR(p2.coefficient("IX"), pi / 8, 1e-12);
  EXPECT_NEAR(p2.coefficient("XI"), pi / 16, 1e-12);
  EXPECT_NEAR(p2.coefficient("XX"), pi / 8, 1e-12);

  EXPECT_TRUE(pauli_decompose(ComplexMatrix(4)).terms().empty());
}

TEST(PauliDecompose, Errors) {
  EXPECT_EQ(kind_of([] { pauli_decompose(ComplexMatrix::identity(3)); }),
            ErrorKind::NotPowerOfTwo);
  EXPECT_EQ(kind_of([] { pauli_decompose(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}); }),
            ErrorKind::NotHermitian);
}

TEST(PauliDecompose, RoundTripRandomHermitian) {
  std::mt19937_64 rng(99);
  for (std::size_t dim : {4u, 16u})
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix m = oracle::random_hermitian(dim, rng);
      const PauliHamiltonian h = pauli_decompose(m);
      for (const auto &t : h.terms())
        EXPECT_GE(std::abs(t.coefficient), kCoefficientCutoff);
      EXPECT_LT(max_abs_diff(to_matrix(h), m), 1e-12);
    }
}

TEST(ExactGround, ChainAgreesWithEnumeration) {
  const auto brute = oracle::chain_ground_by_enumeration();
  EXPECT_NEAR(brute.energy, pi / 8, 1e-15);
  EXPECT_EQ(brute.signs[0], 1);
  EXPECT_EQ(brute.signs[1], -1);
  EXPECT_EQ(brute.signs[2], 1);
  EXPECT_EQ(brute.signs[3], -1);
  EXPECT_NEAR(exact_ground_energy(chain_bracket()), brute.energy, 1e-10);
}

TEST(ExactGround, ChainGroundStateIsPlusMinusPlusMinus) {
  const auto es = exact_eigensystem(chain_bracket());
  const auto psi = oracle::product_state({oracle::plus_state(), oracle::minus_state(),
                                          oracle::plus_state(), oracle::minus_state()});
  cplx overlap = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    overlap += std::conj(es.vectors[0][i]) * psi[i];
  EXPECT_GT(std::abs(overlap), 1.0 - 1e-9);
}

TEST(ExactGround, DisjointIsZero) {
  const PauliHamiltonian h = assemble_normalized(HamiltonianLayout::disjoint(2), LatticeSpec(4));
  EXPECT_NEAR(exact_ground_energy(h), 0.0, 1e-12);
}

TEST(ExactGround, ClosedFormAtRandomPoints) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, 20.0);
  for (int i = 0; i < 3; ++i) {
    const BlackHoleParams p{u(rng), u(rng)};
    EXPECT_NEAR(exact_ground_energy(chain(p.mass, p.radius)),
                pi / 16 * std::pow(1.0 + p.mass / (2 * p.radius), 0.25), 1e-10);
  }
}

TEST(ExactGround, LinearInPrefactorAndScale) {
  const double bare = exact_ground_energy(chain_bracket());
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.01, 50.0);
  for (int i = 0; i < 10; ++i) {
    const BlackHoleParams p{u(rng), u(rng)};
    EXPECT_NEAR(exact_ground_energy(chain(p.mass, p.radius)), metric_prefactor(p) * bare, 1e-10);
    const double lambda = u(rng);
    EXPECT_NEAR(exact_ground_energy(chain_bracket().scaled(lambda)), lambda * bare, 1e-10 * lambda);
  }
}

TEST(ExactGround, RefusesLargeRegisters) {
  const PauliHamiltonian h(7, {{1.0, PauliString("ZIIIIII")}});
  EXPECT_THROW(exact_ground_energy(h), Error);
}

TEST(PauliText, RoundTripAndFormat) {
  const PauliHamiltonian h = chain(1.0, 2.0);
  std::stringstream ss;
  write_pauli_text(ss, h);
  const PauliHamiltonian back = read_pauli_text(ss);
  ASSERT_EQ(back.terms().size(), h.terms().size());
  for (std::size_t i = 0; i < h.terms().size(); ++i) {
    EXPECT_EQ(back.terms()[i].string, h.terms()[i].string);
    EXPECT_NEAR(back.terms()[i].coefficient, h.terms()[i].coefficient, 1e-11);
  }
  EXPECT_EQ(format_coefficient(pi / 8), "0.392699081699");
}

TEST(PauliText, RejectsMalformed) {
  std::istringstream bad("0.5 XI\n0.25 X\n");
  EXPECT_EQ(kind_of([&] { read_pauli_text(bad); }), ErrorKind::QubitMismatch);
  std::istringstream junk("abc XI\n");
  EXPECT_THROW(read_pauli_text(junk), Error);
}

TEST(PauliHamiltonian, MergesDuplicates) {
  const PauliHamiltonian h(2, {{1.0, PauliString("XI")}, {0.5, PauliString("XI")},
                               {2.0, PauliString("II")}});
  ASSERT_EQ(h.terms().size(), 2u);
  EXPECT_EQ(h.terms()[0].string.str(), "II");
  EXPECT_EQ(h.coefficient("XI"), 1.5);
  EXPECT_THROW(PauliHamiltonian(2, {{1.0, PauliString("X")}}), Error);
}
