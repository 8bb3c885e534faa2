#include "bhvqe/ansatz.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <set>

using namespace bhvqe;

namespace {
constexpr double pi = std::numbers::pi;

std::size_t count(const Circuit &c, GateKind kind) {
  std::size_t n = 0;
  for (const auto &g : c.gates())
    n += g.kind == kind;
  return n;
}
} // namespace

TEST(Ansatz, Names) {
  EXPECT_EQ(parse_ansatz("ansatz1"), AnsatzFamily::U3Cnot);
  EXPECT_EQ(parse_ansatz("ansatz2"), AnsatzFamily::U3Cu3);
  EXPECT_EQ(parse_ansatz("ansatz3"), AnsatzFamily::U3Ry);
  EXPECT_FALSE(parse_ansatz("ansatz4"));
  EXPECT_EQ(ansatz_name(AnsatzFamily::U3Ry), "ansatz3");
  EXPECT_EQ(AnsatzKind::of(AnsatzFamily::U3Cnot).reps, 1);
  EXPECT_EQ(AnsatzKind::of(AnsatzFamily::U3Cu3).reps, 1);
  EXPECT_EQ(AnsatzKind::of(AnsatzFamily::U3Ry).reps, 2);
}

TEST(Ansatz, ThreeOnFourQubitsTwoReps) {
  const Circuit c = build_ansatz({AnsatzFamily::U3Ry, 2}, 4);
  EXPECT_EQ(c.gates().size(), 16u);
  EXPECT_EQ(c.n_params(), 32u);
  EXPECT_EQ(count(c, GateKind::U3), 8u);
  EXPECT_EQ(count(c, GateKind::RY), 8u);
}

TEST(Ansatz, OneOnFourQubits) {
  const Circuit c = build_ansatz({AnsatzFamily::U3Cnot, 1}, 4);
  EXPECT_EQ(count(c, GateKind::U3), 12u);
  EXPECT_EQ(count(c, GateKind::CNOT), 6u);
  EXPECT_EQ(c.n_params(), 36u);
}

TEST(Ansatz, OneOnTwoQubitsLayout) {
  const Circuit c = build_ansatz({AnsatzFamily::U3Cnot, 1}, 2);
  ASSERT_EQ(c.gates().size(), 3u);
  EXPECT_EQ(c.gates()[0].kind, GateKind::U3);
  EXPECT_EQ(c.gates()[0].qubits[0], 0u);
  EXPECT_EQ(c.gates()[1].kind, GateKind::U3);
  EXPECT_EQ(c.gates()[1].qubits[0], 1u);
  EXPECT_EQ(c.gates()[2].kind, GateKind::CNOT);
  EXPECT_EQ(c.gates()[2].qubits[0], 0u);
  EXPECT_EQ(c.gates()[2].qubits[1], 1u);
  EXPECT_EQ(parameter_count({AnsatzFamily::U3Cnot, 1}, 2), 6u);
}

TEST(Ansatz, ParameterCounts) {
  EXPECT_EQ(parameter_count({AnsatzFamily::U3Cu3, 1}, 4), 36u);
  EXPECT_EQ(parameter_count({AnsatzFamily::U3Ry, 1}, 1), 4u);
  for (int f = 0; f < 3; ++f)
    for (std::size_t n : {2u, 3u, 4u})
      for (int reps : {1, 2}) {
        const AnsatzKind k{static_cast<AnsatzFamily>(f), reps};
        EXPECT_EQ(parameter_count(k, n), build_ansatz(k, n).n_params());
      }
}

TEST(Ansatz, Errors) {
  for (auto f : {AnsatzFamily::U3Cnot, AnsatzFamily::U3Cu3}) {
    try {
      build_ansatz({f, 1}, 1);
      FAIL();
    } catch (const Error &e) {
      EXPECT_EQ(e.kind(), ErrorKind::TooFewQubits);
    }
  }
  EXPECT_NO_THROW(build_ansatz({AnsatzFamily::U3Ry, 1}, 1));
  EXPECT_THROW(build_ansatz({AnsatzFamily::U3Ry, 0}, 2), Error);
}

TEST(Ansatz, EverySlotUsedExactlyOnce) {
  for (int f = 0; f < 3; ++f)
    for (std::size_t n : {2u, 3u, 4u})
      for (int reps : {1, 2}) {
        const Circuit c = build_ansatz({static_cast<AnsatzFamily>(f), reps}, n);
        std::multiset<std::size_t> used;
        for (const auto &g : c.gates())
          for (std::size_t k = 0; k < g.n_slots(); ++k)
            used.insert(g.slots[k]);
        ASSERT_EQ(used.size(), c.n_params());
        for (std::size_t s = 0; s < c.n_params(); ++s)
          EXPECT_EQ(used.count(s), 1u);
      }
}

TEST(Ansatz, ThreeProducesProductStates) {
  std::mt19937_64 rng(13);
  const Circuit c = build_ansatz({AnsatzFamily::U3Ry, 2}, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector s = run(c, random_parameters(c.n_params(), rng()));
    for (std::size_t cut = 1; cut < 4; ++cut)
      EXPECT_EQ(oracle::schmidt_rank(s.amplitudes(), 4, cut), 1);
  }
}

TEST(Ansatz, OneEntangles) {
  // Sanity check that the pair-based families are not product-only.
  const Circuit c = build_ansatz({AnsatzFamily::U3Cnot, 1}, 2);
  const StateVector s = run(c, std::vector<double>{pi / 2, 0, pi, 0, 0, 0});
  EXPECT_EQ(oracle::schmidt_rank(s.amplitudes(), 2, 1), 2);
}

TEST(Ansatz, ThreeReachesChainGroundState) {
  const Circuit c = build_ansatz({AnsatzFamily::U3Ry, 2}, 4);
  std::vector<double> theta(c.n_params(), 0.0);
  // First repetition: U3(π/2, φ, 0) maps |0⟩ to |+⟩ (φ = 0) or |−⟩ (φ = π).
  for (std::size_t q = 0; q < 4; ++q) {
    theta[4 * q + 0] = pi / 2;
    theta[4 * q + 1] = q % 2 == 0 ? 0.0 : pi;
  }
  const PauliHamiltonian h = assemble_normalized(HamiltonianLayout::paper_chain(), LatticeSpec(4));
  EXPECT_NEAR(expectation(run(c, theta), h), pi / 8, 1e-9);
}

TEST(Ansatz, RandomParametersInRange) {
  const auto p = random_parameters(1000, 4);
  for (double v : p) {
    EXPECT_GE(v, -pi);
    EXPECT_LT(v, pi);
  }
  EXPECT_EQ(p, random_parameters(1000, 4));
}
