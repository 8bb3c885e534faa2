#pragma once

#include "bhvqe/ansatz.hpp"
#include "bhvqe/circuit.hpp"
#include "bhvqe/discrete_space.hpp"
#include "bhvqe/errors.hpp"
#include "bhvqe/hamiltonian.hpp"
#include "bhvqe/observables.hpp"
#include "bhvqe/tensor.hpp"
#include "bhvqe/vqe.hpp"

namespace bhvqe {
inline constexpr const char *kVersion = "0.1.0";
}
