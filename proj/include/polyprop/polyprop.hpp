#pragma once

#include "polyprop/core/contract.hpp"
#include "polyprop/core/hermitian_operator.hpp"
#include "polyprop/core/jacobi.hpp"
#include "polyprop/core/state_vector.hpp"
#include "polyprop/double_well/double_well.hpp"
#include "polyprop/double_well/exact_diag.hpp"
#include "polyprop/double_well/period.hpp"
#include "polyprop/harness/benchmark.hpp"
#include "polyprop/harness/config.hpp"
#include "polyprop/harness/run.hpp"
#include "polyprop/propagators/bessel.hpp"
#include "polyprop/propagators/evolve.hpp"
#include "polyprop/propagators/polynomials.hpp"
#include "polyprop/propagators/step_advisor.hpp"
#include "polyprop/spin_bath/spin_bath.hpp"
