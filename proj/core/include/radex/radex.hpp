#pragma once

#include "radex/bvp.hpp"
#include "radex/closed_form.hpp"
#include "radex/discrete_oracle.hpp"
#include "radex/errors.hpp"
#include "radex/expression.hpp"
#include "radex/extremal_core.hpp"
#include "radex/finite_difference.hpp"
#include "radex/quadrature.hpp"
#include "radex/rational.hpp"
#include "radex/reduced_ode.hpp"
#include "radex/weights.hpp"
