#pragma once

#include "uvt/rational.hpp"

namespace uvt {

// [n]_{v_i,t_i} with v_i = v^d, t_i = t^d (d = i.i/2). With `with_t` false
// the one-parameter value [n]_{v_i} is returned.
Scalar quantum_integer(int n, int d = 1, bool with_t = true);

// [n]^!_{v_i,t_i}.
Scalar quantum_factorial(int n, int d = 1, bool with_t = true);

}  // namespace uvt
