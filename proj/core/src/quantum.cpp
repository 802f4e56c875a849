#include "uvt/quantum.hpp"

#include "uvt/error.hpp"

namespace uvt {

Scalar quantum_integer(int n, int d, bool with_t) {
  if (n < 0) throw ConstraintError("quantum integer needs n >= 0");
  if (n == 0) return Scalar(0);
  const int te = with_t ? d : 0;
  // x = v_i t_i, y = (v_i t_i^{-1})^{-1}
  const Scalar x = Scalar::monomial(d, te);
  const Scalar y = Scalar::monomial(-d, te);
  return (x.pow(n) - y.pow(n)) / (x - y);
}

Scalar quantum_factorial(int n, int d, bool with_t) {
  if (n < 0) throw ConstraintError("quantum factorial needs n >= 0");
  Scalar r(1);
  for (int k = 1; k <= n; ++k) r *= quantum_integer(k, d, with_t);
  return r;
}

}  // namespace uvt
