#include "arrbs/qmatrix.hpp"

namespace arrbs {

bool solve_exact(const QMatrix& a, const QVector& b, QVector& x) {
    QMatrix aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    RrefResult r = rref(aug);
    for (Eigen::Index p : r.pivots)
        if (p == a.cols()) return false; // pivot in the rhs column: inconsistent
    x = QVector::Constant(a.cols(), Rational(0));
    for (Eigen::Index i = 0; i < r.rank; ++i) x(r.pivots[static_cast<size_t>(i)]) = r.rref(i, a.cols());
    return true;
}

} // namespace arrbs
