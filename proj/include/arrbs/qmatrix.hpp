#ifndef ARRBS_QMATRIX_HPP
#define ARRBS_QMATRIX_HPP

#include <Eigen/Core>
#include <vector>

#include "arrbs/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<arrbs::Rational> {
    using Real = arrbs::Rational;
    using NonInteger = arrbs::Rational;
    using Nested = arrbs::Rational;
    using Literal = arrbs::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 32,
        MulCost = 32
    };
    static inline Real epsilon() { return arrbs::Rational(0); }
    static inline Real dummy_precision() { return arrbs::Rational(0); }
    static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace arrbs {

using QMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using QVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

struct RrefResult {
    QMatrix rref;
    std::vector<Eigen::Index> pivots; // pivot column per nonzero row
    Eigen::Index rank = 0;
};

// Unique reduced row-echelon form via exact Gauss-Jordan elimination.
template <typename Derived>
RrefResult rref(const Eigen::MatrixBase<Derived>& m) {
    RrefResult out;
    QMatrix a = m;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = row; i < rows; ++i)
            if (!a(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row) a.row(piv).swap(a.row(row));
        Rational inv = a(row, col).inverse();
        for (Eigen::Index j = col; j < cols; ++j) a(row, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == row || a(i, col).is_zero()) continue;
            Rational factor = a(i, col);
            for (Eigen::Index j = col; j < cols; ++j) a(i, j) -= factor * a(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.rank = row;
    out.rref = std::move(a);
    return out;
}

template <typename Derived>
Eigen::Index rank_of(const Eigen::MatrixBase<Derived>& m) {
    return rref(m).rank;
}

// Canonical kernel basis from the pivot-complement construction: one vector
// per free column, with entry 1 in that column and -rref entries in the
// pivot slots.
template <typename Derived>
std::vector<QVector> nullspace(const Eigen::MatrixBase<Derived>& m) {
    RrefResult r = rref(m);
    const Eigen::Index cols = m.cols();
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (Eigen::Index p : r.pivots) is_pivot[static_cast<size_t>(p)] = true;
    std::vector<QVector> basis;
    for (Eigen::Index j = 0; j < cols; ++j) {
        if (is_pivot[static_cast<size_t>(j)]) continue;
        QVector v = QVector::Constant(cols, Rational(0));
        v(j) = Rational(1);
        for (Eigen::Index i = 0; i < r.rank; ++i) v(r.pivots[static_cast<size_t>(i)]) = -r.rref(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves a*x = b exactly; returns false if inconsistent. When the system is
// underdetermined the free variables are set to zero.
bool solve_exact(const QMatrix& a, const QVector& b, QVector& x);

} // namespace arrbs

#endif
