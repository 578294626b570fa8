#pragma once

#include "deform/rational.hpp"

#include <optional>
#include <vector>

namespace deform {

using QVector = std::vector<Rational>;

QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator*(const Rational& c, const QVector& v);
bool is_zero(const QVector& v);

struct RrefResult;

// Dense matrix over Q with exact Gaussian elimination. Row-major storage.
// All factorizations are pivot-deterministic: identical input gives
// identical reduced forms, kernels, and particular solutions.
class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    explicit QMatrix(const std::vector<QVector>& rows_data);

    static QMatrix identity(int n);
    static QMatrix zero(int rows, int cols) { return QMatrix(rows, cols); }
    // Column vector as an n x 1 matrix.
    static QMatrix column(const QVector& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    QMatrix operator*(const QMatrix& other) const;
    QMatrix operator+(const QMatrix& other) const;
    QMatrix operator-(const QMatrix& other) const;
    QMatrix scaled(const Rational& c) const;
    QMatrix transpose() const;
    bool operator==(const QMatrix& other) const = default;

    QVector apply(const QVector& v) const;
    bool is_zero() const;

    QVector row(int i) const;
    QVector col(int j) const;
    void set_row(int i, const QVector& v);
    void set_col(int j, const QVector& v);

    // [this | other] side by side; requires equal row counts.
    QMatrix hstack(const QMatrix& other) const;
    // this on top of other; requires equal column counts.
    QMatrix vstack(const QMatrix& other) const;

    RrefResult rref() const;

    int rank() const;

    // RREF-canonical kernel basis: one vector per free column, unit entry at
    // the free column, pivot entries back-substituted.
    std::vector<QVector> kernel_basis() const;

    // Nonzero rows of the RREF: canonical basis of the row space.
    std::vector<QVector> row_space_basis() const;

    // Canonical basis of the column space (row space of the transpose).
    std::vector<QVector> column_space_basis() const;

    // One solution of this * x = b with free variables set to zero, or
    // nullopt when inconsistent.
    std::optional<QVector> solve(const QVector& b) const;

    // Columnwise solve: X with this * X = B.
    std::optional<QMatrix> solve_matrix(const QMatrix& B) const;

    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }
    std::optional<QMatrix> inverse() const;

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

struct RrefResult {
    QMatrix reduced;
    std::vector<int> pivot_cols;
    int rank = 0;
};

// Rows spanning `space` reduced to RREF; `contains` tests membership of a
// vector in the span.
struct Subspace {
    QMatrix basis_rows;  // RREF rows, possibly 0 x n
    int dim() const { return basis_rows.rows(); }
    int ambient() const { return basis_rows.cols(); }
    bool contains(const QVector& v) const;
    // Coordinates of v in the basis rows, if v lies in the span.
    std::optional<QVector> coordinates(const QVector& v) const;
};

Subspace span_of_rows(const QMatrix& rows);
Subspace span_of_vectors(const std::vector<QVector>& vectors, int ambient);
Subspace intersect(const Subspace& a, const Subspace& b);

}  // namespace deform
