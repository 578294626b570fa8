#include "deform/matrix.hpp"

#include <stdexcept>

namespace deform {

QVector operator+(const QVector& a, const QVector& b)
{
    if (a.size() != b.size())
        throw std::logic_error("vector size mismatch");
    QVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

QVector operator-(const QVector& a, const QVector& b)
{
    if (a.size() != b.size())
        throw std::logic_error("vector size mismatch");
    QVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

QVector operator*(const Rational& c, const QVector& v)
{
    QVector r(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        r[i] = c * v[i];
    return r;
}

bool is_zero(const QVector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

QMatrix::QMatrix(const std::vector<QVector>& rows_data)
{
    rows_ = static_cast<int>(rows_data.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows_data[0].size());
    a_.resize(static_cast<size_t>(rows_) * cols_);
    for (int i = 0; i < rows_; ++i) {
        if (static_cast<int>(rows_data[i].size()) != cols_)
            throw std::logic_error("ragged matrix rows");
        for (int j = 0; j < cols_; ++j)
            at(i, j) = rows_data[i][j];
    }
}

QMatrix QMatrix::identity(int n)
{
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::column(const QVector& v)
{
    QMatrix m(static_cast<int>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i)
        m.at(static_cast<int>(i), 0) = v[i];
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& other) const
{
    if (cols_ != other.rows_)
        throw std::logic_error("matrix product shape mismatch");
    QMatrix r(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& x = at(i, k);
            if (x == 0)
                continue;
            for (int j = 0; j < other.cols_; ++j) {
                const Rational& y = other.at(k, j);
                if (y != 0)
                    r.at(i, j) += x * y;
            }
        }
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& other) const
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::logic_error("matrix sum shape mismatch");
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = a_[i] + other.a_[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& other) const
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::logic_error("matrix difference shape mismatch");
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = a_[i] - other.a_[i];
    return r;
}

QMatrix QMatrix::scaled(const Rational& c) const
{
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = c * a_[i];
    return r;
}

QMatrix QMatrix::transpose() const
{
    QMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j);
    return r;
}

QVector QMatrix::apply(const QVector& v) const
{
    if (static_cast<int>(v.size()) != cols_)
        throw std::logic_error("matrix apply shape mismatch");
    QVector r(rows_);
    for (int i = 0; i < rows_; ++i) {
        Rational acc = 0;
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && v[j] != 0)
                acc += at(i, j) * v[j];
        r[i] = acc;
    }
    return r;
}

bool QMatrix::is_zero() const
{
    for (const auto& x : a_)
        if (x != 0)
            return false;
    return true;
}

QVector QMatrix::row(int i) const
{
    QVector r(cols_);
    for (int j = 0; j < cols_; ++j)
        r[j] = at(i, j);
    return r;
}

QVector QMatrix::col(int j) const
{
    QVector r(rows_);
    for (int i = 0; i < rows_; ++i)
        r[i] = at(i, j);
    return r;
}

void QMatrix::set_row(int i, const QVector& v)
{
    for (int j = 0; j < cols_; ++j)
        at(i, j) = v[j];
}

void QMatrix::set_col(int j, const QVector& v)
{
    for (int i = 0; i < rows_; ++i)
        at(i, j) = v[i];
}

QMatrix QMatrix::hstack(const QMatrix& other) const
{
    if (rows_ != other.rows_)
        throw std::logic_error("hstack row mismatch");
    QMatrix r(rows_, cols_ + other.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j)
            r.at(i, j) = at(i, j);
        for (int j = 0; j < other.cols_; ++j)
            r.at(i, cols_ + j) = other.at(i, j);
    }
    return r;
}

QMatrix QMatrix::vstack(const QMatrix& other) const
{
    if (cols_ != other.cols_)
        throw std::logic_error("vstack column mismatch");
    QMatrix r(rows_ + other.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.at(i, j) = at(i, j);
    for (int i = 0; i < other.rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.at(rows_ + i, j) = other.at(i, j);
    return r;
}

RrefResult QMatrix::rref() const
{
    RrefResult out;
    out.reduced = *this;
    QMatrix& m = out.reduced;
    int lead = 0;
    for (int col = 0; col < cols_ && lead < rows_; ++col) {
        int pivot = -1;
        for (int i = lead; i < rows_; ++i)
            if (m.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        if (pivot != lead)
            for (int j = 0; j < cols_; ++j)
                std::swap(m.at(pivot, j), m.at(lead, j));
        Rational inv = Rational(1) / m.at(lead, col);
        for (int j = 0; j < cols_; ++j)
            m.at(lead, j) *= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == lead)
                continue;
            Rational f = m.at(i, col);
            if (f == 0)
                continue;
            for (int j = 0; j < cols_; ++j)
                m.at(i, j) -= f * m.at(lead, j);
        }
        out.pivot_cols.push_back(col);
        ++lead;
    }
    out.rank = static_cast<int>(out.pivot_cols.size());
    return out;
}

int QMatrix::rank() const
{
    return rref().rank;
}

std::vector<QVector> QMatrix::kernel_basis() const
{
    RrefResult r = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : r.pivot_cols)
        is_pivot[c] = true;
    std::vector<QVector> basis;
    for (int f = 0; f < cols_; ++f) {
        if (is_pivot[f])
            continue;
        QVector v(cols_, Rational(0));
        v[f] = 1;
        for (int row = 0; row < r.rank; ++row)
            v[r.pivot_cols[row]] = -r.reduced.at(row, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<QVector> QMatrix::row_space_basis() const
{
    RrefResult r = rref();
    std::vector<QVector> basis;
    for (int i = 0; i < r.rank; ++i)
        basis.push_back(r.reduced.row(i));
    return basis;
}

std::vector<QVector> QMatrix::column_space_basis() const
{
    return transpose().row_space_basis();
}

std::optional<QVector> QMatrix::solve(const QVector& b) const
{
    auto X = solve_matrix(QMatrix::column(b));
    if (!X)
        return std::nullopt;
    return X->col(0);
}

std::optional<QMatrix> QMatrix::solve_matrix(const QMatrix& B) const
{
    if (B.rows() != rows_)
        throw std::logic_error("solve shape mismatch");
    RrefResult r = hstack(B).rref();
    // Inconsistent iff some pivot falls in the augmented block.
    for (int c : r.pivot_cols)
        if (c >= cols_)
            return std::nullopt;
    QMatrix X(cols_, B.cols());
    for (int row = 0; row < r.rank; ++row) {
        int pc = r.pivot_cols[row];
        for (int j = 0; j < B.cols(); ++j)
            X.at(pc, j) = r.reduced.at(row, cols_ + j);
    }
    return X;
}

std::optional<QMatrix> QMatrix::inverse() const
{
    if (rows_ != cols_)
        return std::nullopt;
    auto X = solve_matrix(identity(rows_));
    if (!X)
        return std::nullopt;
    if (!((*this * *X) == identity(rows_)))
        return std::nullopt;
    return X;
}

bool Subspace::contains(const QVector& v) const
{
    return coordinates(v).has_value();
}

std::optional<QVector> Subspace::coordinates(const QVector& v) const
{
    if (static_cast<int>(v.size()) != ambient())
        throw std::logic_error("subspace ambient mismatch");
    return basis_rows.transpose().solve(v);
}

Subspace span_of_rows(const QMatrix& rows)
{
    Subspace s;
    auto basis = rows.row_space_basis();
    s.basis_rows = QMatrix(static_cast<int>(basis.size()), rows.cols());
    for (size_t i = 0; i < basis.size(); ++i)
        s.basis_rows.set_row(static_cast<int>(i), basis[i]);
    return s;
}

Subspace span_of_vectors(const std::vector<QVector>& vectors, int ambient)
{
    QMatrix rows(static_cast<int>(vectors.size()), ambient);
    for (size_t i = 0; i < vectors.size(); ++i)
        rows.set_row(static_cast<int>(i), vectors[i]);
    return span_of_rows(rows);
}

Subspace intersect(const Subspace& a, const Subspace& b)
{
    if (a.ambient() != b.ambient())
        throw std::logic_error("subspace ambient mismatch");
    // Zassenhaus-free approach: x in a and in b iff x = u^T A = v^T B; solve
    // the combined kernel of [A^T | -B^T].
    QMatrix At = a.basis_rows.transpose();
    QMatrix Bt = b.basis_rows.transpose();
    QMatrix stacked = At.hstack(Bt.scaled(Rational(-1)));
    auto ker = stacked.kernel_basis();
    std::vector<QVector> vecs;
    for (const auto& k : ker) {
        QVector coeff(k.begin(), k.begin() + a.dim());
        QVector x(a.ambient(), Rational(0));
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.ambient(); ++j)
                x[j] += coeff[i] * a.basis_rows.at(i, j);
        vecs.push_back(std::move(x));
    }
    return span_of_vectors(vecs, a.ambient());
}

}  // namespace deform
