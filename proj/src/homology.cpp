#include "deform/homology.hpp"

#include <sstream>

namespace deform {

CochainComplex::Ptr CochainComplex::make(std::map<int, std::vector<std::string>> basis_names,
                                         std::map<int, QMatrix> differentials)
{
    auto c = std::shared_ptr<CochainComplex>(new CochainComplex());
    c->basis_names_ = std::move(basis_names);
    for (auto& [deg, m] : differentials) {
        int rows = c->dim(deg + 1), cols = c->dim(deg);
        if (m.rows() != rows || m.cols() != cols)
            throw InputError("differential in degree " + std::to_string(deg) + " has wrong shape");
        if (!m.is_zero())
            c->differentials_[deg] = std::move(m);
    }
    for (const auto& [deg, m] : c->differentials_) {
        auto next = c->differentials_.find(deg + 1);
        if (next != c->differentials_.end() && !(next->second * m).is_zero())
            throw InputError("differentials do not square to zero at degree " + std::to_string(deg));
    }
    return c;
}

std::vector<int> CochainComplex::degrees() const
{
    std::vector<int> out;
    for (const auto& [deg, names] : basis_names_)
        if (!names.empty())
            out.push_back(deg);
    return out;
}

int CochainComplex::dim(int degree) const
{
    auto it = basis_names_.find(degree);
    return it == basis_names_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<std::string>& CochainComplex::names(int degree) const
{
    static const std::vector<std::string> empty;
    auto it = basis_names_.find(degree);
    return it == basis_names_.end() ? empty : it->second;
}

QMatrix CochainComplex::differential(int degree) const
{
    auto it = differentials_.find(degree);
    if (it != differentials_.end())
        return it->second;
    return QMatrix::zero(dim(degree + 1), dim(degree));
}

CochainComplex::Ptr complex_of(const Dgla::Ptr& dgla)
{
    std::map<int, std::vector<std::string>> names;
    for (int d : dgla->degrees())
        names[d] = dgla->space.basis_names.at(d);
    std::map<int, QMatrix> diffs;
    for (const auto& [deg, m] : dgla->differential)
        diffs[deg] = m;
    return CochainComplex::make(std::move(names), std::move(diffs));
}

bool CohomologyBasis::is_cocycle(const QVector& v) const
{
    return deform::is_zero(complex_->differential(degree_).apply(v));
}

CohomologyBasis cohomology(const CochainComplex::Ptr& complex, int degree)
{
    CohomologyBasis out;
    out.complex_ = complex;
    out.degree_ = degree;
    const int n = complex->dim(degree);
    if (n == 0) {
        out.projection_ = QMatrix::zero(0, 0);
        return out;
    }

    QMatrix d_out(complex->differential(degree));
    QMatrix d_in(complex->differential(degree - 1));

    // Cocycles and coboundaries, both with canonical RREF bases.
    std::vector<QVector> cocycles = d_out.cols() == 0
                                        ? std::vector<QVector>{}
                                        : d_out.kernel_basis();
    std::vector<QVector> boundary_rows;
    if (d_in.cols() > 0)
        boundary_rows = d_in.transpose().row_space_basis();

    // Representatives: kernel vectors contributing new directions beyond the
    // coboundaries, reduced against what is already there.
    QMatrix reducer(0, n);
    for (const auto& b : boundary_rows)
        reducer = reducer.vstack(QMatrix({b}));
    reducer = span_of_rows(reducer).basis_rows;
    for (const auto& z : cocycles) {
        Subspace have = span_of_rows(reducer);
        if (have.contains(z))
            continue;
        out.representatives_.push_back(z);
        reducer = span_of_rows(reducer.vstack(QMatrix({z}))).basis_rows;
    }
    const int h = static_cast<int>(out.representatives_.size());

    // Projection: express a cocycle as boundary + representative combination
    // and read off the representative coefficients. Solved once by extending
    // [boundaries | representatives] to a basis of the ambient space and
    // sending the completion to zero.
    const int r = static_cast<int>(boundary_rows.size());
    QMatrix basis_cols(n, 0);
    for (const auto& b : boundary_rows)
        basis_cols = basis_cols.hstack(QMatrix::column(b));
    for (const auto& rep : out.representatives_)
        basis_cols = basis_cols.hstack(QMatrix::column(rep));
    Subspace have = span_of_rows(basis_cols.transpose());
    for (int i = 0; i < n && basis_cols.cols() < n; ++i) {
        QVector e(n, Rational(0));
        e[i] = 1;
        if (have.contains(e))
            continue;
        basis_cols = basis_cols.hstack(QMatrix::column(e));
        have = span_of_rows(basis_cols.transpose());
    }
    auto inv = basis_cols.inverse();
    if (!inv)
        throw std::logic_error("cohomology basis completion failed");
    out.projection_ = QMatrix(h, n);
    for (int i = 0; i < h; ++i)
        out.projection_.set_row(i, inv->row(r + i));
    return out;
}

bool CohomologyClass::is_zero() const
{
    for (const auto& v : coordinates)
        if (!deform::is_zero(v))
            return false;
    return true;
}

std::string CohomologyClass::to_string() const
{
    std::ostringstream os;
    if (ideal_labels.empty()) {
        os << "(";
        for (size_t i = 0; i < coordinates[0].size(); ++i)
            os << (i ? ", " : "") << deform::to_string(coordinates[0][i]);
        os << ")";
        return os.str();
    }
    for (size_t l = 0; l < ideal_labels.size(); ++l) {
        if (l)
            os << "; ";
        os << ideal_labels[l] << ": (";
        for (size_t i = 0; i < coordinates[l].size(); ++i)
            os << (i ? ", " : "") << deform::to_string(coordinates[l][i]);
        os << ")";
    }
    return os.str();
}

CohomologyClass class_of(const CohomologyBasis& basis, const QVector& cocycle)
{
    if (!basis.is_cocycle(cocycle))
        throw InputError("class_of requires a cocycle");
    CohomologyClass c;
    c.degree = basis.degree();
    c.coordinates.push_back(basis.projection().apply(cocycle));
    return c;
}

CohomologyClass class_of(const CohomologyBasis& basis, const std::vector<QVector>& cocycles,
                         const std::vector<std::string>& ideal_labels)
{
    if (cocycles.size() != ideal_labels.size())
        throw InputError("one cocycle per ideal basis element expected");
    CohomologyClass c;
    c.degree = basis.degree();
    c.ideal_labels = ideal_labels;
    for (const auto& z : cocycles) {
        if (!basis.is_cocycle(z))
            throw InputError("class_of requires cocycles");
        c.coordinates.push_back(basis.projection().apply(z));
    }
    return c;
}

PreimageResult preimage_d(const CochainComplex::Ptr& complex, int degree, const QVector& target,
                          const std::function<Rational()>* randomize)
{
    QMatrix d = complex->differential(degree);
    if (static_cast<int>(target.size()) != complex->dim(degree + 1))
        throw InputError("preimage target has wrong dimension");
    auto sol = d.solve(target);
    if (sol) {
        QVector z = *sol;
        if (randomize) {
            for (const auto& k : d.kernel_basis()) {
                Rational c = (*randomize)();
                if (c != 0)
                    z = z + c * k;
            }
        }
        return z;
    }
    if (!deform::is_zero(complex->differential(degree + 1).apply(target)))
        throw InputError("preimage target is neither solvable nor a cocycle");
    return NoSolution{class_of(cohomology(complex, degree + 1), target)};
}

}  // namespace deform
