#include "deform/dgla.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace deform {

namespace {

int sign_pow(int exponent)
{
    return (exponent % 2 == 0) ? 1 : -1;
}

QVector dense_from_sparse(const ArtinAlgebra::SparseVec& s, int dim)
{
    QVector v(dim, Rational(0));
    for (const auto& [i, c] : s)
        v[i] = c;
    return v;
}

ArtinAlgebra::SparseVec sparse_from_dense(const QVector& v)
{
    ArtinAlgebra::SparseVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            s.emplace_back(static_cast<int>(i), v[i]);
    return s;
}

}  // namespace

std::vector<int> GradedVectorSpace::degrees() const
{
    std::vector<int> out;
    for (const auto& [deg, names] : basis_names)
        if (!names.empty())
            out.push_back(deg);
    return out;
}

int GradedVectorSpace::dim(int degree) const
{
    auto it = basis_names.find(degree);
    return it == basis_names.end() ? 0 : static_cast<int>(it->second.size());
}

QMatrix Dgla::differential_matrix(int degree) const
{
    auto it = differential.find(degree);
    if (it != differential.end())
        return it->second;
    return QMatrix::zero(dim(degree + 1), dim(degree));
}

QVector Dgla::bracket_of_basis(int p, int i, int q, int j) const
{
    QVector out(dim(p + q), Rational(0));
    auto block = bracket.find({p, q});
    if (block == bracket.end())
        return out;
    auto entry = block->second.find({i, j});
    if (entry == block->second.end())
        return out;
    return dense_from_sparse(entry->second, dim(p + q));
}

bool Dgla::bracket_is_zero() const
{
    for (const auto& [key, block] : bracket)
        for (const auto& [ij, vec] : block)
            if (!vec.empty())
                return false;
    return true;
}

namespace {

// [u, v] for dense coordinate vectors u in L^p, v in L^q.
QVector bracket_vectors(const Dgla& dgla, int p, const QVector& u, int q, const QVector& v)
{
    QVector out(dgla.dim(p + q), Rational(0));
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0)
            continue;
        for (size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0)
                continue;
            QVector w = dgla.bracket_of_basis(p, static_cast<int>(i), q, static_cast<int>(j));
            for (size_t k = 0; k < out.size(); ++k)
                if (w[k] != 0)
                    out[k] += u[i] * v[j] * w[k];
        }
    }
    return out;
}

QVector basis_vector(int dim, int index)
{
    QVector v(dim, Rational(0));
    v[index] = 1;
    return v;
}

}  // namespace

std::string DglaValidation::summary() const
{
    if (ok())
        return "pass";
    std::ostringstream os;
    os << violations.size() << " axiom violation(s): ";
    for (size_t i = 0; i < violations.size(); ++i)
        os << (i ? "; " : "") << violations[i].description;
    return os.str();
}

DglaValidation validate(const Dgla& dgla)
{
    DglaValidation report;
    const auto degrees = dgla.degrees();

    // d o d = 0.
    for (int p : degrees) {
        if (dgla.dim(p + 1) == 0 || dgla.dim(p + 2) == 0)
            continue;
        QMatrix dd = dgla.differential_matrix(p + 1) * dgla.differential_matrix(p);
        if (dd.is_zero())
            continue;
        for (int i = 0; i < dgla.dim(p); ++i)
            if (!is_zero(dd.col(i))) {
                report.violations.push_back(
                    {AxiomViolation::Axiom::DifferentialSquare,
                     {p},
                     {i},
                     "d(d " + dgla.space.name(p, i) + ") is nonzero"});
            }
    }

    // Graded skew-symmetry on all basis pairs.
    for (int p : degrees)
        for (int q : degrees) {
            if (dgla.dim(p + q) == 0)
                continue;
            for (int i = 0; i < dgla.dim(p); ++i)
                for (int j = 0; j < dgla.dim(q); ++j) {
                    QVector lhs = dgla.bracket_of_basis(p, i, q, j);
                    QVector rhs = dgla.bracket_of_basis(q, j, p, i);
                    Rational s(sign_pow(p * q));
                    bool bad = false;
                    for (size_t k = 0; k < lhs.size(); ++k)
                        if (lhs[k] + s * rhs[k] != 0)
                            bad = true;
                    if (bad)
                        report.violations.push_back(
                            {AxiomViolation::Axiom::SkewSymmetry,
                             {p, q},
                             {i, j},
                             "skew-symmetry fails on (" + dgla.space.name(p, i) + ", " +
                                 dgla.space.name(q, j) + ")"});
                }
        }

    // Graded Jacobi on all basis triples.
    for (int p : degrees)
        for (int q : degrees)
            for (int r : degrees) {
                if (dgla.dim(p + q + r) == 0)
                    continue;
                for (int i = 0; i < dgla.dim(p); ++i)
                    for (int j = 0; j < dgla.dim(q); ++j)
                        for (int k = 0; k < dgla.dim(r); ++k) {
                            QVector bc = dgla.bracket_of_basis(q, j, r, k);
                            QVector lhs = bracket_vectors(dgla, p, basis_vector(dgla.dim(p), i), q + r, bc);
                            QVector ab = dgla.bracket_of_basis(p, i, q, j);
                            QVector t1 = bracket_vectors(dgla, p + q, ab, r, basis_vector(dgla.dim(r), k));
                            QVector ac = dgla.bracket_of_basis(p, i, r, k);
                            QVector t2 = bracket_vectors(dgla, q, basis_vector(dgla.dim(q), j), p + r, ac);
                            Rational s(sign_pow(p * q));
                            bool bad = false;
                            for (size_t m = 0; m < lhs.size(); ++m)
                                if (lhs[m] != t1[m] + s * t2[m])
                                    bad = true;
                            if (bad)
                                report.violations.push_back(
                                    {AxiomViolation::Axiom::Jacobi,
                                     {p, q, r},
                                     {i, j, k},
                                     "Jacobi fails on (" + dgla.space.name(p, i) + ", " +
                                         dgla.space.name(q, j) + ", " + dgla.space.name(r, k) + ")"});
                        }
            }

    // Graded Leibniz on all basis pairs.
    for (int p : degrees)
        for (int q : degrees) {
            if (dgla.dim(p + q + 1) == 0)
                continue;
            QMatrix dp = dgla.differential_matrix(p);
            QMatrix dq = dgla.differential_matrix(q);
            QMatrix dpq = dgla.differential_matrix(p + q);
            for (int i = 0; i < dgla.dim(p); ++i)
                for (int j = 0; j < dgla.dim(q); ++j) {
                    QVector lhs = dpq.apply(dgla.bracket_of_basis(p, i, q, j));
                    QVector da = dp.apply(basis_vector(dgla.dim(p), i));
                    QVector t1 = bracket_vectors(dgla, p + 1, da, q, basis_vector(dgla.dim(q), j));
                    QVector db = dq.apply(basis_vector(dgla.dim(q), j));
                    QVector t2 = bracket_vectors(dgla, p, basis_vector(dgla.dim(p), i), q + 1, db);
                    Rational s(sign_pow(p));
                    bool bad = false;
                    for (size_t m = 0; m < lhs.size(); ++m)
                        if (lhs[m] != t1[m] + s * t2[m])
                            bad = true;
                    if (bad)
                        report.violations.push_back(
                            {AxiomViolation::Axiom::Leibniz,
                             {p, q},
                             {i, j},
                             "Leibniz fails on (" + dgla.space.name(p, i) + ", " +
                                 dgla.space.name(q, j) + ")"});
                }
        }

    return report;
}

Dgla::Ptr make_dgla(GradedVectorSpace space, std::map<int, QMatrix> differential,
                    const std::vector<BracketEntry>& bracket_entries, bool check_axioms)
{
    auto dgla = std::make_shared<Dgla>();
    dgla->space = std::move(space);

    for (auto& [deg, names] : dgla->space.basis_names) {
        std::set<std::string> seen(names.begin(), names.end());
        if (seen.size() != names.size())
            throw InputError("duplicate basis names in degree " + std::to_string(deg));
    }

    for (auto& [p, m] : differential) {
        if (m.rows() != dgla->dim(p + 1) || m.cols() != dgla->dim(p))
            throw InputError("differential in degree " + std::to_string(p) + " has wrong shape");
        if (!m.is_zero())
            dgla->differential[p] = std::move(m);
    }

    // Accumulate given entries, then symmetrize.
    for (const auto& e : bracket_entries) {
        if (e.i < 0 || e.i >= dgla->dim(e.p) || e.j < 0 || e.j >= dgla->dim(e.q) || e.k < 0 ||
            e.k >= dgla->dim(e.p + e.q))
            throw InputError("bracket entry indices out of range");
        auto& vec = dgla->bracket[{e.p, e.q}][{e.i, e.j}];
        QVector dense = dense_from_sparse(vec, dgla->dim(e.p + e.q));
        dense[e.k] += e.c;
        vec = sparse_from_dense(dense);
    }
    auto given = dgla->bracket;
    for (const auto& [key, block] : given)
        for (const auto& [ij, vec] : block) {
            const auto [p, q] = std::pair(key.p, key.q);
            const auto [i, j] = ij;
            Rational s(-sign_pow(p * q));
            QVector mirror = dense_from_sparse(vec, dgla->dim(p + q));
            for (auto& c : mirror)
                c *= s;
            auto& opposite = dgla->bracket[{q, p}];
            auto it = opposite.find({j, i});
            if (p == q && i == j) {
                // The diagonal mirrors onto itself; even-degree diagonal
                // brackets must vanish.
                if (sign_pow(p * p) == 1 && !vec.empty())
                    throw InputError("nonzero bracket [x, x] in even degree " + std::to_string(p));
                continue;
            }
            if (it == opposite.end())
                opposite[{j, i}] = sparse_from_dense(mirror);
            else if (!(dense_from_sparse(it->second, dgla->dim(p + q)) == mirror))
                throw InputError("bracket entries for both orders disagree with the sign rule");
        }

    if (check_axioms) {
        auto report = validate(*dgla);
        if (!report.ok())
            throw InputError("DGLA axioms fail: " + report.summary());
    }
    return dgla;
}

Dgla::Ptr direct_sum(const Dgla::Ptr& a, const Dgla::Ptr& b)
{
    GradedVectorSpace space;
    std::set<int> degs;
    for (int d : a->degrees())
        degs.insert(d);
    for (int d : b->degrees())
        degs.insert(d);
    std::set<std::string> used;
    std::map<int, int> offset;  // b's index offset per degree
    for (int d : degs) {
        std::vector<std::string> names;
        if (a->space.basis_names.count(d))
            for (const auto& n : a->space.basis_names.at(d)) {
                names.push_back(n);
                used.insert(n);
            }
        offset[d] = static_cast<int>(names.size());
        if (b->space.basis_names.count(d))
            for (const auto& n : b->space.basis_names.at(d)) {
                std::string nm = n;
                while (used.count(nm))
                    nm += "'";
                names.push_back(nm);
                used.insert(nm);
            }
        space.basis_names[d] = names;
    }

    std::map<int, QMatrix> differential;
    for (int d : degs) {
        int rows = space.dim(d + 1), cols = space.dim(d);
        if (rows == 0 || cols == 0)
            continue;
        QMatrix m(rows, cols);
        QMatrix da = a->differential_matrix(d);
        QMatrix db = b->differential_matrix(d);
        for (int i = 0; i < da.rows(); ++i)
            for (int j = 0; j < da.cols(); ++j)
                m.at(i, j) = da.at(i, j);
        int ro = offset.count(d + 1) ? offset[d + 1] : a->dim(d + 1);
        for (int i = 0; i < db.rows(); ++i)
            for (int j = 0; j < db.cols(); ++j)
                m.at(ro + i, offset[d] + j) = db.at(i, j);
        differential[d] = m;
    }

    std::vector<BracketEntry> entries;
    for (const auto& [key, block] : a->bracket)
        for (const auto& [ij, vec] : block)
            for (const auto& [k, c] : vec)
                entries.push_back({key.p, ij.first, key.q, ij.second, k, c});
    for (const auto& [key, block] : b->bracket)
        for (const auto& [ij, vec] : block)
            for (const auto& [k, c] : vec)
                entries.push_back({key.p, offset[key.p] + ij.first, key.q, offset[key.q] + ij.second,
                                   offset[key.p + key.q] + k, c});
    return make_dgla(std::move(space), std::move(differential), entries, false);
}

Dgla::Ptr transport(const Dgla::Ptr& dgla, const std::map<int, QMatrix>& maps)
{
    std::map<int, QMatrix> inverse;
    for (int d : dgla->degrees()) {
        auto it = maps.find(d);
        if (it == maps.end())
            throw InputError("transport is missing a matrix for degree " + std::to_string(d));
        if (it->second.rows() != dgla->dim(d) || it->second.cols() != dgla->dim(d))
            throw InputError("transport matrix has wrong shape in degree " + std::to_string(d));
        auto inv = it->second.inverse();
        if (!inv)
            throw InputError("transport matrix is singular in degree " + std::to_string(d));
        inverse[d] = *inv;
    }
    auto get = [&](int d) {
        auto it = maps.find(d);
        return it == maps.end() ? QMatrix::identity(dgla->dim(d)) : it->second;
    };
    auto get_inv = [&](int d) {
        auto it = inverse.find(d);
        return it == inverse.end() ? QMatrix::identity(dgla->dim(d)) : it->second;
    };

    std::map<int, QMatrix> differential;
    for (int d : dgla->degrees())
        if (dgla->dim(d + 1) > 0)
            differential[d] = get_inv(d + 1) * dgla->differential_matrix(d) * get(d);

    std::vector<BracketEntry> entries;
    for (int p : dgla->degrees())
        for (int q : dgla->degrees()) {
            if (dgla->dim(p + q) == 0)
                continue;
            QMatrix inv_pq = get_inv(p + q);
            for (int i = 0; i < dgla->dim(p); ++i)
                for (int j = 0; j < dgla->dim(q); ++j) {
                    QVector w =
                        bracket_vectors(*dgla, p, get(p).col(i), q, get(q).col(j));
                    QVector c = inv_pq.apply(w);
                    for (size_t k = 0; k < c.size(); ++k)
                        if (c[k] != 0)
                            entries.push_back({p, i, q, j, static_cast<int>(k), c[k]});
                }
        }
    return make_dgla(dgla->space, std::move(differential), entries, false);
}

namespace {

// Shared check used by morphisms and group actions.
std::string morphism_defect(const Dgla& source, const Dgla& target,
                            const std::map<int, QMatrix>& maps)
{
    auto map_at = [&](int d) {
        auto it = maps.find(d);
        return it == maps.end() ? QMatrix::zero(target.dim(d), source.dim(d)) : it->second;
    };
    for (const auto& [d, m] : maps)
        if (m.rows() != target.dim(d) || m.cols() != source.dim(d))
            return "map in degree " + std::to_string(d) + " has wrong shape";
    for (int p : source.degrees()) {
        if (target.dim(p + 1) > 0) {
            QMatrix lhs = target.differential_matrix(p) * map_at(p);
            QMatrix rhs = map_at(p + 1) * source.differential_matrix(p);
            if (!(lhs == rhs))
                return "map does not commute with the differential in degree " + std::to_string(p);
        }
    }
    for (int p : source.degrees())
        for (int q : source.degrees()) {
            if (source.dim(p + q) == 0 && target.dim(p + q) == 0)
                continue;
            for (int i = 0; i < source.dim(p); ++i)
                for (int j = 0; j < source.dim(q); ++j) {
                    QVector lhs = map_at(p + q).apply(source.bracket_of_basis(p, i, q, j));
                    QVector rhs = bracket_vectors(target, p, map_at(p).col(i), q, map_at(q).col(j));
                    if (lhs != rhs)
                        return "map does not preserve the bracket on degrees (" +
                               std::to_string(p) + ", " + std::to_string(q) + ")";
                }
        }
    return {};
}

}  // namespace

QMatrix DglaMorphism::map_matrix(int degree) const
{
    auto it = maps_.find(degree);
    if (it != maps_.end())
        return it->second;
    return QMatrix::zero(target_->dim(degree), source_->dim(degree));
}

DglaMorphism make_dgla_morphism(Dgla::Ptr source, Dgla::Ptr target, std::map<int, QMatrix> maps)
{
    std::string defect = morphism_defect(*source, *target, maps);
    if (!defect.empty())
        throw InputError("not a DGLA morphism: " + defect);
    DglaMorphism m;
    m.source_ = std::move(source);
    m.target_ = std::move(target);
    m.maps_ = std::move(maps);
    return m;
}

DglaMorphism identity_dgla_morphism(Dgla::Ptr dgla)
{
    std::map<int, QMatrix> maps;
    for (int d : dgla->degrees())
        maps[d] = QMatrix::identity(dgla->dim(d));
    return make_dgla_morphism(dgla, dgla, std::move(maps));
}

int GroupAction::identity_index() const
{
    for (int e = 0; e < order(); ++e) {
        bool ok = true;
        for (int x = 0; x < order(); ++x)
            if (table[e][x] != x || table[x][e] != x)
                ok = false;
        if (ok)
            return e;
    }
    return -1;
}

QMatrix GroupAction::action_matrix(int element, int degree, int dim) const
{
    auto it = matrices[element].find(degree);
    return it == matrices[element].end() ? QMatrix::identity(dim) : it->second;
}

void validate_action(const Dgla::Ptr& dgla, const GroupAction& action)
{
    const int n = action.order();
    if (n == 0)
        throw InputError("group action must have at least the identity element");
    if (static_cast<int>(action.table.size()) != n || static_cast<int>(action.matrices.size()) != n)
        throw InputError("group table/matrix sizes do not match the element list");
    for (const auto& row : action.table) {
        if (static_cast<int>(row.size()) != n)
            throw InputError("group table is not square");
        for (int v : row)
            if (v < 0 || v >= n)
                throw InputError("group table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (action.table[action.table[a][b]][c] != action.table[a][action.table[b][c]])
                    throw InputError("group table is not associative");
    int e = action.identity_index();
    if (e < 0)
        throw InputError("group table has no identity");
    for (int a = 0; a < n; ++a) {
        bool has_inverse = false;
        for (int b = 0; b < n; ++b)
            if (action.table[a][b] == e && action.table[b][a] == e)
                has_inverse = true;
        if (!has_inverse)
            throw InputError("group element '" + action.element_names[a] + "' has no inverse");
    }
    // Representation property and automorphism axioms.
    for (int a = 0; a < n; ++a) {
        std::map<int, QMatrix> maps;
        for (int d : dgla->degrees()) {
            QMatrix m = action.action_matrix(a, d, dgla->dim(d));
            if (!m.is_invertible())
                throw InputError("action of '" + action.element_names[a] +
                                 "' is singular in degree " + std::to_string(d));
            maps[d] = m;
        }
        std::string defect = morphism_defect(*dgla, *dgla, maps);
        if (!defect.empty())
            throw InputError("action of '" + action.element_names[a] +
                             "' is not a DGLA automorphism: " + defect);
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int d : dgla->degrees()) {
                QMatrix lhs = action.action_matrix(action.table[a][b], d, dgla->dim(d));
                QMatrix rhs = action.action_matrix(a, d, dgla->dim(d)) *
                              action.action_matrix(b, d, dgla->dim(d));
                if (!(lhs == rhs))
                    throw InputError("action matrices do not respect the group table");
            }
}

namespace {

// Sub-DGLA spanned degreewise by the columns of basis_cols[p].
SubDgla restrict_to_subspaces(const Dgla::Ptr& dgla, const std::map<int, QMatrix>& basis_cols)
{
    GradedVectorSpace space;
    for (int d : dgla->degrees()) {
        auto it = basis_cols.find(d);
        int k = it == basis_cols.end() ? 0 : it->second.cols();
        std::vector<std::string> names;
        for (int i = 0; i < k; ++i) {
            const QMatrix& cols = it->second;
            int nonzero = -1, count = 0;
            for (int r = 0; r < cols.rows(); ++r)
                if (cols.at(r, i) != 0) {
                    nonzero = r;
                    ++count;
                }
            if (count == 1 && cols.at(nonzero, i) == 1)
                names.push_back(dgla->space.name(d, nonzero));
            else
                names.push_back("k" + std::to_string(d) + "_" + std::to_string(i));
        }
        if (!names.empty())
            space.basis_names[d] = names;
    }

    auto cols_at = [&](int d) {
        auto it = basis_cols.find(d);
        return it == basis_cols.end() ? QMatrix::zero(dgla->dim(d), 0) : it->second;
    };

    std::map<int, QMatrix> differential;
    for (int d : dgla->degrees()) {
        QMatrix s = cols_at(d);
        QMatrix s_next = cols_at(d + 1);
        if (s.cols() == 0 || s_next.cols() == 0)
            continue;
        QMatrix image = dgla->differential_matrix(d) * s;
        auto restricted = s_next.solve_matrix(image);
        if (!restricted)
            throw std::logic_error("subspace is not closed under the differential");
        differential[d] = *restricted;
    }

    std::vector<BracketEntry> entries;
    for (int p : dgla->degrees())
        for (int q : dgla->degrees()) {
            QMatrix sp = cols_at(p), sq = cols_at(q), spq = cols_at(p + q);
            if (sp.cols() == 0 || sq.cols() == 0)
                continue;
            for (int i = 0; i < sp.cols(); ++i)
                for (int j = 0; j < sq.cols(); ++j) {
                    QVector w = bracket_vectors(*dgla, p, sp.col(i), q, sq.col(j));
                    if (is_zero(w))
                        continue;
                    if (spq.cols() == 0)
                        throw std::logic_error("subspace is not closed under the bracket");
                    auto c = spq.solve(w);
                    if (!c)
                        throw std::logic_error("subspace is not closed under the bracket");
                    for (size_t k = 0; k < c->size(); ++k)
                        if ((*c)[k] != 0)
                            entries.push_back({p, i, q, j, static_cast<int>(k), (*c)[k]});
                }
        }

    auto sub = make_dgla(std::move(space), std::move(differential), entries, true);
    std::map<int, QMatrix> incl;
    for (int d : sub->degrees())
        incl[d] = cols_at(d);
    return {sub, make_dgla_morphism(sub, dgla, std::move(incl))};
}

}  // namespace

SubDgla equalizer_subalgebra(const DglaMorphism& f, const DglaMorphism& g)
{
    if (f.source() != g.source() || f.target() != g.target())
        throw InputError("equalizer requires morphisms with shared source and target");
    const auto& dgla = f.source();
    std::map<int, QMatrix> basis_cols;
    for (int d : dgla->degrees()) {
        QMatrix diff = f.map_matrix(d) - g.map_matrix(d);
        auto kernel = diff.kernel_basis();
        if (kernel.empty())
            continue;
        QMatrix cols(dgla->dim(d), static_cast<int>(kernel.size()));
        for (size_t i = 0; i < kernel.size(); ++i)
            cols.set_col(static_cast<int>(i), kernel[i]);
        basis_cols[d] = cols;
    }
    return restrict_to_subspaces(dgla, basis_cols);
}

QMatrix averaging_projector(const Dgla::Ptr& dgla, const GroupAction& action, int degree)
{
    const int dim = dgla->dim(degree);
    QMatrix sum = QMatrix::zero(dim, dim);
    for (int g = 0; g < action.order(); ++g)
        sum = sum + action.action_matrix(g, degree, dim);
    return sum.scaled(Rational(1) / Rational(action.order()));
}

SubDgla invariant_subalgebra(const Dgla::Ptr& dgla, const GroupAction& action)
{
    validate_action(dgla, action);
    std::map<int, QMatrix> basis_cols;
    for (int d : dgla->degrees()) {
        QMatrix p = averaging_projector(dgla, action, d);
        QMatrix shifted = p - QMatrix::identity(dgla->dim(d));
        auto fixed = shifted.kernel_basis();
        if (fixed.empty())
            continue;
        QMatrix cols(dgla->dim(d), static_cast<int>(fixed.size()));
        for (size_t i = 0; i < fixed.size(); ++i)
            cols.set_col(static_cast<int>(i), fixed[i]);
        basis_cols[d] = cols;
    }
    return restrict_to_subspaces(dgla, basis_cols);
}

DglaCochain::DglaCochain(Dgla::Ptr dgla, ArtinAlgebra::Ptr algebra, int degree)
    : dgla_(std::move(dgla)), algebra_(std::move(algebra)), degree_(degree),
      coeffs_(QMatrix::zero(dgla_->dim(degree), algebra_->dim()))
{
}

DglaCochain::DglaCochain(Dgla::Ptr dgla, ArtinAlgebra::Ptr algebra, int degree, QMatrix coefficients)
    : dgla_(std::move(dgla)), algebra_(std::move(algebra)), degree_(degree),
      coeffs_(std::move(coefficients))
{
    if (coeffs_.rows() != dgla_->dim(degree_) || coeffs_.cols() != algebra_->dim())
        throw InputError("cochain coefficient matrix has wrong shape");
    for (int i = 0; i < coeffs_.rows(); ++i)
        if (coeffs_.at(i, 0) != 0)
            throw InputError("cochain has a coefficient on the unit monomial");
}

DglaCochain DglaCochain::operator+(const DglaCochain& other) const
{
    if (dgla_ != other.dgla_ || algebra_ != other.algebra_ || degree_ != other.degree_)
        throw InputError("cochain carriers do not match");
    return DglaCochain(dgla_, algebra_, degree_, coeffs_ + other.coeffs_);
}

DglaCochain DglaCochain::operator-(const DglaCochain& other) const
{
    if (dgla_ != other.dgla_ || algebra_ != other.algebra_ || degree_ != other.degree_)
        throw InputError("cochain carriers do not match");
    return DglaCochain(dgla_, algebra_, degree_, coeffs_ - other.coeffs_);
}

DglaCochain DglaCochain::scaled(const Rational& c) const
{
    return DglaCochain(dgla_, algebra_, degree_, coeffs_.scaled(c));
}

bool DglaCochain::operator==(const DglaCochain& other) const
{
    return dgla_ == other.dgla_ && algebra_ == other.algebra_ && degree_ == other.degree_ &&
           coeffs_ == other.coeffs_;
}

DglaCochain DglaCochain::map_coefficients(const AlgebraMorphism& morphism) const
{
    if (morphism.source() != algebra_)
        throw InputError("cochain algebra does not match the morphism source");
    return DglaCochain(dgla_, morphism.target(), degree_,
                       coeffs_ * morphism.matrix().transpose());
}

DglaCochain DglaCochain::split_coefficients(const SmallExtension& extension) const
{
    if (extension.quotient() != algebra_)
        throw InputError("cochain algebra does not match the extension quotient");
    return DglaCochain(dgla_, extension.total(), degree_,
                       coeffs_ * extension.splitting().transpose());
}

std::string DglaCochain::to_string() const
{
    if (is_zero())
        return "0";
    std::string out;
    for (int i = 0; i < coeffs_.rows(); ++i)
        for (int a = 1; a < coeffs_.cols(); ++a) {
            const Rational& c = coeffs_.at(i, a);
            if (c == 0)
                continue;
            if (!out.empty())
                out += " + ";
            std::string term;
            if (c != 1)
                term += deform::to_string(c) + "*";
            term += dgla_->space.name(degree_, i) + "(x)" + algebra_->basis_names()[a];
            out += term;
        }
    return out;
}

DglaCochain differential_eval(const DglaCochain& u)
{
    QMatrix d = u.dgla()->differential_matrix(u.degree());
    return DglaCochain(u.dgla(), u.algebra(), u.degree() + 1, d * u.coefficients());
}

DglaCochain bracket_eval(const DglaCochain& u, const DglaCochain& v)
{
    if (u.dgla() != v.dgla() || u.algebra() != v.algebra())
        throw InputError("cochain carriers do not match");
    const auto& dgla = *u.dgla();
    const auto& alg = *u.algebra();
    const int p = u.degree(), q = v.degree();
    QMatrix out = QMatrix::zero(dgla.dim(p + q), alg.dim());
    if (dgla.dim(p + q) == 0)
        return DglaCochain(u.dgla(), u.algebra(), p + q, out);
    for (int i = 0; i < dgla.dim(p); ++i)
        for (int a = 1; a < alg.dim(); ++a) {
            const Rational& cu = u.coefficient(i, a);
            if (cu == 0)
                continue;
            for (int j = 0; j < dgla.dim(q); ++j)
                for (int b = 1; b < alg.dim(); ++b) {
                    const Rational& cv = v.coefficient(j, b);
                    if (cv == 0)
                        continue;
                    const auto& prod = alg.product(a, b);
                    if (prod.empty())
                        continue;
                    QVector w = dgla.bracket_of_basis(p, i, q, j);
                    if (is_zero(w))
                        continue;
                    Rational scale = cu * cv;
                    for (const auto& [m, cm] : prod)
                        for (size_t k = 0; k < w.size(); ++k)
                            if (w[k] != 0)
                                out.at(static_cast<int>(k), m) += scale * cm * w[k];
                }
        }
    return DglaCochain(u.dgla(), u.algebra(), p + q, out);
}

DglaCochain map_cochain(const DglaMorphism& morphism, const DglaCochain& u)
{
    if (morphism.source() != u.dgla())
        throw InputError("cochain does not live on the morphism source");
    return DglaCochain(morphism.target(), u.algebra(), u.degree(),
                       morphism.map_matrix(u.degree()) * u.coefficients());
}

}  // namespace deform
