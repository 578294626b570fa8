#include "deform/artin.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace deform {

namespace {

ArtinAlgebra::SparseVec sparse_from_vector(const QVector& v)
{
    ArtinAlgebra::SparseVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            s.emplace_back(static_cast<int>(i), v[i]);
    return s;
}

QVector vector_from_sparse(const ArtinAlgebra::SparseVec& s, int dim)
{
    QVector v(dim, Rational(0));
    for (const auto& [i, c] : s)
        v[i] = c;
    return v;
}

}  // namespace

Monomial::Monomial(std::vector<unsigned> exponents) : exps_(std::move(exponents))
{
    degree_ = std::accumulate(exps_.begin(), exps_.end(), 0u);
}

Monomial Monomial::operator*(const Monomial& other) const
{
    if (exps_.size() != other.exps_.size())
        throw std::logic_error("monomial generator count mismatch");
    std::vector<unsigned> e(exps_.size());
    for (size_t i = 0; i < e.size(); ++i)
        e[i] = exps_[i] + other.exps_[i];
    return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const
{
    if (exps_.size() != other.exps_.size())
        throw std::logic_error("monomial generator count mismatch");
    for (size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i])
            return false;
    return true;
}

bool Monomial::operator<(const Monomial& other) const
{
    // Graded order; within a degree, earlier generators come first.
    if (degree_ != other.degree_)
        return degree_ < other.degree_;
    return exps_ > other.exps_;
}

std::string Monomial::to_string(const std::vector<std::string>& generator_names) const
{
    if (is_unit())
        return "1";
    std::string out;
    for (size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += generator_names[i];
        if (exps_[i] > 1)
            out += "^" + std::to_string(exps_[i]);
    }
    return out;
}

int ArtinAlgebra::generator_basis_index(size_t gen) const
{
    std::vector<unsigned> e(generator_names_.size(), 0);
    e[gen] = 1;
    return monomial_basis_index(Monomial(std::move(e)));
}

int ArtinAlgebra::monomial_basis_index(const Monomial& m) const
{
    for (size_t i = 0; i < monomials_.size(); ++i)
        if (monomials_[i] == m)
            return static_cast<int>(i);
    return -1;
}

void ArtinAlgebra::finalize()
{
    const int n = dim();
    if (n == 0)
        throw InputError("algebra must contain the unit");
    if (static_cast<int>(table_.size()) != n * n)
        throw InputError("multiplication table has wrong size");

    std::set<std::string> seen(names_.begin(), names_.end());
    if (static_cast<int>(seen.size()) != n)
        throw InputError("duplicate basis element names");

    // Unit law and locality of the table.
    for (int i = 0; i < n; ++i) {
        QVector ui = vector_from_sparse(product(0, i), n);
        QVector expect(n, Rational(0));
        expect[i] = 1;
        if (ui != expect)
            throw InputError("basis element 0 does not act as the unit");
    }
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            for (const auto& [k, c] : product(i, j))
                if (k == 0 && c != 0)
                    throw InputError("maximal ideal is not closed under multiplication");
            if (!(product(i, j) == product(j, i)))
                throw InputError("multiplication table is not commutative");
        }

    // Associativity on all basis triples.
    auto expand = [&](const SparseVec& s, int k) {
        QVector acc(n, Rational(0));
        for (const auto& [i, c] : s)
            for (const auto& [m, d] : product(i, k))
                acc[m] += c * d;
        return acc;
    };
    auto expand_left = [&](int k, const SparseVec& s) {
        QVector acc(n, Rational(0));
        for (const auto& [i, c] : s)
            for (const auto& [m, d] : product(k, i))
                acc[m] += c * d;
        return acc;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (expand(product(i, j), k) != expand_left(i, product(j, k)))
                    throw InputError("multiplication table is not associative");

    // Power filtration of the maximal ideal and the nilpotency index.
    powers_.clear();
    std::vector<QVector> gens;
    for (int i = 1; i < n; ++i) {
        QVector v(n, Rational(0));
        v[i] = 1;
        gens.push_back(std::move(v));
    }
    Subspace current = span_of_vectors(gens, n);
    powers_.push_back(current);  // powers_[0] = m^1
    while (current.dim() > 0) {
        std::vector<QVector> next_gens;
        for (int r = 0; r < current.dim(); ++r) {
            QVector v = current.basis_rows.row(r);
            for (int i = 1; i < n; ++i) {
                QVector prod(n, Rational(0));
                for (int j = 0; j < n; ++j) {
                    if (v[j] == 0)
                        continue;
                    for (const auto& [k, c] : product(i, j))
                        prod[k] += v[j] * c;
                }
                if (!deform::is_zero(prod))
                    next_gens.push_back(std::move(prod));
            }
        }
        Subspace next = span_of_vectors(next_gens, n);
        if (next.dim() == current.dim())
            throw InputError("maximal ideal is not nilpotent");
        powers_.push_back(next);
        current = next;
    }
    nil_index_ = static_cast<int>(powers_.size());  // least k with m^k = 0

    // Basis adapted to the filtration, deepest layers first, then the unit.
    struct Adapted {
        QVector v;
        int order;
    };
    std::vector<Adapted> adapted;
    std::vector<QVector> chosen;
    for (int j = nil_index_ - 1; j >= 1; --j) {
        const Subspace& layer = powers_[j - 1];  // m^j
        Subspace have = span_of_vectors(chosen, n);
        for (int r = 0; r < layer.dim(); ++r) {
            QVector v = layer.basis_rows.row(r);
            if (have.contains(v))
                continue;
            chosen.push_back(v);
            adapted.push_back({v, j});
            have = span_of_vectors(chosen, n);
        }
    }
    std::stable_sort(adapted.begin(), adapted.end(),
                     [](const Adapted& a, const Adapted& b) { return a.order < b.order; });
    adapted_ = QMatrix(n, n);
    adapted_orders_.assign(n, 0);
    QVector unit(n, Rational(0));
    unit[0] = 1;
    adapted_.set_col(0, unit);
    for (size_t i = 0; i < adapted.size(); ++i) {
        adapted_.set_col(static_cast<int>(i) + 1, adapted[i].v);
        adapted_orders_[i + 1] = adapted[i].order;
    }
    auto inv = adapted_.inverse();
    if (!inv)
        throw std::logic_error("adapted basis is not a basis");
    adapted_inv_ = *inv;

    // m-adic order of each basis element, used as its formal degree when no
    // monomial degree is available.
    if (degrees_.empty()) {
        degrees_.assign(n, 0);
        for (int i = 1; i < n; ++i) {
            QVector v(n, Rational(0));
            v[i] = 1;
            int ord = 1;
            while (ord + 1 < nil_index_ && powers_[ord].contains(v))
                ++ord;
            degrees_[i] = ord;
        }
    }
    for (int i = 1; i < n; ++i)
        if (degrees_[i] < 1)
            throw InputError("non-unit basis element of degree zero");
}

ArtinAlgebra::Ptr build_truncated_algebra(const std::vector<std::string>& generator_names,
                                          int truncation_order,
                                          const std::vector<Monomial>& relations)
{
    if (truncation_order < 1)
        throw InputError("truncation order must be at least 1");
    if (generator_names.empty() && truncation_order > 1)
        throw InputError("empty generator list requires truncation order 1");
    std::set<std::string> seen(generator_names.begin(), generator_names.end());
    if (seen.size() != generator_names.size())
        throw InputError("duplicate generator names");
    for (const auto& name : generator_names)
        if (name.empty() || name == "1")
            throw InputError("invalid generator name");
    const size_t k = generator_names.size();
    for (const auto& rel : relations) {
        if (rel.exponents().size() != k)
            throw InputError("relation monomial uses undeclared generators");
        if (rel.is_unit())
            throw InputError("the unit cannot be a relation");
    }

    auto killed = [&](const Monomial& m) {
        if (static_cast<int>(m.total_degree()) >= truncation_order)
            return true;
        for (const auto& rel : relations)
            if (rel.divides(m))
                return true;
        return false;
    };

    // All monomials of total degree below the truncation order.
    std::vector<Monomial> all;
    std::vector<unsigned> exps(k, 0);
    auto rec = [&](auto&& self, size_t pos, int remaining) -> void {
        if (pos == k) {
            all.emplace_back(exps);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            exps[pos] = static_cast<unsigned>(e);
            self(self, pos + 1, remaining - e);
        }
        exps[pos] = 0;
    };
    rec(rec, 0, truncation_order - 1);

    std::vector<Monomial> basis;
    for (const auto& m : all)
        if (!killed(m))
            basis.push_back(m);
    std::sort(basis.begin(), basis.end());

    auto a = std::shared_ptr<ArtinAlgebra>(new ArtinAlgebra());
    a->generator_names_ = generator_names;
    a->truncation_order_ = truncation_order;
    a->relations_ = relations;
    a->monomials_ = basis;
    const int n = static_cast<int>(basis.size());
    a->names_.reserve(n);
    a->degrees_.reserve(n);
    for (const auto& m : basis) {
        a->names_.push_back(m.to_string(generator_names));
        a->degrees_.push_back(static_cast<int>(m.total_degree()));
    }
    a->table_.assign(static_cast<size_t>(n) * n, {});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Monomial p = basis[i] * basis[j];
            if (killed(p))
                continue;
            int idx = -1;
            for (int t = 0; t < n; ++t)
                if (basis[t] == p) {
                    idx = t;
                    break;
                }
            if (idx < 0)
                throw std::logic_error("monomial product escaped the basis");
            a->table_[static_cast<size_t>(i) * n + j] = {{idx, Rational(1)}};
        }
    a->finalize();
    return a;
}

ArtinAlgebra::Ptr make_table_algebra(std::vector<std::string> names,
                                     std::vector<ArtinAlgebra::SparseVec> table)
{
    auto a = std::shared_ptr<ArtinAlgebra>(new ArtinAlgebra());
    a->names_ = std::move(names);
    a->table_ = std::move(table);
    a->finalize();
    return a;
}

ArtinAlgebra::Ptr rational_field()
{
    return build_truncated_algebra({}, 1, {});
}

std::string ArtinAlgebra::describe() const
{
    std::ostringstream os;
    os << "dim " << dim() << ", nil index " << nil_index_ << ", basis {";
    for (int i = 0; i < dim(); ++i)
        os << (i ? ", " : "") << names_[i];
    os << "}";
    return os.str();
}

AlgebraElement::AlgebraElement(ArtinAlgebra::Ptr algebra, QVector coefficients)
    : algebra_(std::move(algebra)), coeffs_(std::move(coefficients))
{
    if (static_cast<int>(coeffs_.size()) != algebra_->dim())
        throw InputError("element coefficient count does not match the algebra basis");
}

AlgebraElement AlgebraElement::zero(ArtinAlgebra::Ptr algebra)
{
    QVector v(algebra->dim(), Rational(0));
    return AlgebraElement(std::move(algebra), std::move(v));
}

AlgebraElement AlgebraElement::one(ArtinAlgebra::Ptr algebra)
{
    return basis(std::move(algebra), 0);
}

AlgebraElement AlgebraElement::basis(ArtinAlgebra::Ptr algebra, int index)
{
    QVector v(algebra->dim(), Rational(0));
    v.at(index) = 1;
    return AlgebraElement(std::move(algebra), std::move(v));
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& other) const
{
    if (algebra_ != other.algebra_)
        throw InputError("elements belong to different algebras");
    return AlgebraElement(algebra_, coeffs_ + other.coeffs_);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& other) const
{
    if (algebra_ != other.algebra_)
        throw InputError("elements belong to different algebras");
    return AlgebraElement(algebra_, coeffs_ - other.coeffs_);
}

AlgebraElement AlgebraElement::scaled(const Rational& c) const
{
    return AlgebraElement(algebra_, c * coeffs_);
}

bool AlgebraElement::operator==(const AlgebraElement& other) const
{
    return algebra_ == other.algebra_ && coeffs_ == other.coeffs_;
}

std::string AlgebraElement::to_string() const
{
    if (is_zero())
        return "0";
    std::string out;
    for (int i = 0; i < algebra_->dim(); ++i) {
        if (coeffs_[i] == 0)
            continue;
        if (!out.empty())
            out += " + ";
        const std::string& nm = algebra_->basis_names()[i];
        if (i == 0)
            out += deform::to_string(coeffs_[i]);
        else if (coeffs_[i] == 1)
            out += nm;
        else
            out += deform::to_string(coeffs_[i]) + "*" + nm;
    }
    return out;
}

AlgebraElement multiply(const AlgebraElement& u, const AlgebraElement& v)
{
    if (u.algebra() != v.algebra())
        throw InputError("elements belong to different algebras");
    const auto& a = *u.algebra();
    const int n = a.dim();
    QVector out(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        if (u.coefficient(i) == 0)
            continue;
        for (int j = 0; j < n; ++j) {
            if (v.coefficient(j) == 0)
                continue;
            Rational c = u.coefficient(i) * v.coefficient(j);
            for (const auto& [k, d] : a.product(i, j))
                out[k] += c * d;
        }
    }
    return AlgebraElement(u.algebra(), std::move(out));
}

namespace {

void validate_morphism(const ArtinAlgebra::Ptr& source, const ArtinAlgebra::Ptr& target,
                       const QMatrix& matrix)
{
    const int ns = source->dim(), nt = target->dim();
    if (matrix.rows() != nt || matrix.cols() != ns)
        throw InputError("morphism matrix shape mismatch");
    QVector unit_t(nt, Rational(0));
    unit_t[0] = 1;
    if (matrix.col(0) != unit_t)
        throw InputError("morphism is not unital");
    for (int i = 1; i < ns; ++i)
        if (matrix.at(0, i) != 0)
            throw InputError("morphism does not map the maximal ideal into the maximal ideal");
    // Multiplicativity on all basis pairs; this subsumes respect of
    // relations and truncation.
    for (int i = 0; i < ns; ++i) {
        AlgebraElement fi(target, matrix.col(i));
        for (int j = i; j < ns; ++j) {
            AlgebraElement fj(target, matrix.col(j));
            QVector lhs(nt, Rational(0));
            for (const auto& [k, c] : source->product(i, j)) {
                QVector img = matrix.col(k);
                for (int r = 0; r < nt; ++r)
                    lhs[r] += c * img[r];
            }
            if (lhs != multiply(fi, fj).coefficients())
                throw InputError("morphism is not multiplicative on basis pair (" +
                                 source->basis_names()[i] + ", " + source->basis_names()[j] + ")");
        }
    }
}

}  // namespace

AlgebraElement AlgebraMorphism::apply(const AlgebraElement& x) const
{
    if (x.algebra() != source_)
        throw InputError("morphism applied to an element of the wrong algebra");
    return AlgebraElement(target_, matrix_.apply(x.coefficients()));
}

AlgebraElement AlgebraMorphism::image_of_basis(int i) const
{
    return AlgebraElement(target_, matrix_.col(i));
}

bool AlgebraMorphism::is_surjective() const
{
    return matrix_.rank() == target_->dim();
}

AlgebraMorphism make_morphism(ArtinAlgebra::Ptr source, ArtinAlgebra::Ptr target,
                              const std::vector<AlgebraElement>& generator_images)
{
    for (const auto& img : generator_images) {
        if (img.algebra() != target)
            throw InputError("generator image lies in the wrong algebra");
        if (!img.in_maximal_ideal())
            throw InputError("generator image must lie in the maximal ideal");
    }
    const int ns = source->dim(), nt = target->dim();
    QMatrix matrix(nt, ns);
    if (source->has_monomial_basis()) {
        if (generator_images.size() != source->generator_names().size())
            throw InputError("expected one image per source generator");
        for (int i = 0; i < ns; ++i) {
            AlgebraElement img = AlgebraElement::one(target);
            const auto& exps = source->monomial_basis()[i].exponents();
            for (size_t g = 0; g < exps.size(); ++g)
                for (unsigned e = 0; e < exps[g]; ++e)
                    img = multiply(img, generator_images[g]);
            matrix.set_col(i, img.coefficients());
        }
    } else {
        // Table-presented algebras are generated by their positive-degree
        // basis elements.
        if (static_cast<int>(generator_images.size()) != ns - 1)
            throw InputError("expected one image per positive-degree basis element");
        QVector unit_t(nt, Rational(0));
        unit_t[0] = 1;
        matrix.set_col(0, unit_t);
        for (int i = 1; i < ns; ++i)
            matrix.set_col(i, generator_images[i - 1].coefficients());
    }
    return make_morphism_on_basis(std::move(source), std::move(target), std::move(matrix));
}

AlgebraMorphism make_morphism_on_basis(ArtinAlgebra::Ptr source, ArtinAlgebra::Ptr target,
                                       QMatrix matrix)
{
    validate_morphism(source, target, matrix);
    AlgebraMorphism m;
    m.source_ = std::move(source);
    m.target_ = std::move(target);
    m.matrix_ = std::move(matrix);
    return m;
}

AlgebraMorphism identity_morphism(ArtinAlgebra::Ptr algebra)
{
    QMatrix id = QMatrix::identity(algebra->dim());
    return make_morphism_on_basis(algebra, algebra, std::move(id));
}

AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f)
{
    if (f.target() != g.source())
        throw InputError("morphisms are not composable");
    AlgebraMorphism m;
    m.source_ = f.source_;
    m.target_ = g.target_;
    m.matrix_ = g.matrix_ * f.matrix_;
    return m;
}

AlgebraMorphism truncation_morphism(ArtinAlgebra::Ptr source, ArtinAlgebra::Ptr target)
{
    if (!source->has_monomial_basis() || !target->has_monomial_basis())
        throw InputError("truncation morphism requires monomial presentations");
    // Each target generator must come from a same-named source generator;
    // source generators missing from the target map to zero.
    for (const auto& name : target->generator_names())
        if (std::find(source->generator_names().begin(), source->generator_names().end(), name) ==
            source->generator_names().end())
            throw InputError("target generator '" + name + "' does not occur in the source");
    std::vector<AlgebraElement> images;
    for (const auto& name : source->generator_names()) {
        auto it = std::find(target->generator_names().begin(), target->generator_names().end(), name);
        if (it == target->generator_names().end()) {
            images.push_back(AlgebraElement::zero(target));
            continue;
        }
        size_t g = static_cast<size_t>(it - target->generator_names().begin());
        int idx = target->generator_basis_index(g);
        images.push_back(idx >= 0 ? AlgebraElement::basis(target, idx) : AlgebraElement::zero(target));
    }
    return make_morphism(std::move(source), std::move(target), images);
}

QuotientPresentation quotient_by_ideal(ArtinAlgebra::Ptr algebra, const Subspace& ideal)
{
    const int n = algebra->dim();
    if (ideal.ambient() != n)
        throw InputError("ideal subspace has wrong ambient dimension");
    for (int r = 0; r < ideal.dim(); ++r) {
        QVector v = ideal.basis_rows.row(r);
        if (v[0] != 0)
            throw InputError("ideal must lie in the maximal ideal");
        for (int i = 1; i < n; ++i) {
            AlgebraElement prod = multiply(AlgebraElement::basis(algebra, i), AlgebraElement(algebra, v));
            if (!ideal.contains(prod.coefficients()))
                throw InputError("subspace is not an ideal");
        }
    }

    auto rr = ideal.basis_rows.rref();
    std::vector<bool> is_pivot(n, false);
    for (int c : rr.pivot_cols)
        is_pivot[c] = true;
    std::vector<int> survivors;
    for (int i = 0; i < n; ++i)
        if (!is_pivot[i])
            survivors.push_back(i);

    auto reduce = [&](QVector v) {
        for (int r = 0; r < rr.rank; ++r) {
            Rational f = v[rr.pivot_cols[r]];
            if (f == 0)
                continue;
            for (int j = 0; j < n; ++j)
                v[j] -= f * rr.reduced.at(r, j);
        }
        QVector out(survivors.size());
        for (size_t s = 0; s < survivors.size(); ++s)
            out[s] = v[survivors[s]];
        return out;
    };

    const int nq = static_cast<int>(survivors.size());
    std::vector<std::string> names;
    for (int s : survivors)
        names.push_back(algebra->basis_names()[s]);
    std::vector<ArtinAlgebra::SparseVec> table(static_cast<size_t>(nq) * nq);
    for (int a = 0; a < nq; ++a)
        for (int b = 0; b < nq; ++b) {
            QVector prod(n, Rational(0));
            for (const auto& [k, c] : algebra->product(survivors[a], survivors[b]))
                prod[k] += c;
            table[static_cast<size_t>(a) * nq + b] = sparse_from_vector(reduce(prod));
        }
    auto quotient = make_table_algebra(std::move(names), std::move(table));

    QMatrix proj(nq, n);
    for (int i = 0; i < n; ++i) {
        QVector v(n, Rational(0));
        v[i] = 1;
        proj.set_col(i, reduce(v));
    }
    return {quotient, make_morphism_on_basis(algebra, quotient, std::move(proj))};
}

SmallExtension make_small_extension(AlgebraMorphism projection)
{
    if (!projection.is_surjective())
        throw InputError("small extension projection must be surjective");
    const auto total = projection.source();
    const auto quotient = projection.target();
    const int n = total->dim(), nq = quotient->dim();

    SmallExtension ext(projection);
    for (const auto& v : projection.matrix().kernel_basis())
        ext.ideal_basis_.emplace_back(total, v);

    // I * m = 0 is the defining smallness condition.
    for (const auto& kappa : ext.ideal_basis_)
        for (int i = 1; i < n; ++i)
            if (!multiply(AlgebraElement::basis(total, i), kappa).is_zero())
                throw InputError("extension is not small: kernel times maximal ideal is nonzero");

    // Canonical splitting: send each quotient basis element to the
    // same-named total basis element when that defines a section.
    bool named = true;
    QMatrix sigma(n, nq);
    for (int q = 0; q < nq; ++q) {
        int found = -1;
        for (int i = 0; i < n; ++i)
            if (total->basis_names()[i] == quotient->basis_names()[q]) {
                found = i;
                break;
            }
        if (found < 0) {
            named = false;
            break;
        }
        QVector v(n, Rational(0));
        v[found] = 1;
        sigma.set_col(q, v);
    }
    if (named && !(projection.matrix() * sigma == QMatrix::identity(nq)))
        named = false;
    if (!named) {
        auto sol = projection.matrix().solve_matrix(QMatrix::identity(nq));
        if (!sol)
            throw std::logic_error("surjection has no section");
        sigma = *sol;
        QVector unit(n, Rational(0));
        unit[0] = 1;
        sigma.set_col(0, unit);
        if (!(projection.matrix() * sigma == QMatrix::identity(nq)))
            throw std::logic_error("splitting is not a section");
    }
    ext.splitting_ = std::move(sigma);
    return ext;
}

AlgebraElement SmallExtension::split(const AlgebraElement& x) const
{
    if (x.algebra() != quotient())
        throw InputError("splitting applied to an element of the wrong algebra");
    return AlgebraElement(total(), splitting_.apply(x.coefficients()));
}

SmallExtension SmallExtension::with_perturbed_splitting(const QMatrix& perturbation) const
{
    const int n = total()->dim(), nq = quotient()->dim();
    if (perturbation.rows() != n || perturbation.cols() != nq)
        throw InputError("splitting perturbation shape mismatch");
    std::vector<QVector> ideal_vectors;
    for (const auto& k : ideal_basis_)
        ideal_vectors.push_back(k.coefficients());
    Subspace ideal = span_of_vectors(ideal_vectors, n);
    if (!deform::is_zero(perturbation.col(0)))
        throw InputError("splitting perturbation must kill the unit");
    for (int q = 0; q < nq; ++q)
        if (!ideal.contains(perturbation.col(q)))
            throw InputError("splitting perturbation must map into the ideal");
    SmallExtension ext(*this);
    ext.splitting_ = splitting_ + perturbation;
    if (!(projection_.matrix() * ext.splitting_ == QMatrix::identity(nq)))
        throw std::logic_error("perturbed splitting is not a section");
    return ext;
}

std::string SmallExtension::ideal_element_name(int i) const
{
    return ideal_basis_[i].to_string();
}

std::vector<SmallExtension> factor_small_extensions(const AlgebraMorphism& surjection)
{
    if (!surjection.is_surjective())
        throw InputError("cannot factor a non-surjective morphism");
    const auto& total = surjection.source();
    const int n = total->dim();

    auto kernel_vectors = surjection.matrix().kernel_basis();
    Subspace kernel = span_of_vectors(kernel_vectors, n);
    if (kernel.dim() == 0)
        return {make_small_extension(surjection)};

    // Kernel filtered by powers of the maximal ideal: W_j = K cap m^j.
    // Deduplicated into a strictly ascending chain ending at K; quotienting
    // level by level makes every step small, since m * W_j lies in W_{j+1}.
    std::vector<Subspace> chain;
    const int nil = total->nil_index();
    for (int j = nil - 1; j >= 1; --j) {
        Subspace w = intersect(kernel, total->power_filtration()[j - 1]);
        if (w.dim() > (chain.empty() ? 0 : chain.back().dim()))
            chain.push_back(std::move(w));
    }

    std::vector<SmallExtension> steps;
    ArtinAlgebra::Ptr current = total;
    AlgebraMorphism reduce_to_current = identity_morphism(total);
    for (size_t level = 0; level < chain.size(); ++level) {
        const bool last = level + 1 == chain.size();
        std::optional<QuotientPresentation> pres;
        if (!last)
            pres = quotient_by_ideal(total, chain[level]);
        const auto& next = last ? surjection.target() : pres->quotient;
        const auto& from_total = last ? surjection : pres->projection;
        QMatrix step(next->dim(), current->dim());
        for (int i = 0; i < current->dim(); ++i) {
            QVector e(current->dim(), Rational(0));
            e[i] = 1;
            auto pre = reduce_to_current.matrix().solve(e);
            if (!pre)
                throw std::logic_error("chain reduction lost surjectivity");
            step.set_col(i, from_total.matrix().apply(*pre));
        }
        steps.push_back(make_small_extension(make_morphism_on_basis(current, next, std::move(step))));
        current = next;
        reduce_to_current = from_total;
    }
    return steps;
}

FiberProduct fiber_product(const AlgebraMorphism& f, const AlgebraMorphism& g)
{
    if (f.target() != g.target())
        throw InputError("fiber product requires a shared target");
    const auto B = f.source();
    const auto C = g.source();
    const int nb = B->dim(), nc = C->dim(), na = f.target()->dim();

    // Kernel of [F | -G] restricted to m_B + m_C gives the maximal ideal of
    // the fiber product; (1, 1) completes it to a basis.
    QMatrix m(na, nb - 1 + nc - 1);
    for (int j = 1; j < nb; ++j)
        m.set_col(j - 1, f.matrix().col(j));
    for (int j = 1; j < nc; ++j) {
        QVector v = g.matrix().col(j);
        m.set_col(nb - 1 + j - 1, Rational(-1) * v);
    }
    auto kernel = m.kernel_basis();

    std::vector<QVector> pair_basis;
    {
        QVector unit(nb + nc, Rational(0));
        unit[0] = 1;
        unit[nb] = 1;
        pair_basis.push_back(std::move(unit));
    }
    for (const auto& k : kernel) {
        QVector v(nb + nc, Rational(0));
        for (int j = 1; j < nb; ++j)
            v[j] = k[j - 1];
        for (int j = 1; j < nc; ++j)
            v[nb + j] = k[nb - 1 + j - 1];
        pair_basis.push_back(std::move(v));
    }
    const int nd = static_cast<int>(pair_basis.size());

    // Names: reuse the underlying coordinate name when a basis vector is a
    // plain coordinate vector, otherwise synthesize one.
    std::vector<std::string> names{"1"};
    std::set<std::string> used{"1"};
    for (int i = 1; i < nd; ++i) {
        const QVector& v = pair_basis[i];
        int nonzero = -1, count = 0;
        for (int j = 0; j < nb + nc; ++j)
            if (v[j] != 0) {
                nonzero = j;
                ++count;
            }
        std::string nm;
        if (count == 1 && v[nonzero] == 1)
            nm = nonzero < nb ? B->basis_names()[nonzero] : C->basis_names()[nonzero - nb];
        if (nm.empty() || used.count(nm))
            nm = "w" + std::to_string(i);
        used.insert(nm);
        names.push_back(nm);
    }

    QMatrix basis_cols(nb + nc, nd);
    for (int i = 0; i < nd; ++i)
        basis_cols.set_col(i, pair_basis[i]);

    // Componentwise products of basis pairs, re-expanded in the pair basis.
    QMatrix products(nb + nc, nd * nd);
    for (int a = 0; a < nd; ++a)
        for (int b = 0; b < nd; ++b) {
            AlgebraElement pb = multiply(AlgebraElement(B, QVector(pair_basis[a].begin(), pair_basis[a].begin() + nb)),
                                         AlgebraElement(B, QVector(pair_basis[b].begin(), pair_basis[b].begin() + nb)));
            AlgebraElement pc = multiply(AlgebraElement(C, QVector(pair_basis[a].begin() + nb, pair_basis[a].end())),
                                         AlgebraElement(C, QVector(pair_basis[b].begin() + nb, pair_basis[b].end())));
            QVector v(nb + nc);
            for (int j = 0; j < nb; ++j)
                v[j] = pb.coefficient(j);
            for (int j = 0; j < nc; ++j)
                v[nb + j] = pc.coefficient(j);
            products.set_col(a * nd + b, v);
        }
    auto expanded = basis_cols.solve_matrix(products);
    if (!expanded)
        throw std::logic_error("fiber product is not closed under multiplication");

    std::vector<ArtinAlgebra::SparseVec> table(static_cast<size_t>(nd) * nd);
    for (int a = 0; a < nd; ++a)
        for (int b = 0; b < nd; ++b)
            table[static_cast<size_t>(a) * nd + b] = sparse_from_vector(expanded->col(a * nd + b));
    auto D = make_table_algebra(std::move(names), std::move(table));

    QMatrix to_b(nb, nd), to_c(nc, nd);
    for (int i = 0; i < nd; ++i) {
        to_b.set_col(i, QVector(pair_basis[i].begin(), pair_basis[i].begin() + nb));
        to_c.set_col(i, QVector(pair_basis[i].begin() + nb, pair_basis[i].end()));
    }
    FiberProduct out{D, make_morphism_on_basis(D, B, std::move(to_b)),
                     make_morphism_on_basis(D, C, std::move(to_c)), pair_basis};
    return out;
}

}  // namespace deform
