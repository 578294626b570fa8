#include "deform/models.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace deform {

namespace {

Rational q1(int n) { return Rational(n); }

Dgla::Ptr build_abelian_zero()
{
    return make_dgla(GradedVectorSpace{}, {}, {});
}

Dgla::Ptr build_abelian_line()
{
    GradedVectorSpace space;
    space.basis_names[1] = {"e"};
    return make_dgla(std::move(space), {}, {});
}

// Acyclic abelian complex whose differentials square to zero only through
// cancellation; single-entry sign flips are caught by the validator.
Dgla::Ptr build_abelian_fold()
{
    GradedVectorSpace space;
    space.basis_names[0] = {"u"};
    space.basis_names[1] = {"v1", "v2"};
    space.basis_names[2] = {"w1", "w2"};
    space.basis_names[3] = {"z"};
    std::map<int, QMatrix> diff;
    QMatrix d0(2, 1);
    d0.at(0, 0) = 1;
    d0.at(1, 0) = 1;
    QMatrix d1(2, 2);
    d1.at(0, 0) = 1;
    d1.at(0, 1) = -1;
    d1.at(1, 0) = 1;
    d1.at(1, 1) = -1;
    QMatrix d2(1, 2);
    d2.at(0, 0) = 1;
    d2.at(0, 1) = -1;
    diff[0] = d0;
    diff[1] = d1;
    diff[2] = d2;
    return make_dgla(std::move(space), std::move(diff), {});
}

Dgla::Ptr build_gauge_demo()
{
    GradedVectorSpace space;
    space.basis_names[0] = {"a0"};
    space.basis_names[1] = {"b1", "b2"};
    space.basis_names[2] = {"c"};
    QMatrix d0(2, 1);
    d0.at(0, 0) = 1;
    return make_dgla(std::move(space), {{0, d0}}, {{0, 0, 1, 0, 1, q1(1)}});
}

Dgla::Ptr build_gauge_demo_abelian()
{
    GradedVectorSpace space;
    space.basis_names[0] = {"a0"};
    space.basis_names[1] = {"b1", "b2"};
    QMatrix d0(2, 1);
    d0.at(0, 0) = 1;
    return make_dgla(std::move(space), {{0, d0}}, {});
}

// Leibniz holds through matching nonzero terms: d[a0, b1] = d b2 = c equals
// [d a0, b1] = [b1, b1] = c.
Dgla::Ptr build_leibniz_demo()
{
    GradedVectorSpace space;
    space.basis_names[0] = {"a0"};
    space.basis_names[1] = {"b1", "b2"};
    space.basis_names[2] = {"c"};
    QMatrix d0(2, 1);
    d0.at(0, 0) = 1;
    QMatrix d1(1, 2);
    d1.at(0, 1) = 1;
    return make_dgla(std::move(space), {{0, d0}, {1, d1}},
                     {{0, 0, 1, 0, 1, q1(1)}, {1, 0, 1, 0, 0, q1(1)}});
}

// sl2 concentrated in degree 0; Jacobi holds through cancellation.
Dgla::Ptr build_jacobi_demo()
{
    GradedVectorSpace space;
    space.basis_names[0] = {"h", "e", "f"};
    std::vector<BracketEntry> entries{
        {0, 0, 0, 1, 1, q1(2)},   // [h, e] = 2e
        {0, 0, 0, 2, 2, q1(-2)},  // [h, f] = -2f
        {0, 1, 0, 2, 0, q1(1)},   // [e, f] = h
    };
    return make_dgla(std::move(space), {}, entries);
}

Dgla::Ptr build_obstructed()
{
    GradedVectorSpace space;
    space.basis_names[1] = {"e"};
    space.basis_names[2] = {"f"};
    return make_dgla(std::move(space), {}, {{1, 0, 1, 0, 0, q1(1)}});
}

Dgla::Ptr build_unobstructed_corrected()
{
    GradedVectorSpace space;
    space.basis_names[1] = {"e", "g"};
    space.basis_names[2] = {"f"};
    QMatrix d1(1, 2);
    d1.at(0, 1) = 1;
    return make_dgla(std::move(space), {{1, d1}}, {{1, 0, 1, 0, 0, q1(1)}});
}

std::pair<Dgla::Ptr, GroupAction> build_swap_quotient()
{
    GradedVectorSpace space;
    space.basis_names[1] = {"e1", "e2"};
    auto dgla = make_dgla(std::move(space), {}, {});
    GroupAction action;
    action.element_names = {"1", "s"};
    action.table = {{0, 1}, {1, 0}};
    action.matrices.resize(2);
    QMatrix swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    action.matrices[1][1] = swap;
    return {dgla, action};
}

void verify_entry(const CatalogEntry& entry)
{
    auto fail = [&](const std::string& what) {
        throw std::logic_error("catalog entry '" + entry.name + "' failed verification: " + what);
    };
    if (!validate(*entry.dgla).ok())
        fail("DGLA axioms");
    if (entry.expected.abelian != entry.dgla->bracket_is_zero())
        fail("abelian flag");
    auto cx = complex_of(entry.dgla);
    for (const auto& [deg, dim] : entry.expected.cohomology_dims)
        if (cohomology(cx, deg).dim() != dim)
            fail("cohomology dimension in degree " + std::to_string(deg));

    if (entry.expected.lifting != CatalogExpected::Lifting::NotApplicable) {
        auto total = build_truncated_algebra({"t"}, 3, {});
        auto quot = build_truncated_algebra({"t"}, 2, {});
        auto ext = make_small_extension(truncation_morphism(total, quot));
        QMatrix c(entry.dgla->dim(1), 2);
        c.at(0, 1) = 1;
        auto witness = McSolution::verify(DglaCochain(entry.dgla, quot, 1, c));
        auto lifted = lift_mc(ext, witness);
        const bool obstructed = std::holds_alternative<ObstructionReport>(lifted);
        if (obstructed != (entry.expected.lifting == CatalogExpected::Lifting::ObstructedOverT3))
            fail("obstructedness over Q[t]/(t^3)");
    }

    if (entry.expected.invariant_dim_degree1) {
        if (!entry.action)
            fail("expected an action");
        auto sub = invariant_subalgebra(entry.dgla, *entry.action);
        if (sub.sub->dim(1) != *entry.expected.invariant_dim_degree1)
            fail("invariant dimension in degree 1");
    } else if (entry.action) {
        validate_action(entry.dgla, *entry.action);
    }
}

}  // namespace

std::vector<CatalogEntry> catalog()
{
    std::vector<CatalogEntry> entries;

    entries.push_back({"abelian_zero", build_abelian_zero(), std::nullopt,
                       {{}, true, CatalogExpected::Lifting::NotApplicable, std::nullopt}});
    entries.push_back({"abelian_line", build_abelian_line(), std::nullopt,
                       {{{1, 1}}, true, CatalogExpected::Lifting::NotApplicable, std::nullopt}});
    entries.push_back({"abelian_fold", build_abelian_fold(), std::nullopt,
                       {{{0, 0}, {1, 0}, {2, 0}, {3, 0}}, true,
                        CatalogExpected::Lifting::NotApplicable, std::nullopt}});
    entries.push_back({"gauge_demo", build_gauge_demo(), std::nullopt,
                       {{{0, 0}, {1, 1}, {2, 1}}, false, CatalogExpected::Lifting::NotApplicable,
                        std::nullopt}});
    entries.push_back({"gauge_demo_abelian", build_gauge_demo_abelian(), std::nullopt,
                       {{{0, 0}, {1, 1}}, true, CatalogExpected::Lifting::NotApplicable,
                        std::nullopt}});
    entries.push_back({"leibniz_demo", build_leibniz_demo(), std::nullopt,
                       {{{0, 0}, {1, 0}, {2, 0}}, false, CatalogExpected::Lifting::NotApplicable,
                        std::nullopt}});
    entries.push_back({"jacobi_demo", build_jacobi_demo(), std::nullopt,
                       {{{0, 3}}, false, CatalogExpected::Lifting::NotApplicable, std::nullopt}});
    entries.push_back({"obstructed", build_obstructed(), std::nullopt,
                       {{{1, 1}, {2, 1}}, false, CatalogExpected::Lifting::ObstructedOverT3,
                        std::nullopt}});
    entries.push_back({"unobstructed_corrected", build_unobstructed_corrected(), std::nullopt,
                       {{{1, 1}, {2, 0}}, false, CatalogExpected::Lifting::UnobstructedOverT3,
                        std::nullopt}});
    auto [swap_dgla, swap_action] = build_swap_quotient();
    entries.push_back({"swap_quotient", swap_dgla, swap_action,
                       {{{1, 2}}, true, CatalogExpected::Lifting::NotApplicable, 1}});

    for (const auto& entry : entries)
        verify_entry(entry);
    return entries;
}

CatalogEntry catalog_entry(const std::string& name)
{
    for (auto& entry : catalog())
        if (entry.name == name)
            return entry;
    throw InputError("unknown catalog entry '" + name + "'");
}

AbelianDeformations::AbelianDeformations(Dgla::Ptr dgla, ArtinAlgebra::Ptr algebra)
    : dgla_(std::move(dgla)), algebra_(std::move(algebra)),
      h1_(cohomology(complex_of(dgla_), 1))
{
    if (!dgla_->bracket_is_zero())
        throw InputError("the abelian oracle requires a zero bracket");
}

AbelianDeformations def_abelian_oracle(Dgla::Ptr dgla, ArtinAlgebra::Ptr algebra)
{
    return AbelianDeformations(std::move(dgla), std::move(algebra));
}

QMatrix AbelianDeformations::orbit_coordinates(const DglaCochain& x) const
{
    if (x.dgla() != dgla_ || x.algebra() != algebra_ || x.degree() != 1)
        throw InputError("oracle applied to a cochain on the wrong carrier");
    QMatrix out(h1_.dim(), algebra_->dim() - 1);
    for (int a = 1; a < algebra_->dim(); ++a) {
        QVector col = x.coefficients().col(a);
        out.set_col(a - 1, h1_.projection().apply(col));
    }
    return out;
}

bool AbelianDeformations::is_solution(const DglaCochain& x) const
{
    // Zero bracket: Maurer-Cartan means d x = 0 columnwise.
    return differential_eval(x).is_zero();
}

bool AbelianDeformations::equivalent(const DglaCochain& x, const DglaCochain& y) const
{
    if (!is_solution(x) || !is_solution(y))
        throw InputError("oracle compares Maurer-Cartan solutions only");
    return orbit_coordinates(x) == orbit_coordinates(y);
}

int FiniteGroup::identity() const
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

void FiniteGroup::validate() const
{
    const int n = order();
    if (n == 0)
        throw InputError("group must be nonempty");
    if (static_cast<int>(table.size()) != n)
        throw InputError("group table has wrong size");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n)
            throw InputError("group table is not square");
        for (int v : row)
            if (v < 0 || v >= n)
                throw InputError("group table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw InputError("group table is not associative");
    int e = identity();
    if (e < 0)
        throw InputError("group table has no identity");
    for (int a = 0; a < n; ++a) {
        bool inverse = false;
        for (int b = 0; b < n; ++b)
            if (table[a][b] == e && table[b][a] == e)
                inverse = true;
        if (!inverse)
            throw InputError("group element without inverse");
    }
}

FiniteGroup FiniteGroup::cyclic(int n)
{
    FiniteGroup g;
    for (int i = 0; i < n; ++i)
        g.names.push_back("g" + std::to_string(i));
    g.table.assign(n, std::vector<int>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            g.table[a][b] = (a + b) % n;
    return g;
}

bool EquivariantComplex::validate_and_check_exactness() const
{
    group.validate();
    const int n = group.order();
    const int top = top_degree();
    if (static_cast<int>(v_action.size()) != n || static_cast<int>(r_action.size()) != top + 1)
        throw InputError("action matrix tables have wrong sizes");
    for (int q = 0; q <= top; ++q)
        if (static_cast<int>(r_action[q].size()) != n)
            throw InputError("action matrix tables have wrong sizes");

    auto check_rep = [&](const std::vector<QMatrix>& mats, int dim, const std::string& label) {
        for (const auto& m : mats)
            if (m.rows() != dim || m.cols() != dim || !m.is_invertible())
                throw InputError(label + " action matrices must be invertible of matching size");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (!(mats[group.mult(a, b)] == mats[a] * mats[b]))
                    throw InputError(label + " matrices do not respect the group table");
    };
    check_rep(v_action, v_dim, "V");
    for (int q = 0; q <= top; ++q)
        check_rep(r_action[q], r_dims[q], "R^" + std::to_string(q));

    if (augmentation.rows() != r_dims[0] || augmentation.cols() != v_dim)
        throw InputError("augmentation shape mismatch");
    for (int q = 0; q + 1 <= top; ++q)
        if (r_differential[q].rows() != r_dims[q + 1] || r_differential[q].cols() != r_dims[q])
            throw InputError("representation differential shape mismatch");

    for (int g = 0; g < n; ++g) {
        if (!(augmentation * v_action[g] == r_action[0][g] * augmentation))
            throw InputError("augmentation is not equivariant");
        for (int q = 0; q + 1 <= top; ++q)
            if (!(r_differential[q] * r_action[q][g] == r_action[q + 1][g] * r_differential[q]))
                throw InputError("representation differential is not equivariant");
    }
    for (int q = 0; q + 2 <= top; ++q)
        if (!(r_differential[q + 1] * r_differential[q]).is_zero())
            throw InputError("representation differentials do not square to zero");
    if (top >= 1 && !(r_differential[0] * augmentation).is_zero())
        throw InputError("differential does not kill the augmentation");

    // Exactness of 0 -> V -> R^0 -> ... -> R^top -> 0, tail included.
    if (augmentation.rank() != v_dim)
        return false;
    for (int q = 0; q <= top; ++q) {
        QMatrix out = q < top ? r_differential[q] : QMatrix::zero(0, r_dims[top]);
        int nullity = out.cols() - out.rank();
        int image = q == 0 ? augmentation.rank() : r_differential[q - 1].rank();
        if (nullity != image)
            return false;
    }
    return true;
}

namespace {

// Index arithmetic for functions G^p -> W: basis (tuple, coefficient).
int tuple_count(int order, int p)
{
    int c = 1;
    for (int i = 0; i < p; ++i)
        c *= order;
    return c;
}

std::vector<int> tuple_of_index(int order, int p, int index)
{
    std::vector<int> t(p);
    for (int i = p - 1; i >= 0; --i) {
        t[i] = index % order;
        index /= order;
    }
    return t;
}

int index_of_tuple(int order, const std::vector<int>& t)
{
    int idx = 0;
    for (int g : t)
        idx = idx * order + g;
    return idx;
}

// Group cochain differential Fun(G^p, W) -> Fun(G^{p+1}, W) for the given
// per-element action on W.
QMatrix group_cochain_differential(const FiniteGroup& group, int p, int w_dim,
                                   const std::vector<QMatrix>& w_action)
{
    const int n = group.order();
    const int src_tuples = tuple_count(n, p);
    const int dst_tuples = tuple_count(n, p + 1);
    QMatrix m(dst_tuples * w_dim, src_tuples * w_dim);
    auto add_block = [&](int dst_tuple, int src_tuple, const QMatrix& block, int sign) {
        for (int i = 0; i < w_dim; ++i)
            for (int j = 0; j < w_dim; ++j)
                if (block.at(i, j) != 0)
                    m.at(dst_tuple * w_dim + i, src_tuple * w_dim + j) +=
                        Rational(sign) * block.at(i, j);
    };
    QMatrix id = QMatrix::identity(w_dim);
    for (int d = 0; d < dst_tuples; ++d) {
        auto t = tuple_of_index(n, p + 1, d);
        // g_1 acts on f(g_2, ..., g_{p+1}).
        add_block(d, index_of_tuple(n, std::vector<int>(t.begin() + 1, t.end())),
                  w_action[t[0]], 1);
        for (int i = 1; i <= p; ++i) {
            auto merged = t;
            merged[i - 1] = group.mult(t[i - 1], t[i]);
            merged.erase(merged.begin() + i);
            add_block(d, index_of_tuple(n, merged), id, i % 2 == 0 ? 1 : -1);
        }
        add_block(d, index_of_tuple(n, std::vector<int>(t.begin(), t.end() - 1)), id,
                  (p + 1) % 2 == 0 ? 1 : -1);
    }
    return m;
}

std::vector<std::string> generated_names(const std::string& prefix, int count)
{
    std::vector<std::string> names;
    for (int i = 0; i < count; ++i)
        names.push_back(prefix + std::to_string(i));
    return names;
}

}  // namespace

GroupCechModel group_cech_model(const EquivariantComplex& data, int cech_levels)
{
    const bool input_exact = data.validate_and_check_exactness();
    const int n = data.group.order();
    const int Q = data.top_degree();
    const int P = cech_levels < 0 ? Q + 1 : cech_levels;

    Bicomplex body;
    body.P = P;
    body.Q = Q;
    body.dims.assign(P + 1, std::vector<int>(Q + 1, 0));
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q)
            body.dims[p][q] = tuple_count(n, p) * data.r_dims[q];

    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            if (q + 1 <= Q) {
                // Pointwise coefficient differential.
                QMatrix m(body.dims[p][q + 1], body.dims[p][q]);
                const QMatrix& d = data.r_differential[q];
                for (int t = 0; t < tuple_count(n, p); ++t)
                    for (int i = 0; i < d.rows(); ++i)
                        for (int j = 0; j < d.cols(); ++j)
                            if (d.at(i, j) != 0)
                                m.at(t * d.rows() + i, t * d.cols() + j) = d.at(i, j);
                body.vertical[{p, q}] = std::move(m);
            }
            if (p + 1 <= P)
                body.horizontal[{p, q}] =
                    group_cochain_differential(data.group, p, data.r_dims[q], data.r_action[q]);
        }

    // Left edge: group cochains with coefficients in V.
    std::map<int, std::vector<std::string>> left_names;
    std::map<int, QMatrix> left_diffs;
    for (int p = 0; p <= P; ++p)
        left_names[p] = generated_names("c" + std::to_string(p) + "_",
                                        tuple_count(n, p) * data.v_dim);
    for (int p = 0; p + 1 <= P; ++p)
        left_diffs[p] = group_cochain_differential(data.group, p, data.v_dim, data.v_action);
    auto left_edge = CochainComplex::make(std::move(left_names), std::move(left_diffs));

    std::map<int, QMatrix> left_aug;
    for (int p = 0; p <= P; ++p) {
        QMatrix m(body.dims[p][0], tuple_count(n, p) * data.v_dim);
        for (int t = 0; t < tuple_count(n, p); ++t)
            for (int i = 0; i < data.augmentation.rows(); ++i)
                for (int j = 0; j < data.augmentation.cols(); ++j)
                    if (data.augmentation.at(i, j) != 0)
                        m.at(t * data.r_dims[0] + i, t * data.v_dim + j) =
                            data.augmentation.at(i, j);
        left_aug[p] = std::move(m);
    }

    // Bottom edge: invariants of R with the restricted differential.
    std::vector<QMatrix> inv_cols(Q + 1);
    std::map<int, std::vector<std::string>> bottom_names;
    for (int q = 0; q <= Q; ++q) {
        QMatrix stacked(0, data.r_dims[q]);
        for (int g = 0; g < n; ++g)
            stacked = stacked.vstack(data.r_action[q][g] - QMatrix::identity(data.r_dims[q]));
        auto kernel = stacked.kernel_basis();
        QMatrix cols(data.r_dims[q], static_cast<int>(kernel.size()));
        for (size_t i = 0; i < kernel.size(); ++i)
            cols.set_col(static_cast<int>(i), kernel[i]);
        inv_cols[q] = cols;
        bottom_names[q] = generated_names("i" + std::to_string(q) + "_", cols.cols());
    }
    std::map<int, QMatrix> bottom_diffs;
    for (int q = 0; q + 1 <= Q; ++q) {
        auto restricted = inv_cols[q + 1].solve_matrix(data.r_differential[q] * inv_cols[q]);
        if (!restricted)
            throw std::logic_error("invariants are not closed under the differential");
        bottom_diffs[q] = *restricted;
    }
    auto bottom_edge = CochainComplex::make(std::move(bottom_names), std::move(bottom_diffs));
    std::map<int, QMatrix> bottom_aug;
    for (int q = 0; q <= Q; ++q)
        bottom_aug[q] = inv_cols[q];

    GroupCechModel out{make_augmented_bicomplex(std::move(body), left_edge, bottom_edge,
                                                std::move(left_aug), std::move(bottom_aug)),
                       input_exact,
                       {}};
    out.hypotheses = check_hypotheses(out.model);
    return out;
}

EquivariantComplex random_equivariant_complex(Rng& rng)
{
    const int n = 1 + rng.below(4);
    EquivariantComplex data;
    data.group = FiniteGroup::cyclic(n);

    // V: a rational character (sign only for even order).
    bool sign_v = n % 2 == 0 && rng.flip();
    data.v_dim = 1;
    for (int g = 0; g < n; ++g) {
        QMatrix m(1, 1);
        m.at(0, 0) = sign_v && g % 2 == 1 ? -1 : 1;
        data.v_action.push_back(m);
    }

    const int Q = n <= 2 ? 1 + rng.below(2) : 1;
    struct Block {
        int degree;        // cone occupies degree and degree + 1; -1 for the V block
        bool sign;         // character of the block
        Rational scale;    // cone differential scale
    };
    std::vector<Block> blocks;
    const int cones = 1 + rng.below(3);
    for (int c = 0; c < cones; ++c) {
        Block b;
        b.degree = rng.below(Q);
        b.sign = n % 2 == 0 && rng.flip();
        static const int scale_pool[] = {1, -1, 2, -2};
        b.scale = Rational(scale_pool[rng.below(4)]);
        if (rng.flip())
            b.scale /= 2;
        blocks.push_back(b);
    }

    data.r_dims.assign(Q + 1, 0);
    data.r_dims[0] = data.v_dim;  // constant resolution block
    for (const auto& b : blocks) {
        data.r_dims[b.degree] += 1;
        data.r_dims[b.degree + 1] += 1;
    }

    data.r_action.assign(Q + 1, std::vector<QMatrix>(n));
    data.r_differential.assign(Q, QMatrix());
    for (int q = 0; q <= Q; ++q)
        for (int g = 0; g < n; ++g)
            data.r_action[q][g] = QMatrix::identity(data.r_dims[q]);
    for (int q = 0; q < Q; ++q)
        data.r_differential[q] = QMatrix::zero(data.r_dims[q + 1], data.r_dims[q]);

    // Lay the blocks out: the V copy sits first in R^0, then cone halves in
    // the order the blocks were drawn.
    std::vector<int> cursor(Q + 1, 0);
    cursor[0] = data.v_dim;
    data.augmentation = QMatrix(data.r_dims[0], data.v_dim);
    for (int j = 0; j < data.v_dim; ++j)
        data.augmentation.at(j, j) = 1;
    for (int g = 0; g < n; ++g)
        for (int j = 0; j < data.v_dim; ++j)
            data.r_action[0][g].at(j, j) = data.v_action[g].at(j, j);

    for (const auto& b : blocks) {
        int lo = cursor[b.degree]++;
        int hi = cursor[b.degree + 1]++;
        data.r_differential[b.degree].at(hi, lo) = b.scale;
        for (int g = 0; g < n; ++g) {
            Rational chi = b.sign && g % 2 == 1 ? -1 : 1;
            data.r_action[b.degree][g].at(lo, lo) = chi;
            data.r_action[b.degree + 1][g].at(hi, hi) = chi;
        }
    }
    return data;
}

SimplicialComplex SimplicialComplex::from_maximal(
    const std::vector<std::vector<std::string>>& maximal)
{
    if (maximal.empty())
        throw InputError("simplicial complex must be nonempty");
    SimplicialComplex K;
    std::set<std::string> vertex_set;
    for (const auto& s : maximal)
        for (const auto& v : s)
            vertex_set.insert(v);
    K.vertex_names.assign(vertex_set.begin(), vertex_set.end());
    auto vertex_index = [&](const std::string& v) {
        return static_cast<int>(std::lower_bound(K.vertex_names.begin(), K.vertex_names.end(), v) -
                                K.vertex_names.begin());
    };

    std::set<std::vector<int>> simplices;
    for (const auto& s : maximal) {
        std::set<int> verts;
        for (const auto& v : s)
            verts.insert(vertex_index(v));
        std::vector<int> base(verts.begin(), verts.end());
        if (base.empty())
            throw InputError("empty simplex");
        // All nonempty subsets.
        const int count = 1 << base.size();
        for (int mask = 1; mask < count; ++mask) {
            std::vector<int> face;
            for (size_t i = 0; i < base.size(); ++i)
                if (mask & (1 << i))
                    face.push_back(base[i]);
            simplices.insert(face);
        }
    }
    int dim = 0;
    for (const auto& s : simplices)
        dim = std::max(dim, static_cast<int>(s.size()) - 1);
    K.by_dim.assign(dim + 1, {});
    for (const auto& s : simplices)
        K.by_dim[s.size() - 1].push_back(s);
    for (auto& level : K.by_dim)
        std::sort(level.begin(), level.end());
    return K;
}

SimplicialComplex SimplicialComplex::boundary_of_simplex(int n)
{
    std::vector<std::string> all;
    for (int i = 0; i <= n; ++i)
        all.push_back("v" + std::to_string(i));
    std::vector<std::vector<std::string>> maximal;
    for (int omit = 0; omit <= n; ++omit) {
        std::vector<std::string> facet;
        for (int i = 0; i <= n; ++i)
            if (i != omit)
                facet.push_back(all[i]);
        maximal.push_back(facet);
    }
    return from_maximal(maximal);
}

namespace {

std::string simplex_name(const SimplicialComplex& K, const std::vector<int>& s)
{
    std::string out;
    for (size_t i = 0; i < s.size(); ++i)
        out += (i ? "|" : "") + K.vertex_names[s[i]];
    return out;
}

// Closed star: all simplices contained in a simplex containing sigma.
std::vector<std::vector<std::vector<int>>> closed_star(const SimplicialComplex& K,
                                                       const std::vector<int>& sigma)
{
    std::set<std::vector<int>> star;
    for (const auto& level : K.by_dim)
        for (const auto& s : level) {
            if (!std::includes(s.begin(), s.end(), sigma.begin(), sigma.end()))
                continue;
            const int count = 1 << s.size();
            for (int mask = 1; mask < count; ++mask) {
                std::vector<int> face;
                for (size_t i = 0; i < s.size(); ++i)
                    if (mask & (1 << i))
                        face.push_back(s[i]);
                star.insert(face);
            }
        }
    int dim = 0;
    for (const auto& s : star)
        dim = std::max(dim, static_cast<int>(s.size()) - 1);
    std::vector<std::vector<std::vector<int>>> by_dim(dim + 1);
    for (const auto& s : star)
        by_dim[s.size() - 1].push_back(s);
    for (auto& level : by_dim)
        std::sort(level.begin(), level.end());
    return by_dim;
}

int position_of(const std::vector<std::vector<int>>& sorted, const std::vector<int>& s)
{
    auto it = std::lower_bound(sorted.begin(), sorted.end(), s);
    if (it == sorted.end() || *it != s)
        return -1;
    return static_cast<int>(it - sorted.begin());
}

// Simplicial coboundary matrix C^q(by_dim) -> C^{q+1}(by_dim).
QMatrix coboundary_matrix(const std::vector<std::vector<std::vector<int>>>& by_dim, int q)
{
    const auto& rows = q + 1 < static_cast<int>(by_dim.size())
                           ? by_dim[q + 1]
                           : std::vector<std::vector<int>>{};
    const auto& cols = q < static_cast<int>(by_dim.size()) ? by_dim[q]
                                                           : std::vector<std::vector<int>>{};
    QMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t r = 0; r < rows.size(); ++r) {
        const auto& tau = rows[r];
        for (size_t omit = 0; omit < tau.size(); ++omit) {
            std::vector<int> face;
            for (size_t i = 0; i < tau.size(); ++i)
                if (i != omit)
                    face.push_back(tau[i]);
            int c = position_of(cols, face);
            if (c >= 0)
                m.at(static_cast<int>(r), c) += Rational(omit % 2 == 0 ? 1 : -1);
        }
    }
    return m;
}

}  // namespace

CochainComplex::Ptr simplicial_cochain_complex(const SimplicialComplex& K)
{
    std::map<int, std::vector<std::string>> names;
    std::map<int, QMatrix> diffs;
    for (int d = 0; d <= K.dim(); ++d) {
        std::vector<std::string> level;
        for (const auto& s : K.by_dim[d])
            level.push_back(simplex_name(K, s));
        names[d] = level;
    }
    for (int d = 0; d + 1 <= K.dim(); ++d)
        diffs[d] = coboundary_matrix(K.by_dim, d);
    return CochainComplex::make(std::move(names), std::move(diffs));
}

AugmentedBicomplex cech_simplicial_model(const SimplicialComplex& K)
{
    const int P = K.dim();
    // Stars of simplices are subcomplexes of K; rows run over their cochain
    // degrees, bounded by the dimension of K.
    const int Q = K.dim();

    // Precompute stars per p-simplex.
    std::vector<std::vector<std::vector<std::vector<std::vector<int>>>>> stars(P + 1);
    for (int p = 0; p <= P; ++p)
        for (const auto& sigma : K.by_dim[p])
            stars[p].push_back(closed_star(K, sigma));

    auto star_count = [&](int p, int s, int q) {
        const auto& star = stars[p][s];
        return q < static_cast<int>(star.size()) ? static_cast<int>(star[q].size()) : 0;
    };
    auto block_offset = [&](int p, int s, int q) {
        int off = 0;
        for (int i = 0; i < s; ++i)
            off += star_count(p, i, q);
        return off;
    };

    Bicomplex body;
    body.P = P;
    body.Q = Q;
    body.dims.assign(P + 1, std::vector<int>(Q + 1, 0));
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            int d = 0;
            for (size_t s = 0; s < stars[p].size(); ++s)
                d += star_count(p, static_cast<int>(s), q);
            body.dims[p][q] = d;
        }

    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            if (q + 1 <= Q) {
                QMatrix m(body.dims[p][q + 1], body.dims[p][q]);
                for (size_t s = 0; s < stars[p].size(); ++s) {
                    QMatrix block = coboundary_matrix(stars[p][s], q);
                    int ro = block_offset(p, static_cast<int>(s), q + 1);
                    int co = block_offset(p, static_cast<int>(s), q);
                    for (int i = 0; i < block.rows(); ++i)
                        for (int j = 0; j < block.cols(); ++j)
                            if (block.at(i, j) != 0)
                                m.at(ro + i, co + j) = block.at(i, j);
                }
                body.vertical[{p, q}] = std::move(m);
            }
            if (p + 1 <= P) {
                QMatrix m(body.dims[p + 1][q], body.dims[p][q]);
                for (size_t t = 0; t < K.by_dim[p + 1].size(); ++t) {
                    const auto& sigma_prime = K.by_dim[p + 1][t];
                    const auto& star_prime = stars[p + 1][t];
                    const auto& target_level =
                        q < static_cast<int>(star_prime.size()) ? star_prime[q]
                                                                : std::vector<std::vector<int>>{};
                    for (size_t omit = 0; omit < sigma_prime.size(); ++omit) {
                        std::vector<int> face;
                        for (size_t i = 0; i < sigma_prime.size(); ++i)
                            if (i != omit)
                                face.push_back(sigma_prime[i]);
                        int fpos = position_of(K.by_dim[p], face);
                        if (fpos < 0)
                            throw std::logic_error("complex is not closed under faces");
                        Rational sign(omit % 2 == 0 ? 1 : -1);
                        // Restriction: a q-simplex of st(sigma') also lies in
                        // st(face).
                        const auto& face_level = stars[p][fpos][q];
                        for (size_t c = 0; c < target_level.size(); ++c) {
                            int src = position_of(face_level, target_level[c]);
                            if (src < 0)
                                throw std::logic_error("star restriction missing a simplex");
                            m.at(block_offset(p + 1, static_cast<int>(t), q) + static_cast<int>(c),
                                 block_offset(p, fpos, q) + src) += sign;
                        }
                    }
                }
                body.horizontal[{p, q}] = std::move(m);
            }
        }

    // Left edge: one constant per p-simplex with the simplicial coboundary.
    std::map<int, std::vector<std::string>> left_names;
    std::map<int, QMatrix> left_diffs;
    for (int p = 0; p <= P; ++p) {
        std::vector<std::string> names;
        for (const auto& s : K.by_dim[p])
            names.push_back(simplex_name(K, s));
        left_names[p] = names;
    }
    for (int p = 0; p + 1 <= P; ++p)
        left_diffs[p] = coboundary_matrix(K.by_dim, p);
    auto left_edge = CochainComplex::make(std::move(left_names), std::move(left_diffs));

    std::map<int, QMatrix> left_aug;
    for (int p = 0; p <= P; ++p) {
        QMatrix m(body.dims[p][0], K.count(p));
        for (int s = 0; s < K.count(p); ++s) {
            int vertices = star_count(p, s, 0);
            for (int i = 0; i < vertices; ++i)
                m.at(block_offset(p, s, 0) + i, s) = 1;
        }
        left_aug[p] = std::move(m);
    }

    auto bottom_edge = simplicial_cochain_complex(K);
    std::map<int, QMatrix> bottom_aug;
    for (int q = 0; q <= Q; ++q) {
        QMatrix m(body.dims[0][q], K.count(q));
        for (int c = 0; c < K.count(q); ++c) {
            const auto& simplex = K.by_dim[q][c];
            for (int v = 0; v < K.count(0); ++v) {
                int pos = q < static_cast<int>(stars[0][v].size())
                              ? position_of(stars[0][v][q], simplex)
                              : -1;
                if (pos >= 0)
                    m.at(block_offset(0, v, q) + pos, c) = 1;
            }
        }
        bottom_aug[q] = std::move(m);
    }

    return make_augmented_bicomplex(std::move(body), left_edge, bottom_edge, std::move(left_aug),
                                    std::move(bottom_aug));
}

}  // namespace deform
