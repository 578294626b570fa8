#include "deform/deformation.hpp"

#include <functional>

namespace deform {

DglaCochain mc_residual(const DglaCochain& x)
{
    if (x.degree() != 1)
        throw InputError("Maurer-Cartan residual requires a degree-1 cochain");
    DglaCochain half_bracket = bracket_eval(x, x).scaled(Rational(1, 2));
    return differential_eval(x) + half_bracket;
}

bool is_mc(const DglaCochain& x)
{
    return mc_residual(x).is_zero();
}

McSolution McSolution::verify(DglaCochain x)
{
    if (!is_mc(x))
        throw InputError("cochain is not a Maurer-Cartan solution");
    return McSolution(std::move(x));
}

GaugeWitness::GaugeWitness(DglaCochain parameter) : parameter_(std::move(parameter))
{
    if (parameter_.degree() != 0)
        throw InputError("gauge parameters live in degree 0");
}

GaugeWitness GaugeWitness::zero(Dgla::Ptr dgla, ArtinAlgebra::Ptr algebra)
{
    return GaugeWitness(DglaCochain(std::move(dgla), std::move(algebra), 0));
}

DglaCochain gauge_act(const GaugeWitness& a, const DglaCochain& x)
{
    if (x.degree() != 1)
        throw InputError("the gauge action is defined on degree-1 cochains");
    const DglaCochain& param = a.parameter();
    if (param.dgla() != x.dgla() || param.algebra() != x.algebra())
        throw InputError("cochain carriers do not match");

    // y_0 = [a, x] - da; each further application of [a, -] raises the
    // m-adic order, so the loop ends on an exactly zero term.
    DglaCochain term = bracket_eval(param, x) - differential_eval(param);
    DglaCochain acc = x;
    const int nil = x.algebra()->nil_index();
    for (int n = 0; !term.is_zero(); ++n) {
        if (n > nil)
            throw std::logic_error("gauge series failed to terminate");
        acc = acc + term.scaled(Rational(1) / factorial(static_cast<unsigned>(n + 1)));
        term = bracket_eval(param, term);
    }
    return acc;
}

namespace {

// Right-nested commutator ad_{w_1} ... ad_{w_{r-1}} (w_r) for a word over
// {a, b}.
DglaCochain nested_bracket(const std::vector<const DglaCochain*>& word)
{
    DglaCochain acc = *word.back();
    for (int i = static_cast<int>(word.size()) - 2; i >= 0; --i)
        acc = bracket_eval(*word[i], acc);
    return acc;
}

}  // namespace

GaugeWitness gauge_compose(const GaugeWitness& a, const GaugeWitness& b)
{
    const DglaCochain& xa = a.parameter();
    const DglaCochain& xb = b.parameter();
    if (xa.dgla() != xb.dgla() || xa.algebra() != xb.algebra())
        throw InputError("cochain carriers do not match");
    const int max_weight = xa.algebra()->nil_index() - 1;  // deeper words vanish

    DglaCochain acc(xa.dgla(), xa.algebra(), 0);
    // Dynkin expansion of log(e^a e^b): iterate over block counts n and
    // exponent pairs (p_i, q_i) with p_i + q_i >= 1 and total weight <= cutoff.
    std::vector<std::pair<int, int>> blocks;
    std::function<void(int, int)> enumerate = [&](int n_left, int weight_left) {
        if (!blocks.empty()) {
            // Evaluate the current block sequence.
            int weight = 0;
            Rational denom_fact(1);
            for (auto [p, q] : blocks) {
                weight += p + q;
                denom_fact *= factorial(static_cast<unsigned>(p)) *
                              factorial(static_cast<unsigned>(q));
            }
            std::vector<const DglaCochain*> word;
            const auto [pn, qn] = blocks.back();
            for (size_t i = 0; i + 1 < blocks.size(); ++i) {
                for (int r = 0; r < blocks[i].first; ++r)
                    word.push_back(&xa);
                for (int r = 0; r < blocks[i].second; ++r)
                    word.push_back(&xb);
            }
            if (qn >= 1) {
                for (int r = 0; r < pn; ++r)
                    word.push_back(&xa);
                for (int r = 0; r < qn; ++r)
                    word.push_back(&xb);
            } else {
                for (int r = 0; r < pn; ++r)
                    word.push_back(&xa);
            }
            // Words ending in [a, a] or [b, b] vanish on their own.
            const int n = static_cast<int>(blocks.size());
            Rational coeff = Rational((n - 1) % 2 == 0 ? 1 : -1, n);
            coeff /= Rational(weight) * denom_fact;
            acc = acc + nested_bracket(word).scaled(coeff);
        }
        if (n_left == 0 || weight_left == 0)
            return;
        for (int p = 0; p <= weight_left; ++p)
            for (int q = 0; p + q <= weight_left; ++q) {
                if (p + q == 0)
                    continue;
                blocks.emplace_back(p, q);
                enumerate(n_left - 1, weight_left - p - q);
                blocks.pop_back();
            }
    };
    enumerate(max_weight, max_weight);
    return GaugeWitness(acc);
}

namespace {

std::vector<int> stage_columns(const std::vector<int>& orders, int stage)
{
    std::vector<int> out;
    for (size_t c = 0; c < orders.size(); ++c)
        if (orders[c] == stage)
            out.push_back(static_cast<int>(c));
    return out;
}

}  // namespace

EquivalenceVerdict gauge_equivalent(const McSolution& x, const McSolution& y,
                                    const GaugeOptions& options)
{
    const DglaCochain& cx = x.cochain();
    const DglaCochain& cy = y.cochain();
    if (cx.dgla() != cy.dgla() || cx.algebra() != cy.algebra())
        throw InputError("cochain carriers do not match");
    const auto& L = cx.dgla();
    const auto& A = cx.algebra();

    EquivalenceVerdict verdict;
    if (cx == cy) {
        verdict.kind = EquivalenceVerdict::Kind::Equivalent;
        verdict.witness = GaugeWitness::zero(L, A);
        return verdict;
    }

    const int nil = A->nil_index();
    QMatrix d0 = L->differential_matrix(0);
    auto ker0 = d0.kernel_basis();
    const bool complete = L->bracket_is_zero() || ker0.empty();

    const QMatrix to_adapted = A->adapted_inverse().transpose();
    const QMatrix from_adapted = A->adapted_basis().transpose();
    const auto& orders = A->adapted_orders();
    auto cxplex = complex_of(L);
    auto h1 = cohomology(cxplex, 1);

    int nodes = 0;
    int deepest = 1;
    std::optional<EquivalenceVerdict> definite;

    std::function<std::optional<GaugeWitness>(const DglaCochain&, const GaugeWitness&, int)> dfs =
        [&](const DglaCochain& x_cur, const GaugeWitness& acc, int stage)
        -> std::optional<GaugeWitness> {
        if (definite || ++nodes > options.max_nodes)
            return std::nullopt;
        deepest = std::max(deepest, stage);
        DglaCochain p = x_cur - cy;
        if (p.is_zero())
            return acc;
        if (stage >= nil)
            throw std::logic_error("nonzero discrepancy beyond the nilpotency filtration");

        QMatrix p_ad = p.coefficients() * to_adapted;
        for (int c = 0; c < p_ad.cols(); ++c)
            if (orders[c] < stage && !is_zero(p_ad.col(c)))
                throw std::logic_error("stage discrepancy escapes the filtration");

        auto cols = stage_columns(orders, stage);
        std::vector<QVector> base(cols.size());
        bool solvable = true;
        for (size_t idx = 0; idx < cols.size(); ++idx) {
            auto sol = d0.solve(p_ad.col(cols[idx]));
            if (!sol) {
                solvable = false;
                break;
            }
            base[idx] = *sol;
        }
        if (!solvable) {
            if (complete || stage == 1) {
                std::vector<QVector> cocycles;
                std::vector<std::string> labels;
                for (int c : cols) {
                    cocycles.push_back(p_ad.col(c));
                    labels.push_back(
                        AlgebraElement(A, A->adapted_basis().col(c)).to_string());
                }
                EquivalenceVerdict neg;
                neg.kind = EquivalenceVerdict::Kind::NotEquivalent;
                neg.stage = stage;
                neg.certificate = class_of(h1, cocycles, labels);
                definite = std::move(neg);
            }
            return std::nullopt;
        }

        // Candidate corrections: the canonical solution, then grid shifts
        // along the stabilizer directions when the procedure is incomplete.
        const int k = static_cast<int>(ker0.size());
        const int m = static_cast<int>(cols.size());
        std::vector<std::vector<Rational>> shifts;  // each of size k*m
        shifts.emplace_back(k * m, Rational(0));
        if (!complete && k * m > 0) {
            std::vector<Rational> values{Rational(0)};
            for (int r = 1; r <= options.branch_grid_radius; ++r) {
                values.push_back(Rational(r));
                values.push_back(Rational(-r));
            }
            std::vector<size_t> odo(k * m, 0);
            while (static_cast<int>(shifts.size()) < options.max_candidates_per_stage) {
                size_t pos = 0;
                while (pos < odo.size()) {
                    if (++odo[pos] < values.size())
                        break;
                    odo[pos] = 0;
                    ++pos;
                }
                if (pos == odo.size())
                    break;
                std::vector<Rational> shift(k * m);
                bool all_zero = true;
                for (size_t i = 0; i < odo.size(); ++i) {
                    shift[i] = values[odo[i]];
                    if (shift[i] != 0)
                        all_zero = false;
                }
                if (!all_zero)
                    shifts.push_back(std::move(shift));
            }
        }

        for (const auto& shift : shifts) {
            QMatrix u_ad = QMatrix::zero(L->dim(0), A->dim());
            for (size_t idx = 0; idx < cols.size(); ++idx) {
                QVector col = base[idx];
                for (int r = 0; r < k; ++r) {
                    const Rational& gamma = shift[idx * k + r];
                    if (gamma != 0)
                        col = col + gamma * ker0[r];
                }
                u_ad.set_col(cols[idx], col);
            }
            GaugeWitness u(DglaCochain(L, A, 0, u_ad * from_adapted));
            DglaCochain x_next = gauge_act(u, x_cur);
            GaugeWitness acc_next = gauge_compose(u, acc);
            if (auto w = dfs(x_next, acc_next, stage + 1))
                return w;
            if (definite)
                return std::nullopt;
        }
        return std::nullopt;
    };

    auto witness = dfs(cx, GaugeWitness::zero(L, A), 1);
    if (witness) {
        if (!(gauge_act(*witness, cx) == cy))
            throw std::logic_error("gauge witness failed verification");
        verdict.kind = EquivalenceVerdict::Kind::Equivalent;
        verdict.witness = std::move(witness);
        return verdict;
    }
    if (definite)
        return *definite;
    verdict.kind = EquivalenceVerdict::Kind::Unknown;
    verdict.stage = deepest;
    return verdict;
}

TangentSpace tangent_space(const Dgla::Ptr& dgla)
{
    auto cx = complex_of(dgla);
    TangentSpace out{cohomology(cx, 1), {}};
    out.report.dim = out.h1.dim();

    auto dual = build_truncated_algebra({"eps"}, 2, {});
    auto embed = [&](const QVector& v) {
        QMatrix c(dgla->dim(1), 2);
        c.set_col(1, v);
        return DglaCochain(dgla, dual, 1, c);
    };

    // Representatives solve Maurer-Cartan over the dual numbers.
    out.report.representatives_mc = true;
    for (const auto& rep : out.h1.representatives())
        if (!is_mc(embed(rep)))
            out.report.representatives_mc = false;

    // Distinct representatives are never gauge equivalent.
    out.report.representatives_pairwise_inequivalent = true;
    for (size_t i = 0; i < out.h1.representatives().size(); ++i)
        for (size_t j = i + 1; j < out.h1.representatives().size(); ++j) {
            auto vi = McSolution::verify(embed(out.h1.representatives()[i]));
            auto vj = McSolution::verify(embed(out.h1.representatives()[j]));
            if (gauge_equivalent(vi, vj).kind != EquivalenceVerdict::Kind::NotEquivalent)
                out.report.representatives_pairwise_inequivalent = false;
        }

    // Every Maurer-Cartan solution is equivalent to its class combination;
    // by linearity it is enough to check a kernel basis of d^1.
    out.report.every_solution_covered = true;
    QMatrix d1 = dgla->differential_matrix(1);
    QMatrix d0 = dgla->differential_matrix(0);
    for (const auto& z : d1.kernel_basis()) {
        QVector coords = out.h1.projection().apply(z);
        QVector remainder = z;
        for (size_t i = 0; i < coords.size(); ++i)
            remainder = remainder - coords[i] * out.h1.representatives()[i];
        if (!d0.solve(remainder))
            out.report.every_solution_covered = false;
    }
    return out;
}

ObstructionReport obstruction_class(const SmallExtension& extension, const McSolution& downstairs)
{
    const DglaCochain& xbar = downstairs.cochain();
    if (xbar.algebra() != extension.quotient())
        throw InputError("solution does not live over the extension quotient");
    const auto& L = xbar.dgla();

    DglaCochain lift = xbar.split_coefficients(extension);
    DglaCochain h = mc_residual(lift);
    if (!h.map_coefficients(extension.projection()).is_zero())
        throw std::logic_error("obstruction residual has coefficients outside the ideal");
    if (!differential_eval(h).is_zero())
        throw std::logic_error("obstruction residual is not a cocycle");

    // Decompose h over the ideal basis: rows of the coefficient matrix lie
    // in the span of the ideal basis vectors.
    const int r = extension.ideal_dim();
    QMatrix K(extension.total()->dim(), r);
    std::vector<std::string> labels;
    for (int l = 0; l < r; ++l) {
        K.set_col(l, extension.ideal_basis()[l].coefficients());
        labels.push_back(extension.ideal_element_name(l));
    }
    auto decomposition = K.solve_matrix(h.coefficients().transpose());
    if (!decomposition)
        throw std::logic_error("residual decomposition over the ideal basis failed");

    auto h2 = cohomology(complex_of(L), 2);
    std::vector<QVector> cocycles;
    for (int l = 0; l < r; ++l)
        cocycles.push_back(decomposition->row(l));
    ObstructionReport report{extension, lift, h, class_of(h2, cocycles, labels)};
    return report;
}

LiftResult lift_mc(const SmallExtension& extension, const McSolution& downstairs)
{
    ObstructionReport report = obstruction_class(extension, downstairs);
    if (report.obstructed())
        return report;

    const auto& L = downstairs.cochain().dgla();
    auto cx = complex_of(L);
    const int r = extension.ideal_dim();
    QMatrix K(extension.total()->dim(), r);
    for (int l = 0; l < r; ++l)
        K.set_col(l, extension.ideal_basis()[l].coefficients());
    auto decomposition = K.solve_matrix(report.residual.coefficients().transpose());
    if (!decomposition)
        throw std::logic_error("residual decomposition over the ideal basis failed");

    QMatrix correction = QMatrix::zero(L->dim(1), extension.total()->dim());
    for (int l = 0; l < r; ++l) {
        auto z = preimage_d(cx, 1, decomposition->row(l));
        if (!std::holds_alternative<QVector>(z))
            throw std::logic_error("vanishing class failed to produce a preimage");
        const QVector& zeta = std::get<QVector>(z);
        for (int i = 0; i < correction.rows(); ++i)
            for (int a = 0; a < correction.cols(); ++a)
                correction.at(i, a) += zeta[i] * K.at(a, l);
    }
    DglaCochain lift = report.lift_attempt - DglaCochain(L, extension.total(), 1, correction);
    if (!(lift.map_coefficients(extension.projection()) == downstairs.cochain()))
        throw std::logic_error("lift does not reduce to the given solution");
    return McSolution::verify(std::move(lift));
}

LiftOutcome lift_along(const AlgebraMorphism& surjection, const McSolution& downstairs)
{
    if (downstairs.cochain().algebra() != surjection.target())
        throw InputError("solution does not live over the surjection target");
    LiftOutcome out;
    out.stages = factor_small_extensions(surjection);
    McSolution current = downstairs;
    for (size_t i = out.stages.size(); i-- > 0;) {
        auto lifted = lift_mc(out.stages[i], current);
        if (std::holds_alternative<ObstructionReport>(lifted)) {
            out.failure = std::get<ObstructionReport>(lifted);
            out.failed_stage = static_cast<int>(out.stages.size() - i);
            return out;
        }
        current = std::get<McSolution>(lifted);
    }
    out.lift = current;
    return out;
}

SmallExtensionMorphism make_small_extension_morphism(SmallExtension source, SmallExtension target,
                                                     AlgebraMorphism total_map)
{
    if (total_map.source() != source.total() || total_map.target() != target.total())
        throw InputError("total map does not connect the extension totals");

    // phi(I_1) must land in I_2.
    const int r1 = source.ideal_dim(), r2 = target.ideal_dim();
    QMatrix K2(target.total()->dim(), r2);
    for (int l = 0; l < r2; ++l)
        K2.set_col(l, target.ideal_basis()[l].coefficients());
    QMatrix ideal_matrix(r2, r1);
    for (int l = 0; l < r1; ++l) {
        QVector image = total_map.matrix().apply(source.ideal_basis()[l].coefficients());
        auto coords = K2.solve(image);
        if (!coords)
            throw InputError("total map does not carry the source ideal into the target ideal");
        ideal_matrix.set_col(l, *coords);
    }

    // Induced quotient map through the splitting; well-defined by the ideal
    // condition, validated as a morphism.
    QMatrix qmat(target.quotient()->dim(), source.quotient()->dim());
    for (int i = 0; i < source.quotient()->dim(); ++i) {
        QVector e(source.quotient()->dim(), Rational(0));
        e[i] = 1;
        qmat.set_col(i, target.projection().matrix().apply(
                            total_map.matrix().apply(source.splitting().apply(e))));
    }
    AlgebraMorphism quotient_map =
        make_morphism_on_basis(source.quotient(), target.quotient(), std::move(qmat));

    if (!(compose(target.projection(), total_map).matrix() ==
          compose(quotient_map, source.projection()).matrix()))
        throw InputError("small extension morphism square does not commute");

    return {std::move(source), std::move(target), std::move(total_map), std::move(quotient_map),
            std::move(ideal_matrix)};
}

NaturalityReport obstruction_naturality_check(const SmallExtensionMorphism& morphism,
                                              const McSolution& downstairs)
{
    // Left side: push the solution forward, then take its obstruction.
    McSolution pushed =
        McSolution::verify(downstairs.cochain().map_coefficients(morphism.quotient_map));
    ObstructionReport left = obstruction_class(morphism.target, pushed);

    // Right side: take the obstruction first, then map the ideal factor.
    ObstructionReport right_src = obstruction_class(morphism.source, downstairs);
    CohomologyClass right;
    right.degree = 2;
    const int r2 = morphism.target.ideal_dim();
    const int h2_dim = right_src.obstruction.coordinates.empty()
                           ? 0
                           : static_cast<int>(right_src.obstruction.coordinates[0].size());
    for (int m = 0; m < r2; ++m) {
        QVector acc(h2_dim, Rational(0));
        for (int l = 0; l < morphism.source.ideal_dim(); ++l)
            acc = acc + morphism.ideal_matrix.at(m, l) * right_src.obstruction.coordinates[l];
        right.coordinates.push_back(std::move(acc));
        right.ideal_labels.push_back(morphism.target.ideal_element_name(m));
    }

    NaturalityReport report;
    report.pushed_then_obstructed = left.obstruction;
    report.obstructed_then_mapped = right;
    report.equal = left.obstruction.coordinates == right.coordinates;
    return report;
}

EtaleReport etale_criterion(const DglaMorphism& morphism)
{
    auto src = complex_of(morphism.source());
    auto tgt = complex_of(morphism.target());
    EtaleReport report;

    auto induced = [&](int degree, QMatrix& out) {
        auto hs = cohomology(src, degree);
        auto ht = cohomology(tgt, degree);
        out = QMatrix(ht.dim(), hs.dim());
        QMatrix f = morphism.map_matrix(degree);
        for (int i = 0; i < hs.dim(); ++i) {
            QVector image = f.apply(hs.representatives()[i]);
            out.set_col(i, class_of(ht, image).plain());
        }
        return std::pair(hs.dim(), ht.dim());
    };
    auto [h1s, h1t] = induced(1, report.h1_map);
    auto [h2s, h2t] = induced(2, report.h2_map);
    report.h1_source_dim = h1s;
    report.h1_target_dim = h1t;
    report.h2_source_dim = h2s;
    report.h2_target_dim = h2t;

    const int rank1 = report.h1_map.rank();
    const int rank2 = report.h2_map.rank();
    report.h1_surjective = rank1 == h1t;
    report.h1_bijective = report.h1_surjective && rank1 == h1s;
    report.h2_injective = rank2 == h2s;

    if (report.h1_bijective && report.h2_injective)
        report.verdict = EtaleReport::Verdict::Etale;
    else if (report.h1_surjective && report.h2_injective)
        report.verdict = EtaleReport::Verdict::Smooth;
    else
        report.verdict = EtaleReport::Verdict::NotSatisfied;
    return report;
}

}  // namespace deform
