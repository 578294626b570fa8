#include "deform/selftest.hpp"

#include "deform/deformation.hpp"
#include "deform/models.hpp"

#include <functional>
#include <sstream>

namespace deform {

namespace {

struct SuiteSizes {
    int algebras, extensions, fiber, equalizer, cochain_axioms, homology, gauge_mc, group_law,
        residual, splitting, completeness, gluing, functorial, group_seeds, oracle_radius;
};

SuiteSizes sizes_for(const std::string& profile)
{
    if (profile == "medium")
        return {25, 20, 15, 16, 25, 20, 60, 40, 25, 20, 12, 12, 16, 30, 1};
    if (profile == "small")
        return {10, 8, 6, 8, 10, 8, 20, 15, 10, 8, 6, 6, 8, 10, 1};
    throw InputError("unknown selftest profile '" + profile + "' (expected small or medium)");
}

class Runner {
public:
    Runner(uint64_t seed, std::vector<PropertyResult>& out) : seed_(seed), out_(out) {}

    void run(const std::string& module, const std::string& name,
             const std::function<void(Rng&, std::function<void(bool, const std::string&)>)>& body)
    {
        PropertyResult result;
        result.module = module;
        result.name = name;
        result.pass = true;
        Rng rng(seed_ * 1000003ULL + static_cast<uint64_t>(out_.size()) * 7919ULL + 17ULL);
        auto check = [&](bool ok, const std::string& detail) {
            ++result.cases;
            if (!ok && result.pass) {
                result.pass = false;
                result.detail = detail;
            }
        };
        try {
            body(rng, check);
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        out_.push_back(std::move(result));
    }

private:
    uint64_t seed_;
    std::vector<PropertyResult>& out_;
};

}  // namespace

ArtinAlgebra::Ptr random_test_algebra(Rng& rng)
{
    const int gens = 1 + rng.below(2);
    const int trunc = 2 + rng.below(3);
    std::vector<std::string> names = gens == 1 ? std::vector<std::string>{"t"}
                                               : std::vector<std::string>{"x", "y"};
    std::vector<Monomial> relations;
    if (gens == 2 && rng.flip()) {
        static const std::vector<std::vector<unsigned>> pool{{2, 0}, {1, 1}, {0, 2}};
        relations.emplace_back(pool[rng.below(3)]);
    }
    return build_truncated_algebra(names, trunc, relations);
}

Dgla::Ptr random_test_dgla(const std::vector<CatalogEntry>& entries, Rng& rng)
{
    static const char* pool[] = {"abelian_line", "abelian_fold",     "gauge_demo",
                                 "gauge_demo_abelian", "obstructed", "unobstructed_corrected",
                                 "leibniz_demo", "jacobi_demo"};
    auto find = [&](const std::string& name) -> Dgla::Ptr {
        for (const auto& e : entries)
            if (e.name == name)
                return e.dgla;
        throw std::logic_error("catalog entry missing: " + name);
    };
    Dgla::Ptr base = find(pool[rng.below(8)]);
    if (rng.flip())
        base = direct_sum(base, find("abelian_line"));
    if (rng.below(3) == 0) {
        // Random unitriangular transport keeps all axioms exactly.
        std::map<int, QMatrix> maps;
        for (int d : base->degrees()) {
            QMatrix s = QMatrix::identity(base->dim(d));
            for (int i = 0; i < s.rows(); ++i)
                for (int j = i + 1; j < s.cols(); ++j)
                    if (rng.below(3) == 0)
                        s.at(i, j) = rng.small_int(2);
            maps[d] = s;
        }
        base = transport(base, maps);
    }
    return base;
}

DglaCochain random_test_cochain(const Dgla::Ptr& dgla, const ArtinAlgebra::Ptr& algebra,
                                int degree, Rng& rng, int density)
{
    QMatrix coeffs(dgla->dim(degree), algebra->dim());
    for (int i = 0; i < coeffs.rows(); ++i)
        for (int a = 1; a < coeffs.cols(); ++a)
            if (rng.below(density + 1) == 0)
                coeffs.at(i, a) = rng.small_rational(2);
    return DglaCochain(dgla, algebra, degree, coeffs);
}

// Deep cocycle gauged by a random parameter: always an exact solution.
McSolution random_test_mc(const Dgla::Ptr& dgla, const ArtinAlgebra::Ptr& algebra, Rng& rng)
{
    const int nil = algebra->nil_index();
    const int threshold = dgla->bracket_is_zero() ? 1 : (nil + 1) / 2;
    QMatrix coeffs(dgla->dim(1), algebra->dim());
    auto kernel = dgla->differential_matrix(1).kernel_basis();
    if (!kernel.empty())
        for (int a = 1; a < algebra->dim(); ++a) {
            if (algebra->basis_degrees()[a] < threshold)
                continue;
            QVector col(dgla->dim(1), Rational(0));
            for (const auto& k : kernel)
                if (rng.flip())
                    col = col + rng.small_rational(2) * k;
            coeffs.set_col(a, col);
        }
    DglaCochain seed_solution(dgla, algebra, 1, coeffs);
    if (!is_mc(seed_solution))
        throw std::logic_error("random Maurer-Cartan seed is not a solution");
    GaugeWitness a{random_test_cochain(dgla, algebra, 0, rng)};
    return McSolution::verify(gauge_act(a, seed_solution));
}

namespace {

int sign_pow(int e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

bool SelftestReport::all_pass() const
{
    for (const auto& r : results)
        if (!r.pass)
            return false;
    return true;
}

SelftestReport run_selftest(uint64_t seed, const std::string& profile)
{
    const SuiteSizes n = sizes_for(profile);
    SelftestReport report;
    report.seed = seed;
    report.profile = profile;
    Runner runner(seed, report.results);
    const auto entries = catalog();

    runner.run("artin", "algebra-axioms-and-nilpotency", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.algebras; ++i) {
            auto a = random_test_algebra(rng);
            check(a->nil_index() <= a->truncation_order(), "nil index exceeds truncation");
            for (int b = 1; b < a->dim(); ++b) {
                AlgebraElement power = AlgebraElement::basis(a, b);
                for (int k = 1; k < a->nil_index(); ++k)
                    power = multiply(power, AlgebraElement::basis(a, b));
                check(power.is_zero(), "positive basis element not nilpotent at nil index");
            }
        }
    });

    runner.run("artin", "small-extension-chains", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.extensions; ++i) {
            auto total = random_test_algebra(rng);
            int low = 1 + rng.below(total->truncation_order() - 1);
            auto quotient = build_truncated_algebra(total->generator_names(), low, {});
            auto surjection = truncation_morphism(total, quotient);
            auto steps = factor_small_extensions(surjection);
            check(!steps.empty(), "no factorization produced");
            check(steps.front().total() == total && steps.back().quotient() == quotient,
                  "chain endpoints wrong");
            QMatrix composite = QMatrix::identity(total->dim());
            for (const auto& step : steps) {
                composite = step.projection().matrix() * composite;
                for (const auto& kappa : step.ideal_basis())
                    for (int b = 1; b < step.total()->dim(); ++b)
                        check(multiply(AlgebraElement::basis(step.total(), b), kappa).is_zero(),
                              "step is not small");
            }
            check(composite == surjection.matrix(), "chain does not compose to the input");
        }
    });

    runner.run("artin", "fiber-product-universal-property", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.fiber; ++i) {
            int a = 2 + rng.below(3);
            auto B = build_truncated_algebra({"t"}, a, {});
            auto A = build_truncated_algebra({"t"}, 1 + rng.below(a - 1), {});
            auto f = truncation_morphism(B, A);
            auto g = identity_morphism(A);
            auto fp = fiber_product(f, g);
            // T -> B random, v = f o u keeps the square commuting.
            auto T = build_truncated_algebra({"s"}, a, {});
            QVector img(B->dim(), Rational(0));
            img[1] = 1 + rng.below(2);
            if (B->dim() > 2 && rng.flip())
                img[2] = rng.small_int(2);
            auto u = make_morphism(T, B, {AlgebraElement(B, img)});
            auto v = compose(f, u);
            QMatrix cols(B->dim() + A->dim(), fp.algebra->dim());
            for (int c = 0; c < fp.algebra->dim(); ++c)
                cols.set_col(c, fp.pair_basis[c]);
            auto induced = cols.solve_matrix(u.matrix().vstack(v.matrix()));
            check(induced.has_value(), "induced map does not factor");
            if (!induced)
                continue;
            try {
                auto h = make_morphism_on_basis(T, fp.algebra, *induced);
                check(compose(fp.to_first, h).matrix() == u.matrix(), "first projection mismatch");
                check(compose(fp.to_second, h).matrix() == v.matrix(),
                      "second projection mismatch");
            } catch (const InputError& e) {
                check(false, std::string("induced map is not a morphism: ") + e.what());
            }
        }
    });

    runner.run("dgla", "equalizer-validates", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.equalizer; ++i) {
            auto L = random_test_dgla(entries, rng);
            auto doubled = direct_sum(L, L);
            std::map<int, QMatrix> swap_maps;
            for (int d : doubled->degrees()) {
                int half = L->dim(d);
                QMatrix s(doubled->dim(d), doubled->dim(d));
                for (int k = 0; k < half; ++k) {
                    s.at(k, half + k) = 1;
                    s.at(half + k, k) = 1;
                }
                swap_maps[d] = s;
            }
            auto f = make_dgla_morphism(doubled, doubled, std::move(swap_maps));
            auto g = identity_dgla_morphism(doubled);
            auto sub = equalizer_subalgebra(f, g);
            check(validate(*sub.sub).ok(), "equalizer output fails validation");
            for (int d : doubled->degrees())
                check(sub.sub->dim(d) == L->dim(d), "diagonal equalizer has wrong dimension");
        }
    });

    runner.run("dgla", "invariants-match-equalizer-and-projector", [&](Rng& rng, auto check) {
        (void)rng;
        auto entry = catalog_entry("swap_quotient");
        auto inv = invariant_subalgebra(entry.dgla, *entry.action);
        check(validate(*inv.sub).ok(), "invariant subalgebra fails validation");
        QMatrix swap = entry.action->matrices[1].at(1);
        auto f = make_dgla_morphism(entry.dgla, entry.dgla, {{1, swap}});
        auto eq = equalizer_subalgebra(f, identity_dgla_morphism(entry.dgla));
        for (int d : entry.dgla->degrees())
            check(inv.sub->dim(d) == eq.sub->dim(d), "invariants disagree with the equalizer");
        QMatrix p = averaging_projector(entry.dgla, *entry.action, 1);
        check(p * p == p, "averaging projector is not idempotent");
        check(p.rank() == inv.sub->dim(1), "projector rank disagrees with invariants");
    });

    runner.run("dgla", "cochain-level-axioms", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.cochain_axioms; ++i) {
            auto L = random_test_dgla(entries, rng);
            auto A = random_test_algebra(rng);
            auto degrees = L->degrees();
            if (degrees.empty())
                continue;
            int p = degrees[rng.below(static_cast<int>(degrees.size()))];
            int q = degrees[rng.below(static_cast<int>(degrees.size()))];
            auto u = random_test_cochain(L, A, p, rng);
            auto v = random_test_cochain(L, A, q, rng);
            check(differential_eval(differential_eval(u)).is_zero(), "d^2 is nonzero on cochains");
            auto uv = bracket_eval(u, v);
            auto vu = bracket_eval(v, u);
            check((uv + vu.scaled(Rational(sign_pow(p * q)))).is_zero(),
                  "graded skew-symmetry fails on cochains");
            auto lhs = differential_eval(uv);
            auto rhs = bracket_eval(differential_eval(u), v) +
                       bracket_eval(u, differential_eval(v)).scaled(Rational(sign_pow(p)));
            check(lhs == rhs, "graded Leibniz fails on cochains");
        }
    });

    runner.run("homology", "rank-nullity-transpose-crosscheck", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.homology; ++i) {
            auto L = random_test_dgla(entries, rng);
            auto cx = complex_of(L);
            for (int d : cx->degrees()) {
                QMatrix d_out = cx->differential(d);
                QMatrix d_in = cx->differential(d - 1);
                int nullity = d_out.cols() - d_out.rank();
                int image = d_in.transpose().rank();
                check(cohomology(cx, d).dim() == nullity - image,
                      "cohomology dimension disagrees with rank-nullity");
            }
        }
    });

    runner.run("homology", "preimage-roundtrip-and-projection", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.homology; ++i) {
            auto L = random_test_dgla(entries, rng);
            auto cx = complex_of(L);
            for (int d : cx->degrees()) {
                if (cx->dim(d + 1) == 0)
                    continue;
                QVector z(cx->dim(d), Rational(0));
                for (auto& c : z)
                    c = rng.small_rational(2);
                QVector target = cx->differential(d).apply(z);
                auto r = preimage_d(cx, d, target);
                check(std::holds_alternative<QVector>(r), "coboundary has no preimage");
                if (std::holds_alternative<QVector>(r))
                    check(cx->differential(d).apply(std::get<QVector>(r)) == target,
                          "preimage does not reproduce the target");
                auto basis = cohomology(cx, d + 1);
                check(is_zero(class_of(basis, target).plain()), "coboundary class is nonzero");
            }
        }
    });

    runner.run("deformation", "gauge-preserves-mc", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.gauge_mc; ++i) {
            auto L = random_test_dgla(entries, rng);
            auto A = random_test_algebra(rng);
            auto x = random_test_mc(L, A, rng);
            GaugeWitness a{random_test_cochain(L, A, 0, rng)};
            check(mc_residual(gauge_act(a, x.cochain())).is_zero(),
                  "gauge action broke the Maurer-Cartan equation");
        }
    });

    runner.run("deformation", "gauge-group-law", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.group_law; ++i) {
            auto L = random_test_dgla(entries, rng);
            auto A = random_test_algebra(rng);
            GaugeWitness a{random_test_cochain(L, A, 0, rng)};
            GaugeWitness b{random_test_cochain(L, A, 0, rng)};
            auto x = random_test_mc(L, A, rng).cochain();
            check(gauge_act(gauge_compose(a, b), x) == gauge_act(a, gauge_act(b, x)),
                  "BCH composition disagrees with iterated action");
            check(gauge_act(GaugeWitness::zero(L, A), x) == x, "zero parameter moved a solution");
        }
    });

    runner.run("deformation", "residual-is-a-cocycle", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.residual; ++i) {
            auto L = random_test_dgla(entries, rng);
            auto total = build_truncated_algebra({"t"}, 2 + rng.below(3), {});
            auto quotient =
                build_truncated_algebra({"t"}, 1 + rng.below(total->truncation_order() - 1), {});
            auto steps = factor_small_extensions(truncation_morphism(total, quotient));
            const auto& ext = steps.back();
            auto xbar = random_test_mc(L, ext.quotient(), rng);
            auto report = obstruction_class(ext, xbar);
            check(differential_eval(report.residual).is_zero(), "residual is not a cocycle");
            check(report.residual.map_coefficients(ext.projection()).is_zero(),
                  "residual escapes the ideal");
        }
    });

    runner.run("deformation", "obstruction-splitting-independence", [&](Rng& rng, auto check) {
        auto L = catalog_entry("obstructed").dgla;
        auto total = build_truncated_algebra({"t"}, 3, {});
        auto quotient = build_truncated_algebra({"t"}, 2, {});
        auto ext = make_small_extension(truncation_morphism(total, quotient));
        QMatrix c(1, 2);
        c.at(0, 1) = 1;
        auto xbar = McSolution::verify(DglaCochain(L, quotient, 1, c));
        auto base = obstruction_class(ext, xbar);
        for (int i = 0; i < n.splitting; ++i) {
            QMatrix pert(3, 2);
            pert.at(2, 1) = rng.small_rational(3);
            auto perturbed = obstruction_class(ext.with_perturbed_splitting(pert), xbar);
            check(perturbed.obstruction.coordinates == base.obstruction.coordinates,
                  "class changed under a perturbed splitting");
        }
    });

    runner.run("deformation", "complete-obstruction-theory", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.completeness; ++i) {
            auto L = random_test_dgla(entries, rng);
            auto total = build_truncated_algebra({"t"}, 2 + rng.below(3), {});
            auto quotient =
                build_truncated_algebra({"t"}, total->truncation_order() - 1, {});
            auto ext = make_small_extension(truncation_morphism(total, quotient));
            auto xbar = random_test_mc(L, quotient, rng);
            auto lifted = lift_mc(ext, xbar);
            if (std::holds_alternative<McSolution>(lifted)) {
                const auto& lift = std::get<McSolution>(lifted);
                check(mc_residual(lift.cochain()).is_zero(), "lift has nonzero residual");
                check(lift.cochain().map_coefficients(ext.projection()) == xbar.cochain(),
                      "lift does not reduce to the input");
            } else {
                // Nonzero class: the affine model of all candidate lifts is
                // verified exactly, then shown unsolvable.
                const auto& rep = std::get<ObstructionReport>(lifted);
                check(rep.obstructed(), "refusal without a nonzero class");
                auto base = mc_residual(rep.lift_attempt);
                const int rows = L->dim(1);
                const int cols = ext.ideal_dim();
                std::vector<DglaCochain> directions;
                std::vector<DglaCochain> responses;
                for (int r = 0; r < rows; ++r)
                    for (int l = 0; l < cols; ++l) {
                        QMatrix mu(rows, total->dim());
                        for (int a = 0; a < total->dim(); ++a)
                            mu.at(r, a) = ext.ideal_basis()[l].coefficient(a);
                        DglaCochain dir(L, total, 1, mu);
                        directions.push_back(dir);
                        responses.push_back(mc_residual(rep.lift_attempt + dir) - base);
                    }
                // Exact affinity: residual(lift + mu + nu) - base is the sum
                // of the responses, checked on random pairs.
                if (directions.size() >= 2) {
                    int a = rng.below(static_cast<int>(directions.size()));
                    int b = rng.below(static_cast<int>(directions.size()));
                    auto combined =
                        mc_residual(rep.lift_attempt + directions[a] + directions[b]) - base;
                    check(combined == responses[a] + responses[b],
                          "candidate residuals are not affine in the correction");
                }
                // Independent elimination: stack response coordinates and
                // solve against -base.
                const int flat = L->dim(2) * total->dim();
                QMatrix system(flat, static_cast<int>(directions.size()));
                for (size_t d = 0; d < responses.size(); ++d)
                    for (int r2 = 0; r2 < L->dim(2); ++r2)
                        for (int a2 = 0; a2 < total->dim(); ++a2)
                            system.at(r2 * total->dim() + a2, static_cast<int>(d)) =
                                responses[d].coefficient(r2, a2);
                QVector rhs(flat);
                for (int r2 = 0; r2 < L->dim(2); ++r2)
                    for (int a2 = 0; a2 < total->dim(); ++a2)
                        rhs[r2 * total->dim() + a2] = -base.coefficient(r2, a2);
                check(!system.solve(rhs).has_value(),
                      "nonzero class but a lift exists in the affine model");
            }
        }
    });

    runner.run("deformation", "tangent-space-catalog", [&](Rng& rng, auto check) {
        (void)rng;
        for (const auto& entry : entries) {
            auto t = tangent_space(entry.dgla);
            check(t.report.ok(), "tangent verification fails on " + entry.name);
            auto it = entry.expected.cohomology_dims.find(1);
            if (it != entry.expected.cohomology_dims.end())
                check(t.report.dim == it->second, "tangent dimension wrong on " + entry.name);
        }
    });

    runner.run("deformation", "mc-glues-over-fiber-products", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.gluing; ++i) {
            auto L = random_test_dgla(entries, rng);
            int order = 2 + rng.below(2);
            auto B = build_truncated_algebra({"t"}, order + 1, {});
            auto A = build_truncated_algebra({"t"}, order, {});
            auto f = truncation_morphism(B, A);
            auto g = identity_morphism(A);
            auto fp = fiber_product(f, g);
            auto xb = random_test_mc(L, B, rng);
            DglaCochain xc = xb.cochain().map_coefficients(f).map_coefficients(g);
            QMatrix cols(B->dim() + A->dim(), fp.algebra->dim());
            for (int c2 = 0; c2 < fp.algebra->dim(); ++c2)
                cols.set_col(c2, fp.pair_basis[c2]);
            auto coords = cols.solve_matrix(
                xb.cochain().coefficients().transpose().vstack(xc.coefficients().transpose()));
            check(coords.has_value(), "agreeing pair does not glue");
            if (coords) {
                DglaCochain glued(L, fp.algebra, 1, coords->transpose());
                check(mc_residual(glued).is_zero(), "glued solution is not Maurer-Cartan");
                check(glued.map_coefficients(fp.to_first) == xb.cochain(),
                      "glued solution loses the first component");
            }
        }
    });

    runner.run("deformation", "morphisms-intertwine-mc-and-gauge", [&](Rng& rng, auto check) {
        for (int i = 0; i < n.functorial; ++i) {
            auto L = random_test_dgla(entries, rng);
            auto M = direct_sum(L, catalog_entry("abelian_line").dgla);
            std::map<int, QMatrix> incl;
            for (int d : L->degrees()) {
                QMatrix m(M->dim(d), L->dim(d));
                for (int k = 0; k < L->dim(d); ++k)
                    m.at(k, k) = 1;
                incl[d] = m;
            }
            auto fmor = make_dgla_morphism(L, M, std::move(incl));
            auto A = random_test_algebra(rng);
            auto x = random_test_mc(L, A, rng);
            check(mc_residual(map_cochain(fmor, x.cochain())).is_zero(),
                  "morphism image is not Maurer-Cartan");
            GaugeWitness a{random_test_cochain(L, A, 0, rng)};
            GaugeWitness fa{map_cochain(fmor, a.parameter())};
            check(map_cochain(fmor, gauge_act(a, x.cochain())) ==
                      gauge_act(fa, map_cochain(fmor, x.cochain())),
                  "morphism does not intertwine the gauge action");
        }
    });

    runner.run("bicomplex", "roundtrip-choice-independence-edges", [&](Rng& rng, auto check) {
        std::vector<AugmentedBicomplex> instances;
        instances.push_back(cech_simplicial_model(SimplicialComplex::boundary_of_simplex(2)));
        instances.push_back(cech_simplicial_model(SimplicialComplex::boundary_of_simplex(3)));
        for (int s = 0; s < n.group_seeds / 2; ++s) {
            Rng sub(rng.next());
            instances.push_back(group_cech_model(random_equivariant_complex(sub)).model);
        }
        for (const auto& ab : instances) {
            check(validate(ab).ok(), "model fails bicomplex validation");
            const int top = std::min(ab.body.P, ab.body.Q);
            for (int deg = 0; deg <= top; ++deg) {
                auto t = total_cohomology(ab, deg);
                check(t.left == t.bottom && t.left == t.total,
                      "edge and total cohomology disagree");
                auto hb = cohomology(ab.bottom_edge, deg);
                for (int i = 0; i < hb.dim(); ++i) {
                    QVector cls(hb.dim(), Rational(0));
                    cls[i] = 1;
                    auto there = transfer_class(ab, TransferDirection::BottomToLeft, deg, cls);
                    auto back = transfer_class(ab, TransferDirection::LeftToBottom, deg,
                                               there.output.plain());
                    check(back.output.plain() == cls, "round trip is not the identity");
                    std::function<Rational()> noise = [&]() { return rng.small_rational(2); };
                    TransferOptions options;
                    options.randomize = &noise;
                    auto shifted =
                        transfer_class(ab, TransferDirection::BottomToLeft, deg, cls, options);
                    check(shifted.output.plain() == there.output.plain(),
                          "transfer output depends on interior choices");
                    auto doubled = transfer_class(ab, TransferDirection::BottomToLeft, deg,
                                                  Rational(2) * cls);
                    check(doubled.output.plain() == Rational(2) * there.output.plain(),
                          "transfer is not linear");
                }
            }
        }
    });

    runner.run("bicomplex", "obstruction-transfer-matches-transfer", [&](Rng& rng, auto check) {
        (void)rng;
        auto ab = cech_simplicial_model(SimplicialComplex::boundary_of_simplex(3));
        auto h2 = cohomology(ab.bottom_edge, 2);
        for (int i = 0; i < h2.dim(); ++i) {
            QVector cls(h2.dim(), Rational(0));
            cls[i] = 1;
            QVector cocycle(ab.bottom_edge->dim(2), Rational(0));
            for (size_t j = 0; j < cls.size(); ++j)
                cocycle = cocycle + cls[j] * h2.representatives()[j];
            auto named = obstruction_transfer(ab, {cocycle}, {"I"});
            auto direct = transfer_class(ab, TransferDirection::BottomToLeft, 2, cls);
            check(named.output.coordinates[0] == direct.output.plain(),
                  "the two zig-zag code paths disagree");
            check(verify_trace(ab, named.traces[0]), "trace equations fail");
        }
    });

    runner.run("models", "catalog-expectations", [&](Rng& rng, auto check) {
        (void)rng;
        check(!entries.empty(), "catalog is empty");
        for (const auto& e : entries)
            check(validate(*e.dgla).ok(), "catalog entry fails validation: " + e.name);
    });

    runner.run("models", "simplicial-edges-match-independent-cohomology",
               [&](Rng& rng, auto check) {
                   (void)rng;
                   for (int nn : {2, 3}) {
                       auto K = SimplicialComplex::boundary_of_simplex(nn);
                       auto ab = cech_simplicial_model(K);
                       auto independent = simplicial_cochain_complex(K);
                       for (int d = 0; d <= K.dim(); ++d) {
                           int want = cohomology(independent, d).dim();
                           check(cohomology(ab.bottom_edge, d).dim() == want,
                                 "bottom edge disagrees with simplicial cohomology");
                           check(cohomology(ab.left_edge, d).dim() == want,
                                 "left edge disagrees with simplicial cohomology");
                       }
                   }
               });

    runner.run("models", "abelian-oracle-agrees-with-gauge", [&](Rng& rng, auto check) {
        (void)rng;
        auto entry = catalog_entry("gauge_demo_abelian");
        for (const char* spec : {"e", "t^3"}) {
            auto A = parse_algebra_spec(spec);
            auto oracle = def_abelian_oracle(entry.dgla, A);
            std::vector<DglaCochain> sols;
            const int m_dim = A->dim() - 1;
            const int coords = 2 * m_dim;
            std::vector<int> odo(coords, 0);
            const int radius = n.oracle_radius;
            const int values = 2 * radius + 1;
            while (true) {
                QMatrix c(2, A->dim());
                for (int i = 0; i < coords; ++i)
                    c.at(i / m_dim, 1 + i % m_dim) = odo[i] - radius;
                DglaCochain x(entry.dgla, A, 1, c);
                if (oracle.is_solution(x))
                    sols.push_back(x);
                int pos = 0;
                while (pos < coords && ++odo[pos] == values) {
                    odo[pos] = 0;
                    ++pos;
                }
                if (pos == coords)
                    break;
            }
            for (size_t i = 0; i < sols.size(); ++i)
                for (size_t j = i; j < sols.size(); ++j) {
                    bool oracle_eq = oracle.equivalent(sols[i], sols[j]);
                    auto verdict = gauge_equivalent(McSolution::verify(sols[i]),
                                                    McSolution::verify(sols[j]));
                    check(verdict.kind != EquivalenceVerdict::Kind::Unknown,
                          "abelian decision returned unknown");
                    check(oracle_eq ==
                              (verdict.kind == EquivalenceVerdict::Kind::Equivalent),
                          "oracle disagrees with the gauge decision");
                }
        }
    });

    runner.run("models", "group-model-hypotheses", [&](Rng& rng, auto check) {
        for (int s = 0; s < n.group_seeds; ++s) {
            Rng sub(rng.next());
            auto data = random_equivariant_complex(sub);
            auto result = group_cech_model(data);
            check(result.input_exact, "random equivariant complex is not exact");
            check(result.hypotheses.rows_exact(), "row hypothesis fails");
            check(result.hypotheses.columns_exact(), "column hypothesis fails");
            for (const auto& row : result.hypotheses.rows)
                check(row.tail, "row tail fails despite exact coefficients");
        }
    });

    runner.run("deformation", "etale-criterion-fixtures", [&](Rng& rng, auto check) {
        (void)rng;
        auto L = catalog_entry("obstructed").dgla;
        check(etale_criterion(identity_dgla_morphism(L)).verdict == EtaleReport::Verdict::Etale,
              "identity is not etale");
        GradedVectorSpace cone_space;
        cone_space.basis_names[1] = {"u"};
        cone_space.basis_names[2] = {"v"};
        QMatrix cd(1, 1);
        cd.at(0, 0) = 1;
        auto cone = make_dgla(std::move(cone_space), {{1, cd}}, {});
        auto sum = direct_sum(L, cone);
        std::map<int, QMatrix> incl;
        QMatrix i1(2, 1);
        i1.at(0, 0) = 1;
        QMatrix i2(2, 1);
        i2.at(0, 0) = 1;
        incl[1] = i1;
        incl[2] = i2;
        auto inclusion = make_dgla_morphism(L, sum, std::move(incl));
        check(etale_criterion(inclusion).verdict == EtaleReport::Verdict::Etale,
              "cone augmentation is not etale");
    });

    return report;
}

Json selftest_report_to_json(const SelftestReport& report)
{
    Json out;
    out["seed"] = report.seed;
    out["profile"] = report.profile;
    out["all_pass"] = report.all_pass();
    Json results = Json::array();
    for (const auto& r : report.results) {
        Json item;
        item["module"] = r.module;
        item["property"] = r.name;
        item["cases"] = r.cases;
        item["pass"] = r.pass;
        if (!r.detail.empty())
            item["detail"] = r.detail;
        results.push_back(std::move(item));
    }
    out["results"] = std::move(results);
    return out;
}

}  // namespace deform
