#include "deform/bicomplex.hpp"

#include <sstream>

namespace deform {

int Bicomplex::dim(int p, int q) const
{
    if (p < 0 || p > P || q < 0 || q > Q)
        return 0;
    return dims[p][q];
}

QMatrix Bicomplex::horizontal_at(int p, int q) const
{
    auto it = horizontal.find({p, q});
    if (it != horizontal.end())
        return it->second;
    return QMatrix::zero(dim(p + 1, q), dim(p, q));
}

QMatrix Bicomplex::vertical_at(int p, int q) const
{
    auto it = vertical.find({p, q});
    if (it != vertical.end())
        return it->second;
    return QMatrix::zero(dim(p, q + 1), dim(p, q));
}

QMatrix AugmentedBicomplex::left_augmentation_at(int p) const
{
    auto it = left_augmentation.find(p);
    if (it != left_augmentation.end())
        return it->second;
    return QMatrix::zero(body.dim(p, 0), left_edge->dim(p));
}

QMatrix AugmentedBicomplex::bottom_augmentation_at(int q) const
{
    auto it = bottom_augmentation.find(q);
    if (it != bottom_augmentation.end())
        return it->second;
    return QMatrix::zero(body.dim(0, q), bottom_edge->dim(q));
}

AugmentedBicomplex make_augmented_bicomplex(Bicomplex body, CochainComplex::Ptr left_edge,
                                            CochainComplex::Ptr bottom_edge,
                                            std::map<int, QMatrix> left_augmentation,
                                            std::map<int, QMatrix> bottom_augmentation)
{
    if (static_cast<int>(body.dims.size()) != body.P + 1)
        throw InputError("bicomplex dims table has wrong row count");
    for (const auto& row : body.dims)
        if (static_cast<int>(row.size()) != body.Q + 1)
            throw InputError("bicomplex dims table has wrong column count");
    for (const auto& [pq, m] : body.horizontal)
        if (m.rows() != body.dim(pq.first + 1, pq.second) || m.cols() != body.dim(pq.first, pq.second))
            throw InputError("horizontal matrix shape mismatch at (" + std::to_string(pq.first) +
                             ", " + std::to_string(pq.second) + ")");
    for (const auto& [pq, m] : body.vertical)
        if (m.rows() != body.dim(pq.first, pq.second + 1) || m.cols() != body.dim(pq.first, pq.second))
            throw InputError("vertical matrix shape mismatch at (" + std::to_string(pq.first) +
                             ", " + std::to_string(pq.second) + ")");
    for (const auto& [p, m] : left_augmentation)
        if (m.rows() != body.dim(p, 0) || m.cols() != left_edge->dim(p))
            throw InputError("left augmentation shape mismatch at p = " + std::to_string(p));
    for (const auto& [q, m] : bottom_augmentation)
        if (m.rows() != body.dim(0, q) || m.cols() != bottom_edge->dim(q))
            throw InputError("bottom augmentation shape mismatch at q = " + std::to_string(q));
    return {std::move(body), std::move(left_edge), std::move(bottom_edge),
            std::move(left_augmentation), std::move(bottom_augmentation)};
}

std::string BicomplexValidation::summary() const
{
    if (ok())
        return "pass";
    std::ostringstream os;
    os << violations.size() << " violation(s):";
    for (const auto& v : violations)
        os << " " << v.rule << "@(" << v.p << "," << v.q << ")";
    return os.str();
}

BicomplexValidation validate(const Bicomplex& body)
{
    BicomplexValidation report;
    for (int p = 0; p <= body.P; ++p)
        for (int q = 0; q <= body.Q; ++q) {
            if (p + 2 <= body.P &&
                !(body.horizontal_at(p + 1, q) * body.horizontal_at(p, q)).is_zero())
                report.violations.push_back({"horizontal-square", p, q});
            if (q + 2 <= body.Q && !(body.vertical_at(p, q + 1) * body.vertical_at(p, q)).is_zero())
                report.violations.push_back({"vertical-square", p, q});
            if (p + 1 <= body.P && q + 1 <= body.Q) {
                QMatrix via_up = body.vertical_at(p + 1, q) * body.horizontal_at(p, q);
                QMatrix via_right = body.horizontal_at(p, q + 1) * body.vertical_at(p, q);
                if (!(via_up == via_right))
                    report.violations.push_back({"commuting-square", p, q});
            }
        }
    return report;
}

BicomplexValidation validate(const AugmentedBicomplex& ab)
{
    BicomplexValidation report = validate(ab.body);
    for (int p = 0; p <= ab.body.P; ++p) {
        QMatrix aug = ab.left_augmentation_at(p);
        if (aug.rank() != ab.left_edge->dim(p))
            report.violations.push_back({"left-augmentation-not-injective", p, 0});
        if (!(ab.body.vertical_at(p, 0) * aug).is_zero())
            report.violations.push_back({"left-augmentation-not-vertically-closed", p, 0});
        if (p < ab.body.P) {
            QMatrix lhs = ab.body.horizontal_at(p, 0) * aug;
            QMatrix rhs = ab.left_augmentation_at(p + 1) * ab.left_edge->differential(p);
            if (!(lhs == rhs))
                report.violations.push_back({"left-augmentation-not-cochain-map", p, 0});
        }
    }
    for (int q = 0; q <= ab.body.Q; ++q) {
        QMatrix aug = ab.bottom_augmentation_at(q);
        if (aug.rank() != ab.bottom_edge->dim(q))
            report.violations.push_back({"bottom-augmentation-not-injective", 0, q});
        if (!(ab.body.horizontal_at(0, q) * aug).is_zero())
            report.violations.push_back({"bottom-augmentation-not-horizontally-closed", 0, q});
        if (q < ab.body.Q) {
            QMatrix lhs = ab.body.vertical_at(0, q) * aug;
            QMatrix rhs = ab.bottom_augmentation_at(q + 1) * ab.bottom_edge->differential(q);
            if (!(lhs == rhs))
                report.violations.push_back({"bottom-augmentation-not-cochain-map", 0, q});
        }
    }
    return report;
}

bool LineExactness::exact_interior() const
{
    if (!injective)
        return false;
    for (bool b : interior)
        if (!b)
            return false;
    return true;
}

bool HypothesesReport::rows_exact() const
{
    for (const auto& r : rows)
        if (!r.exact_interior())
            return false;
    return true;
}

bool HypothesesReport::columns_exact() const
{
    for (const auto& c : columns)
        if (!c.exact_interior())
            return false;
    return true;
}

int HypothesesReport::first_failing_row() const
{
    for (size_t p = 0; p < rows.size(); ++p)
        if (!rows[p].exact_interior())
            return static_cast<int>(p);
    return -1;
}

int HypothesesReport::first_failing_column() const
{
    for (size_t q = 0; q < columns.size(); ++q)
        if (!columns[q].exact_interior())
            return static_cast<int>(q);
    return -1;
}

namespace {

// Exactness of 0 -> E -> X_0 -> X_1 -> ... -> X_last, where aug embeds E in
// X_0 and step(i) maps X_i to X_{i+1}.
LineExactness line_exactness(const QMatrix& aug, const std::function<QMatrix(int)>& step, int last)
{
    LineExactness line;
    line.injective = aug.rank() == aug.cols();
    for (int i = 0; i <= last - 1; ++i) {
        QMatrix out = step(i);
        int nullity = out.cols() - out.rank();
        int image_rank = i == 0 ? aug.rank() : step(i - 1).rank();
        line.interior.push_back(nullity == image_rank);
    }
    if (last >= 1) {
        QMatrix final_step = step(last - 1);
        line.tail = final_step.rank() == final_step.rows();
    } else {
        // Single entry: the augmentation must already be onto.
        line.tail = aug.rank() == aug.rows();
    }
    return line;
}

}  // namespace

HypothesesReport check_hypotheses(const AugmentedBicomplex& ab)
{
    HypothesesReport report;
    for (int p = 0; p <= ab.body.P; ++p) {
        auto step = [&, p](int q) { return ab.body.vertical_at(p, q); };
        std::function<QMatrix(int)> f = step;
        report.rows.push_back(line_exactness(ab.left_augmentation_at(p), f, ab.body.Q));
    }
    for (int q = 0; q <= ab.body.Q; ++q) {
        auto step = [&, q](int p) { return ab.body.horizontal_at(p, q); };
        std::function<QMatrix(int)> f = step;
        report.columns.push_back(line_exactness(ab.bottom_augmentation_at(q), f, ab.body.P));
    }
    return report;
}

namespace {

QVector solve_or_refuse(const QMatrix& m, const QVector& rhs, int p, int q,
                        const TransferOptions& options)
{
    auto sol = m.solve(rhs);
    if (!sol)
        throw HypothesisFailure("zig-zag solve failed at entry (" + std::to_string(p) + ", " +
                                    std::to_string(q) + "): exactness hypothesis does not hold",
                                p, q);
    QVector z = *sol;
    if (options.randomize) {
        for (const auto& k : m.kernel_basis()) {
            Rational c = (*options.randomize)();
            if (c != 0)
                z = z + c * k;
        }
    }
    return z;
}

}  // namespace

std::pair<QVector, TransferTrace> transfer_cocycle(const AugmentedBicomplex& ab,
                                                   TransferDirection direction, int degree,
                                                   const QVector& cocycle,
                                                   const TransferOptions& options)
{
    const int n = degree;
    TransferTrace trace;
    trace.direction = direction;
    trace.degree = n;
    trace.input_cocycle = cocycle;

    if (direction == TransferDirection::BottomToLeft) {
        if (static_cast<int>(cocycle.size()) != ab.bottom_edge->dim(n))
            throw InputError("transfer input has wrong dimension");
        if (!is_zero(ab.bottom_edge->differential(n).apply(cocycle)))
            throw InputError("transfer input is not a cocycle");
        QVector x = ab.bottom_augmentation_at(n).apply(cocycle);  // at (0, n)
        for (int i = 0; i < n; ++i) {
            const int p = i, q = n - i;
            QVector tau = solve_or_refuse(ab.body.vertical_at(p, q - 1), x, p, q - 1, options);
            trace.pullbacks.push_back({p, q - 1, tau});
            x = ab.body.horizontal_at(p, q - 1).apply(tau);  // at (p+1, q-1)
            trace.pushes.push_back({p + 1, q - 1, x});
        }
        // x sits at (n, 0) and lies in the image of the left augmentation.
        QMatrix aug = ab.left_augmentation_at(n);
        auto out = aug.solve(x);
        if (!out)
            throw HypothesisFailure("zig-zag endpoint is not in the left edge at p = " +
                                        std::to_string(n),
                                    n, 0);
        trace.output_cocycle = *out;
        return {*out, trace};
    }

    if (static_cast<int>(cocycle.size()) != ab.left_edge->dim(n))
        throw InputError("transfer input has wrong dimension");
    if (!is_zero(ab.left_edge->differential(n).apply(cocycle)))
        throw InputError("transfer input is not a cocycle");
    QVector x = ab.left_augmentation_at(n).apply(cocycle);  // at (n, 0)
    for (int i = 0; i < n; ++i) {
        const int p = n - i, q = i;
        QVector rho = solve_or_refuse(ab.body.horizontal_at(p - 1, q), x, p - 1, q, options);
        trace.pullbacks.push_back({p - 1, q, rho});
        x = ab.body.vertical_at(p - 1, q).apply(rho);  // at (p-1, q+1)
        trace.pushes.push_back({p - 1, q + 1, x});
    }
    QMatrix aug = ab.bottom_augmentation_at(n);
    auto out = aug.solve(x);
    if (!out)
        throw HypothesisFailure("zig-zag endpoint is not in the bottom edge at q = " +
                                    std::to_string(n),
                                0, n);
    trace.output_cocycle = *out;
    return {*out, trace};
}

bool verify_trace(const AugmentedBicomplex& ab, const TransferTrace& trace)
{
    const int n = trace.degree;
    const bool from_bottom = trace.direction == TransferDirection::BottomToLeft;
    const auto& start_edge = from_bottom ? ab.bottom_edge : ab.left_edge;
    const auto& end_edge = from_bottom ? ab.left_edge : ab.bottom_edge;

    if (!is_zero(start_edge->differential(n).apply(trace.input_cocycle)))
        return false;
    if (!is_zero(end_edge->differential(n).apply(trace.output_cocycle)))
        return false;
    QVector x = from_bottom ? ab.bottom_augmentation_at(n).apply(trace.input_cocycle)
                            : ab.left_augmentation_at(n).apply(trace.input_cocycle);
    if (trace.pullbacks.size() != static_cast<size_t>(n) ||
        trace.pushes.size() != static_cast<size_t>(n))
        return false;
    for (int i = 0; i < n; ++i) {
        const auto& pull = trace.pullbacks[i];
        const auto& push = trace.pushes[i];
        if (from_bottom) {
            if (!(ab.body.vertical_at(pull.p, pull.q).apply(pull.cochain) == x))
                return false;
            x = ab.body.horizontal_at(pull.p, pull.q).apply(pull.cochain);
        } else {
            if (!(ab.body.horizontal_at(pull.p, pull.q).apply(pull.cochain) == x))
                return false;
            x = ab.body.vertical_at(pull.p, pull.q).apply(pull.cochain);
        }
        if (!(x == push.cochain))
            return false;
    }
    QVector end = from_bottom ? ab.left_augmentation_at(n).apply(trace.output_cocycle)
                              : ab.bottom_augmentation_at(n).apply(trace.output_cocycle);
    return end == x;
}

TransferResult transfer_class(const AugmentedBicomplex& ab, TransferDirection direction, int degree,
                              const QVector& class_coordinates, const TransferOptions& options)
{
    const auto& start_edge =
        direction == TransferDirection::BottomToLeft ? ab.bottom_edge : ab.left_edge;
    const auto& end_edge =
        direction == TransferDirection::BottomToLeft ? ab.left_edge : ab.bottom_edge;
    auto h_start = cohomology(start_edge, degree);
    if (static_cast<int>(class_coordinates.size()) != h_start.dim())
        throw InputError("class coordinate count does not match the edge cohomology dimension");
    QVector cocycle(start_edge->dim(degree), Rational(0));
    for (size_t i = 0; i < class_coordinates.size(); ++i)
        cocycle = cocycle + class_coordinates[i] * h_start.representatives()[i];

    auto [out, trace] = transfer_cocycle(ab, direction, degree, cocycle, options);
    if (!verify_trace(ab, trace))
        throw std::logic_error("transfer trace failed re-verification");
    auto h_end = cohomology(end_edge, degree);
    return {class_of(h_end, out), std::move(trace)};
}

ObstructionTransfer obstruction_transfer(const AugmentedBicomplex& ab,
                                         const std::vector<QVector>& bottom_cocycles,
                                         const std::vector<std::string>& ideal_labels,
                                         const TransferOptions& options)
{
    if (bottom_cocycles.size() != ideal_labels.size())
        throw InputError("one bottom cocycle per ideal label expected");
    ObstructionTransfer out;
    out.ideal_labels = ideal_labels;
    auto h2_left = cohomology(ab.left_edge, 2);
    std::vector<QVector> omegas;
    for (const auto& h : bottom_cocycles) {
        auto [omega, trace] = transfer_cocycle(ab, TransferDirection::BottomToLeft, 2, h, options);
        if (!verify_trace(ab, trace))
            throw std::logic_error("obstruction transfer trace failed re-verification");
        out.tau.push_back(trace.pullbacks.at(0).cochain);
        out.rho.push_back(trace.pullbacks.at(1).cochain);
        out.omega.push_back(omega);
        omegas.push_back(omega);
        out.traces.push_back(std::move(trace));
    }
    out.output = class_of(h2_left, omegas, ideal_labels);
    return out;
}

TotalCohomology total_cohomology(const AugmentedBicomplex& ab, int degree)
{
    const Bicomplex& b = ab.body;
    auto total_dim = [&](int n) {
        int d = 0;
        for (int p = 0; p <= b.P; ++p) {
            int q = n - p;
            if (q >= 0 && q <= b.Q)
                d += b.dim(p, q);
        }
        return d;
    };
    auto offset = [&](int n, int p) {
        int o = 0;
        for (int pp = 0; pp < p; ++pp) {
            int q = n - pp;
            if (q >= 0 && q <= b.Q)
                o += b.dim(pp, q);
        }
        return o;
    };
    auto total_differential = [&](int n) {
        QMatrix m(total_dim(n + 1), total_dim(n));
        for (int p = 0; p <= b.P; ++p) {
            int q = n - p;
            if (q < 0 || q > b.Q || b.dim(p, q) == 0)
                continue;
            int src = offset(n, p);
            if (p + 1 <= b.P && q <= b.Q) {
                QMatrix h = b.horizontal_at(p, q);
                int dst = offset(n + 1, p + 1);
                for (int i = 0; i < h.rows(); ++i)
                    for (int j = 0; j < h.cols(); ++j)
                        if (h.at(i, j) != 0)
                            m.at(dst + i, src + j) = h.at(i, j);
            }
            if (q + 1 <= b.Q) {
                QMatrix v = b.vertical_at(p, q).scaled(Rational(p % 2 == 0 ? 1 : -1));
                int dst = offset(n + 1, p);
                for (int i = 0; i < v.rows(); ++i)
                    for (int j = 0; j < v.cols(); ++j)
                        if (v.at(i, j) != 0)
                            m.at(dst + i, src + j) = v.at(i, j);
            }
        }
        return m;
    };

    TotalCohomology out;
    QMatrix d_out = total_differential(degree);
    QMatrix d_in = total_differential(degree - 1);
    int nullity = d_out.cols() - d_out.rank();
    out.total = degree < 0 ? 0 : nullity - (degree == 0 ? 0 : d_in.rank());

    auto edge_dim = [&](const CochainComplex::Ptr& edge) {
        QMatrix out_m = edge->differential(degree);
        QMatrix in_m = edge->differential(degree - 1);
        return (out_m.cols() - out_m.rank()) - in_m.rank();
    };
    out.left = edge_dim(ab.left_edge);
    out.bottom = edge_dim(ab.bottom_edge);
    return out;
}

}  // namespace deform
