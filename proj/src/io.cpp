#include "deform/io.hpp"

#include <fstream>
#include <sstream>

namespace deform {

namespace {

[[noreturn]] void bad(const std::string& what)
{
    throw InputError(what);
}

const Json& field(const Json& value, const std::string& key)
{
    if (!value.is_object() || !value.contains(key))
        bad("missing field '" + key + "'");
    return value.at(key);
}

int int_field(const Json& value, const std::string& key)
{
    const Json& f = field(value, key);
    if (!f.is_number_integer())
        bad("field '" + key + "' must be an integer");
    return f.get<int>();
}

}  // namespace

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        bad("cannot open file '" + path + "'");
    Json value;
    try {
        in >> value;
    } catch (const std::exception& e) {
        bad("cannot parse '" + path + "': " + e.what());
    }
    return value;
}

void write_json_file(const std::string& path, const Json& value)
{
    std::ofstream out(path);
    if (!out)
        bad("cannot write file '" + path + "'");
    out << value.dump(2) << "\n";
}

Rational json_to_rational(const Json& value)
{
    if (value.is_number_integer())
        return Rational(value.get<long long>());
    if (value.is_string())
        return rational_from_string(value.get<std::string>());
    bad("expected a rational as an integer or \"p/q\" string");
}

Json rational_to_json(const Rational& value)
{
    if (denominator(value) == 1 && numerator(value) >= std::numeric_limits<long long>::min() &&
        numerator(value) <= std::numeric_limits<long long>::max())
        return Json(static_cast<long long>(numerator(value)));
    return Json(to_string(value));
}

QMatrix json_to_matrix(const Json& value, int rows, int cols)
{
    if (!value.is_array())
        bad("expected a matrix as an array of rows");
    if (value.empty())
        return QMatrix::zero(rows, cols);
    if (static_cast<int>(value.size()) != rows)
        bad("matrix has " + std::to_string(value.size()) + " rows, expected " +
            std::to_string(rows));
    QMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = value.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            bad("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) +
                " entries");
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = json_to_rational(row.at(j));
    }
    return m;
}

Json matrix_to_json(const QMatrix& value)
{
    Json rows = Json::array();
    for (int i = 0; i < value.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < value.cols(); ++j)
            row.push_back(rational_to_json(value.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ArtinAlgebra::Ptr load_algebra(const Json& value)
{
    std::vector<std::string> generators;
    for (const Json& g : field(value, "generators")) {
        if (!g.is_string())
            bad("generator names must be strings");
        generators.push_back(g.get<std::string>());
    }
    int truncation = int_field(value, "truncation");
    std::vector<Monomial> relations;
    if (value.contains("relations"))
        for (const Json& rel : value.at("relations")) {
            std::vector<unsigned> exps;
            for (const Json& e : rel) {
                if (!e.is_number_integer() || e.get<int>() < 0)
                    bad("relation exponents must be nonnegative integers");
                exps.push_back(e.get<unsigned>());
            }
            relations.emplace_back(std::move(exps));
        }
    return build_truncated_algebra(generators, truncation, relations);
}

Json algebra_to_json(const ArtinAlgebra& algebra)
{
    if (!algebra.has_monomial_basis())
        bad("only monomial-presented algebras serialize to files");
    Json out;
    out["generators"] = algebra.generator_names();
    out["truncation"] = algebra.truncation_order();
    Json rels = Json::array();
    for (const auto& r : algebra.relations())
        rels.push_back(r.exponents());
    out["relations"] = std::move(rels);
    return out;
}

ArtinAlgebra::Ptr parse_algebra_spec(const std::string& spec)
{
    if (spec.empty())
        bad("empty algebra spec");
    if (spec == "e")
        return build_truncated_algebra({"e"}, 2, {});
    auto caret = spec.find('^');
    if (caret != std::string::npos && spec.find('/') == std::string::npos &&
        spec.find(".json") == std::string::npos) {
        std::string name = spec.substr(0, caret);
        std::string power = spec.substr(caret + 1);
        try {
            int n = std::stoi(power);
            if (n < 1 || name.empty())
                bad("algebra spec '" + spec + "' must be name^positive-power");
            return build_truncated_algebra({name}, n, {});
        } catch (const InputError&) {
            throw;
        } catch (const std::exception&) {
            bad("algebra spec '" + spec + "' must be name^positive-power");
        }
    }
    return load_algebra(read_json_file(spec));
}

Dgla::Ptr load_dgla(const Json& value)
{
    const Json& degrees = field(value, "degrees");
    const Json& dims = field(value, "dims");
    const Json& names = field(value, "basis_names");
    if (!degrees.is_array() || !dims.is_array() || !names.is_array() ||
        degrees.size() != dims.size() || names.size() != degrees.size())
        bad("degrees, dims, and basis_names must be aligned arrays");

    GradedVectorSpace space;
    std::vector<int> degree_list;
    for (size_t i = 0; i < degrees.size(); ++i) {
        int deg = degrees.at(i).get<int>();
        degree_list.push_back(deg);
        std::vector<std::string> level;
        for (const Json& n : names.at(i))
            level.push_back(n.get<std::string>());
        if (static_cast<int>(level.size()) != dims.at(i).get<int>())
            bad("basis_names size disagrees with dims in degree " + std::to_string(deg));
        if (!level.empty())
            space.basis_names[deg] = level;
    }

    std::map<int, QMatrix> differential;
    if (value.contains("differential")) {
        const Json& diff = value.at("differential");
        if (!diff.is_array() || diff.size() != degrees.size())
            bad("differential must list one matrix per declared degree");
        for (size_t i = 0; i < degrees.size(); ++i) {
            int deg = degree_list[i];
            differential[deg] =
                json_to_matrix(diff.at(i), space.dim(deg + 1), space.dim(deg));
        }
    }

    std::vector<BracketEntry> entries;
    if (value.contains("bracket"))
        for (const Json& e : value.at("bracket")) {
            if (!e.is_array() || e.size() != 6)
                bad("bracket entries are sextuples [p, i, q, j, k, coeff]");
            entries.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(),
                               e.at(3).get<int>(), e.at(4).get<int>(), json_to_rational(e.at(5))});
        }
    return make_dgla(std::move(space), std::move(differential), entries, false);
}

std::optional<GroupAction> load_dgla_action(const Json& value, const Dgla::Ptr& dgla)
{
    if (!value.contains("action"))
        return std::nullopt;
    const Json& act = value.at("action");
    GroupAction action;
    for (const Json& n : field(act, "elements"))
        action.element_names.push_back(n.get<std::string>());
    for (const Json& row : field(act, "table")) {
        std::vector<int> r;
        for (const Json& v : row)
            r.push_back(v.get<int>());
        action.table.push_back(std::move(r));
    }
    action.matrices.resize(action.element_names.size());
    const Json& mats = field(act, "matrices");
    if (!mats.is_array() || mats.size() != action.element_names.size())
        bad("action matrices must list one table per element");
    for (size_t g = 0; g < mats.size(); ++g)
        for (const auto& [key, m] : mats.at(g).items()) {
            int deg = std::stoi(key);
            action.matrices[g][deg] = json_to_matrix(m, dgla->dim(deg), dgla->dim(deg));
        }
    return action;
}

DglaCochain load_cochain(const Json& value, const Dgla::Ptr& dgla, ArtinAlgebra::Ptr algebra)
{
    int degree = int_field(value, "degree");
    if (!algebra) {
        if (!value.contains("algebra"))
            bad("cochain file names no algebra and none was supplied");
        const Json& spec = value.at("algebra");
        algebra = spec.is_string() ? parse_algebra_spec(spec.get<std::string>())
                                   : load_algebra(spec);
    }
    if (!algebra->has_monomial_basis())
        bad("cochain files require a monomial-presented algebra");
    QMatrix coeffs(dgla->dim(degree), algebra->dim());
    const auto& level_names =
        dgla->space.basis_names.count(degree) ? dgla->space.basis_names.at(degree)
                                              : std::vector<std::string>{};
    for (const Json& term : field(value, "terms")) {
        std::string basis = field(term, "basis").get<std::string>();
        int row = -1;
        for (size_t i = 0; i < level_names.size(); ++i)
            if (level_names[i] == basis)
                row = static_cast<int>(i);
        if (row < 0)
            bad("unknown basis element '" + basis + "' in degree " + std::to_string(degree));
        std::vector<unsigned> exps;
        for (const Json& e : field(term, "monomial"))
            exps.push_back(e.get<unsigned>());
        int col = algebra->monomial_basis_index(Monomial(std::move(exps)));
        if (col < 0)
            bad("monomial is not a basis element of the coefficient algebra");
        coeffs.at(row, col) += json_to_rational(field(term, "coeff"));
    }
    return DglaCochain(dgla, std::move(algebra), degree, std::move(coeffs));
}

Json cochain_to_json(const DglaCochain& cochain)
{
    Json out;
    out["degree"] = cochain.degree();
    if (cochain.algebra()->has_monomial_basis())
        out["algebra"] = algebra_to_json(*cochain.algebra());
    Json terms = Json::array();
    const auto& names = cochain.dgla()->space.basis_names.count(cochain.degree())
                            ? cochain.dgla()->space.basis_names.at(cochain.degree())
                            : std::vector<std::string>{};
    for (int i = 0; i < cochain.coefficients().rows(); ++i)
        for (int a = 1; a < cochain.coefficients().cols(); ++a) {
            const Rational& c = cochain.coefficient(i, a);
            if (c == 0)
                continue;
            Json term;
            term["basis"] = names[i];
            if (cochain.algebra()->has_monomial_basis())
                term["monomial"] = cochain.algebra()->monomial_basis()[a].exponents();
            else
                term["monomial_name"] = cochain.algebra()->basis_names()[a];
            term["coeff"] = rational_to_json(c);
            terms.push_back(std::move(term));
        }
    out["terms"] = std::move(terms);
    return out;
}

AlgebraMorphism load_algebra_morphism(const Json& value, ArtinAlgebra::Ptr source,
                                      ArtinAlgebra::Ptr target)
{
    const Json& images = field(value, "images");
    std::vector<AlgebraElement> image_elements;
    for (const Json& image : images) {
        QVector coeffs(target->dim(), Rational(0));
        for (const Json& term : image) {
            std::vector<unsigned> exps;
            for (const Json& e : field(term, "monomial"))
                exps.push_back(e.get<unsigned>());
            int idx = target->monomial_basis_index(Monomial(std::move(exps)));
            if (idx < 0)
                bad("morphism image monomial is not a basis element of the target");
            coeffs[idx] += json_to_rational(field(term, "coeff"));
        }
        image_elements.emplace_back(target, std::move(coeffs));
    }
    return make_morphism(std::move(source), std::move(target), image_elements);
}

SmallExtension load_extension(const Json& value)
{
    const Json& total_spec = field(value, "total");
    const Json& quotient_spec = field(value, "quotient");
    auto total = total_spec.is_string() ? parse_algebra_spec(total_spec.get<std::string>())
                                        : load_algebra(total_spec);
    auto quotient = quotient_spec.is_string()
                        ? parse_algebra_spec(quotient_spec.get<std::string>())
                        : load_algebra(quotient_spec);
    AlgebraMorphism projection =
        value.contains("projection")
            ? load_algebra_morphism(value.at("projection"), total, quotient)
            : truncation_morphism(total, quotient);
    return make_small_extension(std::move(projection));
}

DglaMorphism load_dgla_morphism(const Json& value, Dgla::Ptr source, Dgla::Ptr target)
{
    std::map<int, QMatrix> maps;
    for (const auto& [key, m] : field(value, "maps").items()) {
        int deg = std::stoi(key);
        maps[deg] = json_to_matrix(m, target->dim(deg), source->dim(deg));
    }
    return make_dgla_morphism(std::move(source), std::move(target), std::move(maps));
}

namespace {

CochainComplex::Ptr load_edge_complex(const Json& value)
{
    const Json& degrees = field(value, "degrees");
    const Json& dims = field(value, "dims");
    std::map<int, std::vector<std::string>> names;
    std::vector<int> degree_list;
    for (size_t i = 0; i < degrees.size(); ++i) {
        int deg = degrees.at(i).get<int>();
        degree_list.push_back(deg);
        int dim = dims.at(i).get<int>();
        std::vector<std::string> level;
        if (value.contains("basis_names"))
            for (const Json& n : value.at("basis_names").at(i))
                level.push_back(n.get<std::string>());
        else
            for (int k = 0; k < dim; ++k)
                level.push_back("x" + std::to_string(deg) + "_" + std::to_string(k));
        if (static_cast<int>(level.size()) != dim)
            bad("edge basis names disagree with dims");
        if (dim > 0)
            names[deg] = level;
    }
    std::map<int, QMatrix> diffs;
    if (value.contains("differential")) {
        const Json& diff = value.at("differential");
        for (size_t i = 0; i < degree_list.size(); ++i) {
            int deg = degree_list[i];
            int rows = names.count(deg + 1) ? static_cast<int>(names.at(deg + 1).size()) : 0;
            int cols = names.count(deg) ? static_cast<int>(names.at(deg).size()) : 0;
            diffs[deg] = json_to_matrix(diff.at(i), rows, cols);
        }
    }
    return CochainComplex::make(std::move(names), std::move(diffs));
}

Json edge_complex_to_json(const CochainComplex& edge, int top_degree)
{
    Json out;
    Json degrees = Json::array(), dims = Json::array(), names = Json::array(),
         diffs = Json::array();
    for (int d = 0; d <= top_degree; ++d) {
        degrees.push_back(d);
        dims.push_back(edge.dim(d));
        names.push_back(edge.names(d));
        diffs.push_back(matrix_to_json(edge.differential(d)));
    }
    out["degrees"] = std::move(degrees);
    out["dims"] = std::move(dims);
    out["basis_names"] = std::move(names);
    out["differential"] = std::move(diffs);
    return out;
}

std::pair<int, int> parse_pq_key(const std::string& key)
{
    auto comma = key.find(',');
    if (comma == std::string::npos)
        bad("matrix table keys must look like \"p,q\"");
    try {
        return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
    } catch (const std::exception&) {
        bad("matrix table keys must look like \"p,q\"");
    }
}

}  // namespace

AugmentedBicomplex load_bicomplex(const Json& value)
{
    Bicomplex body;
    body.P = int_field(value, "P");
    body.Q = int_field(value, "Q");
    const Json& dims = field(value, "dims");
    for (const Json& row : dims) {
        std::vector<int> r;
        for (const Json& d : row)
            r.push_back(d.get<int>());
        body.dims.push_back(std::move(r));
    }
    if (value.contains("horizontal"))
        for (const auto& [key, m] : value.at("horizontal").items()) {
            auto [p, q] = parse_pq_key(key);
            body.horizontal[{p, q}] = json_to_matrix(m, body.dim(p + 1, q), body.dim(p, q));
        }
    if (value.contains("vertical"))
        for (const auto& [key, m] : value.at("vertical").items()) {
            auto [p, q] = parse_pq_key(key);
            body.vertical[{p, q}] = json_to_matrix(m, body.dim(p, q + 1), body.dim(p, q));
        }
    auto left = load_edge_complex(field(value, "left_edge"));
    auto bottom = load_edge_complex(field(value, "bottom_edge"));
    std::map<int, QMatrix> left_aug, bottom_aug;
    for (const auto& [key, m] : field(value, "left_augmentation").items()) {
        int p = std::stoi(key);
        left_aug[p] = json_to_matrix(m, body.dim(p, 0), left->dim(p));
    }
    for (const auto& [key, m] : field(value, "bottom_augmentation").items()) {
        int q = std::stoi(key);
        bottom_aug[q] = json_to_matrix(m, body.dim(0, q), bottom->dim(q));
    }
    return make_augmented_bicomplex(std::move(body), std::move(left), std::move(bottom),
                                    std::move(left_aug), std::move(bottom_aug));
}

Json bicomplex_to_json(const AugmentedBicomplex& ab)
{
    Json out;
    out["P"] = ab.body.P;
    out["Q"] = ab.body.Q;
    out["dims"] = ab.body.dims;
    Json horizontal, vertical;
    for (int p = 0; p <= ab.body.P; ++p)
        for (int q = 0; q <= ab.body.Q; ++q) {
            std::string key = std::to_string(p) + "," + std::to_string(q);
            if (p + 1 <= ab.body.P) {
                QMatrix m = ab.body.horizontal_at(p, q);
                if (!m.is_zero())
                    horizontal[key] = matrix_to_json(m);
            }
            if (q + 1 <= ab.body.Q) {
                QMatrix m = ab.body.vertical_at(p, q);
                if (!m.is_zero())
                    vertical[key] = matrix_to_json(m);
            }
        }
    out["horizontal"] = std::move(horizontal);
    out["vertical"] = std::move(vertical);
    out["left_edge"] = edge_complex_to_json(*ab.left_edge, ab.body.P);
    out["bottom_edge"] = edge_complex_to_json(*ab.bottom_edge, ab.body.Q);
    Json left_aug, bottom_aug;
    for (int p = 0; p <= ab.body.P; ++p)
        left_aug[std::to_string(p)] = matrix_to_json(ab.left_augmentation_at(p));
    for (int q = 0; q <= ab.body.Q; ++q)
        bottom_aug[std::to_string(q)] = matrix_to_json(ab.bottom_augmentation_at(q));
    out["left_augmentation"] = std::move(left_aug);
    out["bottom_augmentation"] = std::move(bottom_aug);
    return out;
}

SimplicialComplex load_simplicial_complex(const Json& value)
{
    std::vector<std::vector<std::string>> maximal;
    for (const Json& s : field(value, "simplices")) {
        std::vector<std::string> verts;
        for (const Json& v : s)
            verts.push_back(v.get<std::string>());
        maximal.push_back(std::move(verts));
    }
    return SimplicialComplex::from_maximal(maximal);
}

EquivariantComplex load_equivariant_complex(const Json& value)
{
    EquivariantComplex data;
    for (const Json& n : field(value, "elements"))
        data.group.names.push_back(n.get<std::string>());
    for (const Json& row : field(value, "table")) {
        std::vector<int> r;
        for (const Json& v : row)
            r.push_back(v.get<int>());
        data.group.table.push_back(std::move(r));
    }
    const int order = data.group.order();

    const Json& v = field(value, "V");
    data.v_dim = int_field(v, "dim");
    const Json& v_action = field(v, "action");
    if (static_cast<int>(v_action.size()) != order)
        bad("V action must list one matrix per group element");
    for (const Json& m : v_action)
        data.v_action.push_back(json_to_matrix(m, data.v_dim, data.v_dim));

    const Json& r = field(value, "R");
    for (const Json& d : field(r, "dims"))
        data.r_dims.push_back(d.get<int>());
    const Json& r_action = field(r, "action");
    if (r_action.size() != data.r_dims.size())
        bad("R action must list one table per degree");
    for (size_t q = 0; q < data.r_dims.size(); ++q) {
        std::vector<QMatrix> level;
        if (static_cast<int>(r_action.at(q).size()) != order)
            bad("R action must list one matrix per group element");
        for (const Json& m : r_action.at(q))
            level.push_back(json_to_matrix(m, data.r_dims[q], data.r_dims[q]));
        data.r_action.push_back(std::move(level));
    }
    if (r.contains("differential")) {
        const Json& diffs = r.at("differential");
        if (diffs.size() + 1 != data.r_dims.size())
            bad("R differential must list one matrix per consecutive degree pair");
        for (size_t q = 0; q + 1 < data.r_dims.size(); ++q)
            data.r_differential.push_back(
                json_to_matrix(diffs.at(q), data.r_dims[q + 1], data.r_dims[q]));
    }
    data.augmentation = json_to_matrix(field(value, "augmentation"), data.r_dims[0], data.v_dim);
    return data;
}

Json class_to_json(const CohomologyClass& cls)
{
    Json out;
    out["degree"] = cls.degree;
    if (cls.ideal_labels.empty()) {
        Json coords = Json::array();
        for (const auto& c : cls.coordinates[0])
            coords.push_back(rational_to_json(c));
        out["coordinates"] = std::move(coords);
    } else {
        Json per_ideal = Json::array();
        for (size_t l = 0; l < cls.ideal_labels.size(); ++l) {
            Json item;
            item["ideal_element"] = cls.ideal_labels[l];
            Json coords = Json::array();
            for (const auto& c : cls.coordinates[l])
                coords.push_back(rational_to_json(c));
            item["coordinates"] = std::move(coords);
            per_ideal.push_back(std::move(item));
        }
        out["per_ideal_element"] = std::move(per_ideal);
    }
    out["zero"] = cls.is_zero();
    return out;
}

}  // namespace deform
