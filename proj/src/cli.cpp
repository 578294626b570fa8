#include "deform/cli.hpp"

#include "deform/io.hpp"
#include "deform/models.hpp"
#include "deform/selftest.hpp"

#include <iostream>
#include <map>
#include <sstream>

namespace deform {

namespace {

constexpr const char* kUsage = R"(usage: deform <command> [options]

commands:
  validate <dgla.json>
  cohomology <dgla.json> --degree N
  mc check|residual <dgla.json> --algebra <spec> --element <file>
  gauge act <dgla.json> --algebra <spec> --param <file> --element <file>
  gauge compose <dgla.json> --algebra <spec> --param <file> --param2 <file>
  gauge equiv <dgla.json> --algebra <spec> --x <file> --y <file>
  tangent <dgla.json>
  obstruct <dgla.json> --extension <file> --element <file>
  lift <dgla.json> --algebra <spec> --element <file>
  etale <source.dgla.json> <target.dgla.json> --morphism <file>
  bicomplex validate|hypotheses|total|transfer <bix.json>
            [--degree N] [--from bottom|left] [--class "c1,c2,..."]
  model catalog
  model simplicial <simp.json> [--out <bix.json>]
  model group-cech <grp.json> [--out <bix.json>]
  selftest [--seed N] [--profile small|medium]

algebra specs: "e" (dual numbers), "t^3" (truncated power series), or a
path to an algebra description file.
)";

struct ParsedArgs {
    std::vector<std::string> positional;
    std::map<std::string, std::string> flags;

    const std::string& flag(const std::string& name) const
    {
        auto it = flags.find(name);
        if (it == flags.end())
            throw InputError("missing required option --" + name);
        return it->second;
    }
    std::string flag_or(const std::string& name, const std::string& fallback) const
    {
        auto it = flags.find(name);
        return it == flags.end() ? fallback : it->second;
    }
    bool has(const std::string& name) const { return flags.count(name) > 0; }
};

ParsedArgs parse_args(const std::vector<std::string>& args, size_t start)
{
    ParsedArgs out;
    for (size_t i = start; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) == 0) {
            if (i + 1 >= args.size())
                throw InputError("option " + a + " needs a value");
            out.flags[a.substr(2)] = args[++i];
        } else {
            out.positional.push_back(a);
        }
    }
    return out;
}

QVector parse_vector(const std::string& text)
{
    QVector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(rational_from_string(item));
    return out;
}

Dgla::Ptr load_dgla_file(const std::string& path)
{
    return load_dgla(read_json_file(path));
}

DglaCochain load_element(const ParsedArgs& args, const std::string& flag, const Dgla::Ptr& dgla,
                         ArtinAlgebra::Ptr algebra)
{
    return load_cochain(read_json_file(args.flag(flag)), dgla, std::move(algebra));
}

Json verdict_json(const EquivalenceVerdict& verdict)
{
    Json out;
    switch (verdict.kind) {
    case EquivalenceVerdict::Kind::Equivalent:
        out["verdict"] = "equivalent";
        out["witness"] = cochain_to_json(verdict.witness->parameter());
        break;
    case EquivalenceVerdict::Kind::NotEquivalent:
        out["verdict"] = "not-equivalent";
        out["stage"] = verdict.stage;
        out["certificate"] = class_to_json(*verdict.certificate);
        break;
    case EquivalenceVerdict::Kind::Unknown:
        out["verdict"] = "unknown";
        out["stage"] = verdict.stage;
        break;
    }
    return out;
}

Json trace_json(const TransferTrace& trace)
{
    Json out;
    out["direction"] =
        trace.direction == TransferDirection::BottomToLeft ? "bottom-to-left" : "left-to-bottom";
    out["degree"] = trace.degree;
    auto vec = [](const QVector& v) {
        Json a = Json::array();
        for (const auto& c : v)
            a.push_back(rational_to_json(c));
        return a;
    };
    out["input_cocycle"] = vec(trace.input_cocycle);
    Json steps = Json::array();
    for (size_t i = 0; i < trace.pullbacks.size(); ++i) {
        Json step;
        step["solve_entry"] = {trace.pullbacks[i].p, trace.pullbacks[i].q};
        step["solution"] = vec(trace.pullbacks[i].cochain);
        step["push_entry"] = {trace.pushes[i].p, trace.pushes[i].q};
        step["pushed"] = vec(trace.pushes[i].cochain);
        steps.push_back(std::move(step));
    }
    out["steps"] = std::move(steps);
    out["output_cocycle"] = vec(trace.output_cocycle);
    return out;
}

struct CommandOutcome {
    std::string status = "ok";  // ok | fail | obstructed | not-equivalent | unknown
    Json payload;
    int exit_code = 0;
};

CommandOutcome cmd_validate(const ParsedArgs& args)
{
    if (args.positional.size() != 1)
        throw InputError("validate expects exactly one file");
    Json doc = read_json_file(args.positional[0]);
    auto dgla = load_dgla(doc);
    auto report = validate(*dgla);
    CommandOutcome out;
    Json axioms = Json::array();
    for (const auto& v : report.violations) {
        Json item;
        switch (v.axiom) {
        case AxiomViolation::Axiom::DifferentialSquare: item["axiom"] = "d-squared"; break;
        case AxiomViolation::Axiom::SkewSymmetry: item["axiom"] = "skew-symmetry"; break;
        case AxiomViolation::Axiom::Jacobi: item["axiom"] = "jacobi"; break;
        case AxiomViolation::Axiom::Leibniz: item["axiom"] = "leibniz"; break;
        }
        item["degrees"] = v.degrees;
        item["indices"] = v.indices;
        item["witness"] = v.description;
        axioms.push_back(std::move(item));
    }
    out.payload["violations"] = std::move(axioms);
    out.payload["pass"] = report.ok();
    if (auto action = load_dgla_action(doc, dgla)) {
        try {
            validate_action(dgla, *action);
            out.payload["action"] = "pass";
        } catch (const InputError& e) {
            out.payload["action"] = std::string("fail: ") + e.what();
            out.status = "fail";
            out.exit_code = 1;
        }
    }
    if (!report.ok()) {
        out.status = "fail";
        out.exit_code = 1;
    }
    return out;
}

CommandOutcome cmd_cohomology(const ParsedArgs& args)
{
    if (args.positional.size() != 1)
        throw InputError("cohomology expects exactly one file");
    auto dgla = load_dgla_file(args.positional[0]);
    int degree = std::stoi(args.flag("degree"));
    auto basis = cohomology(complex_of(dgla), degree);
    CommandOutcome out;
    out.payload["degree"] = degree;
    out.payload["dim"] = basis.dim();
    Json reps = Json::array();
    for (const auto& r : basis.representatives()) {
        Json v = Json::array();
        for (const auto& c : r)
            v.push_back(rational_to_json(c));
        reps.push_back(std::move(v));
    }
    out.payload["representatives"] = std::move(reps);
    return out;
}

CommandOutcome cmd_mc(const ParsedArgs& args)
{
    if (args.positional.size() != 2)
        throw InputError("mc expects a subcommand and a DGLA file");
    const std::string& sub = args.positional[0];
    auto dgla = load_dgla_file(args.positional[1]);
    ArtinAlgebra::Ptr algebra =
        args.has("algebra") ? parse_algebra_spec(args.flag("algebra")) : nullptr;
    auto x = load_element(args, "element", dgla, algebra);
    auto residual = mc_residual(x);
    CommandOutcome out;
    if (sub == "residual") {
        out.payload["residual"] = cochain_to_json(residual);
        out.payload["is_solution"] = residual.is_zero();
        return out;
    }
    if (sub == "check") {
        out.payload["is_solution"] = residual.is_zero();
        if (!residual.is_zero()) {
            out.payload["residual"] = cochain_to_json(residual);
            out.status = "fail";
            out.exit_code = 1;
        }
        return out;
    }
    throw InputError("unknown mc subcommand '" + sub + "'");
}

CommandOutcome cmd_gauge(const ParsedArgs& args)
{
    if (args.positional.size() != 2)
        throw InputError("gauge expects a subcommand and a DGLA file");
    const std::string& sub = args.positional[0];
    auto dgla = load_dgla_file(args.positional[1]);
    ArtinAlgebra::Ptr algebra =
        args.has("algebra") ? parse_algebra_spec(args.flag("algebra")) : nullptr;
    CommandOutcome out;
    if (sub == "act") {
        GaugeWitness a{load_element(args, "param", dgla, algebra)};
        auto x = load_element(args, "element", dgla, a.parameter().algebra());
        out.payload["result"] = cochain_to_json(gauge_act(a, x));
        return out;
    }
    if (sub == "compose") {
        GaugeWitness a{load_element(args, "param", dgla, algebra)};
        GaugeWitness b{load_element(args, "param2", dgla, a.parameter().algebra())};
        out.payload["result"] = cochain_to_json(gauge_compose(a, b).parameter());
        return out;
    }
    if (sub == "equiv") {
        auto x = load_element(args, "x", dgla, algebra);
        auto y = load_element(args, "y", dgla, x.algebra());
        auto verdict = gauge_equivalent(McSolution::verify(x), McSolution::verify(y));
        out.payload = verdict_json(verdict);
        if (verdict.kind == EquivalenceVerdict::Kind::NotEquivalent) {
            out.status = "not-equivalent";
            out.exit_code = 1;
        } else if (verdict.kind == EquivalenceVerdict::Kind::Unknown) {
            out.status = "unknown";
            out.exit_code = 1;
        }
        return out;
    }
    throw InputError("unknown gauge subcommand '" + sub + "'");
}

CommandOutcome cmd_tangent(const ParsedArgs& args)
{
    if (args.positional.size() != 1)
        throw InputError("tangent expects exactly one file");
    auto dgla = load_dgla_file(args.positional[0]);
    auto t = tangent_space(dgla);
    CommandOutcome out;
    out.payload["dim"] = t.report.dim;
    Json reps = Json::array();
    for (const auto& r : t.h1.representatives()) {
        Json v = Json::array();
        for (const auto& c : r)
            v.push_back(rational_to_json(c));
        reps.push_back(std::move(v));
    }
    out.payload["representatives"] = std::move(reps);
    out.payload["verification"] = {{"representatives_mc", t.report.representatives_mc},
                                   {"pairwise_inequivalent",
                                    t.report.representatives_pairwise_inequivalent},
                                   {"every_solution_covered", t.report.every_solution_covered}};
    if (!t.report.ok()) {
        out.status = "fail";
        out.exit_code = 1;
    }
    return out;
}

CommandOutcome cmd_obstruct(const ParsedArgs& args)
{
    if (args.positional.size() != 1)
        throw InputError("obstruct expects exactly one DGLA file");
    auto dgla = load_dgla_file(args.positional[0]);
    auto ext = load_extension(read_json_file(args.flag("extension")));
    auto xbar = McSolution::verify(load_element(args, "element", dgla, ext.quotient()));
    auto report = obstruction_class(ext, xbar);
    CommandOutcome out;
    out.payload["class"] = class_to_json(report.obstruction);
    out.payload["lift_attempt"] = cochain_to_json(report.lift_attempt);
    out.payload["residual"] = cochain_to_json(report.residual);
    if (report.obstructed()) {
        out.status = "obstructed";
        out.exit_code = 1;
    }
    return out;
}

CommandOutcome cmd_lift(const ParsedArgs& args)
{
    if (args.positional.size() != 1)
        throw InputError("lift expects exactly one DGLA file");
    auto dgla = load_dgla_file(args.positional[0]);
    auto total = parse_algebra_spec(args.flag("algebra"));
    Json element_doc = read_json_file(args.flag("element"));
    auto xbar_cochain = load_cochain(element_doc, dgla, nullptr);
    auto surjection = truncation_morphism(total, xbar_cochain.algebra());
    auto outcome = lift_along(surjection, McSolution::verify(xbar_cochain));
    CommandOutcome out;
    out.payload["stages"] = static_cast<int>(outcome.stages.size());
    if (outcome.lift) {
        out.payload["lift"] = cochain_to_json(outcome.lift->cochain());
        return out;
    }
    out.status = "obstructed";
    out.exit_code = 1;
    out.payload["failed_stage"] = outcome.failed_stage;
    out.payload["class"] = class_to_json(outcome.failure->obstruction);
    return out;
}

CommandOutcome cmd_etale(const ParsedArgs& args)
{
    if (args.positional.size() != 2)
        throw InputError("etale expects source and target DGLA files");
    auto source = load_dgla_file(args.positional[0]);
    auto target = load_dgla_file(args.positional[1]);
    auto morphism = load_dgla_morphism(read_json_file(args.flag("morphism")), source, target);
    auto report = etale_criterion(morphism);
    CommandOutcome out;
    switch (report.verdict) {
    case EtaleReport::Verdict::Etale: out.payload["verdict"] = "etale"; break;
    case EtaleReport::Verdict::Smooth: out.payload["verdict"] = "smooth"; break;
    case EtaleReport::Verdict::NotSatisfied:
        out.payload["verdict"] = "criterion-not-satisfied";
        out.status = "fail";
        out.exit_code = 1;
        break;
    }
    out.payload["h1"] = {{"map", matrix_to_json(report.h1_map)},
                         {"source_dim", report.h1_source_dim},
                         {"target_dim", report.h1_target_dim},
                         {"surjective", report.h1_surjective},
                         {"bijective", report.h1_bijective}};
    out.payload["h2"] = {{"map", matrix_to_json(report.h2_map)},
                         {"source_dim", report.h2_source_dim},
                         {"target_dim", report.h2_target_dim},
                         {"injective", report.h2_injective}};
    return out;
}

Json hypotheses_json(const HypothesesReport& hyp)
{
    Json out;
    auto lines = [](const std::vector<LineExactness>& ls) {
        Json arr = Json::array();
        for (const auto& l : ls) {
            Json item;
            item["injective"] = l.injective;
            item["interior_exact"] = l.interior;
            item["tail_exact"] = l.tail;
            item["exact"] = l.exact_interior();
            arr.push_back(std::move(item));
        }
        return arr;
    };
    out["rows"] = lines(hyp.rows);
    out["columns"] = lines(hyp.columns);
    out["rows_exact"] = hyp.rows_exact();
    out["columns_exact"] = hyp.columns_exact();
    return out;
}

CommandOutcome cmd_bicomplex(const ParsedArgs& args)
{
    if (args.positional.size() != 2)
        throw InputError("bicomplex expects a subcommand and a file");
    const std::string& sub = args.positional[0];
    auto ab = load_bicomplex(read_json_file(args.positional[1]));
    CommandOutcome out;
    if (sub == "validate") {
        auto report = validate(ab);
        Json violations = Json::array();
        for (const auto& v : report.violations)
            violations.push_back({{"rule", v.rule}, {"p", v.p}, {"q", v.q}});
        out.payload["violations"] = std::move(violations);
        out.payload["pass"] = report.ok();
        if (!report.ok()) {
            out.status = "fail";
            out.exit_code = 1;
        }
        return out;
    }
    if (sub == "hypotheses") {
        auto hyp = check_hypotheses(ab);
        out.payload = hypotheses_json(hyp);
        if (!hyp.rows_exact() || !hyp.columns_exact()) {
            out.status = "fail";
            out.exit_code = 1;
            out.payload["first_failing_row"] = hyp.first_failing_row();
            out.payload["first_failing_column"] = hyp.first_failing_column();
        }
        return out;
    }
    if (sub == "total") {
        int degree = std::stoi(args.flag("degree"));
        auto t = total_cohomology(ab, degree);
        out.payload["degree"] = degree;
        out.payload["total"] = t.total;
        out.payload["left"] = t.left;
        out.payload["bottom"] = t.bottom;
        return out;
    }
    if (sub == "transfer") {
        int degree = std::stoi(args.flag("degree"));
        std::string from = args.flag_or("from", "bottom");
        TransferDirection dir = from == "bottom" ? TransferDirection::BottomToLeft
                                                 : TransferDirection::LeftToBottom;
        if (from != "bottom" && from != "left")
            throw InputError("--from must be 'bottom' or 'left'");
        QVector cls = parse_vector(args.flag("class"));
        try {
            auto result = transfer_class(ab, dir, degree, cls);
            out.payload["class"] = class_to_json(result.output);
            out.payload["trace"] = trace_json(result.trace);
        } catch (const HypothesisFailure& e) {
            out.status = "fail";
            out.exit_code = 1;
            out.payload["error"] = e.what();
            out.payload["failing_entry"] = {e.p, e.q};
        }
        return out;
    }
    throw InputError("unknown bicomplex subcommand '" + sub + "'");
}

CommandOutcome cmd_model(const ParsedArgs& args)
{
    if (args.positional.empty())
        throw InputError("model expects a subcommand");
    const std::string& sub = args.positional[0];
    CommandOutcome out;
    if (sub == "catalog") {
        Json list = Json::array();
        for (const auto& entry : catalog()) {
            Json item;
            item["name"] = entry.name;
            Json dims;
            for (int d : entry.dgla->degrees())
                dims[std::to_string(d)] = entry.dgla->dim(d);
            item["dims"] = std::move(dims);
            item["abelian"] = entry.expected.abelian;
            Json h;
            for (const auto& [deg, dim] : entry.expected.cohomology_dims)
                h[std::to_string(deg)] = dim;
            item["cohomology"] = std::move(h);
            if (entry.expected.lifting != CatalogExpected::Lifting::NotApplicable)
                item["lifting_over_t3"] =
                    entry.expected.lifting == CatalogExpected::Lifting::ObstructedOverT3
                        ? "obstructed"
                        : "unobstructed";
            if (entry.action)
                item["action_elements"] = entry.action->element_names;
            item["verified"] = true;  // catalog() re-verifies on load
            list.push_back(std::move(item));
        }
        out.payload["entries"] = std::move(list);
        return out;
    }
    if (sub == "simplicial") {
        if (args.positional.size() != 2)
            throw InputError("model simplicial expects a complex file");
        auto K = load_simplicial_complex(read_json_file(args.positional[1]));
        auto ab = cech_simplicial_model(K);
        auto hyp = check_hypotheses(ab);
        out.payload["P"] = ab.body.P;
        out.payload["Q"] = ab.body.Q;
        out.payload["hypotheses"] = hypotheses_json(hyp);
        if (args.has("out")) {
            write_json_file(args.flag("out"), bicomplex_to_json(ab));
            out.payload["written"] = args.flag("out");
        }
        return out;
    }
    if (sub == "group-cech") {
        if (args.positional.size() != 2)
            throw InputError("model group-cech expects a group model file");
        auto data = load_equivariant_complex(read_json_file(args.positional[1]));
        auto result = group_cech_model(data);
        out.payload["P"] = result.model.body.P;
        out.payload["Q"] = result.model.body.Q;
        out.payload["input_exact"] = result.input_exact;
        out.payload["hypotheses"] = hypotheses_json(result.hypotheses);
        if (args.has("out")) {
            write_json_file(args.flag("out"), bicomplex_to_json(result.model));
            out.payload["written"] = args.flag("out");
        }
        if (!result.input_exact) {
            out.status = "fail";
            out.exit_code = 1;
        }
        return out;
    }
    throw InputError("unknown model subcommand '" + sub + "'");
}

CommandOutcome cmd_selftest(const ParsedArgs& args)
{
    uint64_t seed = 0;
    if (args.has("seed"))
        seed = std::stoull(args.flag("seed"));
    std::string profile = args.flag_or("profile", "small");
    auto report = run_selftest(seed, profile);
    CommandOutcome out;
    out.payload = selftest_report_to_json(report);
    if (!report.all_pass()) {
        out.status = "fail";
        out.exit_code = 1;
    }
    return out;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    if (args.empty()) {
        err << kUsage;
        return 2;
    }
    const std::string& command = args[0];
    Json report;
    report["command"] = command;
    try {
        ParsedArgs parsed = parse_args(args, 1);
        CommandOutcome outcome;
        if (command == "validate")
            outcome = cmd_validate(parsed);
        else if (command == "cohomology")
            outcome = cmd_cohomology(parsed);
        else if (command == "mc")
            outcome = cmd_mc(parsed);
        else if (command == "gauge")
            outcome = cmd_gauge(parsed);
        else if (command == "tangent")
            outcome = cmd_tangent(parsed);
        else if (command == "obstruct")
            outcome = cmd_obstruct(parsed);
        else if (command == "lift")
            outcome = cmd_lift(parsed);
        else if (command == "etale")
            outcome = cmd_etale(parsed);
        else if (command == "bicomplex")
            outcome = cmd_bicomplex(parsed);
        else if (command == "model")
            outcome = cmd_model(parsed);
        else if (command == "selftest")
            outcome = cmd_selftest(parsed);
        else {
            err << "unknown command '" << command << "'\n" << kUsage;
            return 2;
        }
        report["status"] = outcome.status;
        report["payload"] = std::move(outcome.payload);
        out << report.dump(2) << "\n";
        return outcome.exit_code;
    } catch (const InputError& e) {
        report["status"] = "invalid-input";
        report["error"] = e.what();
        out << report.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        report["status"] = "invalid-input";
        report["error"] = std::string("unexpected: ") + e.what();
        out << report.dump(2) << "\n";
        return 2;
    }
}

}  // namespace deform
