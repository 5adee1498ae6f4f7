#include "extlin/laws.hpp"
#include "extlin/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace extlin;
using io::json;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

/// Input errors that are the caller's fault rather than a failed check.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& file) {
    std::ifstream in(file);
    if (!in)
        throw UsageError("cannot open " + file);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError(file + ": not JSON: " + e.what());
    }
}

void write_output(const std::string& file, const std::string& text) {
    if (file == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(file);
    if (!out)
        throw UsageError("cannot write " + file);
    out << text;
}

int run_check(const std::string& suite, std::uint64_t seed, std::size_t cases, const std::string& format) {
    std::vector<laws::Report> reports;
    try {
        reports = suite == "all" ? laws::run_all(seed, cases)
                                 : std::vector<laws::Report>{laws::run_suite(suite, seed, cases)};
    } catch (const laws::UnknownSuite& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    }
    bool passed = true;
    for (const auto& r : reports)
        passed = passed && r.passed();
    if (format == "json") {
        json out;
        if (suite == "all") {
            out = json::array();
            for (const auto& r : reports)
                out.push_back(laws::to_json(r));
        } else {
            out = laws::to_json(reports.front());
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : reports)
            std::cout << laws::render_text(r);
        if (suite == "all")
            std::cout << (passed ? "all suites passed" : "some suites failed") << "\n";
    }
    return passed ? exit_pass : exit_fail;
}

json compute(const std::string& op, const json& in) {
    auto field = [&](const char* key) -> const json& {
        if (!in.is_object() || !in.contains(key))
            throw SchemaError("$", std::string("missing field \"") + key + "\"");
        return in[key];
    };
    if (op == "exttensor") {
        LocalSystem v = io::locsys_from_json(field("left"), "$.left");
        LocalSystem w = io::locsys_from_json(field("right"), "$.right");
        return io::to_json(external_tensor(v, w).system);
    }
    if (op == "externalhom") {
        LocalSystem r = io::locsys_from_json(field("left"), "$.left");
        LocalSystem w = io::locsys_from_json(field("right"), "$.right");
        return io::to_json(external_hom(r, w).system);
    }
    if (op == "pushforward" || op == "sections") {
        LocalSystem v = io::locsys_from_json(field("system"), "$.system");
        const json& fj = field("functor");
        if (!fj.is_object() || !fj.contains("target"))
            throw SchemaError("$.functor", "missing field \"target\"");
        Grpd target = io::groupoid_from_json(fj["target"], "$.functor.target");
        GroupoidFunctor f = io::functor_from_json(fj, v.base(), target, "$.functor");
        return io::to_json(op == "pushforward" ? pushforward(f, v).value : sections(f, v).value);
    }
    if (op == "homology")
        return io::to_json(homology(io::complex_from_json(in)));
    if (op == "totalize")
        return io::to_json(totalize(io::simplicial_from_json(in)));
    if (op == "classify")
        return io::to_json(classify(io::dg_morphism_from_json(in)));
    throw UsageError("unknown op " + op);
}

int run_demo(const std::string& name, const std::string& format) {
    if (name != "qubit") {
        std::cerr << "unknown demo '" << name << "'; available demos: qubit\n";
        return exit_usage;
    }
    QubitReport r = qubit_demo();
    if (format == "json")
        std::cout << io::to_json(r).dump(2) << "\n";
    else
        std::cout << render_text(r);
    return r.verified() ? exit_pass : exit_fail;
}

int run_validate(const std::string& file) {
    json doc = read_json(file);
    std::string kind = io::detect_kind(doc);
    try {
        io::validate_document(doc);
    } catch (const Error& e) {
        std::cerr << "invalid" << (kind.empty() ? "" : " " + kind) << ": " << e.what() << "\n";
        return exit_fail;
    }
    std::cout << "valid " << kind << "\n";
    return exit_pass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"extlin: external tensor products of local systems, exactly"};
    app.require_subcommand(1);

    std::string suite, format = "text";
    std::uint64_t seed = 0;
    std::size_t cases = 50;
    auto* check = app.add_subcommand("check", "run law suites");
    check->add_option("--suite", suite, "suite name or all")->required();
    check->add_option("--seed", seed, "corpus seed")->envname("EXTLIN_SEED");
    check->add_option("--cases", cases, "cases per suite");
    check->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    std::string op, input, output = "-";
    auto* comp = app.add_subcommand("compute", "compute a construction from JSON input");
    comp->add_option("--op", op)
        ->required()
        ->check(CLI::IsMember({"exttensor", "pushforward", "sections", "homology", "totalize", "classify",
                               "externalhom"}));
    comp->add_option("--input", input)->required();
    comp->add_option("--output", output, "file, or - for stdout");

    std::string demo_name, demo_format = "text";
    auto* demo = app.add_subcommand("demo", "run a worked example");
    demo->add_option("--name", demo_name)->required();
    demo->add_option("--format", demo_format)->check(CLI::IsMember({"json", "text"}));

    std::string validate_input;
    auto* validate = app.add_subcommand("validate", "check a JSON document against every construction law");
    validate->add_option("--input", validate_input)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (*check)
            return run_check(suite, seed, cases, format);
        if (*comp) {
            json result = compute(op, read_json(input));
            write_output(output, result.dump(2) + "\n");
            return exit_pass;
        }
        if (*demo)
            return run_demo(demo_name, demo_format);
        return run_validate(validate_input);
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    } catch (const SchemaError& e) {
        std::cerr << "schema error at " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_usage;
    }
}
