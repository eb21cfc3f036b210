#include <cstdio>
#include <iostream>
#include <string>
#include <variant>

#include "CLI11.hpp"

#include "pmc/engine.hh"
#include "pmc/error.hh"
#include "pmc/hoa.hh"

namespace {

std::string format_probability(double p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

std::string render_json(const pmc::CheckResult& r) {
    std::string out = "{";
    out += "\"probability\":" + format_probability(r.probability);
    out += ",\"mode\":\"" + r.mode + "\"";
    out += ",\"layers\":{";
    out += "\"subset\":" + std::to_string(r.layers.subset);
    out += ",\"breakpoint\":" + std::to_string(r.layers.breakpoint);
    out += ",\"multibreakpoint\":" + std::to_string(r.layers.multibreakpoint);
    out += ",\"rabin\":" + std::to_string(r.layers.rabin);
    out += "}";
    out += ",\"components\":" + std::to_string(r.components);
    out += ",\"states_explored\":" + std::to_string(r.states_explored);
    out += "}";
    return out;
}

std::string read_file(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f)
        throw pmc::InputError("cannot open file: " + path);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0)
        out.append(buf, n);
    std::fclose(f);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pmc: probabilistic model checking of Markov chains and MDPs\n"
                 "against LTL or generalized Büchi specifications via lazy\n"
                 "determinization"};

    std::string model_path, labels_path, kind, ltl_text, hoa_path;
    std::string mode, method = "lazy", fallback = "multibreakpoint", format = "plain";
    bool stats = false;
    int threads = 1;
    double tolerance = 1e-12;
    long max_iterations = 1000000;

    app.add_option("--model", model_path, "explicit transitions file")->required();
    app.add_option("--labels", labels_path, "state labels file")->required();
    app.add_option("--kind", kind, "model kind: mc | mdp")
        ->required()
        ->check(CLI::IsMember({"mc", "mdp"}));
    auto* ltl_opt = app.add_option("--ltl", ltl_text, "LTL specification");
    auto* hoa_opt =
        app.add_option("--hoa", hoa_path, "HOA specification (generalized Büchi)");
    ltl_opt->excludes(hoa_opt);
    hoa_opt->excludes(ltl_opt);
    app.add_option("--mode", mode,
                   "quantitative mode: exact (mc) | max | min (mdp, LTL only)")
        ->check(CLI::IsMember({"exact", "max", "min"}));
    app.add_option("--method", method, "pipeline: lazy | rabin-oracle")
        ->check(CLI::IsMember({"lazy", "rabin-oracle"}));
    app.add_option("--fallback", fallback,
                   "layer deciding the remaining components: multibreakpoint | rabin")
        ->check(CLI::IsMember({"multibreakpoint", "rabin"}));
    app.add_flag("--stats", stats, "print per-layer component counts");
    app.add_option("--format", format, "output format: plain | json")
        ->check(CLI::IsMember({"plain", "json"}));
    app.add_option("--threads", threads, "component-level parallelism")
        ->check(CLI::PositiveNumber);
    app.add_option("--tolerance", tolerance, "numeric solver tolerance");
    app.add_option("--max-iterations", max_iterations, "numeric iteration budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (ltl_text.empty() && hoa_path.empty())
            throw pmc::InputError("exactly one of --ltl or --hoa is required");

        pmc::ModelKind model_kind = kind == "mc" ? pmc::ModelKind::mc
                                                 : pmc::ModelKind::mdp;
        if (mode.empty())
            mode = model_kind == pmc::ModelKind::mc ? "exact" : "max";
        if (model_kind == pmc::ModelKind::mc && mode != "exact")
            throw pmc::InputError("Markov chains support --mode exact only");
        if (model_kind == pmc::ModelKind::mdp && mode == "exact")
            throw pmc::InputError("MDPs support --mode max or min");
        if (mode == "min" && ltl_text.empty())
            throw pmc::InputError(
                "--mode min needs an LTL specification (the infimum is computed "
                "through the negated formula)");

        pmc::EngineOptions options;
        options.method = method == "lazy" ? pmc::EngineOptions::Method::lazy
                                          : pmc::EngineOptions::Method::rabin_oracle;
        options.fallback = fallback == "multibreakpoint"
                               ? pmc::EngineOptions::Fallback::multibreakpoint
                               : pmc::EngineOptions::Fallback::rabin;
        options.threads = threads;
        options.tolerance = tolerance;
        options.max_iterations = max_iterations;

        auto model = pmc::load_model(model_path, labels_path, model_kind);

        pmc::CheckResult result;
        if (!ltl_text.empty()) {
            pmc::LtlFormula formula = pmc::parse_ltl(ltl_text);
            if (model_kind == pmc::ModelKind::mc)
                result = pmc::model_check_ltl(std::get<pmc::MarkovChain>(model),
                                              formula, options);
            else
                result = pmc::model_check_ltl(std::get<pmc::Mdp>(model), formula,
                                              options, mode == "min");
        } else {
            auto parsed = pmc::hoa_parse(read_file(hoa_path));
            if (!std::holds_alternative<pmc::Ngba>(parsed))
                throw pmc::InputError(
                    "--hoa specification must be a (generalized) Büchi automaton");
            const pmc::Ngba& ngba = std::get<pmc::Ngba>(parsed);
            if (model_kind == pmc::ModelKind::mc)
                result = pmc::model_check(std::get<pmc::MarkovChain>(model), ngba,
                                          options);
            else
                result = pmc::model_check(std::get<pmc::Mdp>(model), ngba, options);
        }

        if (format == "json") {
            std::cout << render_json(result) << "\n";
        } else {
            std::cout << format_probability(result.probability) << "\n";
            if (stats) {
                std::cout << "mode: " << result.mode << "\n";
                std::cout << "components: " << result.components << "\n";
                std::cout << "subset: " << result.layers.subset << "\n";
                std::cout << "breakpoint: " << result.layers.breakpoint << "\n";
                std::cout << "multibreakpoint: " << result.layers.multibreakpoint
                          << "\n";
                std::cout << "rabin: " << result.layers.rabin << "\n";
                std::cout << "states_explored: " << result.states_explored << "\n";
            }
        }
        return 0;
    } catch (const pmc::InputError& e) {
        std::cerr << "pmc: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "pmc: internal error: " << e.what() << "\n";
        return 1;
    }
}
