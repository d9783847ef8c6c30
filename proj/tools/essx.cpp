#include "essx/acceptance.hpp"
#include "essx/runner.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw essx::Error("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CommonFlags {
    std::string input;
    std::string range;
    long long ideal = 0;
    bool has_ideal = false;
    std::string r_cap;
    long long seed = -1;
    bool verbose = false;
    bool json_out = false;
};

void attach_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--input", flags.input, "document file ('-' for standard input)");
    cmd->add_option("--range", flags.range, "degree range LO..HI");
    cmd->add_option("--ideal", flags.ideal, "ideal generator n (the ideal nZ)")
        ->each([&flags](const std::string&) { flags.has_ideal = true; });
    cmd->add_option("--r-cap", flags.r_cap, "scalar ladder cap");
    cmd->add_option("--seed", flags.seed, "seed for randomized probes");
    cmd->add_flag("--verbose", flags.verbose, "include raw presentations and probe records");
    cmd->add_flag("--json", flags.json_out, "emit the report as JSON on standard output");
}

essx::RunOptions to_options(const CommonFlags& flags) {
    essx::RunOptions opts;
    if (!flags.range.empty()) {
        auto dots = flags.range.find("..");
        if (dots == std::string::npos) throw essx::ValidationError("range must look like LO..HI");
        opts.range_lo = std::stoll(flags.range.substr(0, dots));
        opts.range_hi = std::stoll(flags.range.substr(dots + 2));
    }
    if (flags.has_ideal) opts.ideal = essx::Int(flags.ideal);
    if (!flags.r_cap.empty()) opts.r_cap = essx::Int(flags.r_cap);
    if (flags.seed >= 0) opts.seed = static_cast<std::uint64_t>(flags.seed);
    opts.verbose = flags.verbose;
    return opts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"essx: exact computation with essential exactness over the integers"};
    app.require_subcommand(1);

    std::vector<std::pair<CLI::App*, std::shared_ptr<CommonFlags>>> verbs;
    for (const std::string& verb : essx::known_verbs()) {
        auto flags = std::make_shared<CommonFlags>();
        CLI::App* cmd = app.add_subcommand(verb, "run the '" + verb + "' operation on a document");
        attach_common(cmd, *flags);
        verbs.emplace_back(cmd, flags);
    }

    auto verify_flags = std::make_shared<CommonFlags>();
    std::string corpus_dir = "corpus";
    CLI::App* verify = app.add_subcommand("verify", "run the bundled verification suite");
    verify->add_option("--corpus", corpus_dir, "directory with the bundled documents");
    verify->add_option("--seed", verify_flags->seed, "seed for the randomized suites");
    verify->add_option("--r-cap", verify_flags->r_cap, "scalar ladder cap");
    verify->add_flag("--json", verify_flags->json_out, "emit the aggregate report as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            std::uint64_t seed = verify_flags->seed >= 0 ? verify_flags->seed : 0;
            essx::Int cap =
                verify_flags->r_cap.empty() ? essx::Int(0) : essx::Int(verify_flags->r_cap);
            std::ostream& lines = verify_flags->json_out ? std::cerr : std::cout;
            essx::acceptance::SuiteResult suite =
                essx::acceptance::run_all(seed, cap, corpus_dir, lines);
            if (verify_flags->json_out) std::cout << suite.to_json().dump(2) << "\n";
            return suite.all_pass ? 0 : 1;
        }

        for (auto& [cmd, flags] : verbs) {
            if (!cmd->parsed()) continue;
            if (flags->input.empty()) {
                std::cerr << "error: " << cmd->get_name() << " needs --input FILE\n";
                return 2;
            }
            essx::Document doc = essx::parse_document(read_input(flags->input));
            auto start = std::chrono::steady_clock::now();
            essx::RunResult result = essx::run_command(cmd->get_name(), doc, to_options(*flags));
            double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
            if (flags->json_out) {
                std::cout << result.report.dump(2) << "\n";
            } else {
                std::cout << result.human << "\n";
                std::cout << "(" << static_cast<long long>(ms) << " ms)\n";
            }
            if (result.status == 2)
                std::cerr << "error: " << result.report.value("error", std::string("input error"))
                          << "\n";
            return result.status;
        }
    } catch (const essx::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
