#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "conicdisc/cliapp.hpp"

using namespace conicdisc;

namespace {

void emit(const Json& j, const std::string& json_out) {
    std::string text = j.dump(2);
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << text << "\n";
    }
    std::cout << text << "\n";
}

int exit_code_for(ErrorCode c) { return c == ErrorCode::BadInput ? 1 : 2; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conicdisc: discriminants, normal forms and singularities of conic bundles"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {
        "delta",        "sigma",         "sigma-prime", "classify-fiber", "normal-form",
        "classify-sing", "smooth-scan",  "power-profile", "nonreg-check"};

    std::string input_path, json_out;
    CommandFlags flags;

    std::vector<CLI::App*> subs;
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("input", input_path, "input document (JSON)")->required();
        sub->add_option("--ext-degree", flags.ext_degree, "scan extension degree");
        sub->add_option("--precision", flags.precision, "series precision override");
        sub->add_flag("--auto-extend", flags.auto_extend,
                      "double the field on NoResidueRoot (cap: degree 16)");
        sub->add_option("--json-out", json_out, "also write the report here");
        subs.push_back(sub);
    }

    std::string corpus_dir;
    CLI::App* selftest = app.add_subcommand("selftest", "built-in identities + corpus");
    selftest->add_option("corpus", corpus_dir, "corpus directory (default: ./corpus)");
    selftest->add_option("--json-out", json_out, "also write the report here");

    CLI::App* corpus_cmd = app.add_subcommand("corpus", "run a corpus directory");
    corpus_cmd->add_option("dir", corpus_dir, "corpus directory")->required();
    corpus_cmd->add_option("--json-out", json_out, "also write the report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selftest->parsed() || corpus_cmd->parsed()) {
            Json report;
            bool checks_ok = true;
            bool ran_corpus = false;
            int corpus_failures = 0;
            if (selftest->parsed()) {
                report["identities"] = run_selftest();
                checks_ok = report["identities"]["all_passed"].get<bool>();
                if (corpus_dir.empty() && std::filesystem::exists("corpus"))
                    corpus_dir = "corpus";
            }
            if (!corpus_dir.empty()) {
                CorpusSummary s = run_corpus(corpus_dir);
                report["corpus"] = s.report;
                ran_corpus = true;
                corpus_failures = s.total - s.passed;
                if (s.total == 0)
                    std::cerr << "warning: no corpus cases under '" << corpus_dir << "'\n";
            }
            emit(report, json_out);
            if (!checks_ok) return 2;
            if (ran_corpus && corpus_failures > 0) return 3;
            return 0;
        }
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (subs[i]->parsed()) {
                InputDoc doc = parse_input(input_path);
                Json report = run_command(commands[i], doc, flags);
                emit(report, json_out);
                return 0;
            }
        }
    } catch (const ConicError& e) {
        Json err;
        err["error"] = Json{{"code", error_code_name(e.code())}, {"message", e.what()}};
        emit(err, json_out);
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        Json err;
        err["error"] = Json{{"code", "Internal"}, {"message", e.what()}};
        emit(err, json_out);
        return 2;
    }
    return 1;
}
