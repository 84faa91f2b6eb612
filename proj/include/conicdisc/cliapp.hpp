#ifndef CONICDISC_CLIAPP_HPP
#define CONICDISC_CLIAPP_HPP

#include <string>

#include "conicdisc/jsonio.hpp"

namespace conicdisc {

struct CommandFlags {
    int ext_degree = 1;
    int precision = 0; // 0: keep the document's precision
    bool auto_extend = false;
};

// Route one CLI command to the module operations. Commands: delta, sigma,
// sigma-prime, classify-fiber, normal-form, classify-sing, smooth-scan,
// power-profile, nonreg-check.
Json run_command(const std::string& cmd, const InputDoc& doc, const CommandFlags& flags);

// Built-in identity checks (delta/sigma/witness/Gram) over seeded inputs.
Json run_selftest();

struct CorpusSummary {
    int total = 0;
    int passed = 0;
    std::vector<std::string> failures;
    Json report;
};

// Execute every corpus case under dir (files *.json, case-id order),
// diff against the expected outputs. Honors CONICDISC_WORKERS.
CorpusSummary run_corpus(const std::string& dir);

} // namespace conicdisc

#endif
