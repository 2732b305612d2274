#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hyperperc::verify {

// Named invariant suites spanning every module, runnable individually or as
// a batch.  Results are deterministic functions of (name, seed, fault): the
// detail strings carry no timing or machine state, so identical runs produce
// byte-identical summaries.

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

const std::vector<std::string>& suite_names();

// fault: empty for the honest run, or an injection token understood by the
// targeted suite ("branching-collision" plants a commuting witness set,
// "capacity-overflow" swaps in a fat set).  Suites ignore tokens that do not
// concern them.  Unknown suite names throw std::invalid_argument.
SuiteResult run_suite(const std::string& name, uint64_t seed,
                      const std::string& fault = {});

std::vector<SuiteResult> run_all(uint64_t seed, const std::string& fault = {});

// one `PASS name: detail` / `FAIL name: detail` line per suite plus a tally
std::string summary(const std::vector<SuiteResult>& results);

}  // namespace hyperperc::verify
