// SPDX-License-Identifier: Apache-2.0
// Acceptance gate: runs the validation suite (full profile unless
// EIGENCHAN_PROFILE=quick) and prints one pass/fail line per criterion.
// Exit status 0 only when every criterion passes.

#include <cstdio>

#include <evcm/evcm.hpp>

int main() {
    const evcm::ValidationProfile profile = evcm::ValidationProfile::from_env();
    const evcm::ValidationReport report = evcm::run_validation(profile);
    std::fputs(evcm::format_report(report).c_str(), stdout);
    return report.all_passed() ? 0 : 1;
}
