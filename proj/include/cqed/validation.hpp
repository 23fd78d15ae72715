#pragma once

// Invariant suite behind the `validate` scenario. Every check reports the
// measured residual next to the tolerance it was judged against.

#include <string>
#include <vector>

namespace cqed {

struct ValidationRow {
    std::string module;
    std::string check;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct ValidationOptions {
    double tol = 1e-10;  // algebraic identities (relative)
    unsigned workers = 1;
};

std::vector<ValidationRow> run_validation(const ValidationOptions& opts = {});

bool all_pass(const std::vector<ValidationRow>& rows) noexcept;

} // namespace cqed
