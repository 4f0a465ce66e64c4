#ifndef PDMISO_CHECKS_HPP
#define PDMISO_CHECKS_HPP

#include <functional>
#include <string>
#include <vector>

#include "pdmiso/parallel.hpp"

namespace pdmiso::checks {

// Settings shared by every verification check.  tol_scale multiplies all
// tolerances (0.1 tightens them tenfold); grid_n is the interior point
// count of the eigenvalue grids, overridable via PDM_ISOSPEC_GRID_N.
struct CheckContext {
    double tol_scale = 1.0;
    int grid_n = 8000;
    par::Exec exec = par::default_exec();
};

CheckContext default_context();

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // human-readable metrics
    std::string json;    // machine-readable payload (one JSON object)
};

struct NamedCheck {
    std::string name;
    std::string suite;  // first-order | second-order | typea | numerics
    std::function<CheckResult(const CheckContext&)> run;
};

// All checks in (fixed) name order.
const std::vector<NamedCheck>& all_checks();

std::vector<std::string> suite_names();
bool is_suite(const std::string& name);

// Runs the named suite ("all" for everything); results keep name order.
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const CheckContext& ctx);

}  // namespace pdmiso::checks

#endif
