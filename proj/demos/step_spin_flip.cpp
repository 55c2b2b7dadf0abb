// Same step, three representations: totals agree, spin channels do not.

#include "spinscat/spinscat.hpp"

#include <cstdio>

int main() {
    using namespace spinscat;
    const double E = 2.0, m = 1.0, V0 = 0.5;
    std::printf("%-6s %12s %12s %12s %12s %12s\n", "rep", "T_up", "T_down", "R_up", "R_down", "T_tot");
    for (const auto& name : registry_names()) {
        const auto r = solve_step(registry_lookup(name), E, m, V0, SpinLabel::up);
        std::printf("%-6s %12.8f %12.8f %12.8f %12.8f %12.8f\n", name.c_str(), r.T_up, r.T_down, r.R_up, r.R_down,
                    r.T_tot);
    }
    const auto cf = closed_form(E, m, V0);
    std::printf("closed form: R = %.8f, T = %.8f (T + R = %.4f)\n", cf.R_cf, cf.T_cf, cf.T_cf + cf.R_cf);
}
