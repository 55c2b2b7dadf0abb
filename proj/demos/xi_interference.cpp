// Diagonal, cross and interference parts of the xi transmission above a
// step of height 2 (m = 1).

#include "spinscat/spinscat.hpp"

#include <cstdio>

int main() {
    using namespace spinscat;
    const double m = 1.0, V0 = 2.0;
    std::vector<double> grid;
    for (int i = 0; i < 12; ++i) grid.push_back((V0 + m) * (1.05 + i * (10.0 - 1.05) / 11.0));
    std::printf("%8s %10s %10s %10s %10s %10s\n", "E/(V0+m)", "T1", "T2", "T_int", "T_tot", "T+R");
    for (const auto& row : sweep("xi", m, V0, grid, SpinLabel::up)) {
        const auto& r = *row.result;
        std::printf("%8.3f %10.5f %10.5f %10.5f %10.5f %10.2e\n", row.E / (V0 + m), r.T1, r.T2, r.T_int, r.T_tot,
                    r.T_tot + r.R_tot - 1.0);
    }
}
