#include "spinscat/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace spinscat;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string f; std::getline(is, f, ',');) out.push_back(f);
    return out;
}

}  // namespace

TEST(Format, TwelveSignificantDigits) {
    EXPECT_EQ(format_sig12(1.0), "1.00000000000");
    EXPECT_EQ(format_sig12(0.0), "0.00000000000");
    EXPECT_EQ(format_sig12(0.0161332), "0.0161332000000");
    EXPECT_EQ(format_sig12(-2.5), "-2.50000000000");
    EXPECT_EQ(format_sig12(512.05), "512.050000000");
    EXPECT_EQ(format_sig12(123456789012345.0), "123456789012345");
    EXPECT_EQ(format_sig12(9.99999999999996), "10.0000000000");
    EXPECT_EQ(format_sig12(1.5e-12), "0.00000000000150000000000");
    EXPECT_EQ(format_sig12(NAN), "nan");
}

TEST(Format, NeverUsesExponent) {
    for (double x : {1e-300, 3.3e-17, 7e20, -4.2e-9}) EXPECT_EQ(format_sig12(x).find_first_of("eE"), std::string::npos);
}

TEST(Csv, HeaderMetadataAndRows) {
    const auto rows = sweep("dirac", 1.0, 0.0, {2.0, 3.0}, SpinLabel::up);
    const std::string text = csv_string(rows, {"dirac", 1.0, 0.0, SpinLabel::up, Units::natural, DirectionConvention::flux});
    EXPECT_EQ(text.find('\r'), std::string::npos);
    ASSERT_EQ(text.back(), '\n');
    const auto ls = lines(text);
    ASSERT_EQ(ls.size(), 4u);
    EXPECT_EQ(ls[0], "# rep=dirac m=1.00000000000 V0=0.00000000000 spin=up units=natural convention=flux");
    EXPECT_EQ(ls[1], "E,T_up,T_down,R_up,R_down,T_tot,R_tot,T1,T2,T_int,conservation_residual,regime");
    const auto f = split(ls[2]);
    ASSERT_EQ(f.size(), 12u);
    EXPECT_EQ(f[0], "2.00000000000");
    EXPECT_EQ(f[1], "1.00000000000");
    EXPECT_LE(std::stod(f[10]), 1e-9);
    EXPECT_EQ(f[11], "transmitting");
}

TEST(Csv, KeVScalesEnergiesOnly) {
    const auto rows = sweep("ajaib", 1.0, 1.0 / 511.0, {513.0 / 511.0}, SpinLabel::up);
    const std::string text =
        csv_string(rows, {"ajaib", 511.0, 1.0, SpinLabel::up, Units::keV, DirectionConvention::flux});
    const auto f = split(lines(text)[2]);
    EXPECT_EQ(f[0], "513.000000000");
    EXPECT_GT(std::stod(f[2]), 0.0);
}

TEST(Csv, FlaggedRowsCarryNan) {
    SweepRow bad;
    bad.E = 2.0;
    bad.flag = "threshold";
    const auto ls = lines(csv_string({bad}, {"xi", 1.0, 1.0, SpinLabel::down, Units::natural, DirectionConvention::momentum}));
    EXPECT_EQ(ls[2], "2.00000000000,nan,nan,nan,nan,nan,nan,nan,nan,nan,nan,flagged");
}

TEST(Csv, EmptyInputRejected) {
    EXPECT_THROW(csv_string({}, {}), std::invalid_argument);
}

TEST(Csv, WriteAndUnwritablePath) {
    const auto dir = std::filesystem::temp_directory_path() / "spinscat_io_test";
    std::filesystem::create_directories(dir);
    const auto rows = sweep("xi", 1.0, 2.0, {3.15, 3.5}, SpinLabel::up);
    const CsvMetadata meta{"xi", 1.0, 2.0, SpinLabel::up, Units::natural, DirectionConvention::flux};
    emit_csv(rows, meta, (dir / "a.csv").string());
    emit_csv(rows, meta, (dir / "b.csv").string());
    std::ifstream a(dir / "a.csv", std::ios::binary), b(dir / "b.csv", std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    EXPECT_EQ(sa.str(), sb.str());
    EXPECT_LT(std::stod(split(lines(sa.str())[2])[9]), 0.0);  // T_int negative near threshold
    EXPECT_THROW(emit_csv(rows, meta, (dir / "missing" / "x.csv").string()), io_error);
}

TEST(Json, ScatterResultRoundTrips) {
    for (const char* n : {"dirac", "ajaib", "xi"}) {
        for (double V0 : {0.5, 1.5, 10.0}) {
            const auto r = solve_step(registry_lookup(n), 2.0, 1.0, V0, SpinLabel::up);
            const auto back = scatter_result_from_json(json::parse(to_json(r).dump()));
            EXPECT_EQ(back.t_up, r.t_up);
            EXPECT_EQ(back.t_down, r.t_down);
            EXPECT_EQ(back.r_up, r.r_up);
            EXPECT_EQ(back.r_down, r.r_down);
            for (auto f : {&ScatterResult::T_up, &ScatterResult::T_down, &ScatterResult::R_up, &ScatterResult::R_down,
                           &ScatterResult::T1, &ScatterResult::T2, &ScatterResult::T_int, &ScatterResult::R_int,
                           &ScatterResult::T_tot, &ScatterResult::R_tot, &ScatterResult::conservation_residual})
                EXPECT_EQ(back.*f, r.*f);
            EXPECT_EQ(back.regime, r.regime);
        }
    }
}

TEST(Json, NanTravelsAsNull) {
    ScatterResult r;
    r.T_up = NAN;
    const json j = to_json(r);
    EXPECT_TRUE(j["T_up"].is_null());
    EXPECT_TRUE(std::isnan(scatter_result_from_json(json::parse(j.dump())).T_up));
}

TEST(Json, ReportsSerialize) {
    const auto e = compare_representations(registry_lookup("dirac"), registry_lookup("xi"));
    const json je = to_json(e);
    EXPECT_TRUE(je["exists"].get<bool>());
    EXPECT_FALSE(je["unitary"].get<bool>());
    EXPECT_EQ(je["metric"].size(), 4u);
    const json ja = to_json(full_algebra_report().front());
    EXPECT_TRUE(ja["ok"].get<bool>());
}
