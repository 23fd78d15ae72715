#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqed/config.hpp"
#include "cqed/errors.hpp"
#include "cqed/scenarios.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cqed;

namespace {

const std::filesystem::path kConfigs = std::filesystem::path(CQED_SOURCE_DIR) / "configs";

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const CsvTable& table(const ResultBundle& b, const std::string& name)
{
    for (const auto& t : b.tables)
        if (t.name == name) return t;
    FAIL("no table " << name);
    return b.tables.front();
}

} // namespace

TEST_CASE("csv numbers")
{
    CHECK(csv_number(0.1) == "0.10000000000000001");
    CHECK(csv_number(-0.0) == "0");
    CHECK(csv_number(1e300) == "1.0000000000000001e+300");
    CsvTable t{"x", {"a", "b"}, {}};
    t.add_row({1.0, 2.5});
    CHECK(t.render() == "a,b\n1,2.5\n");
}

TEST_CASE("device scenario")
{
    const ResultBundle b = run(load_config(kConfigs / "device_quoted.cfg"));
    CHECK(b.report["cross_phase"]["cycles"].get<double>() == doctest::Approx(9.1673247220931713403).epsilon(1e-15));
    CHECK(b.report["derived"]["chi"].get<double>() == doctest::Approx(9066665.2381274739301).epsilon(1e-13));
    CHECK(b.report["device_map"]["phi_b"].get<double>() == doctest::Approx(5.3973750342241649645e-7).epsilon(1e-13));
    CHECK(b.report.contains("regime"));
    CHECK(table(b, "regime").rows.size() == 11);
}

TEST_CASE("spectrum scenario finds the n = 3 class")
{
    const ResultBundle b = run(load_config(kConfigs / "spectrum_ratio3.cfg"));
    bool found = false;
    for (const auto& c : b.report["degenerate_classes"]) {
        int n3 = 0;
        for (const auto& m : c["members"])
            if (m[1].get<int>() == 3) ++n3;  // [m, n, i]
        if (n3 == 10) found = true;
    }
    CHECK(found);
    CHECK(table(b, "levels").rows.size() == 50);
    CHECK(b.report["discrepancy_note"].get<std::string>().find("resonator-B") != std::string::npos);
}

TEST_CASE("dephasing scenario")
{
    const ResultBundle b = run(load_config(kConfigs / "dephasing_ohmic.cfg"));
    const CsvTable& d = table(b, "dephasing");
    REQUIRE(d.header.size() == 9);
    CHECK(d.header[1] == "abs_rho_0_3_0__1_3_1");
    CHECK(d.header[5] == "abs_rho_0_0_0__1_2_0");
    CHECK(d.rows.size() == 101);
    // Protected pair: constant modulus, zero damping.
    for (const auto& r : d.rows) {
        CHECK(r[1] == d.rows.front()[1]);
        CHECK(r[3] == "0");
    }
    CHECK(std::stod(d.rows.back()[5]) < std::stod(d.rows.front()[5]));
    CHECK(table(b, "integrals").header == std::vector<std::string>{"t", "q1", "q2"});
    CHECK(table(b, "observables").header ==
          std::vector<std::string>{"t", "purity", "qubit_coherence", "subsystem_fidelity"});
}

TEST_CASE("diagonal initial state keeps constant populations")
{
    const std::string text =
        "scenario = dephasing\n[effective]\nchi = 1 Hz_rad\nratio = 5/2\n[cutoffs]\nn_max_a = 2\nn_max_b = 2\n"
        "[bath]\nmodel = ohmic\nalpha = 0.2\nomega_c = 1 Hz_rad\nbeta = 1 s\n[time]\nstart = 0 s\nstop = 10 s\n"
        "count = 11\n[state]\namp = 1 1 0 1 0\n[output]\npair = 1 1 0 1 1 0\nobservable = purity\n";
    const ResultBundle b = run(parse_config(text));
    const CsvTable& d = table(b, "dephasing");
    for (const auto& r : d.rows) CHECK(r[1] == "1");
    for (const auto& r : table(b, "observables").rows) CHECK(r[1] == "1");
}

TEST_CASE("bundle output is deterministic")
{
    const RunConfig c = load_config(kConfigs / "dephasing_ohmic.cfg");
    const auto dir = std::filesystem::temp_directory_path() / "cqed_test_scenarios";
    std::filesystem::remove_all(dir);
    write_bundle(run(c), dir / "a");
    RunConfig c4 = c;
    c4.workers = 4;
    write_bundle(run(c4), dir / "b");
    for (const char* f : {"dephasing.csv", "integrals.csv", "observables.csv"})
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    CHECK_FALSE(slurp(dir / "a" / "report.json").empty());
    std::filesystem::remove_all(dir);
}
