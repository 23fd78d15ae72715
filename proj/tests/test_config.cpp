#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqed/config.hpp"
#include "cqed/errors.hpp"

#include <filesystem>

using namespace cqed;

namespace {

const std::filesystem::path kConfigs = std::filesystem::path(CQED_SOURCE_DIR) / "configs";

ConfigError error_of(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("no ConfigError for:\n" << text);
    return ConfigError("", 0, "");
}

} // namespace

TEST_CASE("shipped configs round trip")
{
    for (const char* name : {"device_quoted.cfg", "spectrum_ratio3.cfg", "dephasing_ohmic.cfg", "validate.cfg"}) {
        CAPTURE(name);
        const RunConfig c = load_config(kConfigs / name);
        const std::string text = to_config_text(c);
        const RunConfig back = parse_config(text);
        CHECK(back == c);
        CHECK(to_config_text(back) == text);
    }
}

TEST_CASE("parsed values")
{
    const RunConfig c = load_config(kConfigs / "device_quoted.cfg");
    CHECK(c.scenario == Scenario::Device);
    CHECK(c.has_device);
    CHECK(*c.tau == doctest::Approx(1.6e-7).epsilon(1e-15));
    CHECK(*c.effective.chi == doctest::Approx(3.6e8).epsilon(1e-15));
    CHECK(c.device.E_C == doctest::Approx(5e9 * c.device.constants.hbar).epsilon(1e-15));
    CHECK(c.device.c_cap == doctest::Approx(0.13e-15).epsilon(1e-15));

    const RunConfig d = load_config(kConfigs / "dephasing_ohmic.cfg");
    CHECK(*d.effective.ratio_num == 3);
    CHECK(*d.effective.ratio_den == 1);
    CHECK(d.time.points().size() == 101);
    CHECK(d.time.points().back() == 50.0);
    CHECK(d.state.amplitudes.size() == 4);
    CHECK(d.output.pairs.size() == 2);
    CHECK(d.output.observables.size() == 3);
}

TEST_CASE("errors name the key and line")
{
    CHECK(error_of("").key() == "scenario");
    const ConfigError unknown = error_of("scenario = spectrum\nbogus = 1\n");
    CHECK(unknown.key() == "bogus");
    CHECK(unknown.line() == 2);
    CHECK(error_of("scenario = validate\n[nowhere]\n").line() == 2);
    CHECK(error_of("scenario = validate\nscenario = device\n").line() == 2);
    CHECK(error_of("scenario = spectrum\n[effective]\nchi = 1\n").key() == "effective.chi");
    CHECK(error_of("scenario = spectrum\n[effective]\nchi = 1 MHz\n").key() == "effective.chi");
    CHECK(error_of("scenario = spectrum\n[effective]\nchi = 1 Hz_rad\nratio = 3/0\n").key() == "effective.ratio");
    CHECK(error_of("scenario = spectrum\n[effective]\nchi = 1 Hz_rad\nratio = 3/1\n").key() == "cutoffs.n_max_a");
    CHECK(error_of("scenario = dephasing\n[effective]\nchi = 1 Hz_rad\nratio = 3/1\n[cutoffs]\nn_max_a = 1\n"
                   "n_max_b = 1\n[bath]\nmodel = ohmic\nalpha = 0.1\nomega_c = 1 Hz_rad\n[time]\nstart = 0 s\n"
                   "stop = 1 s\ncount = 3\n[state]\namp = 2 0 0 1 0\n")
              .key() == "state.amp");
    CHECK(error_of("scenario = dephasing\n[time]\nstart = 1 s\nstop = 0 s\ncount = 3\n").key() == "time.stop");
    CHECK(error_of("scenario = device\n").key() == "device");
}

TEST_CASE("unknown scenario")
{
    CHECK_THROWS_AS(parse_config("scenario = lindblad\n"), ConfigError);
}

TEST_CASE("missing file")
{
    CHECK_THROWS_AS(load_config(kConfigs / "does_not_exist.cfg"), ConfigError);
}
