#pragma once

// Line-oriented run configuration:
//
//   scenario = dephasing
//   [effective]
//   chi = 1 Hz_rad
//   ratio = 3/1
//   [cutoffs]
//   n_max_a = 4
//   n_max_b = 4
//
// '#' starts a comment. Dimensional values need a unit suffix; everything is
// stored in SI (angular frequencies in rad/s).

#include "cqed/device.hpp"
#include "cqed/dynamics.hpp"
#include "cqed/hilbert.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cqed {

enum class Scenario { Device, Spectrum, Dephasing, Validate };

const char* to_string(Scenario s) noexcept;

/// Values that replace (or, without a [device] section, define) the model.
struct EffectiveOverrides {
    std::optional<double> g_a, phi_b, phi_e, n_g_dc;
    std::optional<double> omega_a_prime, chi;
    std::optional<long long> ratio_num, ratio_den;  // omega_a_prime / chi
    std::optional<double> omega_a, omega_b, charging, josephson;

    bool any() const noexcept;
    friend bool operator==(const EffectiveOverrides&, const EffectiveOverrides&) = default;
};

struct BathConfig {
    bool present = false;
    bool table = false;        // model = table
    std::string table_path;    // absolute after load_config
    double alpha = 0.0;
    double s = 1.0;
    double omega_c = 0.0;
    std::optional<double> temperature;  // K
    std::optional<double> beta;         // s (hbar = 1)

    friend bool operator==(const BathConfig&, const BathConfig&) = default;
};

struct TimeGridConfig {
    bool present = false;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    bool log = false;

    std::vector<double> points() const;
    friend bool operator==(const TimeGridConfig&, const TimeGridConfig&) = default;
};

struct AmplitudeEntry {
    BasisLabel label;
    double re = 0.0;
    double im = 0.0;
    friend bool operator==(const AmplitudeEntry&, const AmplitudeEntry&) = default;
};

struct StateConfig {
    enum class Kind { None, Amplitudes, Coherent };
    Kind kind = Kind::None;
    std::vector<AmplitudeEntry> amplitudes;
    Mode mode = Mode::A;
    double alpha_re = 0.0;
    double alpha_im = 0.0;

    friend bool operator==(const StateConfig&, const StateConfig&) = default;
};

struct OutputConfig {
    std::vector<std::pair<BasisLabel, BasisLabel>> pairs;
    std::vector<Observable> observables;
    std::uint8_t keep = kQubit;
    std::string dir;

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ToleranceConfig {
    double quad_rel = 1e-8;
    double validation = 1e-10;
    std::optional<double> dfs;  // rad/s
    RegimeThresholds regime{};

    friend bool operator==(const ToleranceConfig&, const ToleranceConfig&) = default;
};

struct RunConfig {
    Scenario scenario = Scenario::Validate;
    bool has_device = false;
    DeviceParams device{};
    std::optional<double> tau;  // s
    EffectiveOverrides effective{};
    std::optional<int> n_max_a, n_max_b;
    BathConfig bath{};
    TimeGridConfig time{};
    StateConfig state{};
    OutputConfig output{};
    ToleranceConfig tol{};
    unsigned workers = 1;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Reads and validates a config file. Relative table paths are resolved
/// against the file's directory. Throws ConfigError.
RunConfig load_config(const std::filesystem::path& path);

/// Same, from text; relative paths are resolved against `base_dir`.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

/// Canonical text form; parse_config(to_config_text(c)) == c.
std::string to_config_text(const RunConfig& c);

} // namespace cqed
