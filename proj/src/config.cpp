#include "cqed/config.hpp"

#include "cqed/errors.hpp"
#include "cqed/units.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace cqed {
namespace {

using units::Dimension;

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t j = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > j) out.push_back(s.substr(j, i - j));
    }
    return out;
}

template <class T>
bool parse_exact(std::string_view s, T& out)
{
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [p, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && p == last && first != last;
}

struct Ctx {
    std::string key;
    int line;

    [[noreturn]] void fail(const std::string& what) const { throw ConfigError(key, line, what); }

    double quantity(std::string_view v, Dimension d) const
    {
        const PhysicalConstants pc;
        try {
            const double x = units::parse_quantity(v, d, pc.hbar, pc.flux_quantum).value;
            if (!std::isfinite(x)) fail("value is not finite");
            return x;
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    double number(std::string_view v) const
    {
        double x = 0.0;
        if (!parse_exact(trim(v), x) || !std::isfinite(x)) fail("expected a finite number, got '" + std::string(v) + "'");
        return x;
    }

    long long integer(std::string_view v) const
    {
        long long x = 0;
        if (!parse_exact(trim(v), x)) fail("expected an integer, got '" + std::string(v) + "'");
        return x;
    }

    BasisLabel label(std::span<const std::string_view> f) const
    {
        const long long i = integer(f[2]);
        if (i != 0 && i != 1) fail("qubit index must be 0 or 1");
        return BasisLabel{int(integer(f[0])), int(integer(f[1])), int(i)};
    }
};

using Handler = std::function<void(RunConfig&, std::string_view, const Ctx&)>;

struct KeySpec {
    Handler handle;
    bool repeatable = false;
};

void set_device(RunConfig& c, double DeviceParams::*field, Dimension d, std::string_view v, const Ctx& ctx)
{
    c.has_device = true;
    c.device.*field = ctx.quantity(v, d);
}

struct DeviceKey {
    const char* name;
    double DeviceParams::*field;
    Dimension dim;
    bool required;
};

const DeviceKey kDeviceKeys[] = {
    {"E_C", &DeviceParams::E_C, Dimension::Energy, true},
    {"E_J_max", &DeviceParams::E_J_max, Dimension::Energy, true},
    {"omega_a", &DeviceParams::omega_a, Dimension::AngularFrequency, true},
    {"omega_b", &DeviceParams::omega_b, Dimension::AngularFrequency, true},
    {"L_a", &DeviceParams::L_a, Dimension::Length, true},
    {"L_b", &DeviceParams::L_b, Dimension::Length, true},
    {"c", &DeviceParams::c_cap, Dimension::CapacitancePerLength, true},
    {"l", &DeviceParams::l_ind, Dimension::InductancePerLength, true},
    {"C_g", &DeviceParams::C_g, Dimension::Capacitance, true},
    {"C_a", &DeviceParams::C_a, Dimension::Capacitance, true},
    {"V_g_dc", &DeviceParams::V_g_dc, Dimension::Voltage, false},
    {"S_loop", &DeviceParams::S_loop, Dimension::Area, false},
    {"d", &DeviceParams::d_dist, Dimension::Length, true},
    {"Phi_e", &DeviceParams::Phi_e, Dimension::MagneticFlux, false},
};

struct EffKey {
    const char* name;
    std::optional<double> EffectiveOverrides::*field;
    Dimension dim;
};

const EffKey kEffKeys[] = {
    {"g_a", &EffectiveOverrides::g_a, Dimension::AngularFrequency},
    {"phi_b", &EffectiveOverrides::phi_b, Dimension::Dimensionless},
    {"phi_e", &EffectiveOverrides::phi_e, Dimension::Dimensionless},
    {"n_g_dc", &EffectiveOverrides::n_g_dc, Dimension::Dimensionless},
    {"omega_a_prime", &EffectiveOverrides::omega_a_prime, Dimension::AngularFrequency},
    {"chi", &EffectiveOverrides::chi, Dimension::AngularFrequency},
    {"omega_a", &EffectiveOverrides::omega_a, Dimension::AngularFrequency},
    {"omega_b", &EffectiveOverrides::omega_b, Dimension::AngularFrequency},
    {"charging", &EffectiveOverrides::charging, Dimension::AngularFrequency},
    {"josephson", &EffectiveOverrides::josephson, Dimension::AngularFrequency},
};

std::uint8_t parse_keep(std::string_view v, const Ctx& ctx)
{
    std::uint8_t mask = 0;
    std::string_view rest = v;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        if (item == "qubit") mask |= kQubit;
        else if (item == "A") mask |= kModeA;
        else if (item == "B") mask |= kModeB;
        else ctx.fail("unknown subsystem '" + std::string(item) + "' (expected qubit, A, B)");
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    if (mask == 0) ctx.fail("empty subsystem list");
    return mask;
}

std::map<std::string, std::map<std::string, KeySpec>> make_table()
{
    std::map<std::string, std::map<std::string, KeySpec>> t;

    t[""]["scenario"] = {[](RunConfig& c, std::string_view v, const Ctx& ctx) {
        if (v == "device") c.scenario = Scenario::Device;
        else if (v == "spectrum") c.scenario = Scenario::Spectrum;
        else if (v == "dephasing") c.scenario = Scenario::Dephasing;
        else if (v == "validate") c.scenario = Scenario::Validate;
        else ctx.fail("unknown scenario '" + std::string(v) + "' (expected device, spectrum, dephasing, validate)");
    }};
    t[""]["workers"] = {[](RunConfig& c, std::string_view v, const Ctx& ctx) {
        const long long k = ctx.integer(v);
        if (k < 1 || k > 1024) ctx.fail("workers must be in [1, 1024]");
        c.workers = unsigned(k);
    }};

    for (const auto& dk : kDeviceKeys)
        t["device"][dk.name] = {[dk](RunConfig& c, std::string_view v, const Ctx& ctx) {
            set_device(c, dk.field, dk.dim, v, ctx);
        }};
    t["device"]["tau"] = {[](RunConfig& c, std::string_view v, const Ctx& ctx) {
        c.tau = ctx.quantity(v, Dimension::Time);
        if (*c.tau < 0.0) ctx.fail("tau must be non-negative");
    }};

    for (const auto& ek : kEffKeys)
        t["effective"][ek.name] = {[ek](RunConfig& c, std::string_view v, const Ctx& ctx) {
            c.effective.*ek.field = ctx.quantity(v, ek.dim);
        }};
    t["effective"]["ratio"] = {[](RunConfig& c, std::string_view v, const Ctx& ctx) {
        const auto slash = v.find('/');
        const long long num = ctx.integer(v.substr(0, slash));
        const long long den = slash == std::string_view::npos ? 1 : ctx.integer(v.substr(slash + 1));
        if (den <= 0) ctx.fail("ratio denominator must be positive");
        c.effective.ratio_num = num;
        c.effective.ratio_den = den;
    }};

    for (const char* k : {"n_max_a", "n_max_b"})
        t["cutoffs"][k] = {[k](RunConfig& c, std::string_view v, const Ctx& ctx) {
            const long long n = ctx.integer(v);
            if (n < 1 || n > 4096) ctx.fail("Fock cutoff must be in [1, 4096]");
            (std::string_view(k) == "n_max_a" ? c.n_max_a : c.n_max_b) = int(n);
        }};

    auto bath = [&t](const char* key, std::function<void(BathConfig&, std::string_view, const Ctx&)> f) {
        t["bath"][key] = {[f](RunConfig& c, std::string_view v, const Ctx& ctx) {
            c.bath.present = true;
            f(c.bath, v, ctx);
        }};
    };
    bath("model", [](BathConfig& b, std::string_view v, const Ctx& ctx) {
        if (v == "ohmic") b.table = false;
        else if (v == "table") b.table = true;
        else ctx.fail("unknown spectral density model '" + std::string(v) + "' (expected ohmic, table)");
    });
    bath("table", [](BathConfig& b, std::string_view v, const Ctx& ctx) {
        if (v.empty()) ctx.fail("empty path");
        b.table_path = std::string(v);
    });
    bath("alpha", [](BathConfig& b, std::string_view v, const Ctx& ctx) {
        b.alpha = ctx.quantity(v, Dimension::Dimensionless);
    });
    bath("s", [](BathConfig& b, std::string_view v, const Ctx& ctx) {
        b.s = ctx.quantity(v, Dimension::Dimensionless);
    });
    bath("omega_c", [](BathConfig& b, std::string_view v, const Ctx& ctx) {
        b.omega_c = ctx.quantity(v, Dimension::AngularFrequency);
    });
    bath("temperature", [](BathConfig& b, std::string_view v, const Ctx& ctx) {
        b.temperature = ctx.quantity(v, Dimension::Temperature);
        if (*b.temperature < 0.0) ctx.fail("temperature must be non-negative");
    });
    bath("beta", [](BathConfig& b, std::string_view v, const Ctx& ctx) {
        b.beta = ctx.quantity(v, Dimension::Time);
        if (!(*b.beta > 0.0)) ctx.fail("beta must be positive");
    });

    auto time = [&t](const char* key, std::function<void(TimeGridConfig&, std::string_view, const Ctx&)> f) {
        t["time"][key] = {[f](RunConfig& c, std::string_view v, const Ctx& ctx) {
            c.time.present = true;
            f(c.time, v, ctx);
        }};
    };
    time("start", [](TimeGridConfig& g, std::string_view v, const Ctx& ctx) { g.start = ctx.quantity(v, Dimension::Time); });
    time("stop", [](TimeGridConfig& g, std::string_view v, const Ctx& ctx) { g.stop = ctx.quantity(v, Dimension::Time); });
    time("count", [](TimeGridConfig& g, std::string_view v, const Ctx& ctx) {
        const long long n = ctx.integer(v);
        if (n < 1 || n > 10000000) ctx.fail("count must be in [1, 1e7]");
        g.count = int(n);
    });
    time("spacing", [](TimeGridConfig& g, std::string_view v, const Ctx& ctx) {
        if (v == "linear") g.log = false;
        else if (v == "log") g.log = true;
        else ctx.fail("spacing must be linear or log");
    });

    t["state"]["amp"] = {[](RunConfig& c, std::string_view v, const Ctx& ctx) {
        const auto f = split_ws(v);
        if (f.size() != 5) ctx.fail("expected 'm n i re im'");
        if (c.state.kind == StateConfig::Kind::Coherent) ctx.fail("amp lines cannot be mixed with a coherent state");
        c.state.kind = StateConfig::Kind::Amplitudes;
        const BasisLabel l = ctx.label(f);
        for (const auto& a : c.state.amplitudes)
            if (a.label == l) ctx.fail("duplicate amplitude label");
        c.state.amplitudes.push_back({l, ctx.number(f[3]), ctx.number(f[4])});
    }, true};
    auto coherent = [&t](const char* key, std::function<void(StateConfig&, std::string_view, const Ctx&)> f) {
        t["state"][key] = {[f](RunConfig& c, std::string_view v, const Ctx& ctx) {
            if (c.state.kind == StateConfig::Kind::Amplitudes)
                ctx.fail("coherent-state keys cannot be mixed with amp lines");
            c.state.kind = StateConfig::Kind::Coherent;
            f(c.state, v, ctx);
        }};
    };
    coherent("mode", [](StateConfig& s, std::string_view v, const Ctx& ctx) {
        if (v == "A") s.mode = Mode::A;
        else if (v == "B") s.mode = Mode::B;
        else ctx.fail("mode must be A or B");
    });
    coherent("alpha_re", [](StateConfig& s, std::string_view v, const Ctx& ctx) { s.alpha_re = ctx.number(v); });
    coherent("alpha_im", [](StateConfig& s, std::string_view v, const Ctx& ctx) { s.alpha_im = ctx.number(v); });

    t["output"]["pair"] = {[](RunConfig& c, std::string_view v, const Ctx& ctx) {
        const auto f = split_ws(v);
        if (f.size() != 6) ctx.fail("expected 'm n i m2 n2 i2'");
        c.output.pairs.emplace_back(ctx.label(std::span(f).first(3)), ctx.label(std::span(f).subspan(3)));
    }, true};
    t["output"]["observable"] = {[](RunConfig& c, std::string_view v, const Ctx& ctx) {
        try {
            const Observable o = parse_observable(v);
            for (auto x : c.output.observables)
                if (x == o) ctx.fail("duplicate observable");
            c.output.observables.push_back(o);
        } catch (const InvalidArgument& e) {
            ctx.fail(e.what());
        }
    }, true};
    t["output"]["keep"] = {[](RunConfig& c, std::string_view v, const Ctx& ctx) { c.output.keep = parse_keep(v, ctx); }};
    t["output"]["dir"] = {[](RunConfig& c, std::string_view v, const Ctx& ctx) {
        if (v.empty()) ctx.fail("empty path");
        c.output.dir = std::string(v);
    }};

    auto positive = [](const Ctx& ctx, double x) {
        if (!(x > 0.0)) ctx.fail("must be positive");
        return x;
    };
    t["tolerances"]["quadrature"] = {[positive](RunConfig& c, std::string_view v, const Ctx& ctx) {
        c.tol.quad_rel = positive(ctx, ctx.quantity(v, Dimension::Dimensionless));
    }};
    t["tolerances"]["validation"] = {[positive](RunConfig& c, std::string_view v, const Ctx& ctx) {
        c.tol.validation = positive(ctx, ctx.quantity(v, Dimension::Dimensionless));
    }};
    t["tolerances"]["dfs"] = {[positive](RunConfig& c, std::string_view v, const Ctx& ctx) {
        c.tol.dfs = positive(ctx, ctx.quantity(v, Dimension::AngularFrequency));
    }};
    t["tolerances"]["small_flux"] = {[positive](RunConfig& c, std::string_view v, const Ctx& ctx) {
        c.tol.regime.small_flux = positive(ctx, ctx.quantity(v, Dimension::Dimensionless));
    }};
    t["tolerances"]["dispersive"] = {[positive](RunConfig& c, std::string_view v, const Ctx& ctx) {
        c.tol.regime.dispersive = positive(ctx, ctx.quantity(v, Dimension::Dimensionless));
    }};
    t["tolerances"]["rwa"] = {[positive](RunConfig& c, std::string_view v, const Ctx& ctx) {
        c.tol.regime.rwa = positive(ctx, ctx.quantity(v, Dimension::Dimensionless));
    }};
    return t;
}

const auto& key_table()
{
    static const auto t = make_table();
    return t;
}

std::string full_key(const std::string& section, const std::string& key)
{
    return section.empty() ? key : section + "." + key;
}

bool has_model(const RunConfig& c)
{
    const auto& e = c.effective;
    return c.has_device || (e.chi && (e.omega_a_prime || e.ratio_num));
}

void check(const RunConfig& c, const std::map<std::string, int>& seen)
{
    auto missing = [](const std::string& key, const std::string& why = "missing required key") {
        throw ConfigError(key, 0, why);
    };
    if (!seen.count("scenario")) missing("scenario");

    if (c.has_device)
        for (const auto& dk : kDeviceKeys)
            if (dk.required && !seen.count(full_key("device", dk.name))) missing(full_key("device", dk.name));

    if (c.effective.omega_a_prime && c.effective.ratio_num)
        throw ConfigError("effective.ratio", seen.at("effective.ratio"), "give either ratio or omega_a_prime, not both");
    if (c.effective.ratio_num && !c.effective.chi)
        throw ConfigError("effective.chi", 0, "ratio requires chi");

    if (c.bath.present) {
        if (c.bath.table && c.bath.table_path.empty()) missing("bath.table");
        if (!c.bath.table) {
            if (!seen.count("bath.alpha")) missing("bath.alpha");
            if (!seen.count("bath.omega_c")) missing("bath.omega_c");
        }
        if (c.bath.temperature && c.bath.beta)
            throw ConfigError("bath.beta", seen.at("bath.beta"), "give either temperature or beta, not both");
    }

    if (c.time.present) {
        for (const char* k : {"time.start", "time.stop", "time.count"})
            if (!seen.count(k)) missing(k);
        if (c.time.log && !(c.time.start > 0.0))
            throw ConfigError("time.start", seen.at("time.start"), "log spacing needs start > 0");
        try {
            const auto pts = c.time.points();
            require_time_grid(pts);
        } catch (const InvalidArgument& e) {
            throw ConfigError("time.stop", seen.at("time.stop"), e.what());
        }
    }

    if (c.state.kind == StateConfig::Kind::Amplitudes) {
        double norm = 0.0;
        for (const auto& a : c.state.amplitudes) norm += a.re * a.re + a.im * a.im;
        if (!(norm > 0.0)) throw ConfigError("state.amp", seen.at("state.amp"), "state is not normalizable (zero norm)");
        if (c.n_max_a && c.n_max_b)
            for (const auto& a : c.state.amplitudes)
                if (a.label.m < 0 || a.label.m > *c.n_max_a || a.label.n < 0 || a.label.n > *c.n_max_b)
                    throw ConfigError("state.amp", seen.at("state.amp"), "label outside the Fock cutoffs");
    }
    if (c.n_max_a && c.n_max_b)
        for (const auto& [r, l] : c.output.pairs)
            for (const auto& x : {r, l})
                if (x.m < 0 || x.m > *c.n_max_a || x.n < 0 || x.n > *c.n_max_b)
                    throw ConfigError("output.pair", seen.at("output.pair"), "label outside the Fock cutoffs");

    switch (c.scenario) {
    case Scenario::Validate:
        break;
    case Scenario::Device: {
        const auto& e = c.effective;
        if (!c.has_device && !(e.omega_a && e.josephson && e.g_a && e.phi_b))
            missing("device", "device scenario needs a [device] section or effective omega_a, josephson, g_a, phi_b");
        break;
    }
    case Scenario::Dephasing:
        if (!c.bath.present) missing("bath.model");
        if (!c.time.present) missing("time.start");
        if (c.state.kind == StateConfig::Kind::None) missing("state.amp");
        [[fallthrough]];
    case Scenario::Spectrum:
        if (!c.n_max_a) missing("cutoffs.n_max_a");
        if (!c.n_max_b) missing("cutoffs.n_max_b");
        if (!has_model(c)) missing("effective.chi", "needs a [device] section or effective chi with omega_a_prime or ratio");
        break;
    }
}

} // namespace

const char* to_string(Scenario s) noexcept
{
    switch (s) {
    case Scenario::Device: return "device";
    case Scenario::Spectrum: return "spectrum";
    case Scenario::Dephasing: return "dephasing";
    case Scenario::Validate: return "validate";
    }
    return "?";
}

bool EffectiveOverrides::any() const noexcept
{
    return g_a || phi_b || phi_e || n_g_dc || omega_a_prime || chi || ratio_num || omega_a || omega_b || charging ||
           josephson;
}

std::vector<double> TimeGridConfig::points() const
{
    std::vector<double> t(static_cast<std::size_t>(std::max(count, 0)));
    const std::size_t n = t.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double u = n == 1 ? 0.0 : double(k) / double(n - 1);
        t[k] = log ? start * std::pow(stop / start, u) : start + (stop - start) * u;
    }
    if (n > 1) {
        t.front() = start;
        t.back() = stop;
    }
    return t;
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir)
{
    const auto& table = key_table();
    RunConfig c;
    std::map<std::string, int> seen;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("", line_no, "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty() || !table.count(section))
                throw ConfigError(section, line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const std::string fk = full_key(section, key);
        const auto& keys = table.at(section);
        const auto it = keys.find(key);
        if (key.empty() || it == keys.end()) throw ConfigError(fk, line_no, "unknown key");
        if (value.empty()) throw ConfigError(fk, line_no, "missing value");
        if (seen.count(fk) && !it->second.repeatable) throw ConfigError(fk, line_no, "duplicate key");
        if (!seen.count(fk)) seen[fk] = line_no;
        it->second.handle(c, value, Ctx{fk, line_no});
    }

    if (c.bath.table && !c.bath.table_path.empty()) {
        std::filesystem::path p(c.bath.table_path);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        c.bath.table_path = p.lexically_normal().string();
    }
    check(c, seen);
    return c;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", 0, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::filesystem::path base = path.parent_path();
    if (base.empty()) base = ".";
    return parse_config(ss.str(), std::filesystem::absolute(base));
}

std::string to_config_text(const RunConfig& c)
{
    using units::format_number;
    using units::format_quantity;
    std::ostringstream os;
    auto label = [](const BasisLabel& l) {
        return std::to_string(l.m) + " " + std::to_string(l.n) + " " + std::to_string(l.i);
    };

    os << "scenario = " << to_string(c.scenario) << "\n";
    os << "workers = " << c.workers << "\n";

    if (c.has_device || c.tau) {
        os << "\n[device]\n";
        if (c.has_device)
            for (const auto& dk : kDeviceKeys) os << dk.name << " = " << format_quantity(c.device.*dk.field, dk.dim) << "\n";
        if (c.tau) os << "tau = " << format_quantity(*c.tau, Dimension::Time) << "\n";
    }

    if (c.effective.any()) {
        os << "\n[effective]\n";
        for (const auto& ek : kEffKeys)
            if (c.effective.*ek.field) os << ek.name << " = " << format_quantity(*(c.effective.*ek.field), ek.dim) << "\n";
        if (c.effective.ratio_num) os << "ratio = " << *c.effective.ratio_num << "/" << *c.effective.ratio_den << "\n";
    }

    if (c.n_max_a || c.n_max_b) {
        os << "\n[cutoffs]\n";
        if (c.n_max_a) os << "n_max_a = " << *c.n_max_a << "\n";
        if (c.n_max_b) os << "n_max_b = " << *c.n_max_b << "\n";
    }

    if (c.bath.present) {
        const auto& b = c.bath;
        os << "\n[bath]\n";
        os << "model = " << (b.table ? "table" : "ohmic") << "\n";
        if (b.table) os << "table = " << b.table_path << "\n";
        os << "alpha = " << format_number(b.alpha) << "\n";
        os << "s = " << format_number(b.s) << "\n";
        os << "omega_c = " << format_quantity(b.omega_c, Dimension::AngularFrequency) << "\n";
        if (b.temperature) os << "temperature = " << format_quantity(*b.temperature, Dimension::Temperature) << "\n";
        if (b.beta) os << "beta = " << format_quantity(*b.beta, Dimension::Time) << "\n";
    }

    if (c.time.present) {
        os << "\n[time]\n";
        os << "start = " << format_quantity(c.time.start, Dimension::Time) << "\n";
        os << "stop = " << format_quantity(c.time.stop, Dimension::Time) << "\n";
        os << "count = " << c.time.count << "\n";
        os << "spacing = " << (c.time.log ? "log" : "linear") << "\n";
    }

    if (c.state.kind != StateConfig::Kind::None) {
        os << "\n[state]\n";
        if (c.state.kind == StateConfig::Kind::Amplitudes) {
            for (const auto& a : c.state.amplitudes)
                os << "amp = " << label(a.label) << " " << format_number(a.re) << " " << format_number(a.im) << "\n";
        } else {
            os << "mode = " << (c.state.mode == Mode::A ? "A" : "B") << "\n";
            os << "alpha_re = " << format_number(c.state.alpha_re) << "\n";
            os << "alpha_im = " << format_number(c.state.alpha_im) << "\n";
        }
    }

    os << "\n[output]\n";
    for (const auto& [r, l] : c.output.pairs) os << "pair = " << label(r) << " " << label(l) << "\n";
    for (auto o : c.output.observables) os << "observable = " << to_string(o) << "\n";
    {
        std::string keep;
        if (c.output.keep & kQubit) keep += "qubit,";
        if (c.output.keep & kModeA) keep += "A,";
        if (c.output.keep & kModeB) keep += "B,";
        keep.pop_back();
        os << "keep = " << keep << "\n";
    }
    if (!c.output.dir.empty()) os << "dir = " << c.output.dir << "\n";

    os << "\n[tolerances]\n";
    os << "quadrature = " << format_number(c.tol.quad_rel) << "\n";
    os << "validation = " << format_number(c.tol.validation) << "\n";
    if (c.tol.dfs) os << "dfs = " << format_quantity(*c.tol.dfs, Dimension::AngularFrequency) << "\n";
    os << "small_flux = " << format_number(c.tol.regime.small_flux) << "\n";
    os << "dispersive = " << format_number(c.tol.regime.dispersive) << "\n";
    os << "rwa = " << format_number(c.tol.regime.rwa) << "\n";
    return os.str();
}

} // namespace cqed
