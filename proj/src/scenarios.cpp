#include "cqed/scenarios.hpp"

#include "cqed/bath.hpp"
#include "cqed/dynamics.hpp"
#include "cqed/errors.hpp"
#include "cqed/kernels.hpp"
#include "cqed/spectrum.hpp"
#include "cqed/validation.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace cqed {
namespace {

using nlohmann::json;

std::string label_tag(const BasisLabel& l)
{
    return std::to_string(l.m) + "_" + std::to_string(l.n) + "_" + std::to_string(l.i);
}

json label_json(const BasisLabel& l) { return json::array({l.m, l.n, l.i}); }

json number(double v)
{
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

json eff_json(const EffectiveParams& e)
{
    return {{"g_a", number(e.g_a)},
            {"phi_b", number(e.phi_b)},
            {"phi_e", number(e.phi_e)},
            {"n_g_dc", number(e.n_g_dc)},
            {"omega_a_prime", number(e.omega_a_prime)},
            {"chi", number(e.chi)},
            {"omega_a", number(e.omega_a)},
            {"omega_b", number(e.omega_b)}};
}

FockCutoff cutoff_of(const RunConfig& c) { return FockCutoff(c.n_max_a.value(), c.n_max_b.value()); }

SpectralDensity density_of(const RunConfig& c)
{
    if (c.bath.table) return SpectralDensity::load_table(c.bath.table_path);
    return SpectralDensity::ohmic(c.bath.alpha, c.bath.s, c.bath.omega_c);
}

BathState bath_of(const RunConfig& c)
{
    if (c.bath.beta) return BathState::with_beta(*c.bath.beta);
    if (c.bath.temperature) {
        const PhysicalConstants k;
        return BathState::from_temperature(*c.bath.temperature, k.hbar, k.k_B);
    }
    return BathState::zero_temperature();
}

StateVector state_of(const RunConfig& c, const FockCutoff& cut)
{
    if (c.state.kind == StateConfig::Kind::Coherent)
        return coherent_state(cut, c.state.mode, cplx(c.state.alpha_re, c.state.alpha_im));
    std::vector<std::pair<BasisLabel, cplx>> terms;
    for (const auto& a : c.state.amplitudes) terms.push_back({a.label, cplx(a.re, a.im)});
    return superposition(cut, terms);
}

json regime_json(const RegimeReport& r)
{
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"n_b", row.n_b},
                        {"omega_q", number(row.omega_q)},
                        {"detuning", number(row.detuning)},
                        {"dispersive_ratio", number(row.dispersive.ratio)},
                        {"dispersive_flag", to_string(row.dispersive.flag)},
                        {"rwa_ratio", number(row.rwa.ratio)},
                        {"rwa_flag", to_string(row.rwa.flag)}});
    return {{"thresholds",
             {{"small_flux", r.thresholds.small_flux}, {"dispersive", r.thresholds.dispersive}, {"rwa", r.thresholds.rwa}}},
            {"small_flux_ratio", number(r.small_flux.ratio)},
            {"small_flux_flag", to_string(r.small_flux.flag)},
            {"dropped_secular_ratio", number(r.dropped_secular_ratio)},
            {"rows", rows},
            {"all_pass", r.all_pass()}};
}

void run_device(const RunConfig& c, ResultBundle& b)
{
    const ResolvedModel rm = resolve_model(c);
    json& r = b.report;
    if (rm.device_map) r["device_map"] = eff_json(*rm.device_map);
    if (rm.derived && (rm.device_map || rm.circuit)) r["derived"] = eff_json(*rm.derived);
    r["effective"] = eff_json(rm.eff);
    if (rm.circuit) {
        const int nb = c.n_max_b.value_or(0);
        r["regime"] = regime_json(regime_report(*rm.circuit, nb, c.tol.regime));
        CsvTable t{"regime", {"n_b", "omega_q", "detuning", "dispersive_ratio", "rwa_ratio"}, {}};
        for (const auto& row : regime_report(*rm.circuit, nb, c.tol.regime).rows)
            t.add_row({double(row.n_b), row.omega_q, row.detuning, row.dispersive.ratio, row.rwa.ratio});
        b.tables.push_back(std::move(t));
    }
    if (c.tau) {
        const CrossPhase cp = cross_phase(rm.eff.chi, *c.tau);
        r["cross_phase"] = {{"chi", number(rm.eff.chi)}, {"tau", number(*c.tau)},
                            {"radians", number(cp.radians)}, {"cycles", number(cp.cycles)}};
    }
}

void run_spectrum(const RunConfig& c, ResultBundle& b)
{
    const ResolvedModel rm = resolve_model(c);
    const FockCutoff cut = cutoff_of(c);
    std::vector<DegeneracyClass> classes;
    if (c.effective.ratio_num && !c.tol.dfs)
        classes = dfs_find_exact({*c.effective.ratio_num, *c.effective.ratio_den}, rm.eff.chi, cut);
    else
        classes = dfs_find(rm.eff, cut, c.tol.dfs);

    CsvTable levels{"levels", {"m", "n", "i", "energy"}, {}};
    for (const auto& l : level_table(rm.eff, cut))
        levels.add_row({double(l.label.m), double(l.label.n), double(l.label.i), l.energy});
    b.tables.push_back(std::move(levels));

    json cls = json::array();
    for (const auto& k : classes) {
        if (!k.is_dfs()) continue;
        json members = json::array();
        for (const auto& l : k.members) members.push_back(label_json(l));
        cls.push_back({{"energy", number(k.energy)}, {"tolerance", number(k.tolerance)}, {"members", members}});
    }
    b.report["effective"] = eff_json(rm.eff);
    b.report["cutoffs"] = {{"n_max_a", cut.n_max_a()}, {"n_max_b", cut.n_max_b()}};
    b.report["degenerate_classes"] = cls;
    b.report["class_count"] = classes.size();
    b.report["discrepancy_note"] = dfs_discrepancy_note(classes, rm.eff, cut);
}

void run_dephasing(const RunConfig& c, ResultBundle& b)
{
    const ResolvedModel rm = resolve_model(c);
    const FockCutoff cut = cutoff_of(c);
    const OperatorMatrix rho0 = density_matrix(state_of(c, cut));
    const SpectralDensity d = density_of(c);
    const BathState bath = bath_of(c);
    const std::vector<double> t = c.time.points();

    std::vector<ElementPair> pairs;
    for (const auto& [r, l] : c.output.pairs) pairs.push_back({r, l});
    EvolveOptions eo;
    eo.workers = c.workers;
    eo.quadrature.rel_tol = c.tol.quad_rel;
    const DephasingTrajectory traj = evolve_reduced(rho0, rm.eff, d, bath, t, pairs, eo);

    CsvTable tr{"dephasing", {"t"}, {}};
    for (const auto& rec : traj.records) {
        const std::string tag = label_tag(rec.pair.row) + "__" + label_tag(rec.pair.col);
        for (const char* col : {"abs_rho_", "arg_rho_", "gamma_", "dphi_"}) tr.header.push_back(col + tag);
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
        std::vector<double> row{t[k]};
        for (const auto& rec : traj.records) {
            const cplx z = traj.snapshots[k](rec.pair.row, rec.pair.col);
            row.push_back(std::abs(z));
            row.push_back(std::arg(z));
            row.push_back(rec.damping[k]);
            row.push_back(rec.phase_shift[k]);
        }
        tr.add_row(row);
    }
    b.tables.push_back(std::move(tr));

    CsvTable q{"integrals", {"t", "q1", "q2"}, {}};
    for (std::size_t k = 0; k < t.size(); ++k) q.add_row({t[k], traj.integrals[k].q1, traj.integrals[k].q2});
    b.tables.push_back(std::move(q));

    std::vector<Observable> obs = c.output.observables;
    if (obs.empty()) obs = {Observable::Purity, Observable::QubitCoherence};
    CsvTable ob{"observables", {"t"}, {}};
    std::vector<std::vector<double>> cols;
    for (auto o : obs) {
        ob.header.push_back(to_string(o));
        cols.push_back(observables(traj, o, c.output.keep));
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
        std::vector<double> row{t[k]};
        for (const auto& col : cols) row.push_back(col[k]);
        ob.add_row(row);
    }
    b.tables.push_back(std::move(ob));

    json recs = json::array();
    for (const auto& rec : traj.records)
        recs.push_back({{"row", label_json(rec.pair.row)},
                        {"col", label_json(rec.pair.col)},
                        {"delta_e", number(rec.delta_e)},
                        {"delta_e2", number(rec.delta_e2)}});
    b.report["effective"] = eff_json(rm.eff);
    b.report["cutoffs"] = {{"n_max_a", cut.n_max_a()}, {"n_max_b", cut.n_max_b()}};
    b.report["time_points"] = t.size();
    b.report["elements"] = recs;
    b.report["bath"] = {{"family", d.family() == SpectralDensity::Family::Ohmic ? "ohmic" : "tabulated"},
                        {"zero_temperature", bath.is_zero_temperature()},
                        {"beta", bath.is_zero_temperature() ? json(nullptr) : number(bath.beta())}};
}

void run_validate(const RunConfig& c, ResultBundle& b)
{
    ValidationOptions vo;
    vo.tol = c.tol.validation;
    vo.workers = c.workers;
    const auto rows = run_validation(vo);
    CsvTable t{"validation", {"module", "check", "residual", "tolerance", "pass"}, {}};
    json arr = json::array();
    for (const auto& r : rows) {
        t.rows.push_back({r.module, r.check, csv_number(r.residual), csv_number(r.tolerance), r.pass ? "1" : "0"});
        arr.push_back({{"module", r.module},
                       {"check", r.check},
                       {"residual", number(r.residual)},
                       {"tolerance", number(r.tolerance)},
                       {"pass", r.pass},
                       {"detail", r.detail}});
    }
    b.tables.push_back(std::move(t));
    b.report["checks"] = arr;
    b.report["all_pass"] = all_pass(rows);
    b.validation_failed = !all_pass(rows);
}

} // namespace

std::string csv_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

void CsvTable::add_row(const std::vector<double>& values)
{
    std::vector<std::string> r;
    r.reserve(values.size());
    for (double v : values) r.push_back(csv_number(v));
    rows.push_back(std::move(r));
}

std::string CsvTable::render() const
{
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out += ',';
            out += cells[k];
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

ResolvedModel resolve_model(const RunConfig& c)
{
    ResolvedModel rm;
    CircuitModel m;
    bool have_circuit = false;
    if (c.has_device) {
        try {
            validate(c.device);
        } catch (const InvalidArgument& e) {
            throw ConfigError("device", 0, e.what());
        }
        rm.eff = effective_couplings(c.device);
        rm.device_map = rm.eff;
        m = circuit_model(c.device, rm.eff);
        have_circuit = true;
    }

    const auto& o = c.effective;
    bool model_changed = false;
    auto apply = [&](const std::optional<double>& v, double& field) {
        if (v) {
            field = *v;
            model_changed = true;
        }
    };
    apply(o.omega_a, m.omega_a);
    apply(o.omega_b, m.omega_b);
    apply(o.charging, m.charging);
    apply(o.josephson, m.josephson);
    apply(o.g_a, m.g_a);
    apply(o.phi_b, m.phi_b);
    apply(o.phi_e, m.phi_e);
    apply(o.n_g_dc, m.n_g_dc);
    if (!have_circuit) have_circuit = o.omega_a && o.josephson && o.g_a && o.phi_b;

    if (model_changed) {
        if (m.omega_a > 0.0) {
            rm.eff = effective_params(m);
        } else {
            rm.eff.g_a = m.g_a;
            rm.eff.phi_b = m.phi_b;
            rm.eff.phi_e = m.phi_e;
            rm.eff.n_g_dc = m.n_g_dc;
            rm.eff.omega_b = m.omega_b;
        }
    }
    if (o.chi || o.omega_a_prime || o.ratio_num) rm.derived = rm.eff;
    if (o.chi) rm.eff.chi = *o.chi;
    if (o.omega_a_prime) rm.eff.omega_a_prime = *o.omega_a_prime;
    if (o.ratio_num) rm.eff.omega_a_prime = rm.eff.chi * double(*o.ratio_num) / double(*o.ratio_den);
    if (have_circuit) rm.circuit = m;
    return rm;
}

ResultBundle run(const RunConfig& c)
{
    ResultBundle b;
    b.report["scenario"] = to_string(c.scenario);
    switch (c.scenario) {
    case Scenario::Device: run_device(c, b); break;
    case Scenario::Spectrum: run_spectrum(c, b); break;
    case Scenario::Dephasing: run_dephasing(c, b); break;
    case Scenario::Validate: run_validate(c, b); break;
    }
    b.provenance = {{"artifact_version", kArtifactVersion},
                    {"config", to_config_text(c)},
                    {"kernels", std::string(kernels::isa_name(kernels::active().isa))},
                    {"tolerances",
                     {{"quadrature_rel", c.tol.quad_rel},
                      {"validation", c.tol.validation},
                      {"dfs", c.tol.dfs ? json(*c.tol.dfs) : json(nullptr)},
                      {"regime_small_flux", c.tol.regime.small_flux},
                      {"regime_dispersive", c.tol.regime.dispersive},
                      {"regime_rwa", c.tol.regime.rwa}}}};
    return b;
}

void write_bundle(const ResultBundle& b, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    auto write = [&](const std::filesystem::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    };
    json doc = b.report;
    doc["provenance"] = b.provenance;
    write(dir / "report.json", doc.dump(2) + "\n");
    for (const auto& t : b.tables) write(dir / (t.name + ".csv"), t.render());
}

} // namespace cqed
