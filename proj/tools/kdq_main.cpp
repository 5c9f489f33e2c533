// kdq_main.cpp — scenario-driven command line front end.
//
// Verbs: table, decompose, values, transition, decay, validate. Every verb
// reads a scenario JSON file and emits CSV (default) or JSON, either to
// stdout or to --out. Output is fully deterministic: identical input bytes
// produce identical output bytes.
//
// Exit codes: 0 success, 2 scenario validation failure, 3 physical
// impossibility (orthogonal postselection), 4 numerical invariant violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kdq/dynamics.hpp"
#include "kdq/kd.hpp"
#include "kdq/nonclassicality.hpp"
#include "kdq/scenario.hpp"
#include "kdq/serialize.hpp"
#include "kdq/values.hpp"

namespace {

using json = nlohmann::json;
using namespace kdq;

constexpr const char* kVersion = "0.1.0";
constexpr double kCheckTol = 1e-10;

struct CommonOpts {
    std::string scenario_path;
    std::string out_path;
    std::string format = "csv";
};

json make_metadata(const Scenario& sc, const std::string& command) {
    json m;
    m["tool"] = "kdq";
    m["version"] = kVersion;
    m["command"] = command;
    m["conventions"] = json{{"dephasing", "binary"},
                            {"phase_rotation", "heisenberg"},
                            {"t_mode_scalar_F", "min_pairwise_offdiagonal"},
                            {"decoherence_time", "2*sqrt(2)*sigma/(g*|a_i-a_k|)"},
                            {"csv_float_format", "%.17g"}};
    m["a_basis_label"] = sc.observable.basis().label();
    m["f_basis_label"] = sc.f_basis.label();
    m["eigenvalues"] =
        std::vector<double>(sc.observable.eigenvalues().begin(), sc.observable.eigenvalues().end());
    m["scenario"] = sc.echo;
    return m;
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
    f << content;
}

std::string dump_json(const json& doc) { return doc.dump(1) + "\n"; }

void require_no_grid(const Scenario& sc, const std::string& command) {
    if (sc.grid_kind)
        throw ValidationError("grid: not allowed for '" + command +
                              "' (only sweep commands take a grid)");
}

std::size_t require_postselect(const Scenario& sc, const std::string& command) {
    if (!sc.postselect_index)
        throw ValidationError("postselect_index: required for '" + command + "'");
    return *sc.postselect_index;
}

PointerSettings require_pointer(const Scenario& sc, const std::string& command) {
    if (!sc.pointer) throw ValidationError("pointer: required for '" + command + "'");
    return *sc.pointer;
}

// Born probabilities straight from the state, for marginal cross-checks.
std::vector<double> born_rows(const Scenario& sc) {
    const CMatrix in_a = to_basis(sc.state.matrix(), sc.observable.basis());
    std::vector<double> p(sc.dim);
    for (std::size_t i = 0; i < sc.dim; ++i) p[i] = in_a(i, i).real();
    return p;
}

std::vector<double> born_cols(const Scenario& sc) {
    std::vector<double> p(sc.dim);
    for (std::size_t j = 0; j < sc.dim; ++j)
        p[j] = trace_product(sc.state.matrix(), sc.f_basis.projector(j)).real();
    return p;
}

// ── table ────────────────────────────────────────────────────────────────

std::string cmd_table(const Scenario& sc, const CommonOpts& opts, bool reconstruct) {
    require_no_grid(sc, "table");
    const KDTable q = kd_table(sc.state, sc.observable, sc.f_basis);
    const Marginals marg = kd_marginals(q);
    const auto prow = born_rows(sc);
    const auto pcol = born_cols(sc);

    double max_born_dev = 0;
    for (std::size_t i = 0; i < sc.dim; ++i) {
        max_born_dev = std::max(max_born_dev, std::abs(marg.row_sums[i] - prow[i]));
        max_born_dev = std::max(max_born_dev, std::abs(marg.col_sums[i] - pcol[i]));
    }
    const bool pass = marginals_consistent(marg, kCheckTol) && max_born_dev <= kCheckTol;

    json recon;
    if (reconstruct) {
        const CMatrix g = adjoint(sc.f_basis.matrix()) * sc.observable.basis().matrix();
        double min_overlap = 1.0;
        std::size_t oi = 0, oj = 0;
        for (std::size_t i = 0; i < sc.dim; ++i) {
            for (std::size_t j = 0; j < sc.dim; ++j) {
                if (std::abs(g(j, i)) < min_overlap) {
                    min_overlap = std::abs(g(j, i));
                    oi = i;
                    oj = j;
                }
            }
        }
        if (min_overlap <= 1e-8) {
            recon = json{{"status", "skipped"},
                         {"reason", "non-invertible configuration"},
                         {"offending_i", oi},
                         {"offending_j", oj},
                         {"min_overlap", min_overlap}};
            std::cerr << "warning: reconstruct skipped, non-invertible configuration at (i=" << oi
                      << ", j=" << oj << "), |<f_j|a_i>| = " << min_overlap << "\n";
        } else {
            const DensityOperator rt = reconstruct_state(q);
            const KDTable q_rt = kd_table(rt, sc.observable, sc.f_basis);
            recon = json{{"status", "ok"},
                         {"max_state_residual", max_abs_diff(rt.matrix(), sc.state.matrix())},
                         {"max_roundtrip_residual", max_abs_diff(q.entries, q_rt.entries)}};
        }
    }

    if (opts.format == "json") {
        json marg_json = marginals_to_json(marg);
        marg_json["born_rows"] = prow;
        marg_json["born_cols"] = pcol;
        marg_json["max_born_deviation"] = max_born_dev;
        json doc{{"metadata", make_metadata(sc, "table")},
                 {"table", kd_table_to_json(q)},
                 {"marginals", std::move(marg_json)},
                 {"checks", json{{"marginals_pass", pass}}}};
        if (reconstruct) doc["reconstruct"] = recon;
        return dump_json(doc);
    }

    std::ostringstream os;
    os << "# metadata: " << make_metadata(sc, "table").dump() << "\n";
    os << "i,j,re,im\n";
    for (std::size_t i = 0; i < sc.dim; ++i)
        for (std::size_t j = 0; j < sc.dim; ++j)
            os << i << "," << j << "," << format_g17(q.entries(i, j).real()) << ","
               << format_g17(q.entries(i, j).imag()) << "\n";
    os << "# marginals\n";
    os << "kind,index,value,born,abs_dev\n";
    for (std::size_t i = 0; i < sc.dim; ++i)
        os << "row," << i << "," << format_g17(marg.row_sums[i]) << "," << format_g17(prow[i])
           << "," << format_g17(std::abs(marg.row_sums[i] - prow[i])) << "\n";
    for (std::size_t j = 0; j < sc.dim; ++j)
        os << "col," << j << "," << format_g17(marg.col_sums[j]) << "," << format_g17(pcol[j])
           << "," << format_g17(std::abs(marg.col_sums[j] - pcol[j])) << "\n";
    os << "total,," << format_g17(marg.total) << ",1,"
       << format_g17(std::abs(marg.total - 1.0)) << "\n";
    os << "# max_imag_residual: " << format_g17(marg.max_imag_residual) << "\n";
    os << "# marginal_check: " << (pass ? "PASS" : "FAIL") << "\n";
    if (reconstruct) os << "# reconstruct: " << recon.dump() << "\n";
    return os.str();
}

// ── decompose ────────────────────────────────────────────────────────────

std::string cmd_decompose(const Scenario& sc, const CommonOpts& opts) {
    require_no_grid(sc, "decompose");
    const KDTable q = kd_table(sc.state, sc.observable, sc.f_basis);
    const JohansenParts parts = johansen_decompose(sc.state, sc.observable, sc.f_basis);
    const NonclassicalityReport report = nonclassicality(parts);

    double recombine_residual = 0;
    for (std::size_t i = 0; i < sc.dim; ++i)
        for (std::size_t j = 0; j < sc.dim; ++j) {
            const cplx rebuilt{parts.wigner(i, j) + parts.real_corr(i, j), parts.imag_corr(i, j)};
            recombine_residual =
                std::max(recombine_residual, std::abs(rebuilt - q.entries(i, j)));
        }
    double imag_row_max = 0, imag_col_max = 0;
    for (std::size_t i = 0; i < sc.dim; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < sc.dim; ++j) s += parts.imag_corr(i, j);
        imag_row_max = std::max(imag_row_max, std::abs(s));
    }
    for (std::size_t j = 0; j < sc.dim; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < sc.dim; ++i) s += parts.imag_corr(i, j);
        imag_col_max = std::max(imag_col_max, std::abs(s));
    }
    const bool pass =
        recombine_residual <= kCheckTol && imag_row_max <= kCheckTol && imag_col_max <= kCheckTol;

    if (opts.format == "json") {
        return dump_json(json{{"metadata", make_metadata(sc, "decompose")},
                              {"johansen", johansen_to_json(parts)},
                              {"checks", json{{"recombine_max_residual", recombine_residual},
                                              {"imag_row_marginal_max", imag_row_max},
                                              {"imag_col_marginal_max", imag_col_max},
                                              {"pass", pass}}},
                              {"nonclassicality", nonclassicality_to_json(report)}});
    }

    std::ostringstream os;
    os << "# metadata: " << make_metadata(sc, "decompose").dump() << "\n";
    os << "i,j,wigner,real_corr,imag_corr\n";
    for (std::size_t i = 0; i < sc.dim; ++i)
        for (std::size_t j = 0; j < sc.dim; ++j)
            os << i << "," << j << "," << format_g17(parts.wigner(i, j)) << ","
               << format_g17(parts.real_corr(i, j)) << "," << format_g17(parts.imag_corr(i, j))
               << "\n";
    os << "# checks: recombine_max_residual=" << format_g17(recombine_residual)
       << " imag_row_marginal_max=" << format_g17(imag_row_max)
       << " imag_col_marginal_max=" << format_g17(imag_col_max)
       << " status=" << (pass ? "PASS" : "FAIL") << "\n";
    os << "# nonclassicality: total=" << format_g17(report.total)
       << " real_part_sum=" << format_g17(report.real_part_sum)
       << " imag_part_sum=" << format_g17(report.imag_part_sum) << "\n";
    return os.str();
}

// ── values ───────────────────────────────────────────────────────────────

std::string cmd_values(const Scenario& sc, const CommonOpts& opts) {
    require_no_grid(sc, "values");
    const std::size_t j = require_postselect(sc, "values");

    const double expect = expectation(sc.state, sc.observable);
    const double cond = conditional_value(sc.state, sc.observable, sc.f_basis, j);
    const WeakValueResult wv = weak_value(sc.state, sc.observable, sc.f_basis, j);
    const DenominatorComparison dc = denominator_compare(sc.state, sc.observable, sc.f_basis, j);

    if (opts.format == "json") {
        return dump_json(json{
            {"metadata", make_metadata(sc, "values")},
            {"values",
             json{{"expectation", expect},
                  {"conditional_value", cond},
                  {"weak_value", json{{"value", complex_to_json(wv.value)},
                                      {"numerator", complex_to_json(wv.numerator)},
                                      {"denominator", wv.denominator},
                                      {"wigner_part", wv.wigner_part},
                                      {"correction_part", complex_to_json(wv.correction_part)}}},
                  {"denominator_comparison", json{{"strong_prob", dc.strong_prob},
                                                  {"weak_prob", dc.weak_prob},
                                                  {"gap", dc.gap}}}}}});
    }

    std::ostringstream os;
    os << "# metadata: " << make_metadata(sc, "values").dump() << "\n";
    os << "key,value\n";
    os << "expectation," << format_g17(expect) << "\n";
    os << "conditional_value," << format_g17(cond) << "\n";
    os << "weak_value_re," << format_g17(wv.value.real()) << "\n";
    os << "weak_value_im," << format_g17(wv.value.imag()) << "\n";
    os << "weak_numerator_re," << format_g17(wv.numerator.real()) << "\n";
    os << "weak_numerator_im," << format_g17(wv.numerator.imag()) << "\n";
    os << "weak_denominator," << format_g17(wv.denominator) << "\n";
    os << "wigner_part," << format_g17(wv.wigner_part) << "\n";
    os << "correction_part_re," << format_g17(wv.correction_part.real()) << "\n";
    os << "correction_part_im," << format_g17(wv.correction_part.imag()) << "\n";
    os << "strong_prob," << format_g17(dc.strong_prob) << "\n";
    os << "weak_prob," << format_g17(dc.weak_prob) << "\n";
    os << "gap," << format_g17(dc.gap) << "\n";
    return os.str();
}

// ── transition ───────────────────────────────────────────────────────────

std::string cmd_transition(const Scenario& sc, const CommonOpts& opts) {
    if (!sc.grid_kind) throw ValidationError("grid: required for 'transition'");
    const std::size_t j = require_postselect(sc, "transition");

    const bool t_mode = *sc.grid_kind == GridKind::t_values;
    std::vector<TransitionPoint> points;
    if (t_mode) {
        const PointerSettings ps = require_pointer(sc, "transition in t-mode");
        points = transition_sweep(sc.state, sc.observable, sc.f_basis, j, ps.sigma, ps.g,
                                  sc.grid_values);
    } else {
        points = transition_sweep(sc.state, sc.observable, sc.f_basis, j, sc.grid_values);
    }

    json meta = make_metadata(sc, "transition");
    meta["mode"] = t_mode ? "t" : "f";
    if (sc.pointer) meta["pointer"] = json{{"sigma", sc.pointer->sigma}, {"g", sc.pointer->g}};

    if (opts.format == "json") {
        json rows = json::array();
        for (const auto& p : points) {
            json row{{"index", p.index},
                     {"F", p.overlap},
                     {"t", p.t ? json(*p.t) : json()},
                     {"re_AT", p.value ? json(p.value->real()) : json()},
                     {"im_AT", p.value ? json(p.value->imag()) : json()},
                     {"N_t", p.nonclassicality},
                     {"max_interp_residual", p.max_interp_residual},
                     {"error", p.error ? json(*p.error) : json()}};
            rows.push_back(std::move(row));
        }
        return dump_json(json{{"metadata", std::move(meta)}, {"points", std::move(rows)}});
    }

    std::ostringstream os;
    os << "# metadata: " << meta.dump() << "\n";
    os << "index,F,t,re_AT,im_AT,N_t,max_interp_residual,error\n";
    for (const auto& p : points) {
        os << p.index << "," << format_g17(p.overlap) << ",";
        if (p.t) os << format_g17(*p.t);
        os << ",";
        if (p.value) os << format_g17(p.value->real());
        os << ",";
        if (p.value) os << format_g17(p.value->imag());
        os << "," << format_g17(p.nonclassicality) << "," << format_g17(p.max_interp_residual)
           << ",";
        if (p.error) os << *p.error;
        os << "\n";
    }
    return os.str();
}

// ── decay ────────────────────────────────────────────────────────────────

std::string cmd_decay(const Scenario& sc, const CommonOpts& opts) {
    if (!sc.grid_kind || *sc.grid_kind != GridKind::t_values)
        throw ValidationError("grid.t_values: required for 'decay'");
    const PointerSettings ps = require_pointer(sc, "decay");

    std::vector<PointerConfig> grid;
    grid.reserve(sc.grid_values.size());
    for (double t : sc.grid_values) grid.emplace_back(ps.sigma, ps.g, t);
    const auto points = decay_check(sc.state, sc.observable, sc.f_basis, grid);

    json meta = make_metadata(sc, "decay");
    meta["pointer"] = json{{"sigma", ps.sigma}, {"g", ps.g}};

    auto flag_of = [&](const DecayPoint& p) -> std::string {
        if (sc.dim != 2) return "REPORT";
        return p.residual <= kCheckTol ? "PASS" : "FAIL";
    };

    if (opts.format == "json") {
        json rows = json::array();
        for (std::size_t k = 0; k < points.size(); ++k) {
            const auto& p = points[k];
            rows.push_back(json{{"index", k},
                                {"t", p.t},
                                {"F", p.overlap},
                                {"N_t", p.n_t},
                                {"predicted", p.predicted},
                                {"residual", p.residual},
                                {"flag", flag_of(p)}});
        }
        return dump_json(json{{"metadata", std::move(meta)}, {"points", std::move(rows)}});
    }

    std::ostringstream os;
    os << "# metadata: " << meta.dump() << "\n";
    os << "index,t,F,N_t,predicted,residual,flag\n";
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& p = points[k];
        os << k << "," << format_g17(p.t) << "," << format_g17(p.overlap) << ","
           << format_g17(p.n_t) << "," << format_g17(p.predicted) << ","
           << format_g17(p.residual) << "," << flag_of(p) << "\n";
    }
    return os.str();
}

// ── validate ─────────────────────────────────────────────────────────────

std::string cmd_validate_scenario(const Scenario& sc, const CommonOpts& opts) {
    const DensityDiagnostics diag = validate_density(sc.state);
    json payload{{"scenario_valid", true},
                 {"density", diagnostics_to_json(diag)},
                 {"a_basis_orthonormality_defect", sc.observable.basis().orthonormality_defect()},
                 {"f_basis_orthonormality_defect", sc.f_basis.orthonormality_defect()}};

    if (opts.format == "json")
        return dump_json(json{{"metadata", make_metadata(sc, "validate")},
                              {"validate", std::move(payload)}});

    std::ostringstream os;
    os << "# metadata: " << make_metadata(sc, "validate").dump() << "\n";
    os << "key,value\n";
    os << "scenario_valid,true\n";
    os << "density_hermiticity_defect," << format_g17(diag.hermiticity_defect) << "\n";
    os << "density_trace_defect," << format_g17(diag.trace_defect) << "\n";
    os << "density_min_eigenvalue," << format_g17(diag.min_eigenvalue) << "\n";
    os << "density_pass," << (diag.pass ? "true" : "false") << "\n";
    os << "a_basis_orthonormality_defect,"
       << format_g17(sc.observable.basis().orthonormality_defect()) << "\n";
    os << "f_basis_orthonormality_defect," << format_g17(sc.f_basis.orthonormality_defect())
       << "\n";
    return os.str();
}

std::string cmd_validate_table(const std::string& table_path, const CommonOpts& opts) {
    std::ifstream in(table_path);
    if (!in) throw ValidationError("table: cannot open file '" + table_path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << "table: parse error in '" << table_path << "' at byte " << e.byte << ": "
           << e.what();
        throw ValidationError(os.str());
    }
    const json& table_json = doc.contains("table") ? doc["table"] : doc;
    const KDTableData data = kd_table_from_json(table_json);

    // Standalone KD invariants: real marginals and unit total.
    double max_imag = 0;
    cplx total = 0;
    for (std::size_t i = 0; i < data.dim; ++i) {
        cplx row = 0, col = 0;
        for (std::size_t j = 0; j < data.dim; ++j) {
            row += data.entries(i, j);
            col += data.entries(j, i);
        }
        max_imag = std::max({max_imag, std::abs(row.imag()), std::abs(col.imag())});
        total += row;
    }
    max_imag = std::max(max_imag, std::abs(total.imag()));
    const double total_defect = std::abs(total - cplx{1.0, 0.0});
    const bool pass = max_imag <= kCheckTol && total_defect <= kCheckTol;

    json payload{{"dim", data.dim},
                 {"a_basis_label", data.a_basis_label},
                 {"f_basis_label", data.f_basis_label},
                 {"max_imag_residual", max_imag},
                 {"total_defect", total_defect},
                 {"pass", pass}};

    std::string out;
    if (opts.format == "json") {
        out = dump_json(json{{"validate_table", payload}});
    } else {
        std::ostringstream os;
        os << "key,value\n";
        os << "dim," << data.dim << "\n";
        os << "max_imag_residual," << format_g17(max_imag) << "\n";
        os << "total_defect," << format_g17(total_defect) << "\n";
        os << "pass," << (pass ? "true" : "false") << "\n";
        out = os.str();
    }
    if (!pass) {
        write_output(opts.out_path, out);
        std::ostringstream os;
        os << "validate: table invariants violated (max imag residual " << max_imag
           << ", total defect " << total_defect << ")";
        throw NumericalError(os.str());
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kirkwood-Dirac quasiprobability tables, observable values, and "
                 "measurement-transition sweeps"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool reconstruct = false;
    std::string table_path;

    auto add_common = [&](CLI::App* cmd, bool scenario_required) {
        auto* s = cmd->add_option("--scenario", opts.scenario_path, "scenario JSON file");
        if (scenario_required) s->required();
        cmd->add_option("--out", opts.out_path, "output path (default: stdout)");
        cmd->add_option("--format", opts.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* c_table = app.add_subcommand("table", "KD quasiprobability table with marginals");
    add_common(c_table, true);
    c_table->add_flag("--reconstruct", reconstruct, "round-trip the table through state reconstruction");
    auto* c_decompose =
        app.add_subcommand("decompose", "Wigner term plus real/imaginary corrections");
    add_common(c_decompose, true);
    auto* c_values =
        app.add_subcommand("values", "expectation, conditional and weak values");
    add_common(c_values, true);
    auto* c_transition =
        app.add_subcommand("transition", "weak-to-strong sweep over an F or t grid");
    add_common(c_transition, true);
    auto* c_decay = app.add_subcommand("decay", "non-classicality decay along a t grid");
    add_common(c_decay, true);
    auto* c_validate =
        app.add_subcommand("validate", "validate a scenario file or a serialized table");
    add_common(c_validate, false);
    c_validate->add_option("--table", table_path, "table JSON file (output of 'table --format json')");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        std::string payload;
        if (c_validate->parsed()) {
            if (opts.scenario_path.empty() == table_path.empty())
                throw ValidationError("validate: exactly one of --scenario or --table required");
            if (!table_path.empty()) {
                payload = cmd_validate_table(table_path, opts);
            } else {
                payload = cmd_validate_scenario(load_scenario(opts.scenario_path), opts);
            }
        } else {
            const Scenario sc = load_scenario(opts.scenario_path);
            if (c_table->parsed()) payload = cmd_table(sc, opts, reconstruct);
            else if (c_decompose->parsed()) payload = cmd_decompose(sc, opts);
            else if (c_values->parsed()) payload = cmd_values(sc, opts);
            else if (c_transition->parsed()) payload = cmd_transition(sc, opts);
            else if (c_decay->parsed()) payload = cmd_decay(sc, opts);
        }
        write_output(opts.out_path, payload);
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PhysicalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
