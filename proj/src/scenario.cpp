// scenario.cpp — scenario JSON parsing and resolution into library objects.

#include "kdq/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace kdq {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
    throw ValidationError(field + ": " + msg);
}

double need_number(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(field, "must be finite");
    return v;
}

cplx need_complex(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2) fail(field, "expected an [re, im] pair");
    return {need_number(j[0], field + "[0]"), need_number(j[1], field + "[1]")};
}

std::vector<cplx> need_complex_vector(const json& j, std::size_t d, const std::string& field) {
    if (!j.is_array() || j.size() != d)
        fail(field, "expected " + std::to_string(d) + " [re, im] pairs");
    std::vector<cplx> v(d);
    for (std::size_t k = 0; k < d; ++k)
        v[k] = need_complex(j[k], field + "[" + std::to_string(k) + "]");
    return v;
}

// List of d column vectors, each of length d.
Basis need_basis(const json& j, std::size_t d, const std::string& field) {
    if (!j.is_array() || j.size() != d) fail(field, "expected " + std::to_string(d) + " columns");
    CMatrix cols(d, d);
    for (std::size_t c = 0; c < d; ++c) {
        const auto v = need_complex_vector(j[c], d, field + "[" + std::to_string(c) + "]");
        for (std::size_t r = 0; r < d; ++r) cols(r, c) = v[r];
    }
    try {
        return Basis(std::move(cols), "custom");
    } catch (const ValidationError& e) {
        fail(field, e.what());
    }
}

DensityOperator resolve_state(const json& state, std::size_t d, std::string& kind_out) {
    if (!state.is_object()) fail("state", "expected an object");
    const int forms = state.contains("bloch") + state.contains("pure") + state.contains("density");
    if (forms != 1) fail("state", "exactly one of 'bloch', 'pure', 'density' required");

    if (state.contains("bloch")) {
        kind_out = "bloch";
        if (d != 2) fail("state.bloch", "bloch form requires dim = 2");
        const auto& b = state["bloch"];
        if (!b.is_array() || b.size() != 3) fail("state.bloch", "expected [x, y, z]");
        try {
            return bloch_state(need_number(b[0], "state.bloch[0]"),
                               need_number(b[1], "state.bloch[1]"),
                               need_number(b[2], "state.bloch[2]"));
        } catch (const ValidationError& e) {
            fail("state.bloch", e.what());
        }
    }
    if (state.contains("pure")) {
        kind_out = "pure";
        const auto amps = need_complex_vector(state["pure"], d, "state.pure");
        try {
            return pure_state(amps);
        } catch (const ValidationError& e) {
            fail("state.pure", e.what());
        }
    }
    kind_out = "density";
    const auto& rows = state["density"];
    if (!rows.is_array() || rows.size() != d)
        fail("state.density", "expected " + std::to_string(d) + " rows");
    CMatrix m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        const auto row =
            need_complex_vector(rows[r], d, "state.density[" + std::to_string(r) + "]");
        for (std::size_t c = 0; c < d; ++c) m(r, c) = row[c];
    }
    try {
        return DensityOperator(std::move(m));
    } catch (const ValidationError& e) {
        fail("state.density", e.what());
    }
}

ObservableSpec resolve_observable(const json& obs, std::size_t d) {
    if (!obs.is_object()) fail("a_observable", "expected an object");
    if (!obs.contains("eigenvalues")) fail("a_observable.eigenvalues", "required");
    const auto& ev = obs["eigenvalues"];
    if (!ev.is_array() || ev.size() != d)
        fail("a_observable.eigenvalues",
             "expected " + std::to_string(d) + " entries, got " + std::to_string(ev.size()));
    std::vector<double> eigenvalues(d);
    for (std::size_t i = 0; i < d; ++i)
        eigenvalues[i] = need_number(ev[i], "a_observable.eigenvalues[" + std::to_string(i) + "]");

    Basis basis = Basis::computational(d);
    if (obs.contains("basis") && !(obs["basis"].is_string() && obs["basis"] == "identity"))
        basis = need_basis(obs["basis"], d, "a_observable.basis");
    try {
        return ObservableSpec(std::move(eigenvalues), std::move(basis));
    } catch (const ValidationError& e) {
        fail("a_observable", e.what());
    }
}

Basis resolve_f_basis(const json& fb, std::size_t d) {
    if (fb.is_string()) {
        if (fb == "fourier") {
            try {
                return fourier_basis(d);
            } catch (const ValidationError& e) {
                fail("f_basis", e.what());
            }
        }
        fail("f_basis", "unknown basis name '" + fb.get<std::string>() + "' (try \"fourier\")");
    }
    return need_basis(fb, d, "f_basis");
}

} // namespace

Scenario parse_scenario(const json& doc) {
    if (!doc.is_object()) fail("scenario", "top-level document must be an object");
    if (!doc.contains("dim")) fail("dim", "required");
    if (!doc["dim"].is_number_unsigned()) fail("dim", "expected a positive integer");
    const std::size_t d = doc["dim"].get<std::size_t>();
    if (d < 2) fail("dim", "must be at least 2");

    static const char* known[] = {"dim",    "state",   "a_observable", "f_basis",
                                  "postselect_index", "pointer", "grid",         "seed"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) fail(it.key(), "unknown field");
    }

    if (!doc.contains("state")) fail("state", "required");
    if (!doc.contains("a_observable")) fail("a_observable", "required");
    if (!doc.contains("f_basis")) fail("f_basis", "required");

    std::string state_kind;
    DensityOperator state = resolve_state(doc["state"], d, state_kind);
    ObservableSpec observable = resolve_observable(doc["a_observable"], d);
    Basis f_basis = resolve_f_basis(doc["f_basis"], d);

    std::optional<std::size_t> postselect;
    if (doc.contains("postselect_index")) {
        const auto& p = doc["postselect_index"];
        if (!p.is_number_unsigned()) fail("postselect_index", "expected a non-negative integer");
        const std::size_t j = p.get<std::size_t>();
        if (j >= d)
            fail("postselect_index",
                 "index " + std::to_string(j) + " out of range for dim " + std::to_string(d));
        postselect = j;
    }

    std::optional<PointerSettings> pointer;
    if (doc.contains("pointer")) {
        const auto& p = doc["pointer"];
        if (!p.is_object() || !p.contains("sigma") || !p.contains("g"))
            fail("pointer", "expected {\"sigma\": ..., \"g\": ...}");
        PointerSettings ps;
        ps.sigma = need_number(p["sigma"], "pointer.sigma");
        ps.g = need_number(p["g"], "pointer.g");
        if (!(ps.sigma > 0)) fail("pointer.sigma", "must be > 0");
        if (!(ps.g > 0)) fail("pointer.g", "must be > 0");
        pointer = ps;
    }

    std::optional<GridKind> grid_kind;
    std::vector<double> grid_values;
    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        if (!g.is_object()) fail("grid", "expected an object");
        const bool has_f = g.contains("f_values"), has_t = g.contains("t_values");
        if (has_f == has_t) fail("grid", "exactly one of 'f_values', 't_values' required");
        const std::string field = has_f ? "grid.f_values" : "grid.t_values";
        const auto& vals = has_f ? g["f_values"] : g["t_values"];
        if (!vals.is_array() || vals.empty()) fail(field, "expected a non-empty array");
        for (std::size_t k = 0; k < vals.size(); ++k) {
            const double v = need_number(vals[k], field + "[" + std::to_string(k) + "]");
            if (has_f && !(v >= 0.0 && v <= 1.0))
                fail(field + "[" + std::to_string(k) + "]", "F values must lie in [0, 1]");
            if (has_t && v < 0) fail(field + "[" + std::to_string(k) + "]", "t must be >= 0");
            grid_values.push_back(v);
        }
        grid_kind = has_f ? GridKind::f_values : GridKind::t_values;
    }

    std::optional<long long> seed;
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer()) fail("seed", "expected an integer");
        seed = doc["seed"].get<long long>();
    }

    return Scenario{d,
                    std::move(state),
                    std::move(observable),
                    std::move(f_basis),
                    std::move(state_kind),
                    postselect,
                    pointer,
                    grid_kind,
                    std::move(grid_values),
                    seed,
                    doc};
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("scenario: cannot open file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << "scenario: parse error in '" << path << "' at byte " << e.byte << ": " << e.what();
        throw ValidationError(os.str());
    }
    return parse_scenario(doc);
}

} // namespace kdq
