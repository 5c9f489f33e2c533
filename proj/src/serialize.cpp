// serialize.cpp — JSON/number formatting for tool output and re-ingestion.

#include "kdq/serialize.hpp"

#include <cstdio>

namespace kdq {

using nlohmann::json;

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

json cmatrix_to_json(const CMatrix& m) {
    json out = json::array();
    for (const cplx& v : m.entries()) out.push_back(complex_to_json(v));
    return out;
}

json rmatrix_to_json(const RMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

json kd_table_to_json(const KDTable& t) {
    return json{{"dim", t.dim()},
                {"a_basis_label", t.a_basis.label()},
                {"f_basis_label", t.f_basis.label()},
                {"entries", cmatrix_to_json(t.entries)}};
}

json marginals_to_json(const Marginals& m) {
    return json{{"row_sums", m.row_sums},
                {"col_sums", m.col_sums},
                {"total", m.total},
                {"max_imag_residual", m.max_imag_residual}};
}

json johansen_to_json(const JohansenParts& p) {
    return json{{"wigner", rmatrix_to_json(p.wigner)},
                {"real_corr", rmatrix_to_json(p.real_corr)},
                {"imag_corr", rmatrix_to_json(p.imag_corr)}};
}

json nonclassicality_to_json(const NonclassicalityReport& r) {
    return json{{"total", r.total},
                {"real_part_sum", r.real_part_sum},
                {"imag_part_sum", r.imag_part_sum},
                {"per_pair", rmatrix_to_json(r.per_pair)}};
}

json diagnostics_to_json(const DensityDiagnostics& d) {
    return json{{"hermiticity_defect", d.hermiticity_defect},
                {"trace_defect", d.trace_defect},
                {"min_eigenvalue", d.min_eigenvalue},
                {"pass", d.pass}};
}

KDTableData kd_table_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw ValidationError("table json: expected object with 'dim' and 'entries'");
    KDTableData out;
    if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() < 2)
        throw ValidationError("table json: 'dim' must be an integer >= 2");
    out.dim = j["dim"].get<std::size_t>();
    out.a_basis_label = j.value("a_basis_label", std::string{});
    out.f_basis_label = j.value("f_basis_label", std::string{});
    const auto& entries = j["entries"];
    if (!entries.is_array() || entries.size() != out.dim * out.dim)
        throw ValidationError("table json: 'entries' must hold dim*dim [re, im] pairs");
    out.entries = CMatrix(out.dim, out.dim);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& pair = entries[k];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw ValidationError("table json: entry " + std::to_string(k) +
                                  " is not an [re, im] pair");
        out.entries(k / out.dim, k % out.dim) = cplx{pair[0].get<double>(), pair[1].get<double>()};
    }
    return out;
}

} // namespace kdq
