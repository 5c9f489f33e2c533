// serialize.hpp — JSON converters and deterministic numeric formatting.
//
// Complex numbers serialize as [re, im]; KD tables as
// {dim, a_basis_label, f_basis_label, entries} with entries a row-major
// list of [re, im] pairs. format_g17 prints 17 significant digits with no
// locale dependence, enough to round-trip any double.

#pragma once

#include <string>

#include "json.hpp"

#include "kdq/kd.hpp"
#include "kdq/linalg.hpp"
#include "kdq/nonclassicality.hpp"

namespace kdq {

std::string format_g17(double v);

nlohmann::json complex_to_json(cplx v);
nlohmann::json cmatrix_to_json(const CMatrix& m); // row-major [[re,im], ...]
nlohmann::json rmatrix_to_json(const RMatrix& m); // nested rows

nlohmann::json kd_table_to_json(const KDTable& t);
nlohmann::json marginals_to_json(const Marginals& m);
nlohmann::json johansen_to_json(const JohansenParts& p);
nlohmann::json nonclassicality_to_json(const NonclassicalityReport& r);
nlohmann::json diagnostics_to_json(const DensityDiagnostics& d);

// Entries of a serialized KD table, without basis vectors (labels only).
struct KDTableData {
    std::size_t dim = 0;
    std::string a_basis_label;
    std::string f_basis_label;
    CMatrix entries;
};

KDTableData kd_table_from_json(const nlohmann::json& j);

} // namespace kdq
