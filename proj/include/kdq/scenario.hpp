// scenario.hpp — declarative run descriptions for the CLI.
//
// A scenario is a single JSON document naming the state (Bloch triple, pure
// amplitude list, or explicit density matrix), the measured observable
// (eigenvalues plus eigenbasis), the second basis, and optionally a
// postselection index, pointer parameters and a sweep grid. Complex numbers
// are written as [re, im] pairs; explicit bases as lists of column vectors.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "kdq/linalg.hpp"

namespace kdq {

struct PointerSettings {
    double sigma = 0;
    double g = 0;
};

enum class GridKind { f_values, t_values };

struct Scenario {
    std::size_t dim;
    DensityOperator state;
    ObservableSpec observable;
    Basis f_basis;
    std::string state_kind; // "bloch" | "pure" | "density"
    std::optional<std::size_t> postselect_index;
    std::optional<PointerSettings> pointer;
    std::optional<GridKind> grid_kind;
    std::vector<double> grid_values;
    std::optional<long long> seed;
    nlohmann::json echo; // canonical parsed document, for output metadata
};

// Throws ValidationError with the offending field named in the message.
Scenario parse_scenario(const nlohmann::json& doc);

// Reads and parses a scenario file; parse errors report the byte position.
Scenario load_scenario(const std::string& path);

} // namespace kdq
