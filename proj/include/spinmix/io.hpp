#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinmix/density.hpp"
#include "spinmix/glauber.hpp"
#include "spinmix/graph.hpp"
#include "spinmix/matrix.hpp"
#include "spinmix/mixbounds.hpp"
#include "spinmix/norms.hpp"

namespace spinmix {

/// Edge list "u v" per line, 1-indexed; '#' starts a comment; "n <N>"
/// declares the vertex count.  Repeated edges need allow_multi.
Graph parse_graph(std::string_view text, bool allow_multi = false);

/// CSV rows of decimals, or {"n": N, "entries": [[...], ...]}.
Matrix parse_matrix(std::string_view text);

/// True when text looks like a matrix (JSON object or comma-separated).
bool looks_like_matrix(std::string_view text);

std::string read_file(const std::string& path);

std::string tv_csv(const std::vector<TVReport>& reports);
std::string coupling_csv(const CouplingStats& stats);

void to_json(nlohmann::json& j, const Matrix& m);
void from_json(const nlohmann::json& j, Matrix& m);
void to_json(nlohmann::json& j, const Rational& r);
void from_json(const nlohmann::json& j, Rational& r);
void to_json(nlohmann::json& j, const Density& d);
void from_json(const nlohmann::json& j, Density& d);
void to_json(nlohmann::json& j, const SpectralResult& s);
void from_json(const nlohmann::json& j, SpectralResult& s);
void to_json(nlohmann::json& j, const PerronCertificate& p);
void from_json(const nlohmann::json& j, PerronCertificate& p);
void to_json(nlohmann::json& j, const Certificate& c);
void from_json(const nlohmann::json& j, Certificate& c);
void to_json(nlohmann::json& j, const Decomposition& d);

}  // namespace spinmix
