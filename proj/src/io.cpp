#include "spinmix/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "spinmix/error.hpp"
#include "spinmix/rng.hpp"

namespace spinmix {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::string line_error(std::size_t line, const std::string& msg) {
  return "line " + std::to_string(line) + ": " + msg;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  if constexpr (std::is_floating_point_v<T>) {
    if (s.front() == '+') s.remove_prefix(1);
  }
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string fmt(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace

Graph parse_graph(std::string_view text, bool allow_multi) {
  std::vector<Graph::Edge> edges;
  std::set<Graph::Edge> seen;
  std::optional<std::size_t> declared;
  std::size_t max_endpoint = 0;
  const auto lines = split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    std::string_view line = lines[k];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream in{std::string(line)};
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (tokens.size() != 2) throw Error(ErrorKind::ParseError, line_error(k + 1, "expected two fields"));
    if (tokens[0] == "n") {
      std::size_t n = 0;
      if (!parse_number(tokens[1], n)) throw Error(ErrorKind::ParseError, line_error(k + 1, "bad vertex count"));
      if (declared) throw Error(ErrorKind::ParseError, line_error(k + 1, "repeated n header"));
      declared = n;
      continue;
    }
    std::size_t u = 0, v = 0;
    if (!parse_number(tokens[0], u) || !parse_number(tokens[1], v) || u == 0 || v == 0)
      throw Error(ErrorKind::ParseError, line_error(k + 1, "endpoints must be positive integers"));
    if (u == v) throw Error(ErrorKind::SelfLoop, line_error(k + 1, "self-loop at vertex " + std::to_string(u)));
    const Graph::Edge key{std::min(u, v) - 1, std::max(u, v) - 1};
    if (!seen.insert(key).second && !allow_multi)
      throw Error(ErrorKind::ParseError, line_error(k + 1, "repeated edge (use --multigraph)"));
    edges.push_back({u - 1, v - 1});
    max_endpoint = std::max({max_endpoint, u, v});
  }
  if (declared && *declared < max_endpoint)
    throw Error(ErrorKind::ParseError, "declared n " + std::to_string(*declared) + " below largest endpoint");
  const std::size_t n = declared.value_or(max_endpoint);
  if (n == 0) throw Error(ErrorKind::EmptyGraph, "graph has no vertices");
  return Graph(n, std::move(edges));
}

Matrix parse_matrix(std::string_view text) {
  const auto body = trim(text);
  std::vector<std::vector<double>> rows;
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
    if (!j.contains("entries") || !j["entries"].is_array())
      throw Error(ErrorKind::ParseError, "matrix JSON needs an entries array");
    for (const auto& row : j["entries"]) {
      if (!row.is_array()) throw Error(ErrorKind::ParseError, "matrix rows must be arrays");
      std::vector<double> r;
      for (const auto& x : row) {
        if (!x.is_number()) throw Error(ErrorKind::ParseError, "matrix entries must be numbers");
        r.push_back(x.get<double>());
      }
      rows.push_back(std::move(r));
    }
    if (j.contains("n")) {
      if (!j["n"].is_number_unsigned()) throw Error(ErrorKind::ParseError, "n must be a nonnegative integer");
      if (j["n"].get<std::size_t>() != rows.size()) throw Error(ErrorKind::NotSquare, "n differs from row count");
    }
  } else {
    const auto lines = split_lines(text);
    for (std::size_t k = 0; k < lines.size(); ++k) {
      const auto line = trim(lines[k]);
      if (line.empty() || line.front() == '#') continue;
      std::vector<double> r;
      std::size_t start = 0;
      while (true) {
        const auto comma = line.find(',', start);
        const auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        double x = 0.0;
        if (!parse_number(field, x)) throw Error(ErrorKind::ParseError, line_error(k + 1, "bad number '" + std::string(trim(field)) + "'"));
        r.push_back(x);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      rows.push_back(std::move(r));
    }
  }
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorKind::ParseError, "empty matrix");
  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw Error(ErrorKind::NotSquare, "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                            " entries, expected " + std::to_string(n));
    for (double x : rows[i]) {
      if (!std::isfinite(x)) throw Error(ErrorKind::ParseError, "non-finite entry in row " + std::to_string(i + 1));
      if (x < 0.0) throw Error(ErrorKind::NegativeEntry, "negative entry in row " + std::to_string(i + 1));
      entries.push_back(x);
    }
  }
  return Matrix(n, std::move(entries));
}

bool looks_like_matrix(std::string_view text) {
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') return true;
  for (auto line : split_lines(text)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    return line.find(',') != std::string_view::npos || line.find_first_of(" \t") == std::string_view::npos;
  }
  return false;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tv_csv(const std::vector<TVReport>& reports) {
  std::string out;
  if (!reports.empty()) out += "# statespace=" + std::to_string(reports.front().statespace) + "\n";
  out += "t,tv\n";
  for (const auto& r : reports) out += std::to_string(r.t) + "," + fmt(r.tv) + "\n";
  return out;
}

std::string coupling_csv(const CouplingStats& stats) {
  std::string out = "# rng=" + std::string(kRngAlgorithm) + " seed=" + std::to_string(stats.seed) +
                    " trials=" + std::to_string(stats.trials) + "\n";
  out += "t,mean_hamming,std_hamming,coalesced_frac\n";
  for (std::size_t t = 0; t < stats.mean_hamming.size(); ++t) {
    out += std::to_string(t) + "," + fmt(stats.mean_hamming[t]) + "," + fmt(std::sqrt(stats.var_hamming[t])) + "," +
           fmt(stats.coalesced_frac[t]) + "\n";
  }
  return out;
}

void to_json(nlohmann::json& j, const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  j = {{"n", m.size()}, {"entries", rows}};
}

void from_json(const nlohmann::json& j, Matrix& m) { m = parse_matrix(j.dump()); }

void to_json(nlohmann::json& j, const Rational& r) { j = {{"num", r.num()}, {"den", r.den()}}; }

void from_json(const nlohmann::json& j, Rational& r) {
  r = Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

void to_json(nlohmann::json& j, const Density& d) {
  std::vector<std::size_t> witness;
  for (std::size_t v : d.witness) witness.push_back(v + 1);
  j = {{"num", d.num()}, {"den", d.den()}, {"value", d.value.to_double()}, {"witness", witness}};
}

void from_json(const nlohmann::json& j, Density& d) {
  d.value = Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
  d.witness.clear();
  for (const auto& v : j.at("witness")) {
    const auto k = v.get<std::size_t>();
    if (k == 0) throw Error(ErrorKind::ParseError, "witness vertices are 1-indexed");
    d.witness.push_back(k - 1);
  }
}

void to_json(nlohmann::json& j, const SpectralResult& s) {
  j = {{"lambda", s.lambda}, {"iterations", s.iterations}, {"residual", s.residual}};
}

void from_json(const nlohmann::json& j, SpectralResult& s) {
  s.lambda = j.at("lambda").get<double>();
  s.iterations = j.at("iterations").get<long>();
  s.residual = j.at("residual").get<double>();
}

void to_json(nlohmann::json& j, const PerronCertificate& p) {
  j = {{"w", p.w}, {"mu", p.mu}, {"slack", p.slack}};
}

void from_json(const nlohmann::json& j, PerronCertificate& p) {
  p.w = j.at("w").get<std::vector<double>>();
  p.mu = j.at("mu").get<double>();
  p.slack = j.at("slack").get<double>();
}

void to_json(nlohmann::json& j, const Certificate& c) {
  j = {{"formula", to_string(c.formula)},
       {"mu", c.mu},
       {"eta", c.eta ? nlohmann::json(*c.eta) : nlohmann::json(nullptr)},
       {"constant", c.constant},
       {"bound", c.bound},
       {"units", to_string(c.units)},
       {"asymptotic", c.asymptotic},
       {"inputs",
        {{"n", c.n},
         {"eps", c.eps},
         {"form", to_string(c.form)},
         {"factor", c.factor},
         {"condition", c.condition},
         {"extra", c.extra}}}};
}

void from_json(const nlohmann::json& j, Certificate& c) {
  c.formula = formula_from_string(j.at("formula").get<std::string>());
  c.mu = j.at("mu").get<double>();
  c.eta = j.at("eta").is_null() ? std::nullopt : std::optional<double>(j.at("eta").get<double>());
  c.constant = j.at("constant").get<double>();
  c.bound = j.at("bound").get<double>();
  c.units = units_from_string(j.at("units").get<std::string>());
  c.asymptotic = j.at("asymptotic").get<bool>();
  const auto& in = j.at("inputs");
  c.n = in.at("n").get<std::size_t>();
  c.eps = in.at("eps").get<double>();
  c.form = form_from_string(in.at("form").get<std::string>());
  c.factor = in.at("factor").get<double>();
  c.condition = in.value("condition", std::string());
  c.extra = in.value("extra", std::map<std::string, double>{});
}

void to_json(nlohmann::json& j, const Decomposition& d) {
  const std::size_t n = d.b.size();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back(std::vector<std::int64_t>(d.numerators.begin() + static_cast<std::ptrdiff_t>(i * n),
                                             d.numerators.begin() + static_cast<std::ptrdiff_t>((i + 1) * n)));
  }
  j = {{"scale", d.scale}, {"numerators", rows}, {"col_max", d.col_max}, {"row_max", d.row_max},
       {"kappa", d.kappa}, {"alpha", d.alpha}};
}

}  // namespace spinmix
