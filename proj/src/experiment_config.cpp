#include "hpilg/experiment_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hpilg/records.hpp"

namespace hpilg {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    throw ConfigError("invalid value '" + text + "' for key '" + key + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  return out;
}

StoppingRule parse_stopping(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ConfigError("invalid stopping rule '" + text + "'");
  if (parts[0] == "relative") return StoppingRule::relative(parse_number<double>("stopping", parts[1]));
  if (parts[0] == "relative_energy")
    return StoppingRule::relative(parse_number<double>("stopping", parts[1]), DifferenceNorm::energy);
  if (parts[0] == "fixed") return StoppingRule::fixed(parse_number<int>("stopping", parts[1]));
  if (parts[0] == "coupled") return StoppingRule::coupled(parse_number<double>("stopping", parts[1]));
  throw ConfigError("unknown stopping rule '" + parts[0] + "'");
}

}  // namespace

ForcingSpec ForcingSpec::parse(const std::string& text) {
  ForcingSpec spec;
  if (text == "manufactured") {
    spec.kind = Kind::manufactured;
    spec.polynomial = Polynomial2D();
    return spec;
  }
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "constant") {
    spec.kind = Kind::constant;
    spec.polynomial = Polynomial2D::constant(parse_number<double>("f", body));
    return spec;
  }
  if (head == "polynomial") {
    spec.kind = Kind::polynomial;
    spec.polynomial = Polynomial2D();
    for (const std::string& term : split(body, ',')) {
      const auto parts = split(term, ':');
      if (parts.size() != 3) throw ConfigError("polynomial term '" + term + "' is not c:a:b");
      spec.polynomial.add_term(parse_number<double>("f", parts[0]), parse_number<int>("f", parts[1]),
                               parse_number<int>("f", parts[2]));
    }
    return spec;
  }
  throw ConfigError("unknown right-hand side '" + text + "'");
}

std::string ForcingSpec::to_string() const {
  switch (kind) {
    case Kind::constant: return "constant:" + format_real(polynomial.coefficient(0, 0));
    case Kind::polynomial: return "polynomial:" + polynomial.to_string();
    case Kind::manufactured: return "manufactured";
  }
  return "?";
}

ExperimentConfig ExperimentConfig::parse(std::istream& is) {
  ExperimentConfig c;
  std::vector<std::string> seen;
  std::string raw;
  while (std::getline(is, raw)) {
    c.source_lines.push_back(raw);
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) throw ConfigError("duplicate key '" + key + "'");
    seen.push_back(key);

    if (key == "domain") {
      c.domain = value;
    } else if (key == "corners") {
      c.corners.clear();
      for (const std::string& pair : split(value, ',')) {
        std::istringstream ps(pair);
        std::string xs, ys, extra;
        if (!(ps >> xs >> ys) || (ps >> extra)) throw ConfigError("corner '" + pair + "' is not 'x y'");
        c.corners.push_back({parse_number<double>(key, xs), parse_number<double>(key, ys)});
      }
    } else if (key == "dirichlet_edges") {
      c.dirichlet_edges.clear();
      if (value != "all") {
        std::istringstream ps(value);
        std::string item;
        while (ps >> item) c.dirichlet_edges.push_back(parse_number<std::size_t>(key, item));
      }
    } else if (key == "mesh") {
      c.mesh = value;
    } else if (key == "p_max") {
      c.p_max = parse_number<int>(key, value);
    } else if (key == "lambda") {
      c.lambda = parse_number<double>(key, value);
    } else if (key == "q") {
      c.q = parse_number<int>(key, value);
    } else if (key == "f") {
      c.f = ForcingSpec::parse(value);
    } else if (key == "alpha") {
      c.alpha = parse_number<double>(key, value);
    } else if (key == "stopping") {
      c.stopping = parse_stopping(value);
    } else if (key == "max_iterations") {
      c.max_iterations = parse_number<int>(key, value);
    } else if (key == "solver") {
      if (value == "dense") c.solver = SolverPath::dense;
      else if (value == "condensed") c.solver = SolverPath::condensed;
      else throw ConfigError("unknown solver '" + value + "'");
    } else if (key == "ref_delta") {
      c.ref_delta = parse_number<int>(key, value);
    } else if (key == "deterministic") {
      if (value == "true") c.deterministic = true;
      else if (value == "false") c.deterministic = false;
      else throw ConfigError("deterministic must be true or false");
    } else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(key, value);
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path.string());
  return parse(is);
}

void ExperimentConfig::validate() const {
  if (domain != "square" && domain != "lshape" && domain != "custom")
    throw ConfigError("domain must be square, lshape or custom");
  if (domain == "custom" && corners.size() < 3) throw ConfigError("custom domain needs at least 3 corners");
  if (domain != "custom" && !corners.empty()) throw ConfigError("corners are only allowed for a custom domain");
  if (mesh != "builtin" && mesh != "ear") throw ConfigError("mesh must be builtin or ear");
  if (domain == "custom" && mesh == "builtin") throw ConfigError("custom domains need mesh = ear");
  if (p_max < 1) throw ConfigError("p_max must be at least 1");
  if (ref_delta < 2) throw ConfigError("ref_delta must be at least 2");
  if (f.kind == ForcingSpec::Kind::manufactured && domain != "square")
    throw ConfigError("the manufactured solution is defined on the square");
  ilg_config().validate();
}

PolygonDomain ExperimentConfig::make_domain() const {
  PolygonDomain d = domain == "square"   ? PolygonDomain::unit_square()
                    : domain == "lshape" ? PolygonDomain::l_shape()
                                         : PolygonDomain(corners, std::vector<BoundaryTag>(
                                                                      corners.size(), BoundaryTag::dirichlet));
  if (!dirichlet_edges.empty()) d = d.with_dirichlet_edges(dirichlet_edges);
  return d;
}

HpMesh ExperimentConfig::initial_mesh() const {
  const PolygonDomain d = make_domain();
  if (mesh == "ear") return triangulate_polygon(d);
  return build_initial_mesh(d, domain == "square" ? BuiltinMesh::square_32 : BuiltinMesh::lshape_24);
}

IlgConfig ExperimentConfig::ilg_config() const {
  IlgConfig c;
  c.alpha = alpha;
  c.lambda = lambda;
  c.q = q;
  c.stopping = stopping;
  c.max_iterations = max_iterations;
  c.solver = solver;
  return c;
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream os;
  os << "domain = " << domain << '\n';
  if (!corners.empty()) {
    os << "corners = ";
    for (std::size_t i = 0; i < corners.size(); ++i)
      os << (i ? ", " : "") << format_real(corners[i].x) << ' ' << format_real(corners[i].y);
    os << '\n';
  }
  os << "dirichlet_edges = ";
  if (dirichlet_edges.empty()) os << "all";
  for (std::size_t i = 0; i < dirichlet_edges.size(); ++i) os << (i ? " " : "") << dirichlet_edges[i];
  os << '\n';
  os << "mesh = " << mesh << '\n'
     << "p_max = " << p_max << '\n'
     << "lambda = " << format_real(lambda) << '\n'
     << "q = " << q << '\n'
     << "f = " << f.to_string() << '\n'
     << "alpha = " << format_real(alpha) << '\n'
     << "stopping = " << stopping.to_string() << '\n'
     << "max_iterations = " << max_iterations << '\n'
     << "solver = " << (solver == SolverPath::dense ? "dense" : "condensed") << '\n'
     << "ref_delta = " << ref_delta << '\n'
     << "deterministic = " << (deterministic ? "true" : "false") << '\n'
     << "seed = " << seed << '\n';
  return os.str();
}

}  // namespace hpilg
