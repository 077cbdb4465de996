#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "gradpde/cli.hpp"

namespace gradpde {

const char* to_string(Command c) {
  switch (c) {
    case Command::classify: return "classify";
    case Command::curves: return "curves";
    case Command::appendix: return "appendix";
    case Command::radial: return "radial";
    case Command::sphere: return "sphere";
    case Command::report: return "report";
  }
  return "?";
}

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::text: return "text";
    case OutputFormat::csv: return "csv";
  }
  return "?";
}

static std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

nlohmann::json parse_config_text(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return nlohmann::json::object();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    std::string msg = e.what();
    auto cut = msg.find("syntax error");
    throw ConfigError(location(text, at) + ": " + (cut == std::string::npos ? msg : msg.substr(cut)));
  }
  if (!doc.is_object()) throw ConfigError("line 1, column 1: configuration must be a JSON object");
  return doc;
}

nlohmann::json parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read configuration file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config_text(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

namespace {

struct Reader {
  const nlohmann::json& s;
  std::vector<std::string>& errors;
  std::vector<std::string>& notes;

  std::optional<std::string> text(const char* key) {
    auto it = s.find(key);
    if (it == s.end() || it->is_null()) return std::nullopt;
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    if (it->is_number()) {
      std::ostringstream os;
      os.precision(17);
      os << it->get<double>();
      return os.str();
    }
    if (it->is_boolean()) return it->get<bool>() ? "true" : "false";
    errors.push_back(std::string(key) + ": unsupported value " + it->dump());
    return std::nullopt;
  }

  std::optional<Rational> rational(const char* key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    try {
      bool decimal = false;
      Rational r = parse_rational(*t, &decimal);
      if (decimal)
        notes.push_back(std::string("note: ") + key + " = " + *t + " read as the exact dyadic rational " +
                        r.get_str());
      return r;
    } catch (const DomainError& e) {
      errors.push_back(std::string(key) + ": " + e.what());
      return std::nullopt;
    }
  }

  std::optional<double> real(const char* key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    try {
      return to_double(parse_rational(*t));
    } catch (const DomainError& e) {
      errors.push_back(std::string(key) + ": " + e.what());
      return std::nullopt;
    }
  }

  std::optional<int> integer(const char* key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    try {
      std::size_t used = 0;
      int v = std::stoi(*t, &used);
      if (used != t->size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      errors.push_back(std::string(key) + ": expected an integer, got '" + *t + "'");
      return std::nullopt;
    }
  }

  std::optional<bool> boolean(const char* key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    if (*t == "true" || *t == "1") return true;
    if (*t == "false" || *t == "0") return false;
    errors.push_back(std::string(key) + ": expected true or false, got '" + *t + "'");
    return std::nullopt;
  }
};

const std::set<std::string> known_keys = {"N", "p", "q", "a", "rmax", "tol", "mu", "gamma", "grid",
                                          "steps", "all", "out", "format", "mode"};

}  // namespace

RunConfig build_config(Command command, const std::string& mode, const nlohmann::json& settings) {
  std::vector<std::string> errors;
  RunConfig cfg;
  cfg.command = command;
  cfg.mode = mode;
  Reader rd{settings, errors, cfg.notes};

  for (const auto& [k, v] : settings.items())
    if (!known_keys.count(k)) errors.push_back("unknown key '" + k + "'");

  if (cfg.mode.empty()) {
    if (auto m = rd.text("mode")) cfg.mode = *m;
  }
  cfg.N = rd.integer("N");
  cfg.p = rd.rational("p");
  cfg.q = rd.rational("q");
  if (auto v = rd.real("a")) cfg.a = *v;
  if (auto v = rd.real("rmax")) cfg.rmax = *v;
  if (auto v = rd.real("tol")) cfg.tol = *v;
  cfg.mu = rd.real("mu");
  if (auto v = rd.real("gamma")) cfg.gamma = *v;
  if (auto v = rd.integer("steps")) cfg.steps = *v;
  if (auto v = rd.boolean("all")) cfg.all = *v;
  if (auto v = rd.text("out")) cfg.out = *v;
  if (auto v = rd.text("format")) {
    if (*v == "json") cfg.format = OutputFormat::json;
    else if (*v == "text") cfg.format = OutputFormat::text;
    else if (*v == "csv") cfg.format = OutputFormat::csv;
    else errors.push_back("format: expected csv, json or text, got '" + *v + "'");
  }
  if (auto v = rd.text("grid")) {
    std::string g = *v;
    std::string kind = g, nodes;
    if (auto c = g.find(':'); c != std::string::npos) {
      kind = g.substr(0, c);
      nodes = g.substr(c + 1);
    } else if (!g.empty() && std::isdigit(static_cast<unsigned char>(g[0]))) {
      kind.clear();
      nodes = g;
    }
    if (kind == "chebyshev") cfg.grid_kind = GridKind::chebyshev;
    else if (kind == "uniform" || kind.empty()) cfg.grid_kind = GridKind::uniform;
    else errors.push_back("grid: unknown kind '" + kind + "'");
    if (!nodes.empty()) {
      try {
        std::size_t used = 0;
        cfg.grid_nodes = std::stoi(nodes, &used);
        if (used != nodes.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        errors.push_back("grid: bad node count '" + nodes + "'");
      }
    }
  }

  if (cfg.N && *cfg.N < 2) errors.push_back("N: must be >= 2");
  if (cfg.p && sgn(*cfg.p) < 0) errors.push_back("p: must be >= 0");
  if (cfg.q && (sgn(*cfg.q) < 0 || *cfg.q > 2)) errors.push_back("q: must lie in [0, 2]");
  if (!(cfg.tol > 0)) errors.push_back("tol: must be positive");
  if (!(cfg.rmax > 0)) errors.push_back("rmax: must be positive");
  if (!(cfg.a > 0)) errors.push_back("a: must be positive");
  if (!(cfg.gamma > 0)) errors.push_back("gamma: must be positive");
  if (cfg.mu && !(*cfg.mu > 0)) errors.push_back("mu: must be positive");
  if (cfg.steps < 0) errors.push_back("steps: must be >= 0");
  if (cfg.grid_nodes < 5) errors.push_back("grid: needs at least 5 nodes");

  switch (command) {
    case Command::classify:
      if (!settings.contains("N")) errors.push_back("classify needs --N");
      if (!settings.contains("p")) errors.push_back("classify needs --p");
      if (!settings.contains("q")) errors.push_back("classify needs --q");
      break;
    case Command::curves:
    case Command::report:
      if (!settings.contains("N")) errors.push_back(std::string(to_string(command)) + " needs --N");
      else if (cfg.N && *cfg.N < 3) errors.push_back("N: must be >= 3");
      break;
    case Command::appendix:
      if (!settings.contains("N") && !cfg.all) errors.push_back("appendix needs --N or --all");
      if (cfg.N && *cfg.N < 3) errors.push_back("N: must be >= 3");
      break;
    case Command::radial:
      if (cfg.mode != "shoot" && cfg.mode != "family" && cfg.mode != "energy")
        errors.push_back("radial mode must be shoot, family or energy");
      break;
    case Command::sphere:
      if (cfg.mode != "branch" && cfg.mode != "solve" && cfg.mode != "spectrum")
        errors.push_back("sphere mode must be branch, solve or spectrum");
      break;
  }

  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

}  // namespace gradpde
