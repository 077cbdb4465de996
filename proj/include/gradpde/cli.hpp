#pragma once

#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gradpde/certificate.hpp"
#include "gradpde/errors.hpp"
#include "gradpde/param.hpp"
#include "gradpde/sphere.hpp"

namespace gradpde {

// Invalid configuration or flags; the message lists every problem found.
struct ConfigError : DomainError {
  using DomainError::DomainError;
};

enum class Command { classify, curves, appendix, radial, sphere, report };
enum class OutputFormat { json, text, csv };

const char* to_string(Command c);
const char* to_string(OutputFormat f);

struct RunConfig {
  Command command = Command::classify;
  std::string mode;  // radial: shoot|family|energy, sphere: branch|solve|spectrum
  std::optional<int> N;
  std::optional<Rational> p;
  std::optional<Rational> q;
  double a = 1;
  double rmax = 1000;
  double tol = 1e-10;
  std::optional<double> mu;
  double gamma = 1;
  GridKind grid_kind = GridKind::uniform;
  int grid_nodes = 129;
  int steps = 20;
  bool all = false;
  std::filesystem::path out = "out";
  OutputFormat format = OutputFormat::json;
  std::vector<std::string> notes;  // decimal-to-dyadic conversions
};

// "line L, column C: message" on malformed input; blank input gives an empty object.
nlohmann::json parse_config_text(std::string_view text);
nlohmann::json parse_config_file(const std::filesystem::path& path);

// Validates merged settings (keys as the flags without dashes); throws ConfigError listing all problems.
RunConfig build_config(Command command, const std::string& mode, const nlohmann::json& settings);

// Full command line without the program name; returns the exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json region_json(const ParamPoint& pt, const RegionReport& r);
nlohmann::json certificate_json(const SignCertificate& c);
void render(std::ostream& os, const nlohmann::json& doc, OutputFormat format);

// Runs every module for N and returns the summary document; artifacts go under dir.
nlohmann::json run_report(int N, const std::filesystem::path& dir);

}  // namespace gradpde
