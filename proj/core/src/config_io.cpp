#include "giantwg/config_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "giantwg/csv.hpp"

namespace giantwg {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

RawLeg parse_leg(std::string_view value) {
  const auto fields = split(value, ',');
  if (fields.size() != 3) {
    throw ConfigError("leg needs 'position, magnitude, phase' or 'position, magnitude, length:<value>'");
  }
  RawLeg leg;
  leg.position = parse_number(fields[0]);
  leg.magnitude = parse_number(fields[1]);
  constexpr std::string_view kLength = "length:";
  if (fields[2].starts_with(kLength)) {
    leg.length = parse_number(fields[2].substr(kLength.size()));
  } else {
    leg.phase = parse_number(fields[2]);
  }
  return leg;
}

}  // namespace

double parse_number(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("not a number: '" + std::string(field) + "'");
  }
  return value;
}

RawConfig parse_config_text(std::string_view text) {
  RawConfig raw;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    try {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'");
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      if (key == "omega") {
        raw.omega = parse_number(value);
      } else if (key == "gamma_scale") {
        raw.gamma_scale = parse_number(value);
      } else if (key == "gamma_e") {
        raw.gamma_e = parse_number(value);
      } else if (key == "leg") {
        raw.legs.push_back(parse_leg(value));
      } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return raw;
}

GiantAtomConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return build_config(parse_config_text(ss.str()));
}

std::string format_config(const GiantAtomConfig& config) {
  std::string out;
  out += "omega = " + format_real(config.omega(), 17) + "\n";
  out += "gamma_scale = " + format_real(config.gamma_scale(), 17) + "\n";
  out += "gamma_e = " + format_real(config.gamma_e(), 17) + "\n";
  for (const Leg& leg : config.legs()) {
    out += "leg = " + format_real(leg.position, 17) + ", " + format_real(leg.coupling_magnitude, 17) + ", ";
    out += leg.leg_length ? "length:" + format_real(*leg.leg_length, 17) : format_real(leg.coupling_phase, 17);
    out += "\n";
  }
  return out;
}

}  // namespace giantwg
