#include "stab/config.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace stab {

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string to_config_text(const RunConfig& c) {
  std::ostringstream out;
  out << "[" << c.subcommand << "]\n";
  out << "profile=" << c.profile << "\n";
  out << "p=" << c.p << "\n";
  out << "n_points=" << c.n_points << "\n";
  out << "map_scale=" << format_full(c.map_scale) << "\n";
  out << "re=" << format_full(c.re) << "\n";
  out << "alpha=" << format_full(c.alpha) << "\n";
  out << "re_min=" << format_full(c.re_min) << "\n";
  out << "re_max=" << format_full(c.re_max) << "\n";
  out << "steps=" << c.steps << "\n";
  out << "branch=" << c.branch << "\n";
  out << "epsilon=" << format_full(c.epsilon) << "\n";
  out << "nx=" << c.nx << "\n";
  out << "workers=" << c.workers << "\n";
  out << "seed=" << c.seed << "\n";
  out << "output=" << c.output << "\n";
  out << "alpha_min=" << format_full(c.alpha_min) << "\n";
  out << "alpha_max=" << format_full(c.alpha_max) << "\n";
  out << "alpha_steps=" << c.alpha_steps << "\n";
  out << "only=" << c.only << "\n";
  return out.str();
}

RunConfig from_config_text(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip whitespace and comments
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' ||
                             line.back() == '\t'))
      line.pop_back();
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line.erase(0, start);
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": malformed section header");
      c.subcommand = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    const auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t");
      return s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "profile") c.profile = value;
    else if (key == "p") c.p = std::stoi(value);
    else if (key == "n_points") c.n_points = std::stoi(value);
    else if (key == "map_scale") c.map_scale = std::stod(value);
    else if (key == "re") c.re = std::stod(value);
    else if (key == "alpha") c.alpha = std::stod(value);
    else if (key == "re_min") c.re_min = std::stod(value);
    else if (key == "re_max") c.re_max = std::stod(value);
    else if (key == "steps") c.steps = std::stoi(value);
    else if (key == "branch") c.branch = value;
    else if (key == "epsilon") c.epsilon = std::stod(value);
    else if (key == "nx") c.nx = std::stoi(value);
    else if (key == "workers") c.workers = std::stoi(value);
    else if (key == "seed") c.seed = std::stoul(value);
    else if (key == "output") c.output = value;
    else if (key == "alpha_min") c.alpha_min = std::stod(value);
    else if (key == "alpha_max") c.alpha_max = std::stod(value);
    else if (key == "alpha_steps") c.alpha_steps = std::stoi(value);
    else if (key == "only") c.only = value;
    else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  return c;
}

}  // namespace stab
