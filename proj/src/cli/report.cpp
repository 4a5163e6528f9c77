#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "carleman/cli.hpp"

namespace carleman::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out || !(out << text)) throw ConfigError("cannot write " + p.string());
}

std::string without_timestamp(std::string_view s) {
  std::string out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find('\n', pos);
    if (end == std::string_view::npos) end = s.size();
    const std::string_view line = s.substr(pos, end - pos);
    if (line.find("\"generated_at\"") == std::string_view::npos) {
      out.append(line);
      out.push_back('\n');
    }
    pos = end + 1;
  }
  return out;
}

GridSpec parse_grid_flag(const std::string& s) {
  GridSpec g;
  char c1 = 0, c2 = 0;
  long long N = 0;
  std::istringstream in(s);
  if (!(in >> g.n >> c1 >> g.L >> c2 >> N) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof())
    throw ConfigError("--grid expects n,L,N");
  if (N < 16 || (N & (N - 1)) != 0) throw ConfigError("grid N must be a power of two, at least 16");
  if (!(g.L > 0)) throw ConfigError("grid L must be positive");
  g.N = static_cast<std::size_t>(N);
  return g;
}

struct Flags {
  std::string config, out, grid, compare;
  std::optional<std::uint64_t> seed;
  bool csv = false;
};

int execute(const std::string& command, const Flags& f) {
  ExperimentConfig c;
  if (!f.config.empty()) {
    json j;
    try {
      j = json::parse(read_file(f.config));
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("invalid JSON in ") + f.config + ": " + e.what());
    }
    c = parse_config(j);
  }
  if (!c.command.empty() && c.command != command)
    throw ConfigError("config is for \"" + c.command + "\", not \"" + command + "\"");
  c.command = command;
  if (!f.out.empty()) c.out = f.out;
  if (!f.grid.empty()) {
    c.grid = parse_grid_flag(f.grid);
    if (c.grid->n != c.n) throw ConfigError("--grid dimension differs from n");
  }
  if (f.seed) c.seed = *f.seed;
  resolve(c);

  const Outcome o = run(c);
  const std::string text = render(make_report(c, o, utc_now()));
  const fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create " + dir.string() + ": " + ec.message());
  const fs::path json_path = dir / (command + ".json");
  write_file(json_path, text);
  std::cout << command << ": " << o.summary << "\n";
  std::cout << "report: " << json_path.string() << "\n";
  if (f.csv) {
    if (o.csv) {
      const fs::path csv_path = dir / (command + ".csv");
      write_file(csv_path, *o.csv);
      std::cout << "csv: " << csv_path.string() << "\n";
    } else {
      std::cout << "csv: not produced (only sweeps have per-point rows)\n";
    }
  }
  if (!f.compare.empty()) {
    const bool same = same_report(text, read_file(f.compare));
    std::cout << "compare: " << (same ? "identical" : "differs") << " (" << f.compare << ")\n";
    if (!same) return kNegativeVerdict;
  }
  return o.negative ? kNegativeVerdict : kOk;
}

}  // namespace

json make_report(const ExperimentConfig& c, const Outcome& o, const std::string& generated_at) {
  return {{"command", c.command},      {"config", to_json(c)}, {"generated_at", generated_at},
          {"result", o.result},        {"verdict", o.verdict}, {"summary", o.summary}};
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

bool same_report(std::string_view a, std::string_view b) { return without_timestamp(a) == without_timestamp(b); }

int main(int argc, char** argv) {
  CLI::App app{"Weighted Carleman, Pitt and Sobolev inequality checks"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "JSON experiment config");
  app.add_option("--out", f.out, "Output directory for reports");
  app.add_option("--grid", f.grid, "Grid override n,L,N");
  app.add_option("--seed", f.seed, "Seed for family sampling");
  app.add_flag("--csv", f.csv, "Also write per-point CSV for sweeps");
  app.add_option("--compare", f.compare, "Golden report to compare against (timestamp excluded)");
  const std::pair<const char*, const char*> subs[] = {
      {"admissible", "Validate exponents and the power-weight region"},
      {"constants", "Evaluate the condition constants"},
      {"verify", "Carleman ratio of one function, optionally a family estimate"},
      {"sweep-tau", "Best family ratio across tau"},
      {"sweep-scale", "Ratio of dilates f(lambda x) and the fitted scaling exponent"},
      {"pitt", "Pitt ratio of one function"},
      {"uc", "Unique continuation threshold and strip width"},
  };
  for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return execute(command, f);
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidParams;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace carleman::cli
