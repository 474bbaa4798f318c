#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "charpoly/error.hpp"
#include "charpoly/report.hpp"

namespace fs = std::filesystem;
using charpoly::ExitCode;
using charpoly::RunFlags;
using charpoly::RunReport;

namespace {

std::optional<std::string> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunReport run_file(const std::string& command, const fs::path& file, const RunFlags& flags) {
  auto text = slurp(file);
  if (!text) {
    RunReport rep;
    rep.exit = ExitCode::InvalidInput;
    rep.json = {{"command", command}, {"status", "error"}, {"exit_code", 1},
                {"error", "cannot read " + file.string()}};
    return rep;
  }
  return charpoly::run(command, *text, flags);
}

bool write_svg(const RunReport& rep, const fs::path& path, const std::string& title) {
  if (!rep.plot) return true;
  if (rep.plot->dim() != 2) {
    std::cerr << "charpoly: --svg ignored, plots need e = 2\n";
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "charpoly: cannot write " << path << "\n";
    return false;
  }
  out << charpoly::render_svg(*rep.plot, title);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characteristic polyhedra with exact arithmetic"};
  std::string command, file, svg, batch;
  std::vector<std::string> budgets;
  bool json = false;
  RunFlags flags;

  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(charpoly::commands()));
  app.add_option("file", file, "Problem file");
  app.add_flag("--json", json, "Emit the JSON run report");
  app.add_option("--svg", svg, "Write a 2-D plot (a directory in batch mode)");
  app.add_option("--budget", budgets, "Budget override k=v (repeatable)");
  app.add_option("--batch", batch, "Run every problem file in a directory");
  app.add_flag("--plain", flags.plain, "Plain translations only, no generalized dissolution");
  app.add_flag("--raw-forms", flags.raw_forms, "Treat generators as forms in K[Y] instead of taking in_0");
  CLI11_PARSE(app, argc, argv);

  try {
    if (const char* env = std::getenv("CHARPOLY_BUDGET_DEFAULTS"))
      flags.budget_defaults = charpoly::parse_budget_list(env);
    for (const auto& b : budgets)
      for (const auto& [k, v] : charpoly::parse_budget_list(b)) flags.budget_overrides[k] = v;
  } catch (const charpoly::InvalidInput& e) {
    std::cerr << "charpoly: " << e.what() << "\n";
    return 1;
  }

  if (batch.empty()) {
    if (file.empty()) {
      std::cerr << "charpoly: a problem file or --batch <dir> is required\n";
      return 1;
    }
    RunReport rep = run_file(command, file, flags);
    if (json)
      std::cout << rep.json.dump(2) << "\n";
    else if (rep.exit == ExitCode::InvalidInput)
      std::cerr << "charpoly: " << rep.json.value("error", "error") << "\n";
    else
      std::cout << charpoly::render_text(rep.json);
    if (!svg.empty() && !write_svg(rep, svg, command + " " + fs::path(file).filename().string())) return 1;
    return static_cast<int>(rep.exit);
  }

  if (!file.empty()) {
    std::cerr << "charpoly: give either a file or --batch, not both\n";
    return 1;
  }
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(batch, ec)) {
    auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".txt" || ext == ".prob")) files.push_back(entry.path());
  }
  if (ec) {
    std::cerr << "charpoly: cannot read directory " << batch << "\n";
    return 1;
  }
  std::sort(files.begin(), files.end());

  // One independent engine per file.
  std::vector<std::future<RunReport>> jobs;
  for (const auto& f : files) jobs.push_back(std::async(std::launch::async, run_file, command, f, flags));

  int worst = 0;
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < files.size(); ++i) {
    RunReport rep = jobs[i].get();
    worst = std::max(worst, static_cast<int>(rep.exit));
    if (json) {
      all.push_back({{"file", files[i].filename().string()}, {"report", rep.json}});
    } else {
      std::cout << "== " << files[i].filename().string() << "\n";
      if (rep.exit == ExitCode::InvalidInput)
        std::cout << "error: " << rep.json.value("error", "error") << "\n";
      else
        std::cout << charpoly::render_text(rep.json);
    }
    if (!svg.empty()) {
      fs::create_directories(svg, ec);
      fs::path out = fs::path(svg) / files[i].filename().replace_extension(".svg");
      if (!write_svg(rep, out, command + " " + files[i].filename().string())) worst = std::max(worst, 1);
    }
  }
  if (json) std::cout << all.dump(2) << "\n";
  return worst;
}
