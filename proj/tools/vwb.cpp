#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vwb/driver.hpp"
#include "vwb/errors.hpp"

using namespace vwb;

namespace {

std::vector<int> parse_list(const std::string& s, const char* what) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    require(used == tok.size(), "BadInput", std::string("bad integer '") + tok + "' in --" + what);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Baby Verma modules, Jantzen and Andersen-Kaneda filtrations"};
  app.require_subcommand(1);
  JobSpec job;
  std::string levi, lambda, nu;
  std::vector<CLI::App*> subs;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"info", "root and Levi data, N(I, lambda)"},
      {"orbit", "linkage orbit of lambda in a box"},
      {"verma", "build baby Vermas and audit them"},
      {"chain", "intertwiner chain and composite exponent"},
      {"jantzen", "Jantzen layers and identities"},
      {"decompose", "composition factors of a module"},
      {"probe", "rank-variety probe against double extraction"},
      {"akfilt", "Andersen-Kaneda filtration of a projective"},
      {"sumcheck", "both sum formulas over a box"},
      {"audit", "full invariant suite over a box"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--type", job.type, "A1, A1xA1, A2 or B2")->default_val("A1");
    sub->add_option("--p", job.p, "prime")->required();
    sub->add_option("--levi", levi, "comma-separated 1-based simple roots; empty for I = {}")->default_val("");
    sub->add_option("--lambda", lambda, "weight, comma-separated fundamental-weight coordinates");
    sub->add_option("--nu", nu, "weight of the projective (akfilt)");
    sub->add_option("--box", job.box, "box radius (default p)");
    sub->add_option("--seed", job.seed, "seed for randomized steps")->each([&](const std::string&) { job.seed_given = true; });
    sub->add_option("--dim-cap", job.dim_cap, "module dimension cap")->default_val(4096);
    sub->add_flag("--unsafe-cap", job.unsafe_cap, "allow --dim-cap above 4096");
    sub->add_option("--trunc", job.trunc_M, "initial truncation M of A/t^M")->default_val(16);
    sub->add_option("--format", job.format, "json or table")->default_val("json")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--module", job.module, "verma, twisted, torus, cover or head")->default_val("verma");
    sub->add_option("--trials", job.trials, "random probe directions")->default_val(32);
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << json{{"error", "BadInput"}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  }
  for (auto* s : subs)
    if (s->parsed()) job.command = s->get_name();
  try {
    job.levi.clear();
    for (int i : parse_list(levi, "levi")) job.levi.push_back(i - 1);
    job.lambda = parse_list(lambda, "lambda");
    job.nu = parse_list(nu, "nu");
    if (job.command == "akfilt" && job.module == "verma") job.module = "cover";
    RunResult r = run(job);
    if (job.format == "table")
      std::cout << render_table(r.report);
    else
      std::cout << r.report.dump(2) << "\n";
    return r.exit_code;
  } catch (const Error& e) {
    std::cerr << error_json(e).dump() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"detail", e.what()}}.dump() << "\n";
    return 1;
  }
}
