// fanobott: decide whether a generalized Bott manifold is Fano or weak Fano.
//
//   fanobott check [--input FILE] [--verify] [--format human|machine]
//   fanobott fan [--input FILE] [--relations-only]
//   fanobott relations [--input FILE]
//   fanobott enumerate --stages 1,1,1 --range -1:1 --mode fano [--expect-table1]
//   fanobott chary-compare --r 3 --range -1:1
//
// Exit codes: 0 success (whatever the verdict), 1 usage or parse error,
// 2 validation error, 3 failed expectation or oracle disagreement.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fanobott/commands.hpp"
#include "fanobott/document.hpp"

namespace {

using namespace fanobott;

Int parse_int(std::string_view s, std::string_view what) {
  Int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(std::string(what) + ": '" + std::string(s) + "' is not an integer");
  return v;
}

std::vector<int> parse_stages(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Int v = parse_int(item, "--stages");
    if (v < 1 || v > 1'000'000) throw ValidationError("--stages: stage dimension " + item + " must be positive");
    dims.push_back(static_cast<int>(v));
  }
  if (dims.empty()) throw ParseError("--stages: expected a comma-separated list such as 1,1,1");
  return dims;
}

Interval parse_range(const std::string& text) {
  // The separator is the first ':' after position 0, so "-2:-1" splits correctly.
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw ParseError("--range: expected lo:hi, got '" + text + "'");
  Interval r{parse_int(std::string_view(text).substr(0, colon), "--range"),
             parse_int(std::string_view(text).substr(colon + 1), "--range")};
  if (r.lo > r.hi) throw ValidationError("--range: empty interval " + text);
  return r;
}

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

std::map<std::string, std::string> read_labels(const std::string& path) {
  if (path.empty()) return {};
  try {
    const auto j = nlohmann::json::parse(read_all(path));
    return j.get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("--labels: " + std::string(e.what()));
  }
}

struct Options {
  std::string input;
  std::string output;
  std::string format = "human";
  bool verify = false;
  bool relations_only = false;
  std::string stages;
  std::string range;
  std::string mode = "fano";
  std::uint64_t cap = kDefaultSweepCap;
  unsigned threads = 1;
  bool expect_table1 = false;
  std::string labels;
  std::size_t r = 0;
};

void emit(const Report& report, const Options& opt) {
  const std::string text = opt.format == "machine" ? to_json(report).dump(2) + "\n" : render_human(report);
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw ValidationError("cannot write output file '" + opt.output + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fano and weak Fano generalized Bott manifolds"};
  app.require_subcommand(1);
  Options opt;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "Tower document (JSON); stdin when omitted");
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"human", "machine"}));
    sub->add_option("--output", opt.output, "Write the report to this file instead of stdout");
  };

  auto* check = app.add_subcommand("check", "Classify a tower with the closed-form criterion");
  add_io(check);
  check->add_flag("--verify", opt.verify, "Also build the fan and compare with the primitive-collection degrees");

  auto* fan = app.add_subcommand("fan", "Print the fan, its primitive collections and relations");
  add_io(fan);
  fan->add_flag("--relations-only", opt.relations_only, "Only print primitive collections and relations");

  auto* relations = app.add_subcommand("relations", "Alias of fan --relations-only");
  add_io(relations);

  auto* enumerate = app.add_subcommand("enumerate", "Sweep all towers in a coefficient box");
  enumerate->add_option("--stages", opt.stages, "Stage dimensions, e.g. 1,1,1")->required();
  enumerate->add_option("--range", opt.range, "Inclusive coefficient range lo:hi")->required();
  enumerate->add_option("--mode", opt.mode, "fano | weak_fano | census | chary_compare")
      ->check(CLI::IsMember({"fano", "weak_fano", "census", "chary_compare"}));
  enumerate->add_option("--cap", opt.cap, "Maximum number of candidates");
  enumerate->add_option("--threads", opt.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  enumerate->add_flag("--expect-table1", opt.expect_table1,
                      "Fail unless the hits are exactly the 15 Fano 3-stage Bott towers");
  enumerate->add_option("--labels", opt.labels, "JSON object mapping \"a,b,c\" listings to labels");
  enumerate->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"human", "machine"}));
  enumerate->add_option("--output", opt.output, "Write the report to this file instead of stdout");

  auto* chary = app.add_subcommand("chary-compare", "Compare Chary's condition with the Fano criterion");
  chary->add_option("--r", opt.r, "Size of the Bott matrices")->required()->check(CLI::PositiveNumber);
  chary->add_option("--range", opt.range, "Inclusive range lo:hi of the off-diagonal entries")->required();
  chary->add_option("--cap", opt.cap, "Maximum number of candidates");
  chary->add_option("--threads", opt.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  chary->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"human", "machine"}));
  chary->add_option("--output", opt.output, "Write the report to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Report report;
    if (*check) {
      report = cmd_check(parse_tower_document(read_all(opt.input)), opt.verify);
    } else if (*fan || *relations) {
      report = cmd_fan(parse_tower_document(read_all(opt.input)), opt.relations_only || *relations);
    } else if (*enumerate) {
      SweepSpec spec{parse_stages(opt.stages), parse_range(opt.range), sweep_mode_from_string(opt.mode), opt.cap,
                     opt.threads};
      report = cmd_enumerate(spec, opt.expect_table1, read_labels(opt.labels));
    } else if (*chary) {
      report = cmd_chary_compare(opt.r, parse_range(opt.range), opt.cap, opt.threads);
    }
    emit(report, opt);
    const int code = exit_code(report);
    if (code == kExitExpectation)
      std::cerr << "fanobott: " << (report.verified ? "fan oracle disagrees with the closed-form verdict"
                                                     : "expectation not met")
                << "\n";
    return code;
  } catch (const ParseError& e) {
    std::cerr << "fanobott: parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InternalError& e) {
    std::cerr << "fanobott: internal error: " << e.what() << "\n";
    return kExitExpectation;
  } catch (const Error& e) {
    std::cerr << "fanobott: error: " << e.what() << "\n";
    return kExitValidation;
  }
}
