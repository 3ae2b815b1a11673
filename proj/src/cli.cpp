#include "kaos2b/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kaos2b/backprop.hpp"
#include "kaos2b/emit.hpp"
#include "kaos2b/goal_engine.hpp"
#include "kaos2b/parse.hpp"
#include "kaos2b/translate.hpp"

namespace fs = std::filesystem;

namespace kaos2b {

namespace {

constexpr const char* kVersion = "kaos2b 0.1.0";

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("cannot write " + path.string());
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

struct TranslateArgs {
  std::vector<std::string> models;
  std::string goals;
  std::string events_dir;
  std::string out_dir = ".";
  std::string trace_path;
  bool expand_cardinalities = false;
  bool unicode = false;
};

std::vector<DomainModel> load_chain(const std::vector<std::string>& paths,
                                    std::vector<std::string>* digests) {
  std::vector<DomainModel> chain;
  for (const std::string& p : paths) {
    std::string text = read_file(p);
    if (digests)
      digests->push_back("input " + fs::path(p).filename().string() + " " + hex64(fnv1a(text)));
    chain.push_back(parse_domain_model(text));
  }
  return chain;
}

int print_violations(const std::vector<Violation>& violations) {
  for (const Violation& v : violations)
    std::cerr << v.element << ": " << v.rule << ": " << v.message << "\n";
  return 1;
}

int cmd_translate(const TranslateArgs& args) {
  Notation notation = args.unicode ? Notation::Unicode : Notation::Ascii;
  std::vector<std::string> header{std::string(kVersion)};
  std::vector<DomainModel> chain = load_chain(args.models, &header);

  TranslateResult result = translate_project(chain, {args.expand_cardinalities});

  std::vector<PoBlock> po;
  if (!args.goals.empty()) {
    GoalModel gm = parse_goal_model(read_file(args.goals));
    std::vector<std::pair<int, ComponentFragment>> fragments;
    if (!args.events_dir.empty()) {
      for (std::size_t i = 0; i < result.components.size(); ++i) {
        fs::path body = fs::path(args.events_dir) / (result.components[i].name + ".bsys");
        if (fs::exists(body))
          fragments.emplace_back(static_cast<int>(i), parse_bsystem_fragment(read_file(body)));
      }
    }
    po = apply_goal_model(result.components, gm, fragments);
  }

  fs::path out_dir(args.out_dir);
  for (const Component& c : result.components) {
    fs::path path = out_dir / (c.name + ".bsys");
    write_file(path, print_component(c, notation));
    std::cout << path.string() << "\n";
  }
  if (!args.goals.empty()) {
    fs::path path = out_dir / (result.components.front().name + ".po");
    write_file(path, print_po_file(po, notation));
    std::cout << path.string() << "\n";
  }
  fs::path trace_path =
      args.trace_path.empty() ? out_dir / "trace.tsv" : fs::path(args.trace_path);
  write_file(trace_path, print_trace(result.trace, header));
  std::cout << trace_path.string() << "\n";
  return 0;
}

int cmd_validate(const std::vector<std::string>& paths) {
  std::vector<DomainModel> chain = load_chain(paths, nullptr);
  auto violations = validate_chain(chain);
  if (!violations.empty()) return print_violations(violations);
  return 0;
}

struct BackpropArgs {
  std::string baseline;
  std::string edited;
  std::vector<std::string> models;
  std::string trace_path;
  std::string out_dir = ".";
};

int cmd_backprop(const BackpropArgs& args) {
  Component baseline = parse_bsystem(read_file(args.baseline));
  Component edited = parse_bsystem(read_file(args.edited));
  std::vector<DomainModel> chain = load_chain(args.models, nullptr);
  CorrespondenceTrace trace = load_trace(read_file(args.trace_path));

  int edited_level = -1;
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (chain[i].name == edited.name) edited_level = static_cast<int>(i);
  if (edited_level < 0) {
    std::cerr << "component '" << edited.name << "' does not correspond to a supplied model\n";
    return 3;
  }

  auto additions = diff_component(baseline, edited);
  CorrespondenceTrace extended;
  DomainDelta delta = backprop(additions, trace, chain, edited_level, &extended);
  std::vector<DomainModel> updated = apply_delta(chain, delta);

  fs::path out_dir(args.out_dir);
  for (std::size_t i = 0; i < updated.size(); ++i) {
    if (updated[i] == chain[i]) continue;
    fs::path path = out_dir / (updated[i].name + ".dmod");
    write_file(path, print_domain_model(updated[i]));
    std::cout << path.string() << "\n";
  }
  fs::path trace_out = out_dir / "trace.tsv";
  write_file(trace_out, print_trace(extended, std::vector<std::string>{std::string(kVersion)}));
  std::cout << trace_out.string() << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"SysML/KAOS domain models <-> B System specifications"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  TranslateArgs targs;
  CLI::App* translate = app.add_subcommand(
      "translate", "Translate a chain of domain models into B System components");
  translate->add_option("models", targs.models, "domain model files, root first")
      ->required()
      ->expected(-1);
  translate->add_option("--goals", targs.goals, "goal model file (.gmod)");
  translate->add_option("--events", targs.events_dir, "directory of event-body fragments");
  translate->add_option("-o,--out", targs.out_dir, "output directory");
  translate->add_option("--trace", targs.trace_path, "trace file path");
  translate->add_flag("--expand-cardinalities", targs.expand_cardinalities,
                      "use plain relations plus explicit cardinality formulas");
  auto* uni = translate->add_flag("--unicode", targs.unicode, "emit Unicode notation");
  translate->add_flag("--ascii", "emit ASCII notation (default)")->excludes(uni);

  std::vector<std::string> vpaths;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Validate a chain of domain models");
  validate_cmd->add_option("models", vpaths, "domain model files, root first")
      ->required()
      ->expected(-1);

  BackpropArgs bargs;
  CLI::App* backprop_cmd = app.add_subcommand(
      "backprop", "Propagate additions from an edited component back into the domain model");
  backprop_cmd->add_option("baseline", bargs.baseline, "generated .bsys file")->required();
  backprop_cmd->add_option("edited", bargs.edited, "edited .bsys file")->required();
  backprop_cmd->add_option("models", bargs.models, "domain model files, root first")
      ->required()
      ->expected(-1);
  backprop_cmd->add_option("--trace", bargs.trace_path, "trace file from the generating run")
      ->required();
  backprop_cmd->add_option("-o,--out", bargs.out_dir, "output directory");

  std::vector<const char*> argv;
  argv.push_back("kaos2b");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (translate->parsed()) return cmd_translate(targs);
    if (validate_cmd->parsed()) return cmd_validate(vpaths);
    if (backprop_cmd->parsed()) return cmd_backprop(bargs);
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ValidationFailed& e) {
    return print_violations(e.violations());
  } catch (const BackpropError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const GoalEngineError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const ScopeError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const TranslateError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace kaos2b
