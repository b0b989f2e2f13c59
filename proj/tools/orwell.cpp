// Command-line front end. Exit codes: 0 property holds, 1 violated,
// 2 input or usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "orwell/orwell.hpp"

namespace {

using namespace orwell;
using nlohmann::json;

constexpr int kHolds = 0;
constexpr int kViolated = 1;
constexpr int kInputError = 2;

struct Options {
  std::string property;
  std::string direction;
  std::string system;
  std::string secret_file;
  std::string secret_re;
  std::string method = "both";
  std::string report = "text";
  std::string output;
  std::string hidden_prefix = "reveal";
  std::string obs = "orwellian";
  std::size_t max_len = 0;
  std::size_t max_obs = 10;
};

std::string render_word(const std::optional<Word>& w) {
  if (!w) return "";
  return w->empty() ? "()" : to_string(*w);
}

json word_json(const std::optional<Word>& w) {
  if (!w) return nullptr;
  return json(*w);
}

/// System with the secret given on the command line incorporated; without
/// one, the system must carry its own Fphi set.
Lts load_system(const Options& opt, bool need_secret) {
  Lts system = load_model(opt.system);
  if (!need_secret) return system;
  if (!opt.secret_file.empty()) {
    const Lts secret = load_model(opt.secret_file);
    return incorporate_secret(system, kLanguageSet, secret, secret_set_of(secret));
  }
  if (!opt.secret_re.empty()) {
    const Lts secret = compile_regex(opt.secret_re, system.alphabet());
    return incorporate_secret(system, kLanguageSet, secret, kLanguageSet);
  }
  if (!system.has_set(kSecretSet))
    throw InputError("no secret: pass --secret or --secret-re, or declare 'accept Fphi:'");
  return system;
}

struct Record {
  std::string state;
  bool holds;
  std::optional<Word> witness;
};

int report(const Options& opt, bool holds, const std::optional<Word>& witness,
           const std::vector<Record>& records, const std::vector<std::string>& notes) {
  if (opt.report == "json-lines") {
    for (const auto& r : records)
      std::cout << json{{"state", r.state}, {"holds", r.holds}, {"witness", word_json(r.witness)}}
                       .dump()
                << '\n';
    std::cout << json{{"summary", true}, {"holds", holds}, {"witness", word_json(witness)}}.dump()
              << '\n';
  } else {
    for (const auto& r : records)
      std::cout << "entry " << r.state << ": " << (r.holds ? "holds" : "violated")
                << (r.witness ? " " + render_word(r.witness) : "") << '\n';
    for (const auto& note : notes) std::cout << note << '\n';
    std::cout << "result: " << (holds ? "holds" : "violated") << '\n';
    std::cout << "witness: " << (holds ? "" : render_word(witness)) << '\n';
  }
  return holds ? kHolds : kViolated;
}

int run_check(const Options& opt) {
  if (opt.property == "static" || opt.property == "orwellian") {
    Lts system = load_model(opt.system);
    std::optional<Lts> secret;
    if (!opt.secret_file.empty()) {
      secret = load_model(opt.secret_file);
    } else if (!opt.secret_re.empty()) {
      secret = compile_regex(opt.secret_re, system.alphabet());
    } else if (!system.has_set(kSecretSet)) {
      throw InputError("no secret: pass --secret or --secret-re, or declare 'accept Fphi:'");
    }
    const OpacityVerdict v =
        opt.property == "static"
            ? (secret ? check_opacity_static(system, *secret) : check_opacity_static(system))
            : (secret ? check_opacity_orwellian(system, *secret) : check_opacity_orwellian(system));
    std::vector<Record> records;
    for (const auto& local : v.breakdown)
      records.push_back({local.system_state.value_or(local.state), local.holds, local.witness});
    std::vector<std::string> notes;
    if (v.observation) notes.push_back("observation: " + render_word(v.observation));
    return report(opt, v.holds, v.witness, records, notes);
  }

  const Lts system = load_model(opt.system);
  InterferenceVerdict v;
  if (opt.property == "ni") {
    v = check_ni(system);
  } else {
    const auto method = opt.method == "direct"       ? IniMethod::direct
                        : opt.method == "decomposed" ? IniMethod::decomposed
                                                     : IniMethod::both;
    v = check_ini(system, method);
  }
  std::vector<Record> records;
  for (const auto& local : v.breakdown) records.push_back({local.state, local.holds, local.witness});
  std::vector<std::string> notes;
  if (v.source) notes.push_back("source: " + render_word(v.source));
  return report(opt, v.holds, v.witness, records, notes);
}

int run_reduce(const Options& opt) {
  ReductionOutput out;
  if (opt.direction == "to-ni") {
    out = opacity_to_ni(load_system(opt, true));
  } else if (opt.direction == "to-ini") {
    out = opacity_to_ini(load_system(opt, true), opt.hidden_prefix == "erase"
                                                      ? HiddenPrefix::erase
                                                      : HiddenPrefix::reveal);
  } else {
    out = ini_to_opacity(load_system(opt, false));
  }
  const Lts target = target_system(out);
  std::ofstream file(opt.output);
  if (!file) throw InputError("cannot write '" + opt.output + "'");
  file << render_model(target);
  if (!file) throw InputError("cannot write '" + opt.output + "'");
  std::cout << "wrote " << opt.output << " (" << target.num_states() << " states)\n";
  return kHolds;
}

int run_oracle_command(const Options& opt) {
  const Lts system = load_system(opt, true);
  ObservationKind kind = opt.obs == "natural"
                             ? ObservationKind{natural_observation(system.alphabet())}
                             : ObservationKind{orwellian_observation(system.alphabet())};
  const auto run = run_oracle(system, kind, opt.max_len, opt.max_obs);
  std::vector<std::string> notes{
      "explored: " + std::to_string(run.observations_checked) + " secret observations" +
      (run.truncated ? " (bounded search, some words cut off)" : "")};
  if (run.verdict.observation) notes.push_back("observation: " + render_word(run.verdict.observation));
  return report(opt, run.verdict.holds, run.verdict.witness, {}, notes);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opacity and non-interference checker for finite transition systems"};
  app.require_subcommand(1);
  Options opt;

  auto add_secret = [&](CLI::App* cmd) {
    auto* file = cmd->add_option("--secret", opt.secret_file, "Secret automaton file");
    auto* re = cmd->add_option("--secret-re", opt.secret_re, "Secret as a regular expression");
    file->excludes(re);
  };
  auto add_report = [&](CLI::App* cmd) {
    cmd->add_option("--report", opt.report, "Output format")
        ->check(CLI::IsMember({"text", "json-lines"}));
  };

  auto* check = app.add_subcommand("check", "Decide a property of a system");
  check->add_option("property", opt.property, "static | orwellian | ni | ini")
      ->required()
      ->check(CLI::IsMember({"static", "orwellian", "ni", "ini"}));
  check->add_option("--system", opt.system, "System model file")->required();
  add_secret(check);
  check->add_option("--method", opt.method, "INI decision method")
      ->check(CLI::IsMember({"direct", "decomposed", "both"}));
  add_report(check);

  auto* reduce = app.add_subcommand("reduce", "Translate between opacity and interference");
  reduce->add_option("direction", opt.direction, "to-ni | to-ini | from-ini")
      ->required()
      ->check(CLI::IsMember({"to-ni", "to-ini", "from-ini"}));
  reduce->add_option("--system", opt.system, "System model file")->required();
  add_secret(reduce);
  reduce->add_option("-o,--output", opt.output, "Output model file")->required();
  reduce->add_option("--hidden-prefix", opt.hidden_prefix,
                     "to-ini: keep hidden events before the last downgrade (reveal) or drop them (erase)")
      ->check(CLI::IsMember({"reveal", "erase"}));

  auto* oracle = app.add_subcommand("oracle", "Bounded brute-force opacity check");
  oracle->add_option("--system", opt.system, "System model file")->required();
  add_secret(oracle);
  oracle->add_option("--obs", opt.obs, "Observation function")
      ->required()
      ->check(CLI::IsMember({"natural", "orwellian"}));
  oracle->add_option("--max-len", opt.max_len, "Longest secret word to examine")->required();
  oracle->add_option("--max-obs", opt.max_obs, "Longest secret observation to examine");
  add_report(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (check->parsed()) {
      if ((opt.property == "ni" || opt.property == "ini") &&
          (!opt.secret_file.empty() || !opt.secret_re.empty()))
        throw InputError("ni/ini checks take no secret");
      return run_check(opt);
    }
    if (reduce->parsed()) {
      if (opt.direction == "from-ini" && (!opt.secret_file.empty() || !opt.secret_re.empty()))
        throw InputError("from-ini takes no secret");
      return run_reduce(opt);
    }
    return run_oracle_command(opt);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const MethodDisagreement& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInputError;
  }
}
