// Loads a model, attaches a secret written as a regular expression and runs
// the opacity and interference checks on it.
//
//   check_two_level models/g2.lts "h l + h d h l l*"

#include <iostream>

#include "orwell/orwell.hpp"

int main(int argc, char** argv) {
  using namespace orwell;
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " MODEL SECRET-REGEX\n";
    return 2;
  }
  try {
    const Lts system = load_model(argv[1]);
    const Lts secret = compile_regex(argv[2], system.alphabet());

    const auto v = check_opacity_orwellian(system, secret);
    for (const auto& local : v.breakdown)
      std::cout << "entry " << local.system_state.value_or(local.state) << ": "
                << (local.holds ? "opaque" : "discloses") << '\n';
    if (!v.holds) std::cout << "disclosing word: " << to_string(*v.witness) << '\n';

    const auto kind = orwellian_observation(system.alphabet());
    if (!v.holds) {
      std::cout << "its observation class:";
      for (const auto& w : disclosing_class(system, *v.witness, kind, 12))
        std::cout << " [" << to_string(w) << "]";
      std::cout << '\n';
    }

    std::cout << "NI " << (check_ni(system).holds ? "holds" : "violated") << ", INI "
              << (check_ini(system).holds ? "holds" : "violated") << '\n';
    return v.holds ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
